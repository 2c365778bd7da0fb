from dataclasses import dataclass


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity checked by ``verify``.

    Attributes:
        name (str): Short stable name printed in the report.
        passed (bool): Whether the identity held.
        detail (str): Why it failed, or why it was skipped; empty otherwise.
    """

    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        line = f"{'PASS' if self.passed else 'FAIL'} {self.name}"
        return f"{line}: {self.detail}" if self.detail else line
