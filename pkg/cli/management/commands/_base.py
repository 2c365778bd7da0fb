from pathlib import Path

from django.core.management.base import BaseCommand

from cli.services import read_realization
from zmatroid.models import Realization


class RealizationCommand(BaseCommand):
    """Base for the commands that read one realization file.

    Subclasses add their own flags in ``add_command_arguments`` and print
    through ``emit`` so that ``--output`` works the same everywhere.
    """

    def add_arguments(self, parser):
        parser.add_argument("file", help="Realization file, JSON or whitespace matrix shorthand.")
        parser.add_argument("--output", metavar="FILE", help="Write the report to FILE instead of stdout.")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def load(self, options) -> Realization:
        return read_realization(options["file"])

    def emit(self, text: str, options) -> None:
        if options.get("output"):
            Path(options["output"]).write_text(text + "\n", encoding="utf-8")
        else:
            self.stdout.write(text)
