import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from core.testing import M1, P2_COVERS, P2_LABELS
from torsion_poset.services import synthetic_poset

from .services import parse_realization, run_verification

FILES = {
    "m1.json": {"ambient_rank": 2, "generators": [[2, 0], [0, 1]]},
    "m2.json": {"ambient_rank": 2, "generators": [[1, 1], [1, -1]]},
    "m3.json": {"ambient_rank": 2, "generators": [[1, 1], [1, -1], [1, 0]]},
    "empty.json": {"ambient_rank": 0, "generators": []},
    "torsion.json": {"ambient_rank": 2, "relations": [[2, 0]], "generators": [[0, 1]]},
    "mismatch.json": {"ambient_rank": 2, "generators": [[1, 0, 0]]},
}


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        directory = tempfile.TemporaryDirectory()
        self.addCleanup(directory.cleanup)
        self.root = Path(directory.name)
        for name, content in FILES.items():
            (self.root / name).write_text(json.dumps(content), encoding="utf-8")
        (self.root / "m1.txt").write_text("2 0\n0 1\n", encoding="utf-8")
        (self.root / "broken.json").write_text("{not json", encoding="utf-8")
        (self.root / "binary.txt").write_bytes(b"\xff\xfe 1 0")

    def run_command(self, name, file, *args):
        out = StringIO()
        call_command(name, str(self.root / file), *args, stdout=out)
        return out.getvalue()

    def assert_exit(self, code, name, file, *args):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(name, file, *args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class ParseTests(SimpleTestCase):
    def test_shorthand(self):
        self.assertEqual(parse_realization("2 0\n0 1\n"), M1)
        self.assertEqual(parse_realization("").ambient_rank, 0)

    def test_malformed(self):
        cases = [
            "1 2\n3\n",
            "1 x\n",
            '{"generators": []}',
            '{"ambient_rank": 1, "generators": [[true]]}',
            '{"ambient_rank": 1, "generators": [1]}',
            "[1, 2]",
        ]
        for text in cases:
            with self.subTest(text=text):
                with self.assertRaises(ValidationError) as ctx:
                    parse_realization(text)
                self.assertEqual(ctx.exception.code, "malformed_file")


class InfoCommandTests(CommandTestCase):
    def test_summary(self):
        self.assertEqual(self.run_command("info", "m1.json"), "d(∅)=2 m(∅)=1 r=2 essential=true\n")
        self.assertEqual(self.run_command("info", "m1.txt"), "d(∅)=2 m(∅)=1 r=2 essential=true\n")
        self.assertEqual(self.run_command("info", "empty.json"), "d(∅)=0 m(∅)=1 r=0 essential=true\n")

    def test_all_subsets(self):
        lines = self.run_command("info", "m3.json", "--all").splitlines()
        self.assertEqual(len(lines), 9)
        self.assertEqual(lines[1], "∅ d=2 cork=0 m=1 independent=true")
        self.assertIn("{1,2} d=0 cork=2 m=2 independent=true", lines)
        self.assertEqual(lines[-1], "{1,2,3} d=0 cork=2 m=1 independent=false")

    def test_input_errors(self):
        self.assert_exit(2, "info", "broken.json")
        self.assert_exit(2, "info", "missing.json")
        self.assert_exit(2, "info", "mismatch.json")
        self.assert_exit(2, "info", "binary.txt")


class TutteCommandTests(CommandTestCase):
    def test_polynomials(self):
        self.assertEqual(self.run_command("tutte", "m1.json"), "x^2 + x\n")
        self.assertEqual(self.run_command("tutte", "m3.json", "--dual"), "y^2 + y + x + 1\n")
        self.assertEqual(self.run_command("tutte", "empty.json"), "1\n")
        self.assertEqual(self.run_command("tutte", "torsion.json", "--dual"), "2*y\n")

    def test_dual_cross_check(self):
        with mock.patch("cli.services.dual_realization", return_value=parse_realization("1 0\n0 1\n")):
            self.assert_exit(1, "tutte", "m3.json", "--dual")


class PosetCommandTests(CommandTestCase):
    def test_json(self):
        for file, elements, covers in (("m1.json", 6, 7), ("m2.json", 5, 6), ("m3.json", 8, 11)):
            with self.subTest(file=file):
                payload = json.loads(self.run_command("poset", file))
                self.assertEqual(len(payload["elements"]), elements)
                self.assertEqual(len(payload["covers"]), covers)
                self.assertEqual(payload["components"], [list(range(elements))])
        payload = json.loads(self.run_command("poset", "m1.json", "--format", "json"))
        self.assertEqual(payload["elements"][2], {"id": 2, "rank": 1, "subset": [1], "character": ["1/2"]})
        self.assertEqual(payload["f_vector_per_component"], [[1, 3, 2]])

    def test_components(self):
        payload = json.loads(self.run_command("poset", "torsion.json"))
        self.assertEqual(payload["components"], [[0, 2], [1, 3]])
        self.assertEqual(payload["f_vector_per_component"], [[1, 1], [1, 1]])

    def test_dot(self):
        source = self.run_command("poset", "m1.json", "--format", "dot")
        self.assertTrue(source.startswith("digraph poset {"))
        self.assertEqual(source.count("->"), 7)
        self.assertIn('label="({1}; 1/2)"', source)
        self.assertIn("rank=same", source)

    def test_output_file(self):
        self.assertEqual(self.run_command("poset", "m2.json", "--output", str(self.root / "p.json")), "")
        payload = json.loads((self.root / "p.json").read_text(encoding="utf-8"))
        self.assertEqual(len(payload["covers"]), 6)

    def test_deterministic(self):
        self.assertEqual(self.run_command("poset", "m3.json"), self.run_command("poset", "m3.json"))


class HilbertCommandTests(CommandTestCase):
    def test_series(self):
        self.assertEqual(self.run_command("hilbert", "m3.json"), "(1 + t + 2*t^2) / (1 - t)^2\n")
        self.assertEqual(self.run_command("hilbert", "m3.json", "--dual"), "(1 + 3*t) / (1 - t)^1\n")
        self.assertEqual(self.run_command("hilbert", "empty.json"), "1\n")

    def test_dual_needs_free_initial_group(self):
        self.assert_exit(2, "hilbert", "torsion.json", "--dual")


class VerifyCommandTests(CommandTestCase):
    def test_golden_pass(self):
        for file in ("m1.json", "m2.json", "m3.json", "empty.json"):
            with self.subTest(file=file):
                lines = self.run_command("verify", file).splitlines()
                self.assertEqual(lines[-1], "11/11 checks passed")
                self.assertTrue(all(line.startswith("PASS ") for line in lines[:-1]))
                self.assertIn("PASS duality involution", lines)

    def test_torsion(self):
        lines = self.run_command("verify", "torsion.json").splitlines()
        self.assertEqual(lines[0], "NOTE M(∅) has torsion; duality checks skipped")
        self.assertEqual(lines[-1], "9/9 checks passed")

    def test_corrupted_poset_fails(self):
        corrupted = synthetic_poset(P2_LABELS, P2_COVERS)
        out = StringIO()
        with mock.patch("cli.services.build_poset", return_value=corrupted):
            with self.assertLogs("cli", level="WARNING"):
                with self.assertRaises(CommandError) as ctx:
                    call_command("verify", str(self.root / "m1.json"), stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn("FAIL simplicial components: [0, 4] is not boolean", out.getvalue().splitlines())

    def test_components_compared_with_identity_link(self):
        r = parse_realization(json.dumps(FILES["torsion.json"]))
        with mock.patch("cli.services.link", return_value=synthetic_poset(["0"], [])) as patched:
            with self.assertLogs("cli", level="WARNING"):
                results, _ = run_verification(r)
        patched.assert_called_once()
        self.assertEqual(patched.call_args.args[1], 0)
        failed = [result.name for result in results if not result.passed]
        self.assertEqual(failed, ["components isomorphic"])

    def test_input_error(self):
        self.assert_exit(2, "verify", "broken.json")
