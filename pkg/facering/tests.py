import logging

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from core.exceptions import CrossCheckError
from core.testing import EMPTY, M1, M2, M3, P1_COVERS, P1_LABELS, P2_COVERS, P2_LABELS, random_realizations
from poly.models import LaurentPoly, UnivariatePoly
from poly.services import scale_series, substitute_xy
from torsion_poset.services import build_poset, components, f_vector, synthetic_poset
from zmatroid.services import (
    arithmetic_tutte,
    dual_realization,
    is_essential,
    matroid_rank,
    modulo_initial_torsion,
    profile,
    realization,
)

from .models import FVector, HVector
from .services import (
    f_from_h,
    face_ideal,
    face_module_hilbert,
    h_from_f,
    hilbert_from_f,
    hilbert_from_h,
    hilbert_via_chains,
    main_theorem_right_side,
    render_face_ideal,
    verify_main_theorem,
)

logger = logging.getLogger(__name__)

CORPUS = random_realizations(seed=77, count=500)
# M(∅) = Z/2 x Z, a single generator spanning the free part.
TORSION = realization(2, [(0, 1)], relations=[(2, 0)])


class VectorTests(SimpleTestCase):
    def test_h_from_f(self):
        cases = [((1, 2, 2), (1, 0, 1)), ((1, 3, 2), (1, 1, 0)), ((1,), (1,)), ((1, 3, 4), (1, 1, 2))]
        for f, h in cases:
            with self.subTest(f=f):
                self.assertEqual(h_from_f(FVector(f, len(f) - 1)), HVector(h, len(h) - 1))
                self.assertEqual(f_from_h(HVector(h, len(h) - 1)), FVector(f, len(f) - 1))

    def test_malformed(self):
        with self.assertRaises(ValidationError) as ctx:
            FVector((1, 2), 2)
        self.assertEqual(ctx.exception.code, "malformed_vector")
        with self.assertRaises(ValidationError):
            FVector((1, -1), 1)

    def test_series(self):
        self.assertEqual(str(hilbert_from_h(HVector((1, 0, 1), 2))), "(1 + t^2) / (1 - t)^2")
        self.assertEqual(str(hilbert_from_h(HVector((1, 1, 0), 2))), "(1 + t) / (1 - t)^2")
        self.assertEqual(str(hilbert_from_h(HVector((1,), 0))), "1")
        for f in ((1, 2, 2), (1, 3, 2), (1, 4), (1,)):
            with self.subTest(f=f):
                vector = FVector(f, len(f) - 1)
                self.assertEqual(hilbert_from_f(vector), hilbert_from_h(h_from_f(vector)))


class ChainOracleTests(SimpleTestCase):
    def test_examples(self):
        (m1,) = components(build_poset(M1))
        self.assertEqual(str(hilbert_via_chains(m1)), "(1 + t) / (1 - t)^2")
        self.assertEqual(str(hilbert_via_chains(synthetic_poset(P1_LABELS, P1_COVERS))), "(1 + t^2) / (1 - t)^2")
        self.assertEqual(str(hilbert_via_chains(synthetic_poset(["0"], []))), "1")

    def test_not_simplicial(self):
        with self.assertRaises(ValidationError) as ctx:
            hilbert_via_chains(synthetic_poset(P2_LABELS, P2_COVERS))
        self.assertEqual(ctx.exception.code, "not_simplicial")

    def test_agrees_with_h_vector(self):
        for r in CORPUS:
            for component in components(build_poset(r)):
                with self.subTest(r=r):
                    self.assertEqual(hilbert_via_chains(component), hilbert_from_h(h_from_f(f_vector(component))))


class HVectorOnCorpusTests(SimpleTestCase):
    def test_h_vector_is_tutte_at_y_one(self):
        for r in CORPUS:
            rank = matroid_rank(r)
            h = h_from_f(f_vector(build_poset(r), rank))
            tutte = substitute_xy(arithmetic_tutte(r), LaurentPoly.monomial(1, 1), LaurentPoly.monomial(1, 0))
            with self.subTest(r=r):
                self.assertEqual(LaurentPoly.from_univariate(UnivariatePoly.of(reversed(h.entries))), tutte)
                self.assertEqual(f_from_h(h), f_vector(build_poset(r), rank))

    def test_component_h_vectors_are_nonnegative(self):
        for r in CORPUS:
            (component, *_) = components(build_poset(r))
            h = h_from_f(f_vector(component))
            with self.subTest(r=r):
                self.assertEqual(h.entries[0], 1)
                self.assertTrue(all(entry >= 0 for entry in h.entries))


class FaceIdealTests(SimpleTestCase):
    def test_digon(self):
        presentation = face_ideal(synthetic_poset(P1_LABELS, P1_COVERS))
        self.assertEqual(
            render_face_ideal(presentation),
            "variables: x0[0], x1[1], x2[1], x3[2], x4[2]\nx0 - 1\nx1*x2 - (x3 + x4)\nx3*x4",
        )

    def test_path(self):
        (component,) = components(build_poset(M1))
        presentation = face_ideal(component)
        atoms = {i for i, degree in presentation.variables if degree == 1}
        monomials = [r.pair for r in presentation.relations if not r.join and set(r.pair) <= atoms]
        self.assertEqual(monomials, [(1, 2)])
        self.assertIn("x1*x3 - x4", render_face_ideal(presentation).splitlines())

    def test_single_point(self):
        presentation = face_ideal(synthetic_poset(["0"], []))
        self.assertEqual(presentation.relations, ())
        self.assertEqual(render_face_ideal(presentation), "variables: x0[0]\nx0 - 1")

    def test_meet_above_bottom(self):
        # Face poset of a 2-simplex.
        labels = ["0", "a", "b", "c", "ab", "ac", "bc", "abc"]
        covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6), (4, 7), (5, 7), (6, 7)]
        lines = render_face_ideal(face_ideal(synthetic_poset(labels, covers))).splitlines()
        self.assertIn("x4*x5 - x1*x7", lines)
        self.assertIn("x1*x2 - x4", lines)

    def test_not_simplicial(self):
        with self.assertRaises(ValidationError) as ctx:
            face_ideal(synthetic_poset(P2_LABELS, P2_COVERS))
        self.assertEqual(ctx.exception.code, "not_simplicial")


class FaceModuleTests(SimpleTestCase):
    def test_golden(self):
        cases = [
            (M1, "(1 + t) / (1 - t)^2"),
            (M2, "(1 + t^2) / (1 - t)^2"),
            (M3, "(1 + t + 2*t^2) / (1 - t)^2"),
            (dual_realization(M3), "(1 + 3*t) / (1 - t)^1"),
            (EMPTY, "1"),
            (TORSION, "(2) / (1 - t)^1"),
        ]
        for r, expected in cases:
            with self.subTest(expected=expected):
                self.assertEqual(str(face_module_hilbert(r)), expected)

    def test_non_essential_logs_warning(self):
        with self.assertLogs("facering", level="WARNING"):
            self.assertEqual(str(face_module_hilbert(realization(2, []))), "1")

    def test_scales_with_initial_torsion(self):
        for r in CORPUS:
            with self.subTest(r=r):
                self.assertEqual(
                    face_module_hilbert(r),
                    scale_series(face_module_hilbert(modulo_initial_torsion(r)), profile(r, 0).multiplicity),
                )


class MainTheoremTests(SimpleTestCase):
    def test_golden(self):
        self.assertEqual(str(main_theorem_right_side(M2)), "(1 + t^2) / (1 - t)^2")
        for r in (M1, M2, M3, EMPTY):
            check = verify_main_theorem(r)
            with self.subTest(r=r):
                self.assertTrue(check.holds)
                self.assertEqual(check.left, check.right)
                self.assertEqual(check.dual_right, check.left)
        self.assertEqual(str(verify_main_theorem(M3).left), "(1 + t + 2*t^2) / (1 - t)^2")

    def test_torsion_skips_dual_route(self):
        check = verify_main_theorem(TORSION)
        self.assertTrue(check.holds)
        self.assertIsNone(check.dual_right)

    def test_corpus_essential(self):
        essential = [r for r in CORPUS if is_essential(r)]
        self.assertGreater(len(essential), 150)
        for r in essential:
            with self.subTest(r=r):
                self.assertTrue(verify_main_theorem(r).holds)

    def test_corpus_non_essential_reported(self):
        non_essential = [r for r in CORPUS if not is_essential(r)]
        self.assertTrue(non_essential)
        failures = []
        with self.assertLogs("facering", level="WARNING"):
            for r in non_essential:
                try:
                    holds = verify_main_theorem(r).holds
                except (ValidationError, CrossCheckError):
                    holds = False
                if not holds:
                    failures.append(r)
        logger.info(
            "Main theorem on non-essential inputs: %d of %d hold", len(non_essential) - len(failures), len(non_essential)
        )
