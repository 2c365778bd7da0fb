import math
import random
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from .models import IntMatrix, Lattice, QuotientStructure
from .services import (
    cokernel_structure,
    express_in_basis,
    hermite_normal_form,
    lattice,
    lattice_index,
    saturate,
    smith_normal_form,
)


def random_matrices(seed: int, count: int, bound: int = 5, max_dim: int = 5):
    rng = random.Random(seed)
    for _ in range(count):
        rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
        yield IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def determinant(m: IntMatrix) -> int:
    return int(Matrix(m.to_rows()).det())


class IntMatrixTests(SimpleTestCase):
    def test_entries_must_match_shape(self):
        with self.assertRaises(ValidationError) as ctx:
            IntMatrix(2, 2, (1, 2, 3))
        self.assertEqual(ctx.exception.code, "malformed_matrix")

    def test_from_columns_transposes(self):
        m = IntMatrix.from_columns([(2, 0), (0, 1)], rows=2)
        self.assertEqual(m.to_rows(), [[2, 0], [0, 1]])
        m = IntMatrix.from_columns([(1, 1), (1, -1), (1, 0)], rows=2)
        self.assertEqual(m.to_rows(), [[1, 1, 1], [1, -1, 0]])

    def test_product(self):
        a = IntMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual((a @ IntMatrix.identity(2)), a)
        self.assertEqual((a @ a).to_rows(), [[7, 10], [15, 22]])


class HermiteNormalFormTests(SimpleTestCase):
    def test_examples(self):
        cases = [
            ([[2, 0], [0, 1]], [[2, 0], [0, 1]]),
            ([[1, 1], [1, -1]], [[1, 1], [0, 2]]),
            ([[0, 0], [0, 0]], [[0, 0], [0, 0]]),
        ]
        for rows, expected in cases:
            with self.subTest(rows=rows):
                self.assertEqual(hermite_normal_form(IntMatrix.from_rows(rows)).to_rows(), expected)

    def test_echelon_shape_on_random_matrices(self):
        for m in random_matrices(seed=7, count=200):
            h = hermite_normal_form(m)
            with self.subTest(rows=m.to_rows()):
                self.assertEqual((h.rows, h.cols), (m.rows, m.cols))
                last_pivot = -1
                for i, row in enumerate(h.to_rows()):
                    if not any(row):
                        self.assertFalse(any(any(r) for r in h.to_rows()[i:]))
                        break
                    pivot = next(c for c, x in enumerate(row) if x)
                    self.assertGreater(pivot, last_pivot)
                    self.assertGreater(row[pivot], 0)
                    for above in h.to_rows()[:i]:
                        self.assertTrue(0 <= above[pivot] < row[pivot])
                    last_pivot = pivot

    def test_row_space_is_preserved(self):
        for m in random_matrices(seed=8, count=100):
            with self.subTest(rows=m.to_rows()):
                self.assertEqual(
                    lattice(m.cols, m.to_rows()),
                    lattice(m.cols, hermite_normal_form(m).to_rows()),
                )


class SmithNormalFormTests(SimpleTestCase):
    def test_examples(self):
        cases = [
            ([[2, 0], [0, 1]], (1, 2)),
            ([[1, 1], [1, -1]], (1, 2)),
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1)),
        ]
        for rows, invariants in cases:
            with self.subTest(rows=rows):
                self.assertEqual(smith_normal_form(IntMatrix.from_rows(rows)).invariants, invariants)

    def test_decomposition_on_random_matrices(self):
        for m in random_matrices(seed=11, count=300):
            snf = smith_normal_form(m)
            with self.subTest(rows=m.to_rows()):
                self.assertEqual(snf.U @ m @ snf.V, snf.D)
                self.assertEqual(abs(determinant(snf.U)), 1)
                self.assertEqual(abs(determinant(snf.V)), 1)
                for i in range(m.rows):
                    for j in range(m.cols):
                        if i != j:
                            self.assertEqual(snf.D[i, j], 0)
                k = len(snf.invariants)
                diagonal = [snf.D[t, t] for t in range(min(m.rows, m.cols))]
                self.assertEqual(tuple(diagonal[:k]), snf.invariants)
                self.assertFalse(any(diagonal[k:]))
                self.assertTrue(all(d > 0 for d in snf.invariants))
                for a, b in zip(snf.invariants, snf.invariants[1:]):
                    self.assertEqual(b % a, 0)

    def test_agrees_with_sympy(self):
        for m in random_matrices(seed=12, count=150):
            expected = tuple(abs(int(d)) for d in sympy_invariant_factors(Matrix(m.to_rows())) if d)
            with self.subTest(rows=m.to_rows()):
                self.assertEqual(smith_normal_form(m).invariants, expected)

    def test_product_of_invariants_is_determinant(self):
        rng = random.Random(13)
        for _ in range(100):
            n = rng.randint(1, 5)
            m = IntMatrix.from_rows([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
            det = determinant(m)
            with self.subTest(rows=m.to_rows()):
                if det:
                    self.assertEqual(math.prod(smith_normal_form(m).invariants), abs(det))
                else:
                    self.assertLess(len(smith_normal_form(m).invariants), n)

    def test_deterministic(self):
        m = IntMatrix.from_rows([[4, -6, 2], [3, 1, 0], [2, 2, 8]])
        self.assertEqual(smith_normal_form(m), smith_normal_form(m))


class LatticeTests(SimpleTestCase):
    def test_canonical_form_is_equality(self):
        self.assertEqual(lattice(2, [(1, 1), (1, -1)]), lattice(2, [(0, 2), (1, 1), (2, 0)]))
        self.assertNotEqual(lattice(2, [(1, 1), (1, -1)]), Lattice.full(2))

    def test_wrong_length(self):
        with self.assertRaises(ValidationError) as ctx:
            lattice(2, [(1, 2, 3)])
        self.assertEqual(ctx.exception.code, "dimension_mismatch")


class CokernelStructureTests(SimpleTestCase):
    def test_examples(self):
        cases = [
            ([(2, 0), (0, 1)], QuotientStructure(0, (2,))),
            ([(1, 1), (1, -1)], QuotientStructure(0, (2,))),
            ([], QuotientStructure(2)),
        ]
        for columns, expected in cases:
            with self.subTest(columns=columns):
                self.assertEqual(cokernel_structure(IntMatrix.from_columns(columns, 2), Lattice.zero(2)), expected)

    def test_relations_contribute(self):
        relations = lattice(2, [(0, 2)])
        structure = cokernel_structure(IntMatrix.from_columns([(1, 0)], 2), relations)
        self.assertEqual(structure, QuotientStructure(0, (2,)))
        self.assertEqual(structure.multiplicity, 2)
        self.assertEqual(str(structure), "Z/2")

    def test_dimension_mismatch(self):
        with self.assertRaises(ValidationError) as ctx:
            cokernel_structure(IntMatrix.from_columns([(1, 0, 0)], 3), Lattice.zero(2))
        self.assertEqual(ctx.exception.code, "dimension_mismatch")

    def test_multiplicity_is_saturation_index(self):
        for m in random_matrices(seed=21, count=200, bound=3, max_dim=3):
            columns = IntMatrix.from_columns(m.to_rows(), m.cols)
            structure = cokernel_structure(columns, Lattice.zero(m.cols))
            spanned = lattice(m.cols, m.to_rows())
            with self.subTest(rows=m.to_rows()):
                self.assertEqual(structure.free_rank, m.cols - spanned.rank)
                self.assertEqual(structure.multiplicity, lattice_index(spanned, saturate(spanned)))


class SaturateTests(SimpleTestCase):
    def test_examples(self):
        cases = [
            (lattice(2, [(2, 0)]), lattice(2, [(1, 0)])),
            (lattice(2, [(1, 1), (1, -1)]), Lattice.full(2)),
            (Lattice.full(3), Lattice.full(3)),
            (Lattice.zero(2), Lattice.zero(2)),
        ]
        for given, expected in cases:
            with self.subTest(given=given.vectors):
                self.assertEqual(saturate(given), expected)

    def test_idempotent_and_rank_preserving(self):
        for m in random_matrices(seed=22, count=200, bound=4, max_dim=4):
            l = lattice(m.cols, m.to_rows())
            s = saturate(l)
            with self.subTest(rows=m.to_rows()):
                self.assertEqual(saturate(s), s)
                self.assertEqual(s.rank, l.rank)
                self.assertEqual(cokernel_structure(IntMatrix.zeros(m.cols, 0), s).torsion, ())
                self.assertIsInstance(lattice_index(l, s), int)


class ExpressInBasisTests(SimpleTestCase):
    def test_examples(self):
        l = lattice(2, [(2, 0)])
        coordinates = express_in_basis((1, 0), l)
        self.assertEqual(coordinates.values, (Fraction(1, 2),))
        self.assertFalse(coordinates.integral)
        coordinates = express_in_basis((2, 0), l)
        self.assertEqual(coordinates.values, (Fraction(1),))
        self.assertTrue(coordinates.integral)
        self.assertIsNone(express_in_basis((0, 1), l))

    def test_reconstructs_vector(self):
        l = lattice(3, [(1, 2, 3), (0, 4, -2)])
        v = (3, 14, 5)
        coordinates = express_in_basis(v, l)
        rebuilt = [sum(c * b[k] for c, b in zip(coordinates.values, l.vectors)) for k in range(3)]
        self.assertEqual(rebuilt, list(v))
        self.assertTrue(coordinates.integral)

    def test_dimension_mismatch(self):
        with self.assertRaises(ValidationError):
            express_in_basis((1, 0, 0), Lattice.full(2))


class LatticeIndexTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(lattice_index(lattice(2, [(1, 1), (1, -1)]), Lattice.full(2)), 2)
        l = lattice(3, [(1, 2, 0), (0, 3, 3)])
        self.assertEqual(lattice_index(l, l), 1)
        self.assertEqual(lattice_index(lattice(2, [(1, 0)]), Lattice.full(2)), math.inf)

    def test_not_a_sublattice(self):
        with self.assertRaises(ValidationError) as ctx:
            lattice_index(Lattice.full(2), lattice(2, [(1, 1), (1, -1)]))
        self.assertEqual(ctx.exception.code, "not_a_sublattice")

    def test_index_is_determinant(self):
        rng = random.Random(23)
        for _ in range(100):
            rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            det = determinant(IntMatrix.from_rows(rows))
            if not det:
                continue
            with self.subTest(rows=rows):
                self.assertEqual(lattice_index(lattice(3, rows), Lattice.full(3)), abs(det))
