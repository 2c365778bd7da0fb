from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from core.testing import EMPTY, M1, M2, M3, random_realizations
from intlin.models import QuotientStructure
from poly.services import poly_add

from .models import canonical_subsets, format_subset, members
from .services import (
    arithmetic_tutte,
    contraction,
    deletion,
    dual_realization,
    evaluate_gt,
    grothendieck_class,
    is_essential,
    matroid_rank,
    modulo_initial_torsion,
    ordinary_tutte,
    profile,
    realization,
    structure_cache,
    subset_profiles,
    torsion_basis_count,
)

CORPUS = random_realizations(seed=2024, count=500)


class SubsetTests(SimpleTestCase):
    def test_canonical_order(self):
        self.assertEqual(canonical_subsets(3), [0, 1, 2, 4, 3, 5, 6, 7])

    def test_format(self):
        self.assertEqual(format_subset(0), "∅")
        self.assertEqual(format_subset(0b101), "{1,3}")
        self.assertEqual(members(0b110), (1, 2))


class RealizationTests(SimpleTestCase):
    def test_dimension_mismatch(self):
        with self.assertRaises(ValidationError) as ctx:
            realization(2, [(1, 0, 0)])
        self.assertEqual(ctx.exception.code, "dimension_mismatch")
        with self.assertRaises(ValidationError):
            realization(2, [(1, 0)], relations=[(1,)])

    def test_hashable(self):
        self.assertEqual(hash(M1), hash(realization(2, [(2, 0), (0, 1)])))


class ProfileTests(SimpleTestCase):
    def test_examples(self):
        p = profile(M1, 0b01)
        self.assertEqual(p.structure, QuotientStructure(1, (2,)))
        self.assertEqual((p.d, p.cork, p.multiplicity, p.independent), (1, 1, 2, True))
        p = profile(M2, 0b11)
        self.assertEqual(p.structure, QuotientStructure(0, (2,)))
        self.assertEqual(p.multiplicity, 2)
        self.assertEqual(profile(M3, 0).structure, QuotientStructure(2))

    def test_out_of_range(self):
        with self.assertRaises(ValidationError) as ctx:
            profile(M1, 0b100)
        self.assertEqual(ctx.exception.code, "subset_out_of_range")

    @override_settings(ZMATROID_PROFILE_CACHE=3)
    def test_cache_follows_settings(self):
        profile(M3, 0b011)
        cached = structure_cache(3)
        self.assertEqual(cached.cache_info().maxsize, 3)
        self.assertGreaterEqual(cached.cache_info().currsize, 1)
        self.assertEqual(profile(M3, 0b011), profile(M3, 0b011))

    @override_settings(ZMATROID_MAX_GROUND_SET=2)
    def test_ground_set_guard(self):
        with self.assertRaises(ValidationError) as ctx:
            subset_profiles(M3)
        self.assertEqual(ctx.exception.code, "ground_set_too_large")

    def test_monotone(self):
        for r in CORPUS[:200]:
            for a in range(1 << r.n):
                for b in range(r.n):
                    if a >> b & 1:
                        continue
                    before, after = profile(r, a), profile(r, a | 1 << b)
                    with self.subTest(r=r, a=a, b=b):
                        self.assertIn(before.d - after.d, (0, 1))
                        self.assertIn(after.cork - before.cork, (0, 1))


class RankTests(SimpleTestCase):
    def test_rank(self):
        for r, expected in ((M1, 2), (M3, 2), (EMPTY, 0)):
            with self.subTest(r=r):
                self.assertEqual(matroid_rank(r), expected)

    def test_essential(self):
        self.assertTrue(is_essential(M1))
        self.assertFalse(is_essential(realization(2, [(1, 0)])))
        self.assertTrue(is_essential(EMPTY))


class ArithmeticTutteTests(SimpleTestCase):
    def test_golden(self):
        for r, expected in ((M1, "x^2 + x"), (M2, "x^2 + 1"), (M3, "x^2 + x + y + 1"), (EMPTY, "1")):
            with self.subTest(expected=expected):
                self.assertEqual(str(arithmetic_tutte(r)), expected)

    def test_counts_torsion_bases(self):
        for r in CORPUS:
            with self.subTest(r=r):
                self.assertEqual(arithmetic_tutte(r).evaluate(1, 1), torsion_basis_count(r))

    def test_ordinary_tutte(self):
        self.assertEqual(str(ordinary_tutte(M3)), "x^2 + x + y")
        self.assertEqual(str(ordinary_tutte(M1)), "x^2")
        self.assertEqual(str(ordinary_tutte(M3, 0b011)), "x^2")
        unimodular = realization(2, [(1, 0), (0, 1), (1, 1)])
        self.assertEqual(ordinary_tutte(unimodular), arithmetic_tutte(unimodular))

    def test_deletion_contraction(self):
        for r in CORPUS:
            rank = matroid_rank(r)
            for i in range(r.n):
                deleted = deletion(r, i)
                if profile(r, 1 << i).cork == 0 or matroid_rank(deleted) < rank:
                    continue
                with self.subTest(r=r, i=i):
                    self.assertEqual(
                        arithmetic_tutte(r), poly_add(arithmetic_tutte(deleted), arithmetic_tutte(contraction(r, i)))
                    )

    def test_deletion_keeps_multiplicities(self):
        for r in CORPUS[:200]:
            for i in range(r.n):
                deleted = deletion(r, i)
                with self.subTest(r=r, i=i):
                    self.assertLessEqual(matroid_rank(deleted), matroid_rank(r))
                    for a in range(1 << deleted.n):
                        low, high = a & ((1 << i) - 1), a >> i
                        original = low | high << (i + 1)
                        self.assertEqual(profile(deleted, a).multiplicity, profile(r, original).multiplicity)


class DualTests(SimpleTestCase):
    def test_dual_of_m3(self):
        dual = dual_realization(M3)
        self.assertEqual(profile(dual, 0).structure, QuotientStructure(1))
        self.assertEqual(profile(dual, 0b100).structure, QuotientStructure(0, (2,)))
        for subset in (0b001, 0b010, 0b011, 0b101, 0b110):
            with self.subTest(subset=subset):
                self.assertEqual(profile(dual, subset).multiplicity, 1)
        self.assertEqual(arithmetic_tutte(dual), arithmetic_tutte(M3).swap())
        self.assertEqual(arithmetic_tutte(dual_realization(dual)), arithmetic_tutte(M3))

    def test_dual_with_torsion_has_no_second_dual(self):
        dual = dual_realization(M1)
        self.assertEqual(profile(dual, 0).multiplicity, 2)
        self.assertEqual(arithmetic_tutte(dual), arithmetic_tutte(M1).swap())
        with self.assertRaises(ValidationError) as ctx:
            dual_realization(dual)
        self.assertEqual(ctx.exception.code, "torsion_in_initial_group")

    def test_torsion_in_initial_group(self):
        with self.assertRaises(ValidationError) as ctx:
            dual_realization(realization(1, [(1,)], relations=[(2,)]))
        self.assertEqual(ctx.exception.code, "torsion_in_initial_group")

    def test_duality_on_corpus(self):
        for r in CORPUS:
            if profile(r, 0).multiplicity != 1:
                continue
            dual = dual_realization(r)
            with self.subTest(r=r):
                self.assertEqual(arithmetic_tutte(dual), arithmetic_tutte(r).swap())
                if profile(dual, 0).structure.is_free:
                    self.assertEqual(arithmetic_tutte(dual_realization(dual)), arithmetic_tutte(r))


class ModuloInitialTorsionTests(SimpleTestCase):
    def test_examples(self):
        self.assertIs(modulo_initial_torsion(M3), M3)
        reduced = modulo_initial_torsion(realization(2, [(1, 0)], relations=[(0, 2)]))
        self.assertEqual(reduced, realization(1, [(1,)]))
        self.assertEqual(profile(reduced, 0).structure, QuotientStructure(1))

    def test_multiplicity_identity_on_independent_subsets(self):
        for r in CORPUS:
            reduced = modulo_initial_torsion(r)
            initial = profile(r, 0).multiplicity
            with self.subTest(r=r):
                self.assertEqual(profile(reduced, 0).multiplicity, 1)
                for p in subset_profiles(r):
                    if p.independent:
                        self.assertEqual(p.multiplicity, initial * profile(reduced, p.subset).multiplicity)

    def test_multiplicity_identity_fails_for_dependent_subsets(self):
        r = realization(1, [(1,)], relations=[(2,)])
        self.assertEqual(profile(r, 0b1).multiplicity, 1)
        self.assertEqual(profile(r, 0).multiplicity * profile(modulo_initial_torsion(r), 0b1).multiplicity, 2)


class GrothendieckClassTests(SimpleTestCase):
    def test_m3_pairs(self):
        pairs = dict(zip(canonical_subsets(3), grothendieck_class(M3).pairs))
        self.assertEqual(pairs[0], (QuotientStructure(2), QuotientStructure(0)))
        self.assertEqual(pairs[0b011], (QuotientStructure(0, (2,)), QuotientStructure(0, (2,))))
        self.assertEqual(len(pairs), 8)

    def test_empty_ground_set(self):
        r = realization(2, [])
        c = grothendieck_class(r)
        self.assertEqual(c.pairs, ((QuotientStructure(2), QuotientStructure(0)),))
        self.assertEqual(str(evaluate_gt(c)), "1")

    def test_evaluates_to_tutte(self):
        for r in (M1, M2, M3):
            with self.subTest(r=r):
                self.assertEqual(evaluate_gt(grothendieck_class(r)), arithmetic_tutte(r))
        for r in CORPUS:
            if profile(r, 0).multiplicity != 1:
                continue
            with self.subTest(r=r):
                self.assertEqual(evaluate_gt(grothendieck_class(r)), arithmetic_tutte(r))
