from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from core.testing import EMPTY, M1, M2, M3, P1_COVERS, P1_LABELS, P2_COVERS, P2_LABELS, random_realizations
from facering.models import FVector
from zmatroid.models import members
from zmatroid.services import profile, realization, subset_profiles

from .services import (
    build_poset,
    components,
    cover_counts_by_index,
    enumerate_characters,
    f_vector,
    is_simplicial,
    join,
    link,
    lower_intervals_boolean,
    meet,
    posets_isomorphic,
    rank_zero_points,
    restrict_character,
    synthetic_poset,
    unique_bottom,
    verify_point_decomposition,
)

CORPUS = random_realizations(seed=1871, count=500)
TWO_POINTS = realization(1, [], relations=[(2,)])
SMALL = 40


def values(characters):
    return [c.values for c in characters]


def element_index(poset, subset, character_values):
    return next(
        i for i, e in enumerate(poset.elements) if e.subset == subset and e.character.values == character_values
    )


class EnumerateCharactersTests(SimpleTestCase):
    def test_examples(self):
        characters = enumerate_characters(M1, 0b01)
        self.assertEqual(values(characters), [(Fraction(0),), (Fraction(1, 2),)])
        self.assertEqual(characters[0].domain.vectors, ((1, 0),))
        self.assertEqual(values(enumerate_characters(M2, 0b01)), [(Fraction(0),)])
        self.assertEqual(values(enumerate_characters(M3, 0)), [()])

    def test_dependent_subset(self):
        with self.assertRaises(ValidationError) as ctx:
            enumerate_characters(M3, 0b111)
        self.assertEqual(ctx.exception.code, "dependent_subset")

    def test_count_is_multiplicity(self):
        for r in CORPUS[:200]:
            for p in subset_profiles(r):
                if not p.independent:
                    continue
                characters = enumerate_characters(r, p.subset)
                with self.subTest(r=r, subset=p.subset):
                    self.assertEqual(len(characters), p.multiplicity)
                    self.assertEqual(len(set(characters)), p.multiplicity)


class RestrictCharacterTests(SimpleTestCase):
    def test_m1(self):
        poset = build_poset(M1)
        zeta = element_index(poset, 0b11, (Fraction(1, 2), Fraction(0)))
        self.assertEqual(restrict_character(M1, poset.elements[zeta], 1).values, (Fraction(1, 2),))
        self.assertTrue(restrict_character(M1, poset.elements[zeta], 0).is_trivial)

    def test_m2_tops_restrict_trivially(self):
        poset = build_poset(M2)
        for element in poset.elements:
            if element.rank != 2:
                continue
            for drop in (0, 1):
                with self.subTest(element=str(element), drop=drop):
                    self.assertTrue(restrict_character(M2, element, drop).is_trivial)

    def test_drop_outside_subset(self):
        poset = build_poset(M1)
        with self.assertRaises(ValidationError):
            restrict_character(M1, poset.elements[1], 1)


class BuildPosetTests(SimpleTestCase):
    def test_m1(self):
        poset = build_poset(M1)
        self.assertEqual(len(poset), 6)
        self.assertEqual(len(poset.covers), 7)
        self.assertEqual(
            [str(e) for e in poset.elements],
            ["(∅)", "({1}; 0)", "({1}; 1/2)", "({2}; 0)", "({1,2}; 0,0)", "({1,2}; 1/2,0)"],
        )
        self.assertEqual(poset.covers, ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 4), (3, 5)))
        x = element_index(poset, 0b11, (Fraction(1, 2), Fraction(0)))
        x_below = element_index(poset, 0b01, (Fraction(1, 2),))
        y_below = element_index(poset, 0b01, (Fraction(0),))
        self.assertIn((x_below, x), poset.covers)
        self.assertNotIn((y_below, x), poset.covers)

    def test_m2_is_the_digon(self):
        poset = build_poset(M2)
        self.assertEqual((len(poset), len(poset.covers)), (5, 6))
        self.assertTrue(posets_isomorphic(poset, synthetic_poset(P1_LABELS, P1_COVERS)))

    def test_m3(self):
        poset = build_poset(M3)
        self.assertEqual((len(poset), len(poset.covers)), (8, 11))
        self.assertFalse(any(e.subset == 0b111 for e in poset.elements))
        zeta = element_index(poset, 0b011, (Fraction(1, 2), Fraction(1, 2)))
        below = {poset.elements[c].subset for c, parent in poset.covers if parent == zeta}
        self.assertEqual(below, {0b001, 0b010})

    def test_empty(self):
        poset = build_poset(EMPTY)
        self.assertEqual(len(poset), 1)
        self.assertEqual(poset.covers, ())


class MeetJoinTests(SimpleTestCase):
    def setUp(self):
        self.p1 = synthetic_poset(P1_LABELS, P1_COVERS)

    def test_digon(self):
        a, b, one, two = 1, 2, 3, 4
        self.assertEqual(meet(self.p1, one, a), a)
        self.assertEqual(join(self.p1, a, b), frozenset({one, two}))
        self.assertEqual(join(self.p1, one, two), frozenset())
        self.assertEqual(meet(self.p1, one, 0), 0)
        self.assertEqual(meet(self.p1, two, two), two)

    def test_tops_have_no_unique_meet(self):
        with self.assertRaises(ValidationError) as ctx:
            meet(self.p1, 3, 4)
        self.assertEqual(ctx.exception.code, "no_unique_meet")

    def test_different_components(self):
        poset = build_poset(TWO_POINTS)
        with self.assertRaises(ValidationError) as ctx:
            meet(poset, 0, 1)
        self.assertEqual(ctx.exception.code, "no_common_lower_bound")

    def test_unknown_element(self):
        with self.assertRaises(ValidationError) as ctx:
            join(self.p1, 0, 9)
        self.assertEqual(ctx.exception.code, "unknown_element")


class SimplicialTests(SimpleTestCase):
    def test_golden_components(self):
        for r in (M1, M2, M3, EMPTY):
            for component in components(build_poset(r)):
                with self.subTest(r=r):
                    self.assertTrue(is_simplicial(component).simplicial)

    def test_three_atoms_under_one_top(self):
        p2 = synthetic_poset(P2_LABELS, P2_COVERS)
        check = is_simplicial(p2)
        self.assertFalse(check.simplicial)
        bottom, sigma = check.witness
        self.assertEqual((p2.elements[bottom].label, p2.elements[sigma].label), ("0", "1"))
        self.assertFalse(lower_intervals_boolean(p2))

    def test_single_element(self):
        self.assertTrue(is_simplicial(synthetic_poset(["0"], [])).simplicial)

    def test_bottom_is_not_an_atom(self):
        self.assertTrue(is_simplicial(synthetic_poset(["0", "a"], [(0, 1)])).simplicial)
        self.assertTrue(is_simplicial(synthetic_poset(P1_LABELS, P1_COVERS)).simplicial)
        (m2,) = components(build_poset(M2))
        self.assertTrue(is_simplicial(m2).simplicial)

    def test_chain_is_not_boolean(self):
        check = is_simplicial(synthetic_poset(["0", "a", "b"], [(0, 1), (1, 2)]))
        self.assertFalse(check.simplicial)
        self.assertEqual(check.witness, (0, 2))

    def test_no_unique_bottom(self):
        with self.assertRaises(ValidationError) as ctx:
            is_simplicial(build_poset(TWO_POINTS))
        self.assertEqual(ctx.exception.code, "no_unique_bottom")

    def test_synthetic_input_errors(self):
        with self.assertRaises(ValidationError):
            synthetic_poset(["0", "1"], [(0, 1), (1, 0)])
        with self.assertRaises(ValidationError):
            synthetic_poset(["0"], [(0, 3)])


class ComponentTests(SimpleTestCase):
    def test_counts(self):
        self.assertEqual(len(components(build_poset(M1))), 1)
        self.assertEqual(len(components(build_poset(EMPTY))), 1)
        parts = components(build_poset(TWO_POINTS))
        self.assertEqual([len(c) for c in parts], [1, 1])
        self.assertEqual([c.ids for c in parts], [(0,), (1,)])

    def test_links(self):
        poset = build_poset(M1)
        self.assertTrue(posets_isomorphic(link(poset, unique_bottom(poset)), poset))
        self.assertEqual(len(link(poset, 5)), 1)
        parts = build_poset(TWO_POINTS)
        self.assertTrue(posets_isomorphic(link(parts, 0), link(parts, 1)))

    def test_f_vectors(self):
        cases = [(M2, (1, 2, 2)), (M1, (1, 3, 2)), (M3, (1, 3, 4)), (EMPTY, (1,))]
        for r, expected in cases:
            with self.subTest(expected=expected):
                (component,) = components(build_poset(r))
                self.assertEqual(f_vector(component), FVector(expected, len(expected) - 1))


class StructureOnCorpusTests(SimpleTestCase):
    def test_structure(self):
        for r in CORPUS:
            poset = build_poset(r)
            parts = components(poset)
            initial = profile(r, 0).multiplicity
            with self.subTest(r=r):
                self.assertEqual(len(parts), initial)
                for component in parts:
                    self.assertTrue(is_simplicial(component).simplicial)
                    self.assertEqual(f_vector(component), f_vector(parts[0]))
                    if len(component) <= SMALL:
                        self.assertTrue(posets_isomorphic(component, parts[0]))
                        self.assertTrue(posets_isomorphic(component, link(poset, component.ids[0])))
                counts = [0] * (poset.max_rank + 1)
                for p in subset_profiles(r):
                    if p.independent:
                        counts[p.size] += p.multiplicity
                self.assertEqual(list(f_vector(poset).entries), counts)
                for i, per_index in cover_counts_by_index(poset).items():
                    self.assertEqual(set(per_index), set(members(poset.elements[i].subset)))
                    self.assertTrue(all(count == 1 for count in per_index.values()))
                self.assertTrue(lower_intervals_boolean(poset))


class PointDecompositionTests(SimpleTestCase):
    def test_points(self):
        half = Fraction(1, 2)
        cases = [
            (M2, [(0, 0), (half, half)]),
            (M1, [(0, 0), (half, 0)]),
            (M3, [(0, 0), (half, half)]),
        ]
        for r, expected in cases:
            with self.subTest(expected=expected):
                self.assertEqual(values(rank_zero_points(r)), [tuple(Fraction(v) for v in p) for p in expected])

    def test_decomposition(self):
        for r, expected in ((M3, "y + 3"), (M2, "2"), (M1, "2"), (EMPTY, "1")):
            with self.subTest(expected=expected):
                result = verify_point_decomposition(r)
                self.assertTrue(result.holds)
                self.assertEqual(str(result.left), expected)
                self.assertEqual(result.right, result.left)

    def test_decomposition_on_corpus(self):
        for r in CORPUS:
            with self.subTest(r=r):
                self.assertTrue(verify_point_decomposition(r).holds)
