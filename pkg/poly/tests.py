import random
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings
from sympy import series, symbols

from .models import BivariatePoly, HilbertSeries, LaurentPoly, UnivariatePoly
from .services import (
    expand_series,
    format_poly,
    normalize_series,
    one_minus_t_power,
    poly_add,
    poly_mul,
    scale_series,
    shifted_monomial,
    substitute_xy,
)

ONE_OVER_T = LaurentPoly.monomial(1, -1)
ONE = LaurentPoly.monomial(1, 0)


def random_bivariate(rng: random.Random) -> BivariatePoly:
    return BivariatePoly.from_dict(
        {(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-4, 4) for _ in range(rng.randint(0, 4))}
    )


class BivariatePolyTests(SimpleTestCase):
    def test_canonical_order_is_enforced(self):
        with self.assertRaises(ValidationError):
            BivariatePoly((((0, 0), 1), ((2, 0), 1)))
        with self.assertRaises(ValidationError):
            BivariatePoly((((1, 0), 0),))

    def test_printing(self):
        cases = [
            ({(2, 0): 1, (1, 0): 1}, "x^2 + x"),
            ({(2, 0): 1, (0, 0): 1}, "x^2 + 1"),
            ({(2, 0): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1}, "x^2 + x + y + 1"),
            ({(1, 1): -2, (0, 0): 3}, "-2*x*y + 3"),
            ({(0, 2): 1, (1, 0): -1}, "y^2 - x"),
            ({}, "0"),
        ]
        for terms, expected in cases:
            with self.subTest(expected=expected):
                self.assertEqual(str(BivariatePoly.from_dict(terms)), expected)

    def test_swapped_names(self):
        p = BivariatePoly.from_dict({(2, 0): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1})
        self.assertEqual(format_poly(p, names=("y", "x")), "y^2 + y + x + 1")
        self.assertEqual(str(p.swap()), "y^2 + x + y + 1")

    def test_evaluate(self):
        p = BivariatePoly.from_dict({(2, 0): 1, (0, 1): 1, (0, 0): 1})
        self.assertEqual(p.evaluate(1, 1), 3)
        self.assertEqual(p.evaluate(Fraction(1, 2), 0), Fraction(5, 4))


class ArithmeticTests(SimpleTestCase):
    def test_assembles_tutte_polynomial(self):
        # (x-1)^2 + 2(x-1) + (x-1) + 2 for the four subsets of a rank 2 example
        p = shifted_monomial(1, 2, 0)
        for term in (shifted_monomial(2, 1, 0), shifted_monomial(1, 1, 0), shifted_monomial(2, 0, 0)):
            p = poly_add(p, term)
        self.assertEqual(str(p), "x^2 + x")

    def test_identity_and_difference_of_squares(self):
        p = BivariatePoly.from_dict({(1, 2): 3, (0, 0): -1})
        self.assertEqual(poly_mul(p, BivariatePoly.constant(1)), p)
        product = poly_mul(UnivariatePoly((1, 1)), UnivariatePoly((1, -1)))
        self.assertEqual(product, UnivariatePoly((1, 0, -1)))

    def test_ring_axioms(self):
        rng = random.Random(3)
        for _ in range(100):
            a, b, c = (random_bivariate(rng) for _ in range(3))
            with self.subTest(a=str(a), b=str(b), c=str(c)):
                self.assertEqual(poly_add(a, b), poly_add(b, a))
                self.assertEqual(poly_mul(a, b), poly_mul(b, a))
                self.assertEqual(poly_mul(poly_mul(a, b), c), poly_mul(a, poly_mul(b, c)))
                self.assertEqual(poly_mul(a, poly_add(b, c)), poly_add(poly_mul(a, b), poly_mul(a, c)))

    def test_type_mismatch(self):
        with self.assertRaises(ValidationError) as ctx:
            poly_add(UnivariatePoly((1,)), LaurentPoly.monomial(1, 0))
        self.assertEqual(ctx.exception.code, "type_mismatch")

    def test_divide_exact(self):
        self.assertEqual(UnivariatePoly((1, 0, -1)).divide_exact(UnivariatePoly((1, -1))), UnivariatePoly((1, 1)))
        self.assertIsNone(UnivariatePoly((1, 0, 1)).divide_exact(UnivariatePoly((1, -1))))


class SubstituteTests(SimpleTestCase):
    def test_examples(self):
        cases = [
            ({(2, 0): 1, (0, 0): 1}, {-2: 1, 0: 1}),
            ({(0, 0): 5}, {0: 5}),
            ({(2, 0): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1}, {-2: 1, -1: 1, 0: 2}),
        ]
        for terms, expected in cases:
            with self.subTest(terms=terms):
                p = BivariatePoly.from_dict(terms)
                self.assertEqual(substitute_xy(p, ONE_OVER_T, ONE), LaurentPoly.from_dict(expected))

    def test_printing(self):
        self.assertEqual(str(LaurentPoly.from_dict({-2: 1, -1: 1, 0: 2})), "t^-2 + t^-1 + 2")


class NormalizeSeriesTests(SimpleTestCase):
    def test_examples(self):
        one_plus_t_squared_times = poly_mul(UnivariatePoly((1, 0, 1)), one_minus_t_power(2))
        cases = [
            (UnivariatePoly((1, 0, -1)), 3, HilbertSeries(UnivariatePoly((1, 1)), 2)),
            (one_plus_t_squared_times, 4, HilbertSeries(UnivariatePoly((1, 0, 1)), 2)),
            (UnivariatePoly(), 3, HilbertSeries(UnivariatePoly())),
            (one_minus_t_power(2), 2, HilbertSeries(UnivariatePoly((1,)))),
        ]
        for numerator, pole_order, expected in cases:
            with self.subTest(numerator=numerator.coefficients, pole_order=pole_order):
                self.assertEqual(normalize_series(LaurentPoly.from_univariate(numerator), pole_order), expected)

    def test_negative_power(self):
        with self.assertRaises(ValidationError) as ctx:
            normalize_series(LaurentPoly.from_dict({-1: 1, 0: 1}), 1)
        self.assertEqual(ctx.exception.code, "negative_power")

    def test_canonical_form_is_enforced(self):
        with self.assertRaises(ValidationError):
            HilbertSeries(UnivariatePoly((1, -1)), 1)

    def test_printing(self):
        cases = [
            (HilbertSeries(UnivariatePoly((1, 1, 2)), 2), "(1 + t + 2*t^2) / (1 - t)^2"),
            (HilbertSeries(UnivariatePoly((1, 3)), 1), "(1 + 3*t) / (1 - t)^1"),
            (HilbertSeries(UnivariatePoly((1,))), "1"),
            (HilbertSeries(UnivariatePoly()), "0"),
        ]
        for s, expected in cases:
            with self.subTest(expected=expected):
                self.assertEqual(str(s), expected)

    def test_idempotent_and_preserves_coefficients(self):
        t = symbols("t")
        rng = random.Random(5)
        for _ in range(60):
            coefficients = [rng.randint(-3, 3) for _ in range(rng.randint(1, 4))]
            factor = rng.randint(0, 2)
            pole_order = rng.randint(factor, 4)
            numerator = poly_mul(UnivariatePoly.of(coefficients), one_minus_t_power(factor))
            s = normalize_series(numerator, pole_order)
            with self.subTest(coefficients=coefficients, factor=factor, pole_order=pole_order):
                self.assertEqual(normalize_series(s.numerator, s.pole_order), s)
                expected = series(
                    sum(c * t**k for k, c in enumerate(numerator.coefficients)) / (1 - t) ** pole_order, t, 0, 20
                ).removeO()
                self.assertEqual(expand_series(s, 20), [int(expected.coeff(t, n)) for n in range(20)])

    @override_settings(ZMATROID_SERIES_TERMS=5)
    def test_expand_defaults_to_setting(self):
        self.assertEqual(expand_series(HilbertSeries(UnivariatePoly((1, 1)), 2)), [1, 3, 5, 7, 9])

    def test_scale(self):
        s = HilbertSeries(UnivariatePoly((1, 1)), 2)
        self.assertEqual(scale_series(s, 2), HilbertSeries(UnivariatePoly((2, 2)), 2))
        with self.assertRaises(ValidationError):
            scale_series(s, 0)
