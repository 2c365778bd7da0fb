import logging
from collections import defaultdict
from math import comb

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from .models import BivariatePoly, HilbertSeries, LaurentPoly, UnivariatePoly

logger = logging.getLogger(__name__)

Poly = BivariatePoly | UnivariatePoly | LaurentPoly


def _terms(p: Poly) -> dict:
    if isinstance(p, UnivariatePoly):
        return dict(enumerate(p.coefficients))
    return p.as_dict()


def _rebuild(kind: type, mapping: dict) -> Poly:
    if kind is BivariatePoly:
        return BivariatePoly.from_dict(mapping)
    if kind is LaurentPoly:
        return LaurentPoly.from_dict(mapping)
    size = max((k for k, c in mapping.items() if c), default=-1) + 1
    return UnivariatePoly.of(mapping.get(k, 0) for k in range(size))


def _check_same_type(a: Poly, b: Poly) -> None:
    if type(a) is not type(b):
        raise ValidationError(
            _("Cannot combine %(a)s with %(b)s.") % {"a": type(a).__name__, "b": type(b).__name__},
            code="type_mismatch",
        )


def _exponent_sum(a, b):
    if isinstance(a, tuple):
        return a[0] + b[0], a[1] + b[1]
    return a + b


def poly_add(a: Poly, b: Poly) -> Poly:
    """Adds two polynomials of the same kind.

    Raises:
        ValidationError: If the kinds differ.
    """

    _check_same_type(a, b)
    result = defaultdict(int, _terms(a))
    for e, c in _terms(b).items():
        result[e] += c
    return _rebuild(type(a), result)


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Multiplies two polynomials of the same kind.

    Raises:
        ValidationError: If the kinds differ.
    """

    _check_same_type(a, b)
    result = defaultdict(int)
    for e, c in _terms(a).items():
        for f, d in _terms(b).items():
            result[_exponent_sum(e, f)] += c * d
    return _rebuild(type(a), result)


def poly_scale(p: Poly, k: int) -> Poly:
    return _rebuild(type(p), {e: k * c for e, c in _terms(p).items()})


def poly_pow(p: Poly, n: int) -> Poly:
    result = _rebuild(type(p), {(0, 0) if isinstance(p, BivariatePoly) else 0: 1})
    for _ in range(n):
        result = poly_mul(result, p)
    return result


def shifted_monomial(c: int, a: int, b: int) -> BivariatePoly:
    """Expands c·(x - 1)^a·(y - 1)^b."""

    return BivariatePoly.from_dict(
        {
            (i, j): c * comb(a, i) * (-1) ** (a - i) * comb(b, j) * (-1) ** (b - j)
            for i in range(a + 1)
            for j in range(b + 1)
        }
    )


def evaluate_x(p: BivariatePoly, value: int) -> BivariatePoly:
    """p(value, y), kept as a polynomial in y."""

    result = defaultdict(int)
    for (i, j), c in p.terms:
        result[0, j] += c * value**i
    return BivariatePoly.from_dict(result)


def substitute_xy(p: BivariatePoly, x: LaurentPoly, y: LaurentPoly) -> LaurentPoly:
    """Substitutes Laurent polynomials in t for x and y.

    Args:
        p: The polynomial to specialize.
        x: Value of x, e.g. ``LaurentPoly.monomial(1, -1)`` for 1/t.
        y: Value of y.

    Returns:
        LaurentPoly: The exact specialization p(x(t), y(t)).
    """

    result = LaurentPoly()
    x_powers, y_powers = {}, {}
    for (i, j), c in p.terms:
        if i not in x_powers:
            x_powers[i] = poly_pow(x, i)
        if j not in y_powers:
            y_powers[j] = poly_pow(y, j)
        term = poly_scale(poly_mul(x_powers[i], y_powers[j]), c)
        result = poly_add(result, term)
    return result


def one_minus_t_power(k: int) -> UnivariatePoly:
    """(1 - t)^k."""
    return UnivariatePoly.of(comb(k, i) * (-1) ** i for i in range(k + 1))


_ONE_MINUS_T = UnivariatePoly((1, -1))


def normalize_series(numerator: LaurentPoly, pole_order: int) -> HilbertSeries:
    """Brings numerator / (1 - t)^pole_order into canonical form.

    Logic:
        - A numerator with negative powers of t is not a power series and
          is rejected.
        - Common (1 - t) factors are cancelled while the pole order is
          positive and the numerator vanishes at t = 1.
        - A zero numerator gives the zero series.

    Returns:
        HilbertSeries: The canonical series.

    Raises:
        ValidationError: If the numerator has negative powers of t.
    """

    if isinstance(numerator, UnivariatePoly):
        numerator = LaurentPoly.from_univariate(numerator)
    if numerator.is_zero():
        return HilbertSeries(UnivariatePoly())
    if numerator.min_degree < 0:
        raise ValidationError(
            _("Series numerator has a negative power t^%(k)d.") % {"k": numerator.min_degree},
            code="negative_power",
        )
    if pole_order < 0:
        raise ValidationError(_("Pole order must be nonnegative."), code="negative_power")
    top = numerator.min_degree + len(numerator.coefficients)
    mapping = numerator.as_dict()
    poly = UnivariatePoly.of(mapping.get(k, 0) for k in range(top))
    while pole_order and poly.at_one() == 0:
        poly = poly.divide_exact(_ONE_MINUS_T)
        pole_order -= 1
    return HilbertSeries(poly, pole_order)


def expand_series(s: HilbertSeries, terms: int | None = None) -> list[int]:
    """Returns the first ``terms`` power-series coefficients of a series.

    Uses [t^n] (1 - t)^-k = C(n + k - 1, k - 1). ``terms`` defaults to the
    ``ZMATROID_SERIES_TERMS`` setting.
    """

    if terms is None:
        terms = settings.ZMATROID_SERIES_TERMS
    k = s.pole_order

    def denominator_coefficient(n: int) -> int:
        if k == 0:
            return int(n == 0)
        return comb(n + k - 1, k - 1)

    return [
        sum(c * denominator_coefficient(n - i) for i, c in enumerate(s.numerator.coefficients) if i <= n)
        for n in range(terms)
    ]


def scale_series(s: HilbertSeries, k: int) -> HilbertSeries:
    """Returns k·s for a positive integer k."""

    if k <= 0:
        raise ValidationError(_("Series can only be scaled by a positive integer."), code="invalid_scale")
    return HilbertSeries(poly_scale(s.numerator, k), s.pole_order)


def _monomial(c: int, factors: list[str], first: bool) -> str:
    sign = "-" if c < 0 else "+"
    c = abs(c)
    if not factors:
        body = str(c)
    elif c == 1:
        body = "*".join(factors)
    else:
        body = "*".join([str(c), *factors])
    if first:
        return f"-{body}" if sign == "-" else body
    return f" {sign} {body}"


def _power(name: str, k: int) -> list[str]:
    if k == 0:
        return []
    return [name] if k == 1 else [f"{name}^{k}"]


def format_poly(p: BivariatePoly, names: tuple[str, str] = ("x", "y")) -> str:
    """Renders a polynomial in graded-lex order, e.g. ``x^2 + x``.

    Args:
        p: The polynomial.
        names: Printed names of the first and second variable. ``("y", "x")``
            prints p(y, x) while keeping the term order of p.

    Returns:
        str: The polynomial, ``0`` for the zero polynomial.
    """

    if p.is_zero():
        return "0"
    first_name, second_name = names
    return "".join(
        _monomial(c, _power(first_name, i) + _power(second_name, j), n == 0) for n, ((i, j), c) in enumerate(p.terms)
    )


def format_univariate(coefficients, name: str = "t", offset: int = 0) -> str:
    """Renders an ascending-degree polynomial, e.g. ``1 + t + 2*t^2``."""

    parts = [(offset + k, c) for k, c in enumerate(coefficients) if c]
    if not parts:
        return "0"
    return "".join(_monomial(c, _power(name, k), n == 0) for n, (k, c) in enumerate(parts))


def format_laurent(p: LaurentPoly, name: str = "t") -> str:
    return format_univariate(p.coefficients, name, p.min_degree)
