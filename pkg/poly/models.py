from dataclasses import dataclass
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

Exponent = tuple[int, int]


def _graded_lex(exponent: Exponent) -> tuple[int, int]:
    i, j = exponent
    return -(i + j), -i


def _strip(coefficients) -> tuple[int, ...]:
    coefficients = list(coefficients)
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


@dataclass(frozen=True)
class BivariatePoly:
    """Represents an integer polynomial in x and y.

    Attributes:
        terms (tuple): ``((i, j), c)`` pairs for c·x^i·y^j with c != 0, in
            graded-lexicographic order (total degree descending, then the
            x exponent descending).
    """

    terms: tuple[tuple[Exponent, int], ...] = ()

    def __post_init__(self):
        exponents = [e for e, _ in self.terms]
        if (
            any(c == 0 for _, c in self.terms)
            or any(i < 0 or j < 0 for i, j in exponents)
            or exponents != sorted(set(exponents), key=_graded_lex)
        ):
            raise ValidationError(_("Polynomial terms are not in canonical form."), code="malformed_polynomial")

    @classmethod
    def from_dict(cls, mapping: dict[Exponent, int]) -> "BivariatePoly":
        return cls(tuple((e, mapping[e]) for e in sorted(mapping, key=_graded_lex) if mapping[e]))

    @classmethod
    def constant(cls, c: int) -> "BivariatePoly":
        return cls.from_dict({(0, 0): c})

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def swap(self) -> "BivariatePoly":
        """Returns p(y, x)."""
        return BivariatePoly.from_dict({(j, i): c for (i, j), c in self.terms})

    def evaluate(self, x, y):
        """Evaluates at numbers (int or Fraction) exactly."""
        return sum((c * Fraction(x) ** i * Fraction(y) ** j for (i, j), c in self.terms), Fraction(0))

    def __str__(self):
        from .services import format_poly

        return format_poly(self)


@dataclass(frozen=True)
class UnivariatePoly:
    """Represents an integer polynomial in t.

    Attributes:
        coefficients (tuple[int]): Indexed by degree; no trailing zeros, empty for the zero polynomial.
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        if self.coefficients and self.coefficients[-1] == 0:
            raise ValidationError(_("Polynomial has trailing zero coefficients."), code="malformed_polynomial")

    @classmethod
    def of(cls, coefficients) -> "UnivariatePoly":
        return cls(_strip(int(c) for c in coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def at_one(self) -> int:
        return sum(self.coefficients)

    def evaluate(self, t):
        return sum((c * Fraction(t) ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    def divide_exact(self, divisor: "UnivariatePoly") -> "UnivariatePoly | None":
        """Exact polynomial division over Z.

        Returns:
            UnivariatePoly: The quotient, when the remainder is zero and every
            quotient coefficient is an integer.
            None: Otherwise.
        """

        if divisor.is_zero():
            raise ValidationError(_("Division by the zero polynomial."), code="division_by_zero")
        remainder = list(self.coefficients)
        lead = divisor.coefficients[-1]
        quotient = [0] * max(len(remainder) - len(divisor.coefficients) + 1, 0)
        for k in range(len(quotient) - 1, -1, -1):
            c = remainder[k + divisor.degree]
            if c % lead:
                return None
            q = c // lead
            quotient[k] = q
            for i, d in enumerate(divisor.coefficients):
                remainder[k + i] -= q * d
        if any(remainder):
            return None
        return UnivariatePoly.of(quotient)

    def __str__(self):
        from .services import format_univariate

        return format_univariate(self.coefficients)


@dataclass(frozen=True)
class LaurentPoly:
    """Represents an integer Laurent polynomial Σ c_k t^(min_degree + k).

    Attributes:
        min_degree (int): Exponent of the first coefficient, possibly negative.
        coefficients (tuple[int]): No leading or trailing zeros; empty (with
            ``min_degree`` 0) for the zero polynomial.
    """

    min_degree: int = 0
    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        if self.coefficients and (self.coefficients[0] == 0 or self.coefficients[-1] == 0):
            raise ValidationError(_("Laurent polynomial is not trimmed."), code="malformed_polynomial")
        if not self.coefficients and self.min_degree:
            raise ValidationError(_("The zero Laurent polynomial has min_degree 0."), code="malformed_polynomial")

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "LaurentPoly":
        support = [k for k, c in mapping.items() if c]
        if not support:
            return cls()
        low, high = min(support), max(support)
        return cls(low, tuple(mapping.get(k, 0) for k in range(low, high + 1)))

    @classmethod
    def monomial(cls, c: int, k: int) -> "LaurentPoly":
        return cls.from_dict({k: c})

    @classmethod
    def from_univariate(cls, p: UnivariatePoly) -> "LaurentPoly":
        return cls.from_dict(dict(enumerate(p.coefficients)))

    def as_dict(self) -> dict[int, int]:
        return {self.min_degree + k: c for k, c in enumerate(self.coefficients) if c}

    def is_zero(self) -> bool:
        return not self.coefficients

    def shift(self, k: int) -> "LaurentPoly":
        """Multiplies by t^k."""
        return LaurentPoly(self.min_degree + k, self.coefficients) if self.coefficients else self

    def __str__(self):
        from .services import format_laurent

        return format_laurent(self)


@dataclass(frozen=True)
class HilbertSeries:
    """Represents the power series numerator / (1 - t)^pole_order.

    The form is canonical: the numerator is not divisible by (1 - t) while
    the pole order is positive, and the zero series has pole order 0, so
    series equality is dataclass equality. Build instances with
    ``poly.services.normalize_series``.

    Attributes:
        numerator (UnivariatePoly): Numerator polynomial.
        pole_order (int): Exponent of (1 - t) in the denominator.
    """

    numerator: UnivariatePoly
    pole_order: int = 0

    def __post_init__(self):
        if self.pole_order < 0 or (
            self.pole_order and (self.numerator.is_zero() or self.numerator.at_one() == 0)
        ):
            raise ValidationError(_("Hilbert series is not in canonical form."), code="malformed_series")

    def __str__(self):
        numerator = str(self.numerator)
        if not self.pole_order:
            return numerator
        return f"({numerator}) / (1 - t)^{self.pole_order}"
