import logging
from math import comb

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from core.exceptions import CrossCheckError
from poly.models import HilbertSeries, LaurentPoly, UnivariatePoly
from poly.services import normalize_series, poly_add, poly_mul, poly_pow, scale_series, substitute_xy
from torsion_poset.models import TorsionPoset
from torsion_poset.services import build_poset, components, f_vector, is_simplicial, join, meet, unique_bottom
from zmatroid.models import Realization
from zmatroid.services import (
    arithmetic_tutte,
    dual_realization,
    is_essential,
    matroid_rank,
    modulo_initial_torsion,
    profile,
)

from .models import FaceIdealPresentation, FaceRelation, FVector, HVector, MainTheoremCheck

logger = logging.getLogger(__name__)


def h_from_f(f: FVector) -> HVector:
    """Converts an f-vector to the h-vector.

    Logic:
        - Σ_i f_(i-1)·(t - 1)^(r-i) = Σ_i h_i·t^(r-i), so
          h_i = Σ_(j<=i) f_(j-1)·C(r - j, r - i)·(-1)^(i-j).

    Args:
        f: The f-vector (f_-1, ..., f_(r-1)).

    Returns:
        HVector: (h_0, ..., h_r).
    """

    r = f.rank
    entries = tuple(
        sum(f.entries[j] * comb(r - j, r - i) * (-1) ** (i - j) for j in range(i + 1)) for i in range(r + 1)
    )
    return HVector(entries, r)


def f_from_h(h: HVector) -> FVector:
    """Inverse of :func:`h_from_f`, substituting t = s + 1."""
    r = h.rank
    entries = tuple(sum(h.entries[j] * comb(r - j, r - i) for j in range(i + 1)) for i in range(r + 1))
    return FVector(entries, r)


def hilbert_from_h(h: HVector) -> HilbertSeries:
    """(h_0 + h_1·t + ... + h_r·t^r) / (1 - t)^r in canonical form."""
    return normalize_series(UnivariatePoly.of(h.entries), h.rank)


def _t_power(k: int) -> UnivariatePoly:
    return UnivariatePoly.of([0] * k + [1])


def _one_minus_t(k: int) -> UnivariatePoly:
    return UnivariatePoly.of([1] + [0] * (k - 1) + [-1])


def hilbert_from_f(f: FVector) -> HilbertSeries:
    """Σ_i f_(i-1)·t^i / (1 - t)^i, put over the common denominator (1 - t)^r."""

    r = f.rank
    numerator = UnivariatePoly()
    for i, count in enumerate(f.entries):
        term = poly_mul(_t_power(i), poly_pow(_one_minus_t(1), r - i))
        numerator = poly_add(numerator, UnivariatePoly.of(count * c for c in term.coefficients))
    return normalize_series(numerator, r)


def _require_simplicial(component: TorsionPoset) -> int:
    bottom = unique_bottom(component)
    check = is_simplicial(component)
    if not check.simplicial:
        raise ValidationError(
            _("The interval [%(bottom)d, %(top)d] is not boolean.")
            % {"bottom": component.ids[check.witness[0]], "top": component.ids[check.witness[1]]},
            code="not_simplicial",
        )
    return bottom


def _between(low: int, high: int) -> UnivariatePoly:
    """Π (1 - t^ρ) for low < ρ < high."""
    result = UnivariatePoly.of([1])
    for rho in range(low + 1, high):
        result = poly_mul(result, _one_minus_t(rho))
    return result


def hilbert_via_chains(component: TorsionPoset) -> HilbertSeries:
    """Counts the monomial basis of the face ring over the chains of a component.

    Logic:
        - The series is Σ over chains bottom < σ_1 < ... < σ_k of
          Π_i t^(rk σ_i) / (1 - t^(rk σ_i)).
        - Chain ranks strictly increase, so every term fits over
          Q = Π_(1 <= ρ <= R) (1 - t^ρ). N(σ) accumulates the numerators of
          the chains ending at σ, each factor (1 - t^ρ) for a rank ρ skipped
          by the chain being kept in the numerator.
        - Q = (1 - t)^R · Π_ρ (1 + t + ... + t^(ρ-1)); the second factor must
          divide the total numerator exactly.

    Returns:
        HilbertSeries: The canonical series.

    Raises:
        ValidationError: If the component is not simplicial.
        CrossCheckError: If the numerator is not divisible by the cyclotomic part of Q.
    """

    bottom = _require_simplicial(component)
    rank = {i: e.rank for i, e in enumerate(component.elements)}
    top = component.max_rank - rank[bottom]
    order = sorted(range(len(component)), key=lambda i: rank[i])
    numerators: dict[int, UnivariatePoly] = {bottom: UnivariatePoly.of([1])}
    total = poly_mul(numerators[bottom], _between(0, top + 1))
    for sigma in order:
        if sigma == bottom:
            continue
        height = rank[sigma] - rank[bottom]
        inner = UnivariatePoly()
        for tau in component.below(sigma):
            below_height = rank[tau] - rank[bottom]
            inner = poly_add(inner, poly_mul(numerators[tau], _between(below_height, height)))
        numerators[sigma] = poly_mul(_t_power(height), inner)
        total = poly_add(total, poly_mul(numerators[sigma], _between(height, top + 1)))
    cyclotomic = UnivariatePoly.of([1])
    for rho in range(1, top + 1):
        cyclotomic = poly_mul(cyclotomic, UnivariatePoly.of([1] * rho))
    quotient = total.divide_exact(cyclotomic)
    if quotient is None:
        raise CrossCheckError(f"Chain numerator {total} is not divisible by {cyclotomic}")
    return normalize_series(quotient, top)


def face_ideal(component: TorsionPoset) -> FaceIdealPresentation:
    """Presents the face ideal of a simplicial component.

    Logic:
        - Every element σ is a variable x_σ of degree rk σ; the bottom gives
          x_bottom - 1.
        - Every incomparable pair gives x_σ·x_τ - x_(σ∧τ)·Σ_(γ ∈ σ∨τ) x_γ.
          The sum is empty when σ and τ have no common upper bound, and the
          meet is only needed otherwise.
        - Comparable pairs give x_σ·x_τ - x_σ·x_τ and are omitted.

    Returns:
        FaceIdealPresentation: Variables, bottom and relations, as element ids.

    Raises:
        ValidationError: If the component is not simplicial.
    """

    bottom = _require_simplicial(component)
    ids = component.ids
    relations = []
    for a in range(len(component)):
        for b in range(a + 1, len(component)):
            if component.leq(a, b) or component.leq(b, a):
                continue
            upper = join(component, a, b)
            lower = meet(component, a, b) if upper else bottom
            relations.append(
                FaceRelation(
                    (ids[a], ids[b]),
                    None if lower == bottom else ids[lower],
                    tuple(sorted(ids[g] for g in upper)),
                )
            )
    variables = tuple((ids[i], e.rank) for i, e in enumerate(component.elements))
    logger.debug("Face ideal with %d variables and %d pair relations", len(variables), len(relations))
    return FaceIdealPresentation(variables, ids[bottom], tuple(relations))


def _render_relation(relation: FaceRelation) -> str:
    left = "x{}*x{}".format(*relation.pair)
    if not relation.join:
        return left
    total = " + ".join(f"x{g}" for g in relation.join)
    if len(relation.join) > 1:
        total = f"({total})"
    if relation.meet is not None:
        total = f"x{relation.meet}*{total}"
    return f"{left} - {total}"


def render_face_ideal(presentation: FaceIdealPresentation) -> str:
    """Renders a presentation as plain text.

    The first line lists the variables with their degrees, then one generator
    per line, the bottom relation first.
    """

    variables = ", ".join(f"x{i}[{degree}]" for i, degree in presentation.variables)
    lines = [f"variables: {variables}", f"x{presentation.bottom} - 1"]
    lines.extend(_render_relation(relation) for relation in presentation.relations)
    return "\n".join(lines)


def face_module_hilbert(r: Realization) -> HilbertSeries:
    """Hilbert series of the face module k[Gr(M′)]^m(∅).

    Logic:
        - M′ is the realization modulo the torsion of M(∅); its poset has a
          single component.
        - The component's series comes from its h-vector and is
          cross-checked against the chain count.
        - The result is scaled by m(∅).

    Args:
        r: The realization.

    Returns:
        HilbertSeries: The canonical series.

    Raises:
        CrossCheckError: If the reduced poset is disconnected or the two
            series disagree.
    """

    if not is_essential(r):
        logger.warning("Realization is not essential; the face module series uses its matroid rank")
    reduced = modulo_initial_torsion(r)
    parts = components(build_poset(reduced))
    if len(parts) != 1:
        raise CrossCheckError(f"Reduced poset has {len(parts)} components instead of one")
    (component,) = parts
    series = hilbert_from_h(h_from_f(f_vector(component, matroid_rank(reduced))))
    chains = hilbert_via_chains(component)
    if chains != series:
        raise CrossCheckError(f"Chain count {chains} disagrees with the h-vector series {series}")
    return scale_series(series, profile(r, 0).multiplicity)


def main_theorem_right_side(r: Realization) -> HilbertSeries:
    """t^r/(1 - t)^r · T_M(1/t, 1)."""
    rank = matroid_rank(r)
    specialized = substitute_xy(arithmetic_tutte(r), LaurentPoly.monomial(1, -1), LaurentPoly.monomial(1, 0))
    return normalize_series(specialized.shift(rank), rank)


def _dual_right_side(r: Realization) -> HilbertSeries:
    rank = matroid_rank(r)
    dual = arithmetic_tutte(dual_realization(r))
    specialized = substitute_xy(dual, LaurentPoly.monomial(1, 0), LaurentPoly.monomial(1, -1))
    return normalize_series(specialized.shift(rank), rank)


def verify_main_theorem(r: Realization) -> MainTheoremCheck:
    """Checks Hilb(k[M], t) = t^r/(1 - t)^r · T_(M*)(1, 1/t).

    The right side is computed through T_M(1/t, 1), and also through the dual
    realization when M(∅) is free.

    Returns:
        MainTheoremCheck: The verdict with every side computed.
    """

    left = face_module_hilbert(r)
    right = main_theorem_right_side(r)
    dual_right = _dual_right_side(r) if profile(r, 0).structure.is_free else None
    holds = right == left and (dual_right is None or dual_right == left)
    if not holds:
        logger.warning("Face module series %s does not match %s (dual route: %s)", left, right, dual_right)
    return MainTheoremCheck(holds, left, right, dual_right)
