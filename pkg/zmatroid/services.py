import logging
from functools import lru_cache

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from intlin.models import IntMatrix, Lattice, QuotientStructure
from intlin.services import cokernel_structure, extend_lattice, lattice, smith_normal_form
from poly.models import BivariatePoly
from poly.services import poly_add, shifted_monomial

from .models import GrothendieckClass, Realization, Subset, SubsetProfile, canonical_subsets, members

logger = logging.getLogger(__name__)


def realization(ambient_rank: int, generators, relations=()) -> Realization:
    """Builds a realization from plain integer vectors.

    Raises:
        ValidationError: If a vector does not have length ``ambient_rank``.
    """

    if ambient_rank < 0:
        raise ValidationError(_("The ambient rank must be nonnegative."), code="dimension_mismatch")
    return Realization(
        ambient_rank=ambient_rank,
        relations=lattice(ambient_rank, relations),
        generators=tuple(tuple(int(x) for x in z) for z in generators),
    )


def _check_subset(r: Realization, subset: Subset) -> None:
    if subset < 0 or subset >> r.n:
        raise ValidationError(
            _("Subset %(subset)s is not contained in a ground set of size %(n)d.") % {"subset": bin(subset), "n": r.n},
            code="subset_out_of_range",
        )


def _check_ground_set(r: Realization) -> None:
    limit = settings.ZMATROID_MAX_GROUND_SET
    if r.n > limit:
        raise ValidationError(
            _("Ground set of size %(n)d exceeds ZMATROID_MAX_GROUND_SET=%(limit)d.") % {"n": r.n, "limit": limit},
            code="ground_set_too_large",
        )


def _compute_structure(r: Realization, subset: Subset) -> QuotientStructure:
    return cokernel_structure(r.columns(subset), r.relations)


@lru_cache(maxsize=None)
def structure_cache(maxsize: int):
    """The memoized cokernel computation for a given ZMATROID_PROFILE_CACHE."""
    return lru_cache(maxsize=maxsize)(_compute_structure)


def _structure(r: Realization, subset: Subset) -> QuotientStructure:
    return structure_cache(settings.ZMATROID_PROFILE_CACHE)(r, subset)


def profile(r: Realization, subset: Subset) -> SubsetProfile:
    """Computes the invariants of M(A).

    Args:
        r: The realization.
        subset: Bitset of A.

    Returns:
        SubsetProfile: Structure, d(A), cork(A), m(A) and independence of A.

    Raises:
        ValidationError: If A is not a subset of the ground set.
    """

    _check_subset(r, subset)
    structure = _structure(r, subset)
    cork = _structure(r, 0).free_rank - structure.free_rank
    return SubsetProfile(
        subset=subset,
        structure=structure,
        d=structure.free_rank,
        cork=cork,
        multiplicity=structure.multiplicity,
        independent=cork == subset.bit_count(),
    )


def subset_profiles(r: Realization) -> list[SubsetProfile]:
    """Profiles every subset of the ground set in canonical order.

    Raises:
        ValidationError: If n exceeds ``ZMATROID_MAX_GROUND_SET``.
    """

    _check_ground_set(r)
    profiles = [profile(r, subset) for subset in canonical_subsets(r.n)]
    logger.debug("Profiled %d subsets of a ground set of size %d", len(profiles), r.n)
    return profiles


def matroid_rank(r: Realization) -> int:
    return profile(r, r.ground_set).cork


def is_essential(r: Realization) -> bool:
    """True iff M([n]) is finite, i.e. the generators span the rational ambient space."""
    return profile(r, r.ground_set).d == 0


def independent_subsets(r: Realization) -> list[Subset]:
    return [p.subset for p in subset_profiles(r) if p.independent]


def arithmetic_tutte(r: Realization) -> BivariatePoly:
    """Computes T_M(x, y) = Σ_A m(A)·(x - 1)^(r - cork(A))·(y - 1)^(#A - cork(A))."""

    rank = matroid_rank(r)
    result = BivariatePoly()
    for p in subset_profiles(r):
        result = poly_add(result, shifted_monomial(p.multiplicity, rank - p.cork, p.size - p.cork))
    return result


def ordinary_tutte(r: Realization, subset: Subset | None = None) -> BivariatePoly:
    """Computes the Tutte polynomial of the underlying Q-matroid.

    Multiplicities are ignored. With ``subset`` the polynomial is the one of
    the restriction to those generators.
    """

    if subset is None:
        subset = r.ground_set
    _check_subset(r, subset)
    _check_ground_set(r)
    ground = members(subset)
    restricted = Realization(r.ambient_rank, r.relations, tuple(r.generators[i] for i in ground))
    rank = matroid_rank(restricted)
    result = BivariatePoly()
    for p in subset_profiles(restricted):
        result = poly_add(result, shifted_monomial(1, rank - p.cork, p.size - p.cork))
    return result


def modulo_initial_torsion(r: Realization) -> Realization:
    """Quotients the realization by the torsion G_∅ of M(∅).

    Logic:
        - With U·B·V = D the Smith form of the relation basis B, the map
          v ↦ v·V identifies Z^D / relations with ⊕ Z/d_i ⊕ Z^(D - s).
        - Dropping the first s coordinates kills exactly G_∅, so the new
          realization lives in Z^(D - s) with no relations.

    Returns:
        Realization: M' with M'(A) = M(A) / G_∅ and M'(∅) free.
    """

    if r.relations.rank == 0:
        return r
    smith = smith_normal_form(r.relations.basis)
    s = len(smith.invariants)
    projected = [(IntMatrix.from_rows([z], r.ambient_rank) @ smith.V).row(0)[s:] for z in r.generators]
    return realization(r.ambient_rank - s, projected)


def dual_realization(r: Realization) -> Realization:
    """Builds the Gale-type dual realization.

    Logic:
        - The realization is first reduced modulo a (trivial) initial torsion,
          so the ambient group is Z^D with no relations.
        - M*(∅) is Z^n modulo the rows of the D x n generator matrix, and the
          dual generators are the standard basis vectors e_1, ..., e_n.

    Returns:
        Realization: M* with T_{M*}(x, y) = T_M(y, x).

    Raises:
        ValidationError: If M(∅) has torsion; reduce with ``modulo_initial_torsion`` first.
    """

    if profile(r, 0).multiplicity != 1:
        raise ValidationError(
            _("M(∅) has torsion; apply modulo_initial_torsion before dualizing."),
            code="torsion_in_initial_group",
        )
    free = modulo_initial_torsion(r)
    return realization(r.n, IntMatrix.identity(r.n).to_rows(), free.generator_matrix.to_rows())


def deletion(r: Realization, index: int) -> Realization:
    """Removes generator ``index`` (0-based); later generators shift down."""

    _check_subset(r, 1 << index)
    return Realization(r.ambient_rank, r.relations, r.generators[:index] + r.generators[index + 1 :])


def contraction(r: Realization, index: int) -> Realization:
    """Moves z_index into the relations, so M/i(A) = M(A ∪ {i})."""

    _check_subset(r, 1 << index)
    return Realization(
        r.ambient_rank,
        extend_lattice(r.relations, [r.generators[index]]),
        r.generators[:index] + r.generators[index + 1 :],
    )


def grothendieck_class(r: Realization) -> GrothendieckClass:
    """Pairs [M(A)] with [M*(E ∖ A)] for every subset A.

    Raises:
        ValidationError: If M(∅) has torsion (propagated from the dual).
    """

    dual = dual_realization(r)
    full = r.ground_set
    return GrothendieckClass(
        tuple((p.structure, profile(dual, full & ~p.subset).structure) for p in subset_profiles(r))
    )


def evaluate_gt(c: GrothendieckClass) -> BivariatePoly:
    """Evaluates a Grothendieck–Tutte class to a polynomial.

    Each pair contributes #G·(x - 1)^(free rank of M(A) - d(E))·(y - 1)^(free
    rank of M*(E ∖ A)), where G is the torsion of M(A) and d(E) the smallest
    free rank among the first components. Torsion of the dual side is not
    counted.
    """

    if not c.pairs:
        return BivariatePoly()
    base = min(first.free_rank for first, _ in c.pairs)
    result = BivariatePoly()
    for first, second in c.pairs:
        result = poly_add(result, shifted_monomial(first.multiplicity, first.free_rank - base, second.free_rank))
    return result


def torsion_basis_count(r: Realization) -> int:
    """Σ m(B) over bases B, which equals T_M(1, 1)."""
    rank = matroid_rank(r)
    return sum(p.multiplicity for p in subset_profiles(r) if p.independent and p.cork == rank)


def relation_lattice(r: Realization, subset: Subset) -> Lattice:
    """relations + L_A."""
    return extend_lattice(r.relations, [r.generators[i] for i in members(subset)])
