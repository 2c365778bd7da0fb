from dataclasses import dataclass
from functools import cached_property

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from intlin.models import IntMatrix, Lattice, QuotientStructure

# Subsets of the ground set [n] are int bitsets: bit i set means generator i
# (printed 1-based) belongs to the subset.
Subset = int


def members(subset: Subset) -> tuple[int, ...]:
    """0-based indices of the generators in ``subset``."""
    return tuple(i for i in range(subset.bit_length()) if subset >> i & 1)


def canonical_subsets(n: int) -> list[Subset]:
    """All subsets of [n], by increasing size and then numeric bitset value."""
    return sorted(range(1 << n), key=lambda s: (s.bit_count(), s))


def format_subset(subset: Subset) -> str:
    if not subset:
        return "∅"
    return "{" + ",".join(str(i + 1) for i in members(subset)) + "}"


@dataclass(frozen=True)
class Realization:
    """Represents a realizable Z-matroid.

    M(∅) = Z^D / relations and M(A) = M(∅) / (z_i : i ∈ A). Build instances
    with ``zmatroid.services.realization``.

    Attributes:
        ambient_rank (int): D.
        relations (Lattice): Relation lattice in Z^D, possibly zero.
        generators (tuple): Lifts z_1, ..., z_n in Z^D.
    """

    ambient_rank: int
    relations: Lattice
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.relations.ambient_dim != self.ambient_rank or any(
            len(z) != self.ambient_rank for z in self.generators
        ):
            raise ValidationError(
                _("Every vector of the realization must have length %(dim)d.") % {"dim": self.ambient_rank},
                code="dimension_mismatch",
            )

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def ground_set(self) -> Subset:
        return (1 << self.n) - 1

    @cached_property
    def generator_matrix(self) -> IntMatrix:
        """D x n matrix with z_i as column i."""
        return IntMatrix.from_columns(self.generators, self.ambient_rank)

    def columns(self, subset: Subset) -> IntMatrix:
        return IntMatrix.from_columns([self.generators[i] for i in members(subset)], self.ambient_rank)


@dataclass(frozen=True)
class SubsetProfile:
    """Represents the invariants of M(A) for one subset A.

    Attributes:
        subset (int): Bitset of A.
        structure (QuotientStructure): Isomorphism type of M(A).
        d (int): Free rank d(A).
        cork (int): d(∅) - d(A), the rank of A in the underlying Q-matroid.
        multiplicity (int): m(A) = #G_A.
        independent (bool): Whether cork(A) = #A.
    """

    subset: Subset
    structure: QuotientStructure
    d: int
    cork: int
    multiplicity: int
    independent: bool

    @property
    def size(self) -> int:
        return self.subset.bit_count()


@dataclass(frozen=True)
class GrothendieckClass:
    """The formal sum Σ_A [M(A)]·[M*(E ∖ A)].

    Attributes:
        pairs (tuple): One (structure of M(A), structure of M*(E ∖ A)) pair per
            subset A, in canonical subset order.
    """

    pairs: tuple[tuple[QuotientStructure, QuotientStructure], ...]
