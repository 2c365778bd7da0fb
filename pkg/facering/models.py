from dataclasses import dataclass

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from poly.models import HilbertSeries


@dataclass(frozen=True)
class FVector:
    """Rank-level counts of a simplicial poset.

    Attributes:
        entries (tuple[int]): (f_-1, f_0, ..., f_(r-1)), f_(i-1) being the
            number of elements of rank i.
        rank (int): r.
    """

    entries: tuple[int, ...]
    rank: int

    def __post_init__(self):
        if len(self.entries) != self.rank + 1 or any(f < 0 for f in self.entries):
            raise ValidationError(
                _("An f-vector of rank %(rank)d needs %(size)d nonnegative entries.")
                % {"rank": self.rank, "size": self.rank + 1},
                code="malformed_vector",
            )


@dataclass(frozen=True)
class HVector:
    """Attributes:
    entries (tuple[int]): (h_0, ..., h_r).
    rank (int): r.
    """

    entries: tuple[int, ...]
    rank: int

    def __post_init__(self):
        if len(self.entries) != self.rank + 1:
            raise ValidationError(
                _("An h-vector of rank %(rank)d needs %(size)d entries.") % {"rank": self.rank, "size": self.rank + 1},
                code="malformed_vector",
            )


@dataclass(frozen=True)
class FaceRelation:
    """One generator x_σ·x_τ - x_(σ∧τ)·(Σ_(γ ∈ σ∨τ) x_γ) of a face ideal.

    Attributes:
        pair (tuple[int, int]): Ids of σ and τ.
        meet (int | None): Id of σ∧τ, or None when it is the bottom (x_bottom = 1)
            or when the join is empty.
        join (tuple[int]): Ids of the minimal common upper bounds.
    """

    pair: tuple[int, int]
    meet: int | None
    join: tuple[int, ...]


@dataclass(frozen=True)
class FaceIdealPresentation:
    """Symbolic presentation of the face ideal of a simplicial poset.

    Attributes:
        variables (tuple): (element id, degree) pairs, degree being the rank.
        bottom (int): Id of the bottom, giving the relation x_bottom - 1.
        relations (tuple[FaceRelation]): One per incomparable unordered pair.
    """

    variables: tuple[tuple[int, int], ...]
    bottom: int
    relations: tuple[FaceRelation, ...]


@dataclass(frozen=True)
class MainTheoremCheck:
    """Both sides of Hilb(k[M], t) = t^r/(1 - t)^r · T_M(1/t, 1).

    Attributes:
        holds (bool): Whether every computed right side equals the left side.
        left (HilbertSeries): Hilbert series of the face module.
        right (HilbertSeries): The right side through T_M(1/t, 1).
        dual_right (HilbertSeries | None): The right side through
            T_(M*)(1, 1/t) of the dual realization, when M(∅) is free.
    """

    holds: bool
    left: HilbertSeries
    right: HilbertSeries
    dual_right: HilbertSeries | None = None
