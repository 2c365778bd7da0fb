from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import networkx as nx
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from intlin.models import Lattice
from poly.models import BivariatePoly
from zmatroid.models import Subset, format_subset


@dataclass(frozen=True)
class Character:
    """A homomorphism to Q/Z, given by its values on the canonical basis of a saturated lattice.

    Attributes:
        domain (Lattice): S_A = saturation of relations + L_A.
        values (tuple[Fraction]): One value in [0, 1) per basis vector of the domain.
    """

    domain: Lattice
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.domain.rank or any(not 0 <= v < 1 for v in self.values):
            raise ValidationError(
                _("A character needs one value in [0, 1) per basis vector of its domain."),
                code="malformed_character",
            )

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)

    def labels(self) -> list[str]:
        """Values as reduced fractions, "0" for zero."""
        return [str(v) for v in self.values]


@dataclass(frozen=True)
class PosetElement:
    """An element (A, ℓ) of the poset of torsions, or a labelled element of a synthetic poset.

    Attributes:
        subset (int): Bitset of the independent subset A (0 for synthetic elements).
        character (Character | None): ℓ, None for synthetic elements.
        rank (int): #A, or the length of the longest chain below a synthetic element.
        label (str): Display label.
    """

    subset: Subset
    character: Character | None
    rank: int
    label: str = ""

    def __str__(self):
        if self.character is None:
            return self.label
        values = ",".join(self.character.labels())
        return f"({format_subset(self.subset)}; {values})" if values else f"({format_subset(self.subset)})"


@dataclass(frozen=True)
class TorsionPoset:
    """A ranked poset given by its elements and Hasse diagram.

    Attributes:
        elements (tuple[PosetElement]): Elements, ordered by (rank, subset, character order).
        covers (tuple[tuple[int, int]]): (child, parent) pairs, parent covering child.
        ids (tuple[int]): Identifier of each element in the poset it was cut from;
            equal to the positions for a whole poset.
    """

    elements: tuple[PosetElement, ...]
    covers: tuple[tuple[int, int], ...]
    ids: tuple[int, ...]

    def __post_init__(self):
        if len(self.ids) != len(self.elements):
            raise ValidationError(_("Every poset element needs an id."), code="malformed_poset")
        for child, parent in self.covers:
            if not (0 <= child < len(self.elements) and 0 <= parent < len(self.elements)):
                raise ValidationError(
                    _("Cover (%(child)d, %(parent)d) refers to a missing element.") % {"child": child, "parent": parent},
                    code="unknown_element",
                )

    def __len__(self):
        return len(self.elements)

    @cached_property
    def graph(self) -> nx.DiGraph:
        """Hasse diagram with an edge child -> parent, nodes carrying their rank."""
        graph = nx.DiGraph()
        graph.add_nodes_from((i, {"rank": e.rank}) for i, e in enumerate(self.elements))
        graph.add_edges_from(self.covers)
        return graph

    def below(self, i: int) -> set[int]:
        """Elements strictly below element i."""
        return nx.ancestors(self.graph, i)

    def above(self, i: int) -> set[int]:
        return nx.descendants(self.graph, i)

    def leq(self, i: int, j: int) -> bool:
        return i == j or i in self.below(j)

    @property
    def minimal(self) -> list[int]:
        return [i for i in range(len(self.elements)) if not self.graph.in_degree(i)]

    @property
    def max_rank(self) -> int:
        return max((e.rank for e in self.elements), default=0)


@dataclass(frozen=True)
class SimplicialCheck:
    """Result of a simpliciality check.

    Attributes:
        simplicial (bool): Whether every lower interval is boolean.
        witness (tuple[int, int] | None): (bottom, σ) positions of the first
            lower interval [bottom, σ] that is not boolean.
    """

    simplicial: bool
    witness: tuple[int, int] | None = None


@dataclass(frozen=True)
class PointDecomposition:
    """Both sides of T_M(1, y) = Σ_φ T_(M_φ)(1, y).

    Attributes:
        holds (bool): Whether the sides agree.
        points (tuple[Character]): The 0-dimensional points φ.
        left (BivariatePoly): T_M(1, y), a polynomial in y alone.
        right (BivariatePoly): The sum over points.
    """

    holds: bool
    points: tuple[Character, ...]
    left: BivariatePoly
    right: BivariatePoly
