import logging
from fractions import Fraction
from itertools import product

import networkx as nx
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from core.exceptions import CrossCheckError
from facering.models import FVector
from intlin.models import IntMatrix, Lattice
from intlin.services import express_in_basis, saturate, smith_normal_form
from poly.models import BivariatePoly
from poly.services import evaluate_x, poly_add
from zmatroid.models import Realization, Subset, members
from zmatroid.services import arithmetic_tutte, matroid_rank, ordinary_tutte, profile, relation_lattice, subset_profiles

from .models import Character, PointDecomposition, PosetElement, SimplicialCheck, TorsionPoset

logger = logging.getLogger(__name__)


def _mod_one(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


def _integral_coordinates(v, basis: Lattice) -> list[int]:
    coordinates = express_in_basis(v, basis)
    if coordinates is None or not coordinates.integral:
        raise CrossCheckError(f"{v} is not in the lattice spanned by {basis.vectors}")
    return [int(c) for c in coordinates.values]


def evaluate_character(c: Character, v) -> Fraction:
    """ℓ(v) in [0, 1) for a vector v of the character's domain."""
    return _mod_one(sum((x * value for x, value in zip(_integral_coordinates(v, c.domain), c.values)), Fraction(0)))


def saturated_domain(r: Realization, subset: Subset) -> Lattice:
    """S_A = saturation of relations + L_A."""
    return saturate(relation_lattice(r, subset))


def _check_vanishes(c: Character, kernel: Lattice) -> None:
    for v in kernel.vectors:
        if evaluate_character(c, v):
            raise CrossCheckError(f"Character {c.labels()} does not vanish on {v}")


def characters_vanishing_on(kernel: Lattice) -> list[Character]:
    """All characters of saturate(kernel) / kernel, in Smith-coordinate lexicographic order.

    Logic:
        - C holds the coordinates of the kernel basis in the saturation basis,
          and U·C·V = D is its Smith form.
        - The characters are c = V·w mod 1 with w_i ranging over
          {0, 1/d_i, ..., (d_i - 1)/d_i}.
    """

    domain = saturate(kernel)
    if domain.rank == 0:
        return [Character(domain, ())]
    coordinates = IntMatrix.from_rows([_integral_coordinates(v, domain) for v in kernel.vectors], domain.rank)
    smith = smith_normal_form(coordinates)
    characters = []
    for steps in product(*(range(d) for d in smith.invariants)):
        w = [Fraction(k, d) for k, d in zip(steps, smith.invariants)]
        values = tuple(
            _mod_one(sum((smith.V[j, i] * w[i] for i in range(len(w))), Fraction(0))) for j in range(domain.rank)
        )
        character = Character(domain, values)
        _check_vanishes(character, kernel)
        characters.append(character)
    return characters


def enumerate_characters(r: Realization, subset: Subset) -> list[Character]:
    """Enumerates C_A, the characters of G_A.

    Args:
        r: The realization.
        subset: Bitset of an independent subset A.

    Returns:
        list[Character]: Exactly m(A) distinct characters on S_A, each
        vanishing on relations + L_A, in deterministic order.

    Raises:
        ValidationError: If A is dependent.
    """

    p = profile(r, subset)
    if not p.independent:
        raise ValidationError(
            _("Characters are only enumerated for independent subsets."), code="dependent_subset"
        )
    characters = characters_vanishing_on(relation_lattice(r, subset))
    if len(characters) != p.multiplicity:
        raise CrossCheckError(f"{len(characters)} characters for a subset of multiplicity {p.multiplicity}")
    return characters


def _restriction_matrix(r: Realization, subset: Subset, drop: int) -> tuple[Lattice, list[list[int]]]:
    smaller = saturated_domain(r, subset & ~(1 << drop))
    larger = saturated_domain(r, subset)
    return smaller, [_integral_coordinates(v, larger) for v in smaller.vectors]


def _restrict(c: Character, smaller: Lattice, matrix: list[list[int]]) -> Character:
    values = tuple(
        _mod_one(sum((x * value for x, value in zip(row, c.values)), Fraction(0))) for row in matrix
    )
    return Character(smaller, values)


def restrict_character(r: Realization, element: PosetElement, drop: int) -> Character:
    """Restricts ℓ from S_(A ∪ b) to S_A, the canonical projection dropping b.

    Args:
        r: The realization.
        element: (A ∪ {b}, ℓ).
        drop: 0-based index b, a member of the element's subset.

    Returns:
        Character: The restricted character on S_A.

    Raises:
        ValidationError: If b is not in the element's subset.
    """

    if not element.subset >> drop & 1:
        raise ValidationError(_("Only members of the subset can be dropped."), code="subset_out_of_range")
    smaller, matrix = _restriction_matrix(r, element.subset, drop)
    return _restrict(element.character, smaller, matrix)


def build_poset(r: Realization) -> TorsionPoset:
    """Builds the poset of torsions Gr(M).

    Logic:
        - Elements are the pairs (A, ℓ) with A independent and ℓ in C_A, ordered
          by rank, subset and character order.
        - Each element (A, ℓ) covers the restrictions of ℓ obtained by dropping
          every member of A; one restriction matrix is computed per (A, b).

    Returns:
        TorsionPoset: The poset with covers given as (child, parent) pairs.

    Raises:
        CrossCheckError: If a restriction is not an element of the poset.
    """

    elements: list[PosetElement] = []
    index: dict[tuple[Subset, Character], int] = {}
    for p in subset_profiles(r):
        if not p.independent:
            continue
        for character in enumerate_characters(r, p.subset):
            index[p.subset, character] = len(elements)
            elements.append(PosetElement(p.subset, character, p.size))
    covers = []
    matrices = {}
    for parent, element in enumerate(elements):
        for drop in members(element.subset):
            if (element.subset, drop) not in matrices:
                matrices[element.subset, drop] = _restriction_matrix(r, element.subset, drop)
            smaller, matrix = matrices[element.subset, drop]
            key = (element.subset & ~(1 << drop), _restrict(element.character, smaller, matrix))
            if key not in index:
                raise CrossCheckError(f"Restriction of element {parent} dropping {drop + 1} is not in the poset")
            covers.append((index[key], parent))
    logger.debug("Built a poset with %d elements and %d covers", len(elements), len(covers))
    return TorsionPoset(tuple(elements), tuple(sorted(covers)), tuple(range(len(elements))))


def synthetic_poset(labels: list[str], covers: list[tuple[int, int]]) -> TorsionPoset:
    """Builds a poset from element labels and (child, parent) cover pairs.

    Ranks are the lengths of the longest chains below each element.

    Raises:
        ValidationError: If the covers contain a cycle or unknown elements.
    """

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(labels)))
    graph.add_edges_from(covers)
    if len(graph) != len(labels):
        raise ValidationError(_("A cover refers to an unknown element."), code="unknown_element")
    if not nx.is_directed_acyclic_graph(graph):
        raise ValidationError(_("The cover relation has a cycle."), code="malformed_poset")
    rank = {}
    for node in nx.topological_sort(graph):
        rank[node] = max((rank[child] + 1 for child in graph.predecessors(node)), default=0)
    elements = tuple(PosetElement(0, None, rank[i], label) for i, label in enumerate(labels))
    return TorsionPoset(elements, tuple(sorted(tuple(c) for c in covers)), tuple(range(len(labels))))


def _induced(p: TorsionPoset, positions) -> TorsionPoset:
    positions = sorted(positions)
    relabel = {old: new for new, old in enumerate(positions)}
    covers = tuple(sorted((relabel[c], relabel[q]) for c, q in p.covers if c in relabel and q in relabel))
    return TorsionPoset(tuple(p.elements[i] for i in positions), covers, tuple(p.ids[i] for i in positions))


def components(p: TorsionPoset) -> list[TorsionPoset]:
    """Connected components of the Hasse diagram, ordered by their smallest element."""
    parts = sorted((sorted(c) for c in nx.weakly_connected_components(p.graph)), key=lambda c: c[0])
    logger.debug("Poset has %d components", len(parts))
    return [_induced(p, c) for c in parts]


def link(p: TorsionPoset, element: int) -> TorsionPoset:
    """The induced sub-poset of elements >= ``element``."""
    _check_element(p, element)
    return _induced(p, p.above(element) | {element})


def _check_element(p: TorsionPoset, element: int) -> None:
    if not 0 <= element < len(p):
        raise ValidationError(
            _("Element %(element)d is not in the poset.") % {"element": element}, code="unknown_element"
        )


def _maximal(p: TorsionPoset, candidates: set[int]) -> set[int]:
    return {i for i in candidates if not (p.above(i) & candidates)}


def _minimal(p: TorsionPoset, candidates: set[int]) -> set[int]:
    return {i for i in candidates if not (p.below(i) & candidates)}


def meet(p: TorsionPoset, a: int, b: int) -> int:
    """The greatest lower bound of two elements.

    Raises:
        ValidationError: If there is no common lower bound (different
            components) or the maximal common lower bounds are not unique.
    """

    _check_element(p, a)
    _check_element(p, b)
    lower = (p.below(a) | {a}) & (p.below(b) | {b})
    if not lower:
        raise ValidationError(_("The elements have no common lower bound."), code="no_common_lower_bound")
    greatest = _maximal(p, lower)
    if len(greatest) > 1:
        raise ValidationError(
            _("The elements have %(count)d maximal common lower bounds.") % {"count": len(greatest)},
            code="no_unique_meet",
        )
    return greatest.pop()


def join(p: TorsionPoset, a: int, b: int) -> frozenset[int]:
    """The set of minimal common upper bounds, possibly empty."""

    _check_element(p, a)
    _check_element(p, b)
    upper = (p.above(a) | {a}) & (p.above(b) | {b})
    return frozenset(_minimal(p, upper))


def unique_bottom(p: TorsionPoset) -> int:
    minimal = p.minimal
    if len(minimal) != 1:
        raise ValidationError(
            _("The poset has %(count)d minimal elements instead of one.") % {"count": len(minimal)},
            code="no_unique_bottom",
        )
    return minimal[0]


def _down_sets(p: TorsionPoset) -> dict[int, frozenset[int]]:
    """Principal order ideals: every element mapped to the elements <= it."""
    down = {}
    for node in nx.topological_sort(p.graph):
        down[node] = frozenset({node}).union(*(down[child] for child in p.graph.predecessors(node)))
    return down


def _is_boolean_interval(p: TorsionPoset, down: dict[int, frozenset[int]], bottom: int, top: int) -> bool:
    interval = down[top]
    if bottom not in interval:
        return False
    atoms = frozenset(i for i in interval if i != bottom and down[i] == {bottom, i})
    if len(interval) != 1 << len(atoms):
        return False
    atoms_below = {i: atoms & down[i] for i in interval}
    if len(set(atoms_below.values())) != len(interval):
        return False
    for i in interval:
        for j in interval:
            if (atoms_below[i] <= atoms_below[j]) != (i in down[j]):
                return False
    if p.elements[top].character is not None:
        subsets = {p.elements[i].subset for i in interval}
        sub = p.elements[top].subset
        expected = {s for s in range(sub + 1) if s & ~sub == 0}
        if subsets != expected:
            return False
    return True


def is_simplicial(component: TorsionPoset) -> SimplicialCheck:
    """Checks that every lower interval [bottom, σ] is a boolean lattice.

    Logic:
        - The interval is extracted from the Hasse diagram and its atoms
          collected.
        - It must have 2^k elements for k atoms, and x ↦ {atoms below x}
          must be an order isomorphism onto the subsets of the atoms.
        - For elements of a poset of torsions the subsets of the interval
          must be exactly the subsets of σ's subset.

    Returns:
        SimplicialCheck: The verdict and, on failure, the first offending interval.

    Raises:
        ValidationError: If the component has no unique bottom.
    """

    bottom = unique_bottom(component)
    down = _down_sets(component)
    for sigma in range(len(component)):
        if not _is_boolean_interval(component, down, bottom, sigma):
            return SimplicialCheck(False, (bottom, sigma))
    return SimplicialCheck(True)


def lower_intervals_boolean(p: TorsionPoset) -> bool:
    """True iff every component has a unique bottom and is simplicial."""
    for component in components(p):
        try:
            if not is_simplicial(component).simplicial:
                return False
        except ValidationError:
            return False
    return True


def f_vector(component: TorsionPoset, rank: int | None = None) -> FVector:
    """(f_-1, ..., f_(r-1)) with f_(i-1) the number of rank-i elements.

    ``rank`` defaults to the largest element rank.
    """

    if rank is None:
        rank = component.max_rank
    counts = [0] * (rank + 1)
    for e in component.elements:
        counts[e.rank] += 1
    return FVector(tuple(counts), rank)


def posets_isomorphic(p: TorsionPoset, q: TorsionPoset) -> bool:
    """Rank-preserving isomorphism of the Hasse diagrams."""
    return nx.is_isomorphic(p.graph, q.graph, node_match=lambda a, b: a["rank"] == b["rank"])


def cover_counts_by_index(p: TorsionPoset) -> dict[int, dict[int, int]]:
    """For each element, how many elements it covers per dropped generator index."""

    counts = {i: {} for i in range(len(p))}
    for child, parent in p.covers:
        dropped = p.elements[parent].subset & ~p.elements[child].subset
        for index in members(dropped):
            counts[parent][index] = counts[parent].get(index, 0) + 1
    return counts


def rank_zero_points(r: Realization) -> list[Character]:
    """The distinct 0-dimensional points φ.

    These are the characters of S_top = saturation of relations + L_E that
    vanish on relations + L_B for some basis B; a point reached from
    several bases is listed once, at its first occurrence.
    """

    rank = matroid_rank(r)
    points = []
    for p in subset_profiles(r):
        if p.independent and p.cork == rank:
            for character in enumerate_characters(r, p.subset):
                if character not in points:
                    points.append(character)
    return points


def vanishing_subset(r: Realization, point: Character) -> Subset:
    """{j : φ(z_j) = 0}."""
    return sum(1 << j for j, z in enumerate(r.generators) if not evaluate_character(point, z))


def verify_point_decomposition(r: Realization) -> PointDecomposition:
    """Checks T_M(1, y) = Σ_φ T_(M_φ)(1, y) over the 0-dimensional points φ.

    M_φ is the ordinary matroid on the generators vanishing at φ.
    """

    points = rank_zero_points(r)
    left = evaluate_x(arithmetic_tutte(r), 1)
    right = BivariatePoly()
    for point in points:
        right = poly_add(right, evaluate_x(ordinary_tutte(r, vanishing_subset(r, point)), 1))
    if left != right:
        logger.warning("Point decomposition fails: %s != %s", left, right)
    return PointDecomposition(left == right, tuple(points), left, right)
