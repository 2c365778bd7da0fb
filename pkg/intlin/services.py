import logging
import math
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from .models import Coordinates, IntMatrix, Lattice, QuotientStructure, SmithDecomposition

logger = logging.getLogger(__name__)


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _axpy(target: list[int], q: int, source: list[int]) -> None:
    """target -= q * source, in place."""
    for k, value in enumerate(source):
        target[k] -= q * value


def _hermite_rows(a: list[list[int]], cols: int) -> list[list[int]]:
    rows = len(a)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nonzero = [i for i in range(r, rows) if a[i][c]]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: (abs(a[i][c]), i))
            a[r], a[p] = a[p], a[r]
            for i in range(r + 1, rows):
                q = a[i][c] // a[r][c]
                if q:
                    _axpy(a[i], q, a[r])
            if not any(a[i][c] for i in range(r + 1, rows)):
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                _axpy(a[i], q, a[r])
        r += 1
    return a


def hermite_normal_form(m: IntMatrix) -> IntMatrix:
    """Computes the row-style Hermite normal form of a matrix.

    Logic:
        - Works column by column, repeatedly moving the smallest nonzero entry
          (ties by row) to the pivot row and reducing the rows below it.
        - Pivots are made positive and the entries above each pivot reduced
          into [0, pivot).
        - Zero rows end up at the bottom; the shape is preserved.

    Returns:
        IntMatrix: The Hermite normal form, deterministic for a fixed input.
    """

    a = _hermite_rows(m.to_rows(), m.cols)
    return IntMatrix.from_rows(a, m.cols)


class _Smith:
    """Working state of a Smith normal form computation.

    Keeps V and its inverse in step so saturations can be read off without
    a separate inversion.
    """

    def __init__(self, m: IntMatrix):
        self.m, self.n = m.rows, m.cols
        self.a = m.to_rows()
        self.u = _identity_rows(self.m)
        self.v = _identity_rows(self.n)
        self.v_inv = _identity_rows(self.n)

    def swap_rows(self, i: int, j: int) -> None:
        for mat in (self.a, self.u):
            mat[i], mat[j] = mat[j], mat[i]

    def swap_columns(self, i: int, j: int) -> None:
        for mat in (self.a, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def subtract_row(self, i: int, q: int, t: int) -> None:
        _axpy(self.a[i], q, self.a[t])
        _axpy(self.u[i], q, self.u[t])

    def subtract_column(self, j: int, q: int, t: int) -> None:
        for mat in (self.a, self.v):
            for row in mat:
                row[j] -= q * row[t]
        _axpy(self.v_inv[t], -q, self.v_inv[j])

    def move_smallest_to(self, t: int) -> bool:
        candidates = [
            (abs(self.a[i][j]), i, j) for i in range(t, self.m) for j in range(t, self.n) if self.a[i][j]
        ]
        if not candidates:
            return False
        _, i, j = min(candidates)
        if i != t:
            self.swap_rows(t, i)
        if j != t:
            self.swap_columns(t, j)
        return True

    def clear_edging(self, t: int) -> bool:
        """Reduces row and column t modulo the pivot; True when both are zero."""
        p = self.a[t][t]
        for i in range(t + 1, self.m):
            q = self.a[i][t] // p
            if q:
                self.subtract_row(i, q, t)
        for j in range(t + 1, self.n):
            q = self.a[t][j] // p
            if q:
                self.subtract_column(j, q, t)
        return not any(self.a[i][t] for i in range(t + 1, self.m)) and not any(
            self.a[t][j] for j in range(t + 1, self.n)
        )

    def run(self) -> "_Smith":
        for t in range(min(self.m, self.n)):
            if not self.move_smallest_to(t):
                break
            while True:
                if not self.clear_edging(t):
                    self.move_smallest_to(t)
                    continue
                p = self.a[t][t]
                bad = next(
                    (i for i in range(t + 1, self.m) for j in range(t + 1, self.n) if self.a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                self.subtract_row(t, -1, bad)
            if self.a[t][t] < 0:
                self.a[t] = [-x for x in self.a[t]]
                self.u[t] = [-x for x in self.u[t]]
        return self

    @property
    def invariants(self) -> tuple[int, ...]:
        return tuple(self.a[t][t] for t in range(min(self.m, self.n)) if self.a[t][t])


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Computes the Smith normal form of an integer matrix with its transforms.

    Logic:
        - The smallest nonzero entry of the remaining block (ties in row-major
          order) is moved to the pivot position.
        - Row and column of the pivot are reduced with floor division; a nonzero
          remainder restarts the step with a strictly smaller pivot.
        - A block entry not divisible by the pivot is added into the pivot row
          so that d_1 | d_2 | ... holds.

    Returns:
        SmithDecomposition: U, V unimodular with U·m·V = D.
    """

    smith = _Smith(m).run()
    return SmithDecomposition(
        U=IntMatrix.from_rows(smith.u, m.rows),
        V=IntMatrix.from_rows(smith.v, m.cols),
        D=IntMatrix.from_rows(smith.a, m.cols),
        invariants=smith.invariants,
    )


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    return _Smith(m).run().invariants


def lattice(ambient_dim: int, vectors) -> Lattice:
    """Builds the lattice spanned by ``vectors`` in canonical form.

    Raises:
        ValidationError: If a vector does not have length ``ambient_dim``.
    """

    rows = [list(v) for v in vectors]
    if any(len(row) != ambient_dim for row in rows):
        raise ValidationError(
            _("Every vector must have length %(dim)d.") % {"dim": ambient_dim}, code="dimension_mismatch"
        )
    reduced = [row for row in _hermite_rows(rows, ambient_dim) if any(row)]
    return Lattice(ambient_dim, IntMatrix.from_rows(reduced, ambient_dim))


def extend_lattice(base: Lattice, vectors) -> Lattice:
    """Returns the lattice spanned by ``base`` and the extra ``vectors``."""
    return lattice(base.ambient_dim, list(base.vectors) + [list(v) for v in vectors])


def cokernel_structure(columns: IntMatrix, relations: Lattice) -> QuotientStructure:
    """Computes the isomorphism type of Z^D / (relations + column lattice).

    Args:
        columns: D x k matrix whose columns are the extra generators.
        relations: The relation lattice in Z^D.

    Returns:
        QuotientStructure: Free rank and invariant factors > 1.

    Raises:
        ValidationError: If the columns do not live in Z^D.
    """

    dim = relations.ambient_dim
    if columns.rows != dim:
        raise ValidationError(
            _("Columns have length %(got)d but the relations live in Z^%(dim)d.")
            % {"got": columns.rows, "dim": dim},
            code="dimension_mismatch",
        )
    generators = list(relations.vectors) + columns.columns()
    if not generators:
        return QuotientStructure(dim)
    invariants = invariant_factors(IntMatrix.from_rows(generators, dim))
    return QuotientStructure(dim - len(invariants), tuple(d for d in invariants if d > 1))


def saturate(l: Lattice) -> Lattice:
    """Computes the saturation (l ⊗ Q) ∩ Z^D.

    The first rank(l) rows of V^-1 from the Smith form of the basis span the
    same rational space and extend to a basis of Z^D.
    """

    if l.rank == 0:
        return l
    smith = _Smith(l.basis).run()
    return lattice(l.ambient_dim, smith.v_inv[: len(smith.invariants)])


def express_in_basis(v, l: Lattice) -> Coordinates | None:
    """Expresses a vector in the canonical basis of a lattice.

    Logic:
        - The basis is in echelon form, so coordinates come out by forward
          substitution on the pivot columns.
        - A nonzero residue means the vector is outside the rational span.

    Returns:
        Coordinates: Exact rational coordinates and an integrality flag.
        None: If ``v`` is not in l ⊗ Q.

    Raises:
        ValidationError: If the dimensions differ.
    """

    if len(v) != l.ambient_dim:
        raise ValidationError(
            _("Vector of length %(got)d does not live in Z^%(dim)d.") % {"got": len(v), "dim": l.ambient_dim},
            code="dimension_mismatch",
        )
    residue = [Fraction(x) for x in v]
    values = []
    for row in l.vectors:
        pivot = next(c for c, x in enumerate(row) if x)
        coefficient = residue[pivot] / row[pivot]
        values.append(coefficient)
        if coefficient:
            for c in range(pivot, l.ambient_dim):
                residue[c] -= coefficient * row[c]
    if any(residue):
        return None
    return Coordinates(tuple(values), all(x.denominator == 1 for x in values))


def contains(sub: Lattice, super_: Lattice) -> bool:
    for v in sub.vectors:
        coordinates = express_in_basis(v, super_)
        if coordinates is None or not coordinates.integral:
            return False
    return True


def lattice_index(sub: Lattice, super_: Lattice) -> int | float:
    """Computes the index [super_ : sub].

    Returns:
        int: The index, when both lattices have the same rank.
        float: ``math.inf`` when sub has smaller rank.

    Raises:
        ValidationError: If sub is not contained in super_.
    """

    if sub.ambient_dim != super_.ambient_dim:
        raise ValidationError(_("Lattices live in different ambient spaces."), code="dimension_mismatch")
    coordinates = []
    for v in sub.vectors:
        c = express_in_basis(v, super_)
        if c is None or not c.integral:
            raise ValidationError(_("The first lattice is not contained in the second."), code="not_a_sublattice")
        coordinates.append([int(x) for x in c.values])
    if sub.rank < super_.rank:
        return math.inf
    return math.prod(invariant_factors(IntMatrix.from_rows(coordinates, super_.rank)))
