from dataclasses import dataclass
from fractions import Fraction
from math import prod

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _


@dataclass(frozen=True)
class IntMatrix:
    """Represents an integer matrix.

    Attributes:
        rows (int): Number of rows.
        cols (int): Number of columns.
        entries (tuple[int]): Entries in row-major order, arbitrary precision.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValidationError(
                _("A %(rows)dx%(cols)d matrix needs %(size)d entries, got %(got)d.")
                % {"rows": self.rows, "cols": self.cols, "size": self.rows * self.cols, "got": len(self.entries)},
                code="malformed_matrix",
            )

    @classmethod
    def from_rows(cls, rows, cols: int = 0) -> "IntMatrix":
        """Builds a matrix from a list of rows.

        ``cols`` is only used when ``rows`` is empty.
        """

        rows = [tuple(int(x) for x in row) for row in rows]
        if rows:
            cols = len(rows[0])
        if any(len(row) != cols for row in rows):
            raise ValidationError(_("All rows of a matrix must have the same length."), code="malformed_matrix")
        return cls(len(rows), cols, tuple(x for row in rows for x in row))

    @classmethod
    def from_columns(cls, columns, rows: int) -> "IntMatrix":
        """Builds a ``rows x len(columns)`` matrix whose columns are the given vectors."""

        columns = [tuple(int(x) for x in column) for column in columns]
        if any(len(column) != rows for column in columns):
            raise ValidationError(
                _("Every column must have length %(rows)d.") % {"rows": rows}, code="dimension_mismatch"
            )
        return cls(rows, len(columns), tuple(column[i] for i in range(rows) for column in columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValidationError(_("Matrix shapes do not match for multiplication."), code="dimension_mismatch")
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                sum(self[i, k] * other[k, j] for k in range(self.cols))
                for i in range(self.rows)
                for j in range(other.cols)
            ),
        )


@dataclass(frozen=True)
class SmithDecomposition:
    """Represents a Smith normal form ``U·A·V = D``.

    Attributes:
        U (IntMatrix): Unimodular row transform.
        V (IntMatrix): Unimodular column transform.
        D (IntMatrix): Rectangular diagonal matrix d_1 | d_2 | ... followed by zeros.
        invariants (tuple[int]): The nonzero diagonal entries, ascending by divisibility.
    """

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    invariants: tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """Represents a sublattice of Z^D.

    The basis is always the row Hermite normal form of the generators with
    zero rows removed, so two lattices are equal exactly when their dataclass
    fields are. Build instances with ``intlin.services.lattice``.

    Attributes:
        ambient_dim (int): D.
        basis (IntMatrix): rank x D canonical basis.
    """

    ambient_dim: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ValidationError(_("Lattice basis does not live in the ambient space."), code="dimension_mismatch")

    @classmethod
    def zero(cls, ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, IntMatrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, IntMatrix.identity(ambient_dim))

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.basis.row(i) for i in range(self.basis.rows))


@dataclass(frozen=True)
class QuotientStructure:
    """Represents the isomorphism type Z^free_rank x Z/t_1 x ... x Z/t_k.

    Attributes:
        free_rank (int): Rank of the free part.
        torsion (tuple[int]): Invariant factors > 1 with t_i | t_{i+1}.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if any(t <= 1 for t in self.torsion) or any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValidationError(
                _("Torsion %(torsion)s is not an invariant factor list.") % {"torsion": self.torsion},
                code="malformed_structure",
            )

    @property
    def multiplicity(self) -> int:
        return prod(self.torsion)

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " x ".join(parts) or "0"


@dataclass(frozen=True)
class Coordinates:
    """Rational coordinates of a vector in a lattice basis.

    Attributes:
        values (tuple[Fraction]): One coordinate per basis vector, in lowest terms.
        integral (bool): Whether every coordinate is an integer (the vector is in the lattice).
    """

    values: tuple[Fraction, ...]
    integral: bool
