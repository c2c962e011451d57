"""Dense linear algebra over GF(2) with int bitsets.

Row ``i`` of a :class:`Gf2Matrix` is an int whose bit ``j`` is entry ``(i, j)``.
Vectors are plain ints read the same way; their length is implied by the
matrix they are used with.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

__all__ = [
    "DEFAULT_CAP",
    "Gf2Matrix",
    "NullityCapError",
    "bits_to_indices",
    "indices_to_bits",
    "nullspace_basis",
    "rref",
    "solve_all",
    "solve_with_parity",
]

DEFAULT_CAP = 20


class NullityCapError(ValueError):
    """Refusal to enumerate a solution space larger than the cap allows."""


def indices_to_bits(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def bits_to_indices(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << self.ncols
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#b} does not fit in {self.ncols} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> Gf2Matrix:
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            if any(x not in (0, 1) for x in row):
                raise ValueError(f"entries must be 0 or 1, got {list(row)}")
            rows.append(indices_to_bits(j for j, x in enumerate(row) if x))
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n: int) -> Gf2Matrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> int:
        return indices_to_bits(i for i, r in enumerate(self.rows) if (r >> j) & 1)

    def mul(self, vec: int) -> int:
        """Matrix-vector product; the result has one bit per row."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & vec).bit_count() & 1:
                out |= 1 << i
        return out

    def stack(self, row: int) -> Gf2Matrix:
        return Gf2Matrix(self.rows + (row,), self.ncols)

    def permute_columns(self, perm: Sequence[int]) -> Gf2Matrix:
        """Column ``k`` of the result is column ``perm[k]`` of ``self``."""
        if sorted(perm) != list(range(self.ncols)):
            raise ValueError("not a column permutation")
        rows = []
        for r in self.rows:
            rows.append(indices_to_bits(k for k, j in enumerate(perm) if (r >> j) & 1))
        return Gf2Matrix(tuple(rows), self.ncols)


def _eliminate(rows: list[int], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to RREF; return the pivot columns."""
    pivots = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((r for r in range(top, len(rows)) if rows[r] & bit), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        for r in range(len(rows)):
            if r != top and rows[r] & bit:
                rows[r] ^= rows[top]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return pivots


def rref(a: Gf2Matrix) -> tuple[Gf2Matrix, tuple[int, ...], int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows = list(a.rows)
    pivots = _eliminate(rows, a.ncols)
    return Gf2Matrix(tuple(rows), a.ncols), tuple(pivots), len(pivots)


def nullspace_basis(a: Gf2Matrix) -> list[int]:
    reduced, pivots, _ = rref(a)
    free = [j for j in range(a.ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        vec = 1 << f
        for row, p in zip(reduced.rows, pivots):
            if (row >> f) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def _particular(a: Gf2Matrix, b: int) -> int | None:
    # augment each row with its right-hand side bit in column ncols
    rows = [r | (((b >> i) & 1) << a.ncols) for i, r in enumerate(a.rows)]
    pivots = _eliminate(rows, a.ncols + 1)
    if pivots and pivots[-1] == a.ncols:
        return None
    x = 0
    for row, p in zip(rows, pivots):
        if (row >> a.ncols) & 1:
            x |= 1 << p
    return x


def solve_all(a: Gf2Matrix, b: int, cap: int = DEFAULT_CAP) -> list[int]:
    """Every ``x`` with ``a @ x == b``, sorted as ints; ``[]`` if inconsistent."""
    if b >> a.nrows:
        raise ValueError("right-hand side longer than the number of rows")
    basis = nullspace_basis(a)
    if len(basis) > cap:
        raise NullityCapError(f"nullity {len(basis)} exceeds the enumeration cap {cap}")
    x = _particular(a, b)
    if x is None:
        return []
    sols = [x]
    for v in basis:
        sols += [s ^ v for s in sols]
    return sorted(sols)


def solve_with_parity(a: Gf2Matrix, b: int, parity: int, cap: int = DEFAULT_CAP) -> list[int]:
    """Solutions of ``a @ x == b`` whose weight has the given parity."""
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    ones = (1 << a.ncols) - 1
    return solve_all(a.stack(ones), b | (parity << a.nrows), cap)
