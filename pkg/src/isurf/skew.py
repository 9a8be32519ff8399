"""Skew-symmetric matrices of polynomials: Pfaffians and determinants."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .poly import ExactPolynomial, PolyRing


class SkewMatrix:
    """Antisymmetric matrix; only entries above the diagonal are stored."""

    def __init__(self, ring: PolyRing, size: int,
                 upper: dict[tuple[int, int], ExactPolynomial]):
        self.ring = ring
        self.size = size
        self.upper = {}
        for (i, j), p in upper.items():
            if not (0 <= i < j < size):
                raise ValueError(f"bad upper index {(i, j)}")
            if not p.is_zero():
                self.upper[(i, j)] = p

    @staticmethod
    def from_upper_rows(ring: PolyRing, rows: Sequence[Sequence]) -> "SkewMatrix":
        """Build from the rows above the diagonal: rows[i] lists entries (i, i+1..n-1).

        Entries may be polynomials or parseable strings.
        """
        size = len(rows) + 1
        upper = {}
        for i, row in enumerate(rows):
            if len(row) != size - 1 - i:
                raise ValueError(f"row {i} should have {size - 1 - i} entries")
            for k, entry in enumerate(row):
                j = i + 1 + k
                p = entry if isinstance(entry, ExactPolynomial) else ring.parse(entry)
                upper[(i, j)] = p
        return SkewMatrix(ring, size, upper)

    def entry(self, i: int, j: int) -> ExactPolynomial:
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.upper.get((i, j), self.ring.zero())
        return -self.upper.get((j, i), self.ring.zero())

    def submatrix(self, indices: Sequence[int]) -> "SkewMatrix":
        idx = list(indices)
        upper = {}
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                p = self.entry(idx[a], idx[b])
                if not p.is_zero():
                    upper[(a, b)] = p
        return SkewMatrix(self.ring, len(idx), upper)

    def pfaffian(self) -> ExactPolynomial:
        """Pfaffian by row expansion; zero for odd size."""
        if self.size % 2:
            return self.ring.zero()
        return self._pf(tuple(range(self.size)))

    def _pf(self, indices: tuple[int, ...], _cache=None) -> ExactPolynomial:
        if _cache is None:
            _cache = {}
        if indices in _cache:
            return _cache[indices]
        if not indices:
            result = self.ring.one()
        elif len(indices) == 2:
            result = self.entry(indices[0], indices[1])
        else:
            first, rest = indices[0], indices[1:]
            result = self.ring.zero()
            for pos, j in enumerate(rest):
                a = self.entry(first, j)
                if a.is_zero():
                    continue
                remaining = rest[:pos] + rest[pos + 1:]
                sign = 1 if pos % 2 == 0 else -1
                result = result + a * self._pf(remaining, _cache) * sign
        _cache[indices] = result
        return result

    def sub_pfaffians(self, k: int) -> list[tuple[tuple[int, ...], ExactPolynomial]]:
        """All principal k x k Pfaffians, indexed by the selected row set."""
        out = []
        for subset in combinations(range(self.size), k):
            if k % 2:
                out.append((subset, self.ring.zero()))
            else:
                out.append((subset, self.submatrix(subset).pfaffian()))
        return out

    def multiply_vector(self, vector: Sequence[ExactPolynomial]) -> list[ExactPolynomial]:
        if len(vector) != self.size:
            raise ValueError("vector length mismatch")
        return [
            sum((self.entry(i, j) * vector[j] for j in range(self.size)), self.ring.zero())
            for i in range(self.size)
        ]

    def to_rows(self) -> list[list[ExactPolynomial]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]


def determinant(rows: Sequence[Sequence[ExactPolynomial]], ring: PolyRing) -> ExactPolynomial:
    """Fraction-free (Bareiss) determinant of a square polynomial matrix."""
    n = len(rows)
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for swap in range(k + 1, n):
                if not m[swap][k].is_zero():
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_divide(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign
