"""Matrices over a Grassmann algebra, with and without a block grading.

A graded square matrix of size k+l carries the (k, l) block structure:
row/column index i has block parity 0 for i <= k and 1 otherwise.  The
matrix is homogeneous of degree g when entry (i, j) has Grassmann parity
g + block(i) + block(j) mod 2; every matrix splits uniquely into a
degree-0 and a degree-1 part.  Scalars act through the twisted embedding
e -> diag(e, ..., e, omega(e), ..., omega(e)), which is what makes the
supertrace E-linear.

Ungraded matrices (grading None) model M_n(E) and support the queer
trace: the odd part of the diagonal sum.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .grassmann import GrassmannElement

__all__ = ["SuperMatrix", "exchange_involution", "spanning_basis", "spanning_tuples"]


class SuperMatrix:
    """Square matrix over E_N, optionally carrying a (k, l) grading."""

    __slots__ = ("size", "grading", "capacity", "entries")

    def __init__(self, entries, grading=None):
        entries = tuple(tuple(row) for row in entries)
        n = len(entries)
        if n == 0 or any(len(row) != n for row in entries):
            raise ValueError("entries must form a nonempty square grid")
        caps = {e.capacity for row in entries for e in row}
        if len(caps) != 1:
            raise ValueError("entries must share one capacity")
        if grading is not None:
            k, l = grading
            if k < 0 or l < 0 or k + l != n:
                raise ValueError(f"grading {grading} incompatible with size {n}")
            grading = (k, l)
        self.size = n
        self.grading = grading
        self.capacity = caps.pop()
        self.entries = entries

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, n: int, capacity: int, grading=None) -> "SuperMatrix":
        z = GrassmannElement.zero(capacity)
        return cls([[z] * n for _ in range(n)], grading)

    @classmethod
    def identity(cls, n: int, capacity: int, grading=None) -> "SuperMatrix":
        z = GrassmannElement.zero(capacity)
        o = GrassmannElement.one(capacity)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)],
                   grading)

    @classmethod
    def unit(cls, n: int, a: int, b: int, capacity: int, grading=None,
             coef=None) -> "SuperMatrix":
        """Matrix unit E_ab (1-based), optionally scaled by a Grassmann coef."""
        z = GrassmannElement.zero(capacity)
        c = coef if coef is not None else GrassmannElement.one(capacity)
        return cls([[c if (i, j) == (a - 1, b - 1) else z
                     for j in range(n)] for i in range(n)], grading)

    # -- block structure ---------------------------------------------

    def block(self, i: int) -> int:
        """Block parity of 1-based row/column index i."""
        if self.grading is None:
            raise ValueError("matrix carries no grading")
        return 0 if i <= self.grading[0] else 1

    def degree_part(self, g: int) -> "SuperMatrix":
        """Homogeneous degree-g component with respect to the grading."""
        if self.grading is None:
            raise ValueError("matrix carries no grading")
        k = self.grading[0]
        rows = []
        for i, row in enumerate(self.entries):
            out = []
            for j, e in enumerate(row):
                want = (g + (i >= k) + (j >= k)) & 1
                even, odd = e.split()
                out.append(odd if want else even)
            rows.append(out)
        return SuperMatrix(rows, self.grading)

    def is_homogeneous(self, g: int) -> bool:
        return self.degree_part(1 - g).is_zero()

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    # -- arithmetic --------------------------------------------------

    def _check_compatible(self, other):
        if self.size != other.size or self.capacity != other.capacity:
            raise ValueError("size or capacity mismatch")
        if self.grading != other.grading:
            raise ValueError("grading mismatch")

    def __add__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check_compatible(other)
        return SuperMatrix(
            [[a + b for a, b in zip(ra, rb)]
             for ra, rb in zip(self.entries, other.entries)], self.grading)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SuperMatrix([[-e for e in row] for row in self.entries],
                           self.grading)

    def __mul__(self, other):
        """Matrix product; entries multiply in E (no grading twist)."""
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        self._check_compatible(other)
        n = self.size
        z = GrassmannElement.zero(self.capacity)
        rows = []
        for i in range(n):
            out = []
            for j in range(n):
                acc = z
                for k in range(n):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                out.append(acc)
            rows.append(out)
        return SuperMatrix(rows, self.grading)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.size == other.size and self.grading == other.grading
                and self.capacity == other.capacity
                and self.entries == other.entries)

    def with_capacity(self, capacity: int) -> "SuperMatrix":
        return SuperMatrix(
            [[e.with_capacity(capacity) for e in row] for row in self.entries],
            self.grading)

    def scalar_act(self, e: GrassmannElement) -> "SuperMatrix":
        """Left action of a scalar through the twisted diagonal embedding.

        Rows in the second block see omega(e) instead of e, so odd
        scalars pick up the supercentrality signs automatically.
        """
        if self.grading is None:
            raise ValueError("scalar action needs a grading")
        if e.capacity != self.capacity:
            raise ValueError("capacity mismatch")
        k = self.grading[0]
        w = e.omega()
        rows = []
        for i, row in enumerate(self.entries):
            s = e if i < k else w
            rows.append([s * x for x in row])
        return SuperMatrix(rows, self.grading)

    def plain_scale(self, e: GrassmannElement) -> "SuperMatrix":
        """Entrywise left multiplication by e (the M_n(E) scalar action)."""
        if e.capacity != self.capacity:
            raise ValueError("capacity mismatch")
        return SuperMatrix([[e * x for x in row] for row in self.entries],
                           self.grading)

    # -- traces ------------------------------------------------------

    def supertrace(self) -> GrassmannElement:
        """Signed diagonal sum, degree part by degree part.

        For the degree-d homogeneous part the second diagonal block is
        weighted by -(-1)^d; the two contributions are summed.
        """
        if self.grading is None:
            raise ValueError("supertrace needs a grading")
        k = self.grading[0]
        acc = GrassmannElement.zero(self.capacity)
        for i in range(self.size):
            even, odd = self.entries[i][i].split()
            # diagonal sits in even block positions: even part is the
            # degree-0 component, odd part the degree-1 component
            if i < k:
                acc = acc + even + odd
            else:
                acc = acc - even + odd
        return acc

    def queer_trace(self) -> GrassmannElement:
        """Odd part of the plain diagonal sum (no grading involved)."""
        acc = GrassmannElement.zero(self.capacity)
        for i in range(self.size):
            acc = acc + self.entries[i][i]
        return acc.split()[1]

    def queer_trace_tilde(self) -> GrassmannElement:
        """Half the supertrace of J*self, for matrices commuting with J."""
        if self.grading is None or self.grading[0] != self.grading[1]:
            raise ValueError("needs an (n, n) grading")
        j = exchange_involution(self.grading[0], self.capacity)
        if j * self != self * j:
            raise ValueError("matrix does not commute with J")
        return (j * self).supertrace().scale(Fraction(1, 2))

    def exchange_collapse(self) -> "SuperMatrix":
        """Map [[A, B], [B, A]] to the ungraded n x n matrix A + B."""
        if self.grading is None or self.grading[0] != self.grading[1]:
            raise ValueError("needs an (n, n) grading")
        n = self.grading[0]
        for i in range(n):
            for j in range(n):
                if (self.entries[i][j] != self.entries[n + i][n + j]
                        or self.entries[i][n + j] != self.entries[n + i][j]):
                    raise ValueError("matrix is not of the [[A,B],[B,A]] form")
        rows = [[self.entries[i][j] + self.entries[i][n + j] for j in range(n)]
                for i in range(n)]
        return SuperMatrix(rows, None)

    # -- display / io ------------------------------------------------

    def __repr__(self):
        g = f", grading={self.grading}" if self.grading else ""
        return f"SuperMatrix({self.size}x{self.size}{g})"

    def __str__(self):
        width = max(len(str(e)) for row in self.entries for e in row)
        return "\n".join(
            "[ " + "  ".join(str(e).ljust(width) for e in row) + " ]"
            for row in self.entries)

    def to_json(self) -> dict:
        return {
            "grading": list(self.grading) if self.grading else None,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data) -> "SuperMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        entries = [[GrassmannElement.from_json(e) for e in row]
                   for row in data["entries"]]
        caps = {e.capacity for row in entries for e in row}
        cap = max(caps)
        entries = [[e.with_capacity(cap) for e in row] for row in entries]
        grading = data.get("grading")
        return cls(entries, tuple(grading) if grading else None)


def exchange_involution(n: int, capacity: int) -> SuperMatrix:
    """The odd block matrix [[0, I], [I, 0]] of M(n, n); squares to I."""
    if n < 1:
        raise ValueError("n must be positive")
    z = GrassmannElement.zero(capacity)
    o = GrassmannElement.one(capacity)
    rows = [[o if abs(i - j) == n else z for j in range(2 * n)]
            for i in range(2 * n)]
    return SuperMatrix(rows, (n, n))


def spanning_basis(n: int, theta_index: int, capacity: int) -> list:
    """Degree-0 spanning substitutions for one slot of M(n, n).

    Matrix units at block-even positions, theta-scaled units at
    block-odd positions; theta_index is the fresh odd generator for
    this slot and must differ across slots.
    """
    if theta_index > capacity:
        raise ValueError("insufficient capacity for the slot generator")
    th = GrassmannElement.generator(capacity, theta_index)
    out = []
    m = 2 * n
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if (a > n) == (b > n):
                out.append(SuperMatrix.unit(m, a, b, capacity, (n, n)))
            else:
                out.append(SuperMatrix.unit(m, a, b, capacity, (n, n), coef=th))
    return out


def spanning_tuples(n: int, d: int, capacity: int, base: int = 0):
    """Iterate all d-tuples of per-slot spanning substitutions.

    Slot i (1-based) uses the fresh generator theta_{base+i}; there are
    (4 n^2)^d tuples in total.
    """
    slots = [spanning_basis(n, base + i, capacity) for i in range(1, d + 1)]
    idx = [0] * d
    while True:
        yield tuple(slots[i][idx[i]] for i in range(d))
        j = d - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(slots[j]):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return
