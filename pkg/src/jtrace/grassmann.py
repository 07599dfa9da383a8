"""Exact arithmetic in a finite Grassmann (exterior) algebra.

An element of E_N is a rational linear combination of monomials
theta_S = theta_{i1} theta_{i2} ... theta_{ik} indexed by strictly
ascending subsets S = {i1 < ... < ik} of {1..N}.  Generators
anticommute (theta_i theta_j = -theta_j theta_i) and square to zero,
so the algebra is Z2-graded by |S| mod 2 and supercommutative.

Coefficients are exact rationals throughout; there is no floating
point anywhere in this package.
"""

from __future__ import annotations

import json
from fractions import Fraction

__all__ = ["GrassmannElement", "merge_sign", "zero", "one", "theta"]


def merge_sign(a: tuple, b: tuple):
    """Merge two ascending index tuples.

    Returns (merged tuple, sign) where sign counts the transpositions
    needed to interleave b into a, or (None, 0) if they intersect
    (the product of monomials with a common generator is zero).
    """
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    sign = 1
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            return None, 0
        if x < y:
            out.append(x)
            i += 1
        else:
            # b[j] jumps over the remaining la - i generators of a
            if (la - i) & 1:
                sign = -sign
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


def _term_key(subset: tuple):
    # canonical order: by size, then lexicographic
    return (len(subset), subset)


class GrassmannElement:
    """Immutable element of E_N with exact rational coefficients."""

    __slots__ = ("capacity", "terms")

    def __init__(self, capacity: int, terms=None):
        if capacity < 0:
            raise ValueError("capacity must be nonnegative")
        self.capacity = capacity
        clean = {}
        if terms:
            for subset, coef in terms.items():
                subset = tuple(subset)
                if list(subset) != sorted(set(subset)):
                    raise ValueError(f"subset {subset} not strictly ascending")
                if subset and (subset[0] < 1 or subset[-1] > capacity):
                    raise ValueError(f"index out of range 1..{capacity}: {subset}")
                coef = Fraction(coef)
                if coef:
                    clean[subset] = clean.get(subset, Fraction(0)) + coef
                    if not clean[subset]:
                        del clean[subset]
        self.terms = clean

    @classmethod
    def _make(cls, capacity, terms):
        # fast internal constructor; terms assumed clean (no zeros, valid keys)
        self = object.__new__(cls)
        self.capacity = capacity
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, capacity: int) -> "GrassmannElement":
        return cls._make(capacity, {})

    @classmethod
    def one(cls, capacity: int) -> "GrassmannElement":
        return cls._make(capacity, {(): Fraction(1)})

    @classmethod
    def scalar(cls, capacity: int, value) -> "GrassmannElement":
        value = Fraction(value)
        return cls._make(capacity, {(): value} if value else {})

    @classmethod
    def generator(cls, capacity: int, i: int) -> "GrassmannElement":
        if not 1 <= i <= capacity:
            raise ValueError(f"generator index {i} out of range 1..{capacity}")
        return cls._make(capacity, {(i,): Fraction(1)})

    @classmethod
    def monomial(cls, capacity: int, subset, coef=1) -> "GrassmannElement":
        return cls(capacity, {tuple(subset): Fraction(coef)})

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        parities = {len(s) & 1 for s in self.terms}
        return len(parities) <= 1

    def parity(self) -> int:
        """Parity of a homogeneous element (0 for the zero element)."""
        parities = {len(s) & 1 for s in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            raise ValueError("element is not homogeneous")
        return parities.pop()

    def split(self):
        """Return (even part, odd part); their sum reconstructs self."""
        even, odd = {}, {}
        for s, c in self.terms.items():
            (odd if len(s) & 1 else even)[s] = c
        return (GrassmannElement._make(self.capacity, even),
                GrassmannElement._make(self.capacity, odd))

    def omega(self) -> "GrassmannElement":
        """The grading involution: multiply each monomial by (-1)^parity."""
        return GrassmannElement._make(
            self.capacity,
            {s: (-c if len(s) & 1 else c) for s, c in self.terms.items()})

    def with_capacity(self, capacity: int) -> "GrassmannElement":
        """Copy of self read in E_capacity (must hold all used indices)."""
        top = max((s[-1] for s in self.terms if s), default=0)
        if capacity < top:
            raise ValueError(f"capacity {capacity} below used index {top}")
        return GrassmannElement._make(capacity, dict(self.terms))

    def coefficient(self, subset) -> Fraction:
        return self.terms.get(tuple(subset), Fraction(0))

    def generators_used(self):
        used = set()
        for s in self.terms:
            used.update(s)
        return used

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        if self.capacity != other.capacity:
            raise ValueError("capacity mismatch")
        terms = dict(self.terms)
        for s, c in other.terms.items():
            v = terms.get(s)
            if v is None:
                terms[s] = c
            else:
                v = v + c
                if v:
                    terms[s] = v
                else:
                    del terms[s]
        return GrassmannElement._make(self.capacity, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GrassmannElement._make(
            self.capacity, {s: -c for s, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        if self.capacity != other.capacity:
            raise ValueError("capacity mismatch")
        terms = {}
        for sa, ca in self.terms.items():
            for sb, cb in other.terms.items():
                merged, sign = merge_sign(sa, sb)
                if merged is None:
                    continue
                v = terms.get(merged)
                c = ca * cb if sign > 0 else -(ca * cb)
                if v is None:
                    terms[merged] = c
                else:
                    v = v + c
                    if v:
                        terms[merged] = v
                    else:
                        del terms[merged]
        return GrassmannElement._make(self.capacity, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value) -> "GrassmannElement":
        value = Fraction(value)
        if not value:
            return GrassmannElement.zero(self.capacity)
        return GrassmannElement._make(
            self.capacity, {s: value * c for s, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.capacity == other.capacity and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- display / io ------------------------------------------------

    def __repr__(self):
        return f"GrassmannElement({self.capacity}, {self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for s in sorted(self.terms, key=_term_key):
            c = self.terms[s]
            mono = "".join(f"θ{i}" for i in s) or "1"
            if c == 1 and s:
                parts.append(mono)
            elif c == -1 and s:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if s else f"{c}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self) -> dict:
        return {
            "capacity": self.capacity,
            "terms": [{"gens": list(s), "coef": str(self.terms[s])}
                      for s in sorted(self.terms, key=_term_key)],
        }

    @classmethod
    def from_json(cls, data) -> "GrassmannElement":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data.get("terms", []):
            coef = Fraction(str(t["coef"]).replace("−", "-"))
            terms[tuple(t["gens"])] = coef
        return cls(data["capacity"], terms)


def zero(capacity: int) -> GrassmannElement:
    return GrassmannElement.zero(capacity)


def one(capacity: int) -> GrassmannElement:
    return GrassmannElement.one(capacity)


def theta(capacity: int, i: int) -> GrassmannElement:
    return GrassmannElement.generator(capacity, i)
