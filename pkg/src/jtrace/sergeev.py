"""The twisted group algebra W(d) in its graded-opposite form.

Basis monomials are sigma * C_1^{e_1} ... C_d^{e_d} with sigma a
permutation of {1..d} and e a bit vector.  The defining relations:

    C_i^2 = 1,   C_i C_j = -C_j C_i (i != j),   C_i sigma = sigma C_{sigma(i)}

and the product of two permutation generators is the reversed product
in S_d (this is the graded opposite of the usual semidirect product).
Multiplying two basis monomials always yields +-1 times a single basis
monomial, so the algebra has dimension d! * 2^d.

Permutations are one-line tuples p with p[i-1] = image of i, composed
as (a o b)(i) = a(b(i)).
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

__all__ = [
    "identity_perm", "compose", "inverse", "transposition", "cycles",
    "all_perms", "clifford_normalize", "SergeevElement",
]


def identity_perm(d: int) -> tuple:
    return tuple(range(1, d + 1))


def compose(a: tuple, b: tuple) -> tuple:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def transposition(d: int, i: int, j: int) -> tuple:
    p = list(range(1, d + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


def cycles(p: tuple):
    """Cycle decomposition, each cycle minimum-first, ordered by minimum."""
    seen = [False] * len(p)
    out = []
    for start in range(1, len(p) + 1):
        if seen[start - 1]:
            continue
        cyc = [start]
        seen[start - 1] = True
        nxt = p[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt - 1] = True
            nxt = p[nxt - 1]
        out.append(tuple(cyc))
    return out


def all_perms(d: int):
    return [tuple(p) for p in itertools.permutations(range(1, d + 1))]


def clifford_normalize(indices):
    """Sort a Clifford index word into a strict ascending string.

    Each swap of distinct neighbours contributes a sign; equal
    neighbours cancel (C_i^2 = 1).  Returns (ascending tuple, sign).
    """
    res = []
    sign = 1
    for c in indices:
        pos = len(res)
        while pos > 0 and res[pos - 1] > c:
            pos -= 1
        passed = len(res) - pos
        if passed & 1:
            sign = -sign
        if pos > 0 and res[pos - 1] == c:
            res.pop(pos - 1)
        else:
            res.insert(pos, c)
    return tuple(res), sign


def _mul_monomials(sigma, eps, tau, phi):
    """Product of basis monomials; returns (perm, eps, sign).

    The left factor's Clifford string crosses the right factor's
    permutation (index i becomes tau(i)), the permutation parts combine
    to tau o sigma, and the joined Clifford string is normalized.
    """
    moved = [tau[i] for i in range(len(eps)) if eps[i]]
    moved.extend(j + 1 for j in range(len(phi)) if phi[j])
    string, sign = clifford_normalize(moved)
    out_eps = [0] * len(eps)
    for i in string:
        out_eps[i - 1] = 1
    return compose(tau, sigma), tuple(out_eps), sign


class SergeevElement:
    """Exact rational linear combination of basis monomials of W(d)°."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms=None):
        self.d = d
        clean = {}
        if terms:
            for (perm, eps), coef in terms.items():
                perm, eps = tuple(perm), tuple(eps)
                if sorted(perm) != list(range(1, d + 1)) or len(eps) != d:
                    raise ValueError(f"bad monomial for arity {d}: {perm}, {eps}")
                coef = Fraction(coef)
                if coef:
                    key = (perm, eps)
                    clean[key] = clean.get(key, Fraction(0)) + coef
                    if not clean[key]:
                        del clean[key]
        self.terms = clean

    @classmethod
    def _make(cls, d, terms):
        self = object.__new__(cls)
        self.d = d
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "SergeevElement":
        return cls._make(d, {})

    @classmethod
    def one(cls, d: int) -> "SergeevElement":
        return cls.monomial(d, identity_perm(d), (0,) * d)

    @classmethod
    def monomial(cls, d: int, perm, eps, coef=1) -> "SergeevElement":
        coef = Fraction(coef)
        if not coef:
            return cls.zero(d)
        return cls._make(d, {(tuple(perm), tuple(eps)): coef})

    @classmethod
    def from_perm(cls, d: int, perm) -> "SergeevElement":
        return cls.monomial(d, perm, (0,) * d)

    @classmethod
    def clifford(cls, d: int, i: int) -> "SergeevElement":
        if not 1 <= i <= d:
            raise ValueError(f"Clifford index {i} out of range 1..{d}")
        eps = [0] * d
        eps[i - 1] = 1
        return cls.monomial(d, identity_perm(d), eps)

    @classmethod
    def basis_monomials(cls, d: int):
        """All d! * 2^d basis monomials, in a fixed deterministic order."""
        for perm in all_perms(d):
            for eps in itertools.product((0, 1), repeat=d):
                yield (perm, eps)

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int:
        parities = {sum(eps) & 1 for (_, eps) in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            raise ValueError("element is not homogeneous")
        return parities.pop()

    def split(self):
        """(even-Clifford-count part, odd part); the sum reconstructs self."""
        even, odd = {}, {}
        for key, c in self.terms.items():
            (odd if sum(key[1]) & 1 else even)[key] = c
        return (SergeevElement._make(self.d, even),
                SergeevElement._make(self.d, odd))

    def embed(self, e: int) -> "SergeevElement":
        """Read self inside W(e)°, new points fixed and Clifford-free."""
        if e < self.d:
            raise ValueError(f"cannot embed arity {self.d} into {e}")
        if e == self.d:
            return self
        pad = tuple(range(self.d + 1, e + 1))
        zeros = (0,) * (e - self.d)
        terms = {(perm + pad, eps + zeros): c
                 for (perm, eps), c in self.terms.items()}
        return SergeevElement._make(e, terms)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SergeevElement):
            return NotImplemented
        if self.d != other.d:
            raise ValueError("arity mismatch")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            v = terms.get(key)
            if v is None:
                terms[key] = c
            else:
                v = v + c
                if v:
                    terms[key] = v
                else:
                    del terms[key]
        return SergeevElement._make(self.d, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SergeevElement._make(self.d,
                                    {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SergeevElement):
            return NotImplemented
        if self.d != other.d:
            raise ValueError("arity mismatch")
        terms = {}
        for (sigma, eps), ca in self.terms.items():
            for (tau, phi), cb in other.terms.items():
                perm, out_eps, sign = _mul_monomials(sigma, eps, tau, phi)
                key = (perm, out_eps)
                c = ca * cb if sign > 0 else -(ca * cb)
                v = terms.get(key)
                if v is None:
                    terms[key] = c
                else:
                    v = v + c
                    if v:
                        terms[key] = v
                    else:
                        del terms[key]
        return SergeevElement._make(self.d, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value) -> "SergeevElement":
        value = Fraction(value)
        if not value:
            return SergeevElement.zero(self.d)
        return SergeevElement._make(self.d,
                                    {k: value * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, SergeevElement):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    # -- conjugation -------------------------------------------------

    def conj_perm(self, perm) -> "SergeevElement":
        """sigma * self * sigma^{-1} as a product in W(d)°."""
        s = SergeevElement.from_perm(self.d, perm)
        si = SergeevElement.from_perm(self.d, inverse(tuple(perm)))
        return s * self * si

    def conj_clifford(self, i: int) -> "SergeevElement":
        """C_i * self * C_i."""
        c = SergeevElement.clifford(self.d, i)
        return c * self * c

    # -- display / io ------------------------------------------------

    def __repr__(self):
        return f"SergeevElement(d={self.d}, {self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (perm, eps) in sorted(self.terms):
            c = self.terms[(perm, eps)]
            cyc = "".join("(" + " ".join(map(str, cy)) + ")"
                          for cy in cycles(perm) if len(cy) > 1)
            cliff = "".join(f"C{i+1}" for i, e in enumerate(eps) if e)
            mono = (cyc + cliff) or "1"
            if c == 1 and mono != "1":
                parts.append(mono)
            elif c == -1 and mono != "1":
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}" if mono != "1" else f"{c}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "terms": [{"perm": list(perm), "eps": list(eps),
                       "coef": str(self.terms[(perm, eps)])}
                      for (perm, eps) in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data) -> "SergeevElement":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data.get("terms", []):
            coef = Fraction(str(t["coef"]).replace("−", "-"))
            terms[(tuple(t["perm"]), tuple(t["eps"]))] = coef
        return cls(data["d"], terms)
