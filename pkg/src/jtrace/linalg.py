"""Exact sparse linear algebra over the rationals.

Vectors are dicts from orderable column keys to coefficients.  All
reductions are fraction-free: rows are scaled to integers, eliminations
use cross-multiplication (v*p - row*c) and rows are kept primitive by
dividing out the gcd, so every intermediate value is an exact integer.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = ["to_int_row", "SpanTracker", "nullspace"]


def to_int_row(vec) -> dict:
    """Scale a rational sparse vector to a primitive integer one."""
    if not vec:
        return {}
    scale = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = v.denominator
            scale = scale * den // gcd(scale, den)
    out = {}
    for k, v in vec.items():
        iv = int(v * scale)
        if iv:
            out[k] = iv
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _eliminate(vec: dict, row: dict, key) -> dict:
    """Return vec*row[key] - row*vec[key], gcd-reduced; kills column key."""
    a = vec[key]
    b = row[key]
    new = {k: v * b for k, v in vec.items()}
    for k, v in row.items():
        w = new.get(k, 0) - v * a
        if w:
            new[k] = w
        elif k in new:
            del new[k]
    g = 0
    for v in new.values():
        g = gcd(g, v)
    if g > 1:
        new = {k: v // g for k, v in new.items()}
    return new


class SpanTracker:
    """Incrementally echelonized set of sparse integer vectors.

    Pivots are chosen at the smallest present column key, which makes
    ranks and membership tests deterministic.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec) -> dict:
        """Reduce a vector against the current pivots (no insertion)."""
        vec = to_int_row(vec)
        while vec:
            k = min(vec)
            row = self.pivots.get(k)
            if row is None:
                break
            vec = _eliminate(vec, row, k)
        return vec

    def add(self, vec) -> bool:
        """Insert a vector; True if it enlarged the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        k = min(vec)
        if vec[k] < 0:
            vec = {kk: -v for kk, v in vec.items()}
        self.pivots[k] = vec
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def rows(self):
        return [dict(self.pivots[k]) for k in sorted(self.pivots)]


def nullspace(rows) -> list:
    """Left-kernel of a sparse matrix given as a list of row vectors.

    Returns primitive integer relation vectors r (as dicts indexed by
    row position) with sum_i r[i] * rows[i] = 0, computed by
    fraction-free elimination on rows augmented with the identity.
    """
    tracker = SpanTracker()
    relations = []
    for idx, row in enumerate(rows):
        aug = {(0, k): v for k, v in row.items()}
        aug[(1, idx)] = 1
        red = tracker.reduce(aug)
        if all(k[0] == 1 for k in red):
            relations.append({k[1]: v for k, v in red.items()})
        else:
            k = min(k for k in red if k[0] == 0)
            if red[k] < 0:
                red = {kk: -v for kk, v in red.items()}
            tracker.pivots[k] = red
    return relations
