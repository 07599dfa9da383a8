"""Formal multilinear trace expressions over a graded matrix algebra
with a distinguished odd involution J, and their exact evaluation.

A trace word is a tuple of letters: 0 stands for J, a positive integer
k for the variable x_k.  An expression is a rational combination of
ordered factor lists; each factor is a supertrace of a word, a queer
trace of a word, or (for mixed expressions) at most one bare word.
Factor order is significant: odd trace values anticommute.

The bridge to the twisted group algebra sends a basis monomial
sigma * C^eps to a product of supertrace factors, one per cycle of
sigma, with J inserted in front of the variables flagged by eps.  The
sign is fixed by the auxiliary-generator convention: scale slot i by a
fresh odd generator when eps_i = 1, pull the generators out to the
left in descending slot order, and read off what remains.  Evaluation
implements the same convention concretely with actual Grassmann
generators, which is the semantic ground truth; the symbolic form is
checked against it.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannElement
from .sergeev import SergeevElement, cycles
from .supermatrix import SuperMatrix, exchange_involution

__all__ = [
    "JTraceExpr", "word_parity", "collapse_jj", "canonical_str_word",
    "from_sergeev", "eval_sergeev", "eval_expr", "eval_queer",
    "qtransform", "symmetrize", "strip", "embed", "format_expr",
]

J = 0  # the letter standing for the odd involution


def word_parity(word) -> int:
    """Number of J letters mod 2 (the word's degree under even substitution)."""
    return sum(1 for l in word if l == J) & 1


def collapse_jj(word) -> tuple:
    """Cancel adjacent J J pairs (J squares to the identity)."""
    out = []
    for l in word:
        if l == J and out and out[-1] == J:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def canonical_str_word(word):
    """Cyclically minimal form of a supertrace word.

    Rotations are weighed with the supersymmetry sign (-1)^(p1*p2)
    where p1, p2 are the J-parities of the two segments, and adjacent
    J J pairs cancel after rotating.  Returns (word, sign); sign 0
    means the factor is identically zero (the same minimal word is
    reached with both signs).
    """
    word = collapse_jj(word)
    if not word:
        return (), 1
    best = None
    signs = set()
    for t in range(len(word)):
        p1 = word_parity(word[:t])
        p2 = word_parity(word[t:])
        s = -1 if (p1 and p2) else 1
        rot = collapse_jj(word[t:] + word[:t])
        key = (len(rot), rot)
        if best is None or key < best:
            best = key
            signs = {s}
        elif key == best:
            signs.add(s)
    if len(signs) == 2:
        return best[1], 0
    sign = signs.pop()
    if len(best[1]) < len(word):
        # shorter word may admit further cyclic cancellation
        sub, s2 = canonical_str_word(best[1])
        return sub, sign * s2
    return best[1], sign


def _letter_str(l) -> str:
    return "J" if l == J else f"x{l}"


class JTraceExpr:
    """Rational combination of ordered trace-factor products."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        merged = {}
        for coef, factors in (terms or []):
            coef = Fraction(coef)
            if not coef:
                continue
            factors = tuple((kind, tuple(word)) for kind, word in factors)
            if sum(1 for k, _ in factors if k == "word") > 1:
                raise ValueError("more than one word factor in a term")
            for kind, word in factors:
                if kind not in ("str", "qtr", "word"):
                    raise ValueError(f"unknown factor kind {kind!r}")
                if any(l < 0 for l in word):
                    raise ValueError("letters are J (0) or positive indices")
            merged[factors] = merged.get(factors, Fraction(0)) + coef
        self.terms = [(c, f) for f, c in merged.items() if c]

    @classmethod
    def zero(cls) -> "JTraceExpr":
        return cls([])

    @classmethod
    def one(cls) -> "JTraceExpr":
        return cls([(Fraction(1), ())])

    @classmethod
    def word(cls, letters, coef=1) -> "JTraceExpr":
        return cls([(Fraction(coef), (("word", tuple(letters)),))])

    @classmethod
    def str_of(cls, letters, coef=1) -> "JTraceExpr":
        return cls([(Fraction(coef), (("str", tuple(letters)),))])

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_pure(self) -> bool:
        return all(k != "word" for _, fs in self.terms for k, _ in fs)

    def variables(self) -> set:
        return {l for _, fs in self.terms for _, w in fs for l in w if l != J}

    def arity(self) -> int:
        vs = self.variables()
        return max(vs) if vs else 0

    def is_multilinear(self) -> bool:
        """Each of x_1..x_arity appears exactly once in every term."""
        d = self.arity()
        want = set(range(1, d + 1))
        for _, fs in self.terms:
            seen = [l for _, w in fs for l in w if l != J]
            if len(seen) != d or set(seen) != want:
                return False
        return True

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, JTraceExpr):
            return NotImplemented
        return JTraceExpr(self.terms + other.terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return JTraceExpr([(-c, f) for c, f in self.terms])

    def scale(self, value) -> "JTraceExpr":
        value = Fraction(value)
        return JTraceExpr([(value * c, f) for c, f in self.terms])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, JTraceExpr):
            return NotImplemented
        out = []
        for ca, fa in self.terms:
            for cb, fb in other.terms:
                if (fa and fb and fa[-1][0] == "word" and fb[0][0] == "word"):
                    factors = fa[:-1] + (("word", fa[-1][1] + fb[0][1]),) + fb[1:]
                else:
                    factors = fa + fb
                out.append((ca * cb, factors))
        return JTraceExpr(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, JTraceExpr):
            return NotImplemented
        return dict(map(reversed, self.terms)) == dict(map(reversed, other.terms))

    # -- normalization -----------------------------------------------

    def normalized(self) -> "JTraceExpr":
        """Canonical form under the free-algebra relations.

        Supertrace words are rotated to their cyclic minimum (with the
        supersymmetry sign), trace factors are sorted by their least
        variable (odd factors anticommute across each other, and never
        across the word factor), and like terms are merged.
        """
        out = []
        for coef, factors in self.terms:
            canon = []
            dead = False
            for kind, word in factors:
                if kind == "str":
                    word, s = canonical_str_word(word)
                    if s == 0:
                        dead = True
                        break
                    coef *= s
                canon.append((kind, word))
            if dead:
                continue
            segments = []
            current = []
            for f in canon:
                if f[0] == "word":
                    segments.append(current)
                    segments.append([f])
                    current = []
                else:
                    current.append(f)
            segments.append(current)
            sign = 1
            zero = False
            ordered = []
            for seg in segments:
                if len(seg) == 1 and seg[0][0] == "word":
                    ordered.extend(seg)
                    continue
                keyed = [(self._factor_key(f), word_parity(f[1]), f)
                         for f in seg]
                for i in range(len(keyed)):
                    for j in range(i + 1, len(keyed)):
                        if keyed[j][0] < keyed[i][0]:
                            if keyed[i][1] and keyed[j][1]:
                                sign = -sign
                keyed.sort(key=lambda t: t[0])
                for i in range(len(keyed) - 1):
                    if (keyed[i][1] and keyed[i][2] == keyed[i + 1][2]):
                        zero = True  # repeated odd factor squares to zero
                ordered.extend(f for _, _, f in keyed)
            if zero:
                continue
            out.append((coef * sign, tuple(ordered)))
        expr = JTraceExpr(out)
        expr.terms.sort(key=lambda t: t[1])
        return expr

    @staticmethod
    def _factor_key(factor):
        kind, word = factor
        least = min((l for l in word if l != J), default=0)
        return (least, word, kind)

    # -- display -----------------------------------------------------

    def __repr__(self):
        return f"JTraceExpr({format_expr(self)})"

    def __str__(self):
        return format_expr(self)

    def to_json(self) -> dict:
        return {
            "terms": [{
                "coef": str(c),
                "factors": [{"kind": k, "word": [_letter_str(l) for l in w]}
                            for k, w in fs],
            } for c, fs in self.terms],
        }

    @classmethod
    def from_json(cls, data) -> "JTraceExpr":
        terms = []
        for t in data.get("terms", []):
            coef = Fraction(str(t["coef"]).replace("−", "-"))
            factors = []
            for f in t["factors"]:
                word = tuple(J if l == "J" else int(l[1:]) for l in f["word"])
                factors.append((f["kind"], word))
            terms.append((coef, tuple(factors)))
        return cls(terms)


def format_expr(f: JTraceExpr) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for coef, factors in f.terms:
        fs = []
        for kind, word in factors:
            body = " ".join(_letter_str(l) for l in word)
            if kind == "word":
                fs.append(f"[{body}]")
            else:
                fs.append(f"{kind}({body})")
        body = " ".join(fs) or "1"
        if coef == 1:
            pieces.append(body)
        elif coef == -1:
            pieces.append("-" + body)
        else:
            pieces.append(f"{coef}*{body}")
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# -- the Sergeev correspondence ---------------------------------------


def from_sergeev(w: SergeevElement) -> JTraceExpr:
    """Symbolic trace expression of an algebra element.

    Per monomial: one supertrace factor per cycle (minimum first,
    cycles ordered by minimum, J prefixed to flagged variables), with
    the sign produced by extracting the auxiliary odd generators to
    the left in descending slot order.
    """
    terms = []
    for (perm, eps) in sorted(w.terms):
        coef = w.terms[(perm, eps)]
        cycs = cycles(perm)
        flagged = [i for cyc in cycs for i in cyc if eps[i - 1]]
        k = len(flagged)
        # each generator first hops over the earlier slots' J letters...
        sign = -1 if (k * (k - 1) // 2) & 1 else 1
        # ...then the extracted block is reversed into descending order
        asc = sum(1 for a in range(k) for b in range(a + 1, k)
                  if flagged[a] < flagged[b])
        if asc & 1:
            sign = -sign
        factors = []
        for cyc in cycs:
            word = []
            for i in cyc:
                if eps[i - 1]:
                    word.append(J)
                word.append(i)
            factors.append(("str", tuple(word)))
        terms.append((coef * sign, tuple(factors)))
    return JTraceExpr(terms)


def eval_sergeev(w: SergeevElement, mats) -> GrassmannElement:
    """Evaluate the trace polynomial of w on degree-0 graded matrices.

    Implements the defining convention directly: slot i is scaled by a
    fresh odd generator when its Clifford flag is set, the supertraces
    are taken over the cycles, and the fresh prefix is divided out
    again.  The result lives in the matrices' own Grassmann algebra.
    """
    d = w.d
    if len(mats) != d:
        raise ValueError(f"expected {d} matrices, got {len(mats)}")
    grading = mats[0].grading
    if grading is None or grading[0] != grading[1]:
        raise ValueError("matrices must carry an (n, n) grading")
    cap = mats[0].capacity
    for m in mats:
        if m.grading != grading or m.capacity != cap:
            raise ValueError("matrices must share grading and capacity")
        if not m.is_homogeneous(0):
            raise ValueError("matrices must be homogeneous of degree 0")
    n = grading[0]
    result = GrassmannElement.zero(cap)
    for (perm, eps), coef in sorted(w.terms.items()):
        result = result + _eval_monomial(perm, eps, mats, n, cap).scale(coef)
    return result


def _eval_monomial(perm, eps, mats, n, base_cap):
    d = len(eps)
    cap = base_cap + d
    j = exchange_involution(n, cap)
    scaled = []
    for i in range(d):
        m = mats[i].with_capacity(cap)
        if eps[i]:
            m = j * m
            m = m.scalar_act(GrassmannElement.generator(cap, base_cap + i + 1))
        scaled.append(m)
    value = GrassmannElement.one(cap)
    for cyc in cycles(perm):
        prod = scaled[cyc[0] - 1]
        for i in cyc[1:]:
            prod = prod * scaled[i - 1]
        value = value * prod.supertrace()
        if value.is_zero():
            break
    fresh = tuple(base_cap + i + 1 for i in range(d) if eps[i])
    if not fresh:
        return value.with_capacity(base_cap)
    k = len(fresh)
    # prefix e_d ... e_1 as a monomial: descending fresh indices
    prefix_sign = -1 if (k * (k - 1) // 2) & 1 else 1
    out = {}
    for subset, coef in value.terms.items():
        rest = tuple(i for i in subset if i <= base_cap)
        if tuple(i for i in subset if i > base_cap) != fresh:
            raise AssertionError("fresh generator dropped during evaluation")
        # theta_fresh * theta_rest: each rest index hops over all k fresh ones
        q = prefix_sign * (-1 if (k * len(rest)) & 1 else 1)
        out[rest] = coef if q > 0 else -coef
    return GrassmannElement._make(base_cap, out)


# -- evaluation of formal expressions ----------------------------------


def _require_assignment(f, assign):
    missing = f.variables() - set(assign)
    if missing:
        raise ValueError(f"unassigned variables: {sorted(missing)}")


def eval_expr(f: JTraceExpr, assign: dict, n: int, capacity=None):
    """Evaluate on degree-0 matrices of the (n, n)-graded algebra.

    Pure expressions return a Grassmann scalar, mixed ones a matrix.
    Scalar values act through the twisted diagonal embedding, so the
    written factor order is respected.
    """
    _require_assignment(f, assign)
    mats = {}
    for v, m in assign.items():
        if m.grading != (n, n):
            raise ValueError(f"variable x{v}: grading mismatch")
        if not m.is_homogeneous(0):
            raise ValueError(f"variable x{v}: not homogeneous of degree 0")
        mats[v] = m
    caps = {m.capacity for m in mats.values()}
    if len(caps) > 1:
        raise ValueError("matrices must share one capacity")
    cap = caps.pop() if caps else (capacity or 0)
    j = exchange_involution(n, cap)
    ident = SuperMatrix.identity(2 * n, cap, (n, n))

    def word_matrix(word):
        prod = ident
        for l in word:
            prod = prod * (j if l == J else mats[l])
        return prod

    mixed = any(k == "word" for _, fs in f.terms for k, _ in fs)
    if not mixed:
        total = GrassmannElement.zero(cap)
        for coef, factors in f.terms:
            acc = GrassmannElement.scalar(cap, coef)
            for kind, word in factors:
                acc = acc * word_matrix(word).supertrace()
                if acc.is_zero():
                    break
            total = total + acc
        return total
    total = SuperMatrix.zero(2 * n, cap, (n, n))
    for coef, factors in f.terms:
        acc = GrassmannElement.scalar(cap, coef)
        mat = None
        for kind, word in factors:
            if kind == "str":
                v = word_matrix(word).supertrace()
                if mat is None:
                    acc = acc * v
                else:
                    mat = mat * ident.scalar_act(v)
            elif kind == "word":
                mat = word_matrix(word).scalar_act(acc)
            else:
                raise ValueError("queer factors need the queer evaluator")
        total = total + (mat if mat is not None else ident.scalar_act(acc))
    return total


def eval_queer(f: JTraceExpr, assign: dict, n: int, capacity=None):
    """Evaluate a queer-trace expression on ungraded n x n matrices."""
    _require_assignment(f, assign)
    for v, m in assign.items():
        if m.grading is not None or m.size != n:
            raise ValueError(f"variable x{v}: expected an ungraded {n}x{n} matrix")
    caps = {m.capacity for m in assign.values()}
    if len(caps) > 1:
        raise ValueError("matrices must share one capacity")
    cap = caps.pop() if caps else (capacity or 0)
    ident = SuperMatrix.identity(n, cap)

    def word_matrix(word):
        prod = ident
        for l in word:
            if l == J:
                raise ValueError("J has no meaning in a queer expression")
            prod = prod * assign[l]
        return prod

    mixed = any(k == "word" for _, fs in f.terms for k, _ in fs)
    if not mixed:
        total = GrassmannElement.zero(cap)
        for coef, factors in f.terms:
            acc = GrassmannElement.scalar(cap, coef)
            for kind, word in factors:
                if kind != "qtr":
                    raise ValueError("queer expressions use qtr factors only")
                acc = acc * word_matrix(word).queer_trace()
                if acc.is_zero():
                    break
            total = total + acc
        return total
    total = SuperMatrix.zero(n, cap)
    for coef, factors in f.terms:
        acc = GrassmannElement.scalar(cap, coef)
        mat = None
        for kind, word in factors:
            if kind == "qtr":
                v = word_matrix(word).queer_trace()
                if mat is None:
                    acc = acc * v
                else:
                    mat = mat * ident.plain_scale(v)
            elif kind == "word":
                mat = word_matrix(word).plain_scale(acc)
            else:
                raise ValueError("queer expressions use qtr and word factors")
        total = total + (mat if mat is not None else ident.plain_scale(acc))
    return total


# -- transforms --------------------------------------------------------


def qtransform(f: JTraceExpr) -> JTraceExpr:
    """Make J central: even-J supertraces die, odd ones become 2*qtr."""
    if not f.is_pure():
        raise ValueError("the queer transform applies to pure expressions")
    out = []
    for coef, factors in f.terms:
        new = []
        dead = False
        for kind, word in factors:
            if sum(1 for l in word if l == J) % 2 == 0:
                dead = True
                break
            coef = coef * 2
            new.append(("qtr", tuple(l for l in word if l != J)))
        if not dead:
            out.append((coef, tuple(new)))
    return JTraceExpr(out)


def symmetrize(f: JTraceExpr) -> JTraceExpr:
    """Substitute x_i -> x_i + J x_i J everywhere and expand."""
    out = []
    for coef, factors in f.terms:
        expanded = [[]]
        for kind, word in factors:
            words = [()]
            for l in word:
                if l == J:
                    words = [w + (J,) for w in words]
                else:
                    words = [w + opt for w in words
                             for opt in ((l,), (J, l, J))]
            expanded = [fs + [(kind, collapse_jj(w))]
                        for fs in expanded for w in words]
        for fs in expanded:
            out.append((coef, tuple(fs)))
    return JTraceExpr(out)


def strip(f: JTraceExpr, v: int) -> JTraceExpr:
    """Remove the supertrace around the distinguished variable v.

    Every term must contain v exactly once, inside a supertrace
    factor; that factor is rotated so v leads (supersymmetry sign from
    the J-parities of the rotated segments), the wrapper is dropped
    and the remaining letters become the term's word factor, in front.
    The result has arity one less than f.
    """
    if not f.is_pure():
        raise ValueError("strip applies to pure expressions")
    out = []
    for coef, factors in f.terms:
        hits = [(i, w.index(v)) for i, (kind, w) in enumerate(factors)
                if v in w]
        total = sum(w.count(v) for _, w in factors)
        if total != 1 or len(hits) != 1:
            raise ValueError(f"variable x{v} must appear exactly once per term")
        i, p = hits[0]
        word = factors[i][1]
        prefix, suffix = word[:p], word[p + 1:]
        if word_parity(prefix) and word_parity(suffix):
            coef = -coef
        rest = suffix + prefix
        new = []
        if rest:
            new.append(("word", rest))
        new.extend(factors[k] for k in range(len(factors)) if k != i)
        out.append((coef, tuple(new)))
    return JTraceExpr(out)


def embed(f: JTraceExpr, d: int, e: int) -> JTraceExpr:
    """Pad an arity-d expression to arity e with lone supertrace factors."""
    if e < d:
        raise ValueError(f"cannot embed arity {d} into {e}")
    tail = tuple(("str", (i,)) for i in range(d + 1, e + 1))
    return JTraceExpr([(c, fs + tail) for c, fs in f.terms])
