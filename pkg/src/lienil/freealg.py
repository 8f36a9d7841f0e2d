"""The free associative algebra over the rationals.

Noncommutative polynomials are sparse maps word -> coefficient, a word
being a tuple of 1-based variable indices.  On top of that live the
left-normed commutator calculus, standard polynomials, the three named
alternating-sum polynomial families, complete multilinearization, the
spanning sets of multilinear T-ideal components and of the proper
(products-of-commutators) subspace, the symmetric group action, and the
rank-based dimension computations built from them.

Degree-n multilinear polynomials are embedded into an n!-dimensional
coordinate space by ranking words lexicographically among the
permutations of (1, ..., n); that canonical column numbering is fixed
once and shared by every rank computation, so results are deterministic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .exactla import Eliminator

Word = tuple[int, ...]

# Default guard on the multilinear degree; P_7 is 5040-dimensional and
# exact elimination beyond that is out of desk scale.
DEGREE_GUARD = 7


class NcPoly:
    """Noncommutative polynomial: sparse map from words to rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, Fraction] | None = None):
        clean: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                q = Fraction(c)
                if q:
                    clean[tuple(w)] = q
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "NcPoly":
        return NcPoly()

    @staticmethod
    def one() -> "NcPoly":
        return NcPoly({(): Fraction(1)})

    @staticmethod
    def var(i: int) -> "NcPoly":
        if i < 1:
            raise ValueError("variables are numbered from 1")
        return NcPoly({(i,): Fraction(1)})

    # -- ring operations ----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "NcPoly") -> "NcPoly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return NcPoly(terms)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) - c
        return NcPoly(terms)

    def __neg__(self) -> "NcPoly":
        return NcPoly({w: -c for w, c in self.terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        terms: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = terms.get(w, Fraction(0)) + c1 * c2
                if v:
                    terms[w] = v
                elif w in terms:
                    del terms[w]
        return NcPoly(terms)

    def __pow__(self, k: int) -> "NcPoly":
        if k < 0:
            raise ValueError("negative power")
        out = NcPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, k) -> "NcPoly":
        q = Fraction(k)
        return NcPoly({w: c * q for w, c in self.terms.items()})

    # -- structure ----------------------------------------------------

    def variables(self) -> set[int]:
        return {v for w in self.terms for v in w}

    def max_var(self) -> int:
        return max((v for w in self.terms for v in w), default=0)

    def variable_degrees(self) -> dict[int, int]:
        """Degree of each variable, if constant across all words."""
        degs: dict[int, int] | None = None
        for w in self.terms:
            d: dict[int, int] = {}
            for v in w:
                d[v] = d.get(v, 0) + 1
            if degs is None:
                degs = d
            elif degs != d:
                raise ValueError("polynomial is not multihomogeneous")
        return degs or {}

    def total_degree(self) -> int:
        lengths = {len(w) for w in self.terms}
        if not lengths:
            return 0
        if len(lengths) > 1:
            raise ValueError("polynomial is not homogeneous in total degree")
        return lengths.pop()

    def is_multilinear(self) -> bool:
        if not self.terms:
            return True
        n = self.total_degree()
        want = set(range(1, n + 1))
        return all(set(w) == want for w in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            mono = "".join(f"x{v}" for v in w) or "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


def long_commutator(items: Sequence[NcPoly | int]) -> NcPoly:
    """Left-normed [u1, ..., uk] = [[u1, ..., u_{k-1}], uk]; integer
    entries are shorthand for variables."""
    if len(items) < 2:
        raise ValueError("need at least two entries")
    polys = [NcPoly.var(u) if isinstance(u, int) else u for u in items]
    out = polys[0]
    for u in polys[1:]:
        out = commutator(out, u)
    return out


def perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv & 1 else 1


def standard_poly(m: int) -> NcPoly:
    """s_m = sum over S_m of sgn(sigma) x_{sigma(1)} ... x_{sigma(m)}."""
    if m < 1:
        raise ValueError("m must be positive")
    terms = {p: Fraction(perm_sign(p)) for p in permutations(range(1, m + 1))}
    return NcPoly(terms)


def make_g(i: int, degree: int) -> NcPoly:
    """The alternating-sum polynomial families g_1, g_2, g_3.

    Odd degree 2j-1 (j >= 3 for all i):
      g_1: sum over S_{2j-3}, (j-2) double commutators, tail [x_s, x1, x1]
      g_2: same range, tail [x2, x1, x_s]
      g_3: sum over S_{2j-2}, tail [x_s, x_t, x1]
    Even degree 2j (j >= 2 for i in {1,2}, j >= 3 for i = 3):
      g_1: sum over S_{2j-2}, tail [x_s, x_t, x1, x1]
      g_2: [x1, x2] * s_{2j-2}(x1, ..., x_{2j-2})
      g_3: sum over S_{2j-1}, tail [[x_s, x_t], [x_u, x1]]

    When j is small enough that no leading double commutators remain, the
    product degenerates to the tail bracket alone.
    """
    if i not in (1, 2, 3):
        raise ValueError("family index must be 1, 2 or 3")
    if degree % 2:
        j = (degree + 1) // 2
        if j < 3:
            raise ValueError(f"odd-degree g_{i} needs degree >= 5, got {degree}")
        if i == 1:
            return _alternating_sum(2 * j - 3, j - 2,
                                    lambda s: long_commutator([s[2 * j - 4], 1, 1]))
        if i == 2:
            return _alternating_sum(2 * j - 3, j - 2,
                                    lambda s: long_commutator([2, 1, s[2 * j - 4]]))
        return _alternating_sum(2 * j - 2, j - 2,
                                lambda s: long_commutator([s[2 * j - 4], s[2 * j - 3], 1]))
    j = degree // 2
    if i == 1:
        if j < 2:
            raise ValueError(f"even-degree g_1 needs degree >= 4, got {degree}")
        return _alternating_sum(2 * j - 2, j - 2,
                                lambda s: long_commutator([s[2 * j - 4], s[2 * j - 3], 1, 1]))
    if i == 2:
        if j < 2:
            raise ValueError(f"even-degree g_2 needs degree >= 4, got {degree}")
        return long_commutator([1, 2]) * standard_poly(2 * j - 2)
    if j < 3:
        raise ValueError(f"even-degree g_3 needs degree >= 6, got {degree}")
    return _alternating_sum(
        2 * j - 1, j - 2,
        lambda s: commutator(long_commutator([s[2 * j - 4], s[2 * j - 3]]),
                             long_commutator([s[2 * j - 2], 1])))


def _alternating_sum(m: int, doubles: int, tail) -> NcPoly:
    """sum over sigma in S_m of sgn(sigma) [x_{s1},x_{s2}]...(doubles)...tail(s)."""
    out = NcPoly.zero()
    for s in permutations(range(1, m + 1)):
        term = NcPoly.one()
        for t in range(doubles):
            term = term * long_commutator([s[2 * t], s[2 * t + 1]])
        term = term * tail(s)
        out = out + term.scale(perm_sign(s))
    return out


def multilinearize(f: NcPoly) -> NcPoly:
    """Complete multilinearization of a multihomogeneous polynomial.

    Each variable of degree d is replaced by a sum of d fresh copies and
    the component linear in every copy is kept; copies are numbered
    consecutively after the largest existing variable, ascending by
    (original variable, copy number).  If the original variable set has
    gaps, letters are finally renumbered to 1..n in ascending order.
    """
    if not f.terms:
        return f
    degs = f.variable_degrees()
    next_fresh = f.max_var() + 1
    copies: dict[int, list[int]] = {}
    for v in sorted(degs):
        d = degs[v]
        copies[v] = [v] + list(range(next_fresh, next_fresh + d - 1))
        next_fresh += d - 1
    out: dict[Word, Fraction] = {}
    for word, c in f.terms.items():
        occ: dict[int, list[int]] = {}
        for pos, letter in enumerate(word):
            occ.setdefault(letter, []).append(pos)
        vs = sorted(occ)
        for assignment in product(*(permutations(copies[v]) for v in vs)):
            new = list(word)
            for v, perm in zip(vs, assignment):
                for pos, cp in zip(occ[v], perm):
                    new[pos] = cp
            w = tuple(new)
            t = out.get(w, Fraction(0)) + c
            if t:
                out[w] = t
            elif w in out:
                del out[w]
    g = NcPoly(out)
    letters = sorted(g.variables())
    if letters != list(range(1, len(letters) + 1)):
        remap = {v: k + 1 for k, v in enumerate(letters)}
        g = NcPoly({tuple(remap[v] for v in w): c for w, c in g.terms.items()})
    if not g.is_multilinear():
        raise ValueError("linearization did not produce a multilinear polynomial")
    return g


# -- canonical coordinates on P_n -------------------------------------

def word_index(word: Word) -> int:
    """Lexicographic rank of a permutation word of (1, ..., n)."""
    n = len(word)
    seen = 0
    idx = 0
    fact = math.factorial(n - 1) if n else 1
    remaining = n - 1
    for pos, v in enumerate(word):
        smaller = (v - 1) - ((seen & ((1 << (v - 1)) - 1)).bit_count())
        idx += smaller * fact
        seen |= 1 << (v - 1)
        if remaining:
            fact //= remaining
            remaining -= 1
    return idx


def to_vector(f: NcPoly, n: int) -> dict[int, Fraction]:
    """Coordinates of a degree-n multilinear polynomial in P_n."""
    vec = {}
    for w, c in f.terms.items():
        if len(w) != n or set(w) != set(range(1, n + 1)):
            raise ValueError(f"not a multilinear word of degree {n}: {w}")
        vec[word_index(w)] = c
    return vec


def _check_degree(n: int, guard_override: bool) -> None:
    if n > DEGREE_GUARD and not guard_override:
        raise ValueError(f"degree {n} exceeds guard {DEGREE_GUARD}; pass guard_override=True")


# -- spanning sets -----------------------------------------------------

def _compositions(total: int, parts: int, minimum: int) -> Iterable[tuple[int, ...]]:
    """Ordered compositions of `total` into `parts` parts, each >= minimum."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def ideal_multilinear_span(p: int, n: int, guard_override: bool = False) -> list[NcPoly]:
    """Spanning set of I_p intersected with P_n: all u [w_1,...,w_p] v
    with every variable used exactly once, each block word nonempty, and
    u, v possibly empty.  Deterministic enumeration."""
    if p < 2:
        raise ValueError("commutator length must be at least 2")
    _check_degree(n, guard_override)
    out: list[NcPoly] = []
    if p > n:
        return out
    for blocks_total in range(p, n + 1):
        for lu in range(0, n - blocks_total + 1):
            lv = n - blocks_total - lu
            for sizes in _compositions(blocks_total, p, 1):
                for perm in permutations(range(1, n + 1)):
                    out.append(_framed_commutator(perm, lu, sizes, lv))
    return out


def _word_poly(letters: Sequence[int]) -> NcPoly:
    return NcPoly({tuple(letters): Fraction(1)})


def _framed_commutator(perm: Sequence[int], lu: int, sizes: Sequence[int], lv: int) -> NcPoly:
    pos = lu
    blocks = []
    for s in sizes:
        blocks.append(_word_poly(perm[pos:pos + s]))
        pos += s
    f = long_commutator(blocks)
    if lu:
        f = _word_poly(perm[:lu]) * f
    if lv:
        f = f * _word_poly(perm[len(perm) - lv:])
    return f


def product_span(p: int, q: int, n: int, guard_override: bool = False) -> list[NcPoly]:
    """Spanning set of (I_p I_q) intersected with P_n: products
    a f b g c with f, g word-substituted long commutators of lengths p, q."""
    if p < 2 or q < 2:
        raise ValueError("commutator lengths must be at least 2")
    if p + q > n:
        return []
    _check_degree(n, guard_override)
    out: list[NcPoly] = []
    for ftotal in range(p, n - q + 1):
        for gtotal in range(q, n - ftotal + 1):
            free = n - ftotal - gtotal
            for la in range(free + 1):
                for lb in range(free - la + 1):
                    lc = free - la - lb
                    for fsizes in _compositions(ftotal, p, 1):
                        for gsizes in _compositions(gtotal, q, 1):
                            for perm in permutations(range(1, n + 1)):
                                out.append(_double_framed(perm, la, fsizes, lb, gsizes, lc))
    return out


def _double_framed(perm, la, fsizes, lb, gsizes, lc) -> NcPoly:
    pos = la
    fblocks = []
    for s in fsizes:
        fblocks.append(_word_poly(perm[pos:pos + s]))
        pos += s
    f = long_commutator(fblocks)
    mid_start = pos
    pos += lb
    gblocks = []
    for s in gsizes:
        gblocks.append(_word_poly(perm[pos:pos + s]))
        pos += s
    g = long_commutator(gblocks)
    out = f
    if lb:
        out = out * _word_poly(perm[mid_start:mid_start + lb])
    out = out * g
    if la:
        out = _word_poly(perm[:la]) * out
    if lc:
        out = out * _word_poly(perm[len(perm) - lc:])
    return out


def _set_partitions_min2(items: tuple[int, ...]) -> Iterable[list[list[int]]]:
    """Set partitions into blocks of size >= 2, blocks ordered by least
    element (the first item always starts the first block)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    # choose the remaining members of the block containing `first`
    for size in range(1, len(rest) + 1):
        for members in _combinations_ordered(rest, size):
            others = tuple(x for x in rest if x not in members)
            block = [first, *members]
            for tail in _set_partitions_min2(others):
                yield [block] + tail


def _combinations_ordered(items: tuple[int, ...], size: int) -> Iterable[tuple[int, ...]]:
    from itertools import combinations
    yield from combinations(items, size)


def proper_span(n: int, guard_override: bool = False) -> list[NcPoly]:
    """Spanning set of the proper subspace of P_n: all products of
    left-normed pure commutators of length >= 2 whose lengths sum to n.
    Blocks are listed in increasing order of least variable; all internal
    orders of each block are enumerated.  Degree 0 is spanned by the
    unit (the empty product); degree 1 has no proper polynomials."""
    if n == 0:
        return [NcPoly.one()]
    if n == 1:
        return []
    _check_degree(n, guard_override)
    out: list[NcPoly] = []
    for blocks in _set_partitions_min2(tuple(range(1, n + 1))):
        orderings_per_block = [list(permutations(b)) for b in blocks]
        for choice in product(*orderings_per_block):
            f = NcPoly.one()
            for ordered in choice:
                f = f * long_commutator(list(ordered))
            out.append(f)
    return out


# -- symmetric group action and dimensions -----------------------------

def sn_act(sigma: Sequence[int], f: NcPoly) -> NcPoly:
    """Rename x_i -> x_{sigma(i)}; sigma is 1-based, sigma[i-1] = sigma(i)."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma is not a permutation of 1..n")
    out: dict[Word, Fraction] = {}
    for w, c in f.terms.items():
        if any(v > n for v in w):
            raise ValueError("permutation degree smaller than polynomial degree")
        nw = tuple(sigma[v - 1] for v in w)
        out[nw] = out.get(nw, Fraction(0)) + c
    return NcPoly(out)


def ideal_eliminator(p: int, n: int, guard_override: bool = False) -> Eliminator:
    """Eliminator loaded with the coordinates of I_p in P_n."""
    elim = Eliminator(math.factorial(n))
    for f in ideal_multilinear_span(p, n, guard_override):
        elim.add(to_vector(f, n))
    return elim


def quotient_dims(n: int, p: int, guard_override: bool = False) -> tuple[int, int]:
    """(c_n, gamma_n) of the variety of Lie nilpotent algebras of index p:
    dimensions of P_n and of the proper subspace modulo I_{p+1}."""
    if p < 2:
        raise ValueError("nilpotency index must be at least 2")
    _check_degree(n, guard_override)
    if n == 0:
        return 1, 1
    if n == 1:
        return 1, 0
    elim = ideal_eliminator(p + 1, n, guard_override)
    c = math.factorial(n) - elim.rank
    gamma = 0
    for f in proper_span(n, guard_override):
        if elim.add(to_vector(f, n)):
            gamma += 1
    return c, gamma


def module_span_dim(f: NcPoly, p: int, guard_override: bool = False) -> int:
    """Dimension of the S_n-module generated by a multilinear f inside
    P_n modulo I_{p+1}, computed as a joint-rank difference."""
    if not f.is_multilinear():
        raise ValueError("module_span_dim needs a multilinear polynomial")
    n = f.total_degree()
    _check_degree(n, guard_override)
    elim = ideal_eliminator(p + 1, n, guard_override)
    dim = 0
    for sigma in permutations(range(1, n + 1)):
        if elim.add(to_vector(sn_act(sigma, f), n)):
            dim += 1
    return dim


# -- parser ------------------------------------------------------------

def parse_poly(text: str) -> NcPoly:
    """Parse a polynomial literal.

    Grammar: variables x1..x99, left-normed brackets [a,b,...], '*' or
    juxtaposition for products, '^k' for powers, rational coefficients
    like 3 or 5/2, '+'/'-', and parentheses.
    """
    tokens = _tokenize(text)
    poly, pos = _parse_sum(tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"unexpected token {tokens[pos]!r} in polynomial literal")
    return poly


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ValueError("variable needs an index, e.g. x1")
            out.append(("var", text[i + 1:j]))
            i = j
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("num", text[i:j]))
            i = j
        elif ch in "[](),+-*^/":
            out.append((ch, ch))
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in polynomial literal")
    return out


def _parse_sum(tokens, pos):
    poly, pos = _parse_term(tokens, pos)
    while pos < len(tokens) and tokens[pos][0] in "+-":
        op = tokens[pos][0]
        nxt, pos = _parse_term(tokens, pos + 1)
        poly = poly + nxt if op == "+" else poly - nxt
    return poly, pos


_PRIMARY_STARTS = {"var", "num", "[", "("}


def _parse_term(tokens, pos):
    sign = 1
    while pos < len(tokens) and tokens[pos][0] in "+-":
        if tokens[pos][0] == "-":
            sign = -sign
        pos += 1
    poly, pos = _parse_factor(tokens, pos)
    while pos < len(tokens) and (tokens[pos][0] == "*" or tokens[pos][0] in _PRIMARY_STARTS):
        if tokens[pos][0] == "*":
            pos += 1
        nxt, pos = _parse_factor(tokens, pos)
        poly = poly * nxt
    return (poly.scale(sign) if sign < 0 else poly), pos


def _parse_factor(tokens, pos):
    poly, pos = _parse_primary(tokens, pos)
    while pos < len(tokens) and tokens[pos][0] == "^":
        if pos + 1 >= len(tokens) or tokens[pos + 1][0] != "num":
            raise ValueError("'^' needs an integer exponent")
        poly = poly ** int(tokens[pos + 1][1])
        pos += 2
    return poly, pos


def _parse_primary(tokens, pos):
    if pos >= len(tokens):
        raise ValueError("unexpected end of polynomial literal")
    kind, val = tokens[pos]
    if kind == "num":
        num = int(val)
        if pos + 2 < len(tokens) and tokens[pos + 1][0] == "/" and tokens[pos + 2][0] == "num":
            return NcPoly({(): Fraction(num, int(tokens[pos + 2][1]))}), pos + 3
        return NcPoly({(): Fraction(num)}), pos + 1
    if kind == "var":
        return NcPoly.var(int(val)), pos + 1
    if kind == "(":
        poly, pos = _parse_sum(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos][0] != ")":
            raise ValueError("unbalanced parenthesis")
        return poly, pos + 1
    if kind == "[":
        entries = []
        poly, pos = _parse_sum(tokens, pos + 1)
        entries.append(poly)
        while pos < len(tokens) and tokens[pos][0] == ",":
            poly, pos = _parse_sum(tokens, pos + 1)
            entries.append(poly)
        if pos >= len(tokens) or tokens[pos][0] != "]":
            raise ValueError("unbalanced bracket")
        if len(entries) < 2:
            raise ValueError("commutator bracket needs at least two entries")
        return long_commutator(entries), pos + 1
    raise ValueError(f"unexpected token {val!r} in polynomial literal")
