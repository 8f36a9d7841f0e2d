"""Arithmetic in Grassmann (exterior) algebras over bit-set monomials.

A monomial e_{i1}...e_{ik} with i1 < ... < ik is stored as an integer
bitmask with bit (i-1) set for generator e_i; the empty mask is the unit.
Products follow e_i e_j = -e_j e_i, e_i^2 = 0: for disjoint masks S, T
the product e_S e_T equals (-1)^{inv(S,T)} e_{S|T} where inv(S,T) counts
pairs (s, t) in S x T with s > t.  Up to 64 generators are supported,
which covers every instance needed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

MAX_GENERATORS = 64

UNBOUNDED = None  # dim value for a truncation of the infinite-dimensional E


def mono_mul(s: int, t: int) -> tuple[int, int]:
    """Product of two monomial masks: (mask, sign); sign 0 means the
    product vanished on overlapping support."""
    if s & t:
        return 0, 0
    # count pairs (a in s, b in t) with a > b, i.e. inversions across the join
    inv = 0
    rest = t
    while rest:
        low = rest & -rest
        inv += (s >> low.bit_length()).bit_count()
        rest ^= low
    return s | t, -1 if inv & 1 else 1


def mono_degree(s: int) -> int:
    return s.bit_count()


def mono_str(s: int) -> str:
    if s == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(s.bit_length()) if (s >> i) & 1)


def mono_key(s: int) -> tuple[int, int]:
    """Canonical ordering key: by degree, then by numeric mask value."""
    return (s.bit_count(), s)


@dataclass(frozen=True)
class GrassmannElem:
    """Element of E_r (dim=r) or of a truncation of E (dim=None)."""

    dim: int | None
    terms: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim is not None and not (0 <= self.dim <= MAX_GENERATORS):
            raise ValueError(f"generator count {self.dim} out of range 0..{MAX_GENERATORS}")
        clean = {}
        for mask, coef in self.terms.items():
            c = Fraction(coef)
            if not c:
                continue
            if self.dim is not None and mask >> self.dim:
                raise ValueError(f"monomial {mono_str(mask)} exceeds {self.dim} generators")
            if mask >> MAX_GENERATORS:
                raise ValueError("monomial exceeds 64 generators")
            clean[mask] = c
        object.__setattr__(self, "terms", clean)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GrassmannElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GrassmannElem") -> "GrassmannElem":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return GrassmannElem(self._join_dim(other), terms)

    def __sub__(self, other: "GrassmannElem") -> "GrassmannElem":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) - c
        return GrassmannElem(self._join_dim(other), terms)

    def __neg__(self) -> "GrassmannElem":
        return GrassmannElem(self.dim, {m: -c for m, c in self.terms.items()})

    def scale(self, k) -> "GrassmannElem":
        q = Fraction(k)
        return GrassmannElem(self.dim, {m: c * q for m, c in self.terms.items()})

    def _join_dim(self, other: "GrassmannElem") -> int | None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return self.dim

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms, key=mono_key):
            c = self.terms[mask]
            s = mono_str(mask)
            if c == 1 and mask:
                parts.append(s)
            elif c == -1 and mask:
                parts.append(f"-{s}")
            elif mask:
                parts.append(f"{c}*{s}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def unit(dim: int | None) -> GrassmannElem:
    return GrassmannElem(dim, {0: Fraction(1)})


def generator(i: int, dim: int | None) -> GrassmannElem:
    """The generator e_i (1-based)."""
    if i < 1:
        raise ValueError("generators are numbered from 1")
    return GrassmannElem(dim, {1 << (i - 1): Fraction(1)})


def monomial(indices, dim: int | None = None) -> GrassmannElem:
    """e_{i1}...e_{ik} for strictly increasing 1-based indices."""
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit or bit <= mask:
            raise ValueError("indices must be strictly increasing")
        mask |= bit
    return GrassmannElem(dim, {mask: Fraction(1)})


def gmul(a: GrassmannElem, b: GrassmannElem) -> GrassmannElem:
    """Bilinear extension of the signed monomial product."""
    dim = a._join_dim(b)
    terms: dict[int, Fraction] = {}
    for s, ca in a.terms.items():
        for t, cb in b.terms.items():
            m, sign = mono_mul(s, t)
            if sign:
                c = terms.get(m, Fraction(0)) + sign * ca * cb
                if c:
                    terms[m] = c
                elif m in terms:
                    del terms[m]
    return GrassmannElem(dim, terms)


def gcommutator(a: GrassmannElem, b: GrassmannElem) -> GrassmannElem:
    return gmul(a, b) - gmul(b, a)
