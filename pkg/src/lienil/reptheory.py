"""Partitions, hook lengths, symmetric group characters, and the
decomposition machinery for proper multilinear quotients.

decompose_quotient computes the character of the symmetric group acting
on the proper multilinear space modulo the T-ideal of long commutators
(one trace per conjugacy class, on a rank-revealing quotient basis) and
resolves multiplicities against the Murnaghan-Nakayama character table.
The two closed-form decompositions for Grassmann tensor products and the
guaranteed-partition catalogue from the same circle of results are
implemented as pure shape enumerations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable

import numpy as np

from .exactla import Eliminator
from .freealg import ideal_eliminator, proper_span, sn_act, to_vector, word_index, NcPoly

Partition = tuple[int, ...]


def is_partition(lam: Iterable[int]) -> bool:
    lam = tuple(lam)
    return all(a >= 1 for a in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in descending lexicographic order."""
    out: list[Partition] = []

    def rec(rest: int, maxpart: int, prefix: tuple[int, ...]):
        if rest == 0:
            out.append(prefix)
            return
        for part in range(min(rest, maxpart), 0, -1):
            rec(rest - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for a in lam if a > j) for j in range(lam[0]))


def hook_lengths(lam: Partition) -> list[list[int]]:
    conj = conjugate(lam)
    return [[(lam[i] - j) + (conj[j] - i) - 1 for j in range(lam[i])]
            for i in range(len(lam))]


def hook_dim(lam: Partition) -> int:
    """Dimension of the irreducible module for the partition: n! divided
    by the product of all hook lengths."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {lam}")
    n = sum(lam)
    d = math.factorial(n)
    for row in hook_lengths(lam):
        for h in row:
            if d % h:
                raise AssertionError("hook product does not divide n!")
            d //= h
    return d


def partition_str(lam: Partition) -> str:
    return "(" + ",".join(str(a) for a in lam) + ")"


# -- Murnaghan-Nakayama ------------------------------------------------------


def _border_strips(lam: Partition, size: int):
    """Removable border strips of the given size: yields (new_partition,
    height).  A strip occupies consecutive rows; in each row above the
    last it must reach to the row's end."""
    rows = len(lam)
    for start in range(rows):
        strip = [0] * rows
        for row in range(start, rows):
            take = size - sum(strip)
            if take <= 0:
                break
            if row + 1 < rows:
                take = min(take, lam[row] - lam[row + 1] + 1)
            strip[row] = max(take, 0)
        if sum(strip) != size:
            continue
        new = [lam[i] - strip[i] for i in range(rows)]
        if all(new[i] >= new[i + 1] for i in range(rows - 1)) and all(v >= 0 for v in new):
            height = sum(1 for v in strip if v) - 1
            yield tuple(v for v in new if v), height


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> int:
    """Character value chi_lambda(mu) by the border-strip recursion."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError("partition sizes differ")
    if not lam:
        return 1
    if all(m == 1 for m in mu):
        return hook_dim(lam)
    first, rest = mu[0], mu[1:]
    total = 0
    for new, height in _border_strips(lam, first):
        total += (-1) ** height * mn_character(new, rest)
    return total


def cycle_type_classes(n: int) -> list[tuple[Partition, int, tuple[int, ...]]]:
    """One entry per conjugacy class of S_n: (cycle type, class size,
    representative permutation in one-line notation, canonical cycles)."""
    out = []
    for mu in partitions_of(n):
        counts: dict[int, int] = {}
        for m in mu:
            counts[m] = counts.get(m, 0) + 1
        z = 1
        for m, a in counts.items():
            z *= m ** a * math.factorial(a)
        size = math.factorial(n) // z
        sigma = list(range(1, n + 1))
        pos = 0
        for m in mu:
            for t in range(m):
                sigma[pos + t] = pos + 1 + (t + 1) % m
            pos += m
        out.append((mu, size, tuple(sigma)))
    return out


# -- decompositions ----------------------------------------------------------


@dataclass
class Decomposition:
    parts: list[tuple[Partition, int]]

    def total_dim(self) -> int:
        return sum(m * hook_dim(lam) for lam, m in self.parts)

    def multiplicity(self, lam: Partition) -> int:
        for mu, m in self.parts:
            if mu == tuple(lam):
                return m
        return 0

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        return " + ".join((f"{m}*" if m > 1 else "") + f"M{partition_str(lam)}"
                          for lam, m in self.parts)

    def to_json(self) -> list[dict]:
        return [{"partition": list(lam), "multiplicity": m, "dim": hook_dim(lam)}
                for lam, m in self.parts]


def _column_permutation(sigma: tuple[int, ...], n: int) -> np.ndarray:
    """Index map of the variable renaming on the canonical P_n basis."""
    words = sorted(permutations(range(1, n + 1)))
    perm = np.empty(len(words), dtype=np.int64)
    for w in words:
        nw = tuple(sigma[v - 1] for v in w)
        perm[word_index(w)] = word_index(nw)
    return perm


def decompose_quotient(n: int, p: int, guard_override: bool = False) -> Decomposition:
    """S_n-module decomposition of the proper multilinear space modulo
    the T-ideal generated by commutators of length p+1.

    The trace of one representative per conjugacy class is computed on a
    rank-revealing basis of the quotient; multiplicities follow from
    character orthogonality and are checked to be nonnegative integers
    summing (weighted by hook dimensions) to the quotient dimension."""
    if n < 2:
        raise ValueError("need degree >= 2")
    if n > 6 and not guard_override:
        raise ValueError("decompose_quotient guarded at degree 6")
    nfact = math.factorial(n)
    elim_ideal = ideal_eliminator(p + 1, n, guard_override)
    quotient = Eliminator(nfact)
    for f in proper_span(n, guard_override):
        quotient.add(elim_ideal.residual(to_vector(f, n)))
    gdim = quotient.rank
    if gdim == 0:
        return Decomposition([])

    traces: dict[Partition, Fraction] = {}
    for mu, size, sigma in cycle_type_classes(n):
        colmap = _column_permutation(sigma, n)
        tr = Fraction(0)
        for pc, row in zip(quotient.pivot_cols, quotient.rows):
            moved = np.zeros(nfact, dtype=row.dtype)
            moved[colmap] = row
            arr, denom = elim_ideal.residual_exact(
                {int(c): int(moved[c]) for c in np.nonzero(moved)[0]})
            tr += Fraction(int(arr[pc]), denom) / Fraction(int(row[pc]))
        traces[mu] = tr

    parts: list[tuple[Partition, int]] = []
    for lam in partitions_of(n):
        acc = Fraction(0)
        for mu, size, _ in cycle_type_classes(n):
            acc += size * traces[mu] * mn_character(lam, mu)
        m = acc / nfact
        if m.denominator != 1 or m < 0:
            raise AssertionError(f"multiplicity of {lam} is not a nonnegative integer: {m}")
        if m:
            parts.append((lam, int(m)))
    dec = Decomposition(parts)
    if dec.total_dim() != gdim:
        raise AssertionError("decomposition does not add up to the quotient dimension")
    return dec


# -- closed-form decompositions for Grassmann tensor products ---------------


def _hook2_shapes(n: int) -> Iterable[tuple[Partition, int, int, int]]:
    """Partitions (a+2, 2^b, 1^c) of n with b + c > 0: yields
    (partition, a, b, c)."""
    for b in range((n - 2) // 2 + 1):
        for a in range(n - 2 - 2 * b + 1):
            c = n - (a + 2) - 2 * b
            if c < 0 or (b == 0 and c == 0):
                continue
            if a + 2 < 2 and b:
                continue
            lam = (a + 2,) + (2,) * b + (1,) * c
            if is_partition(lam):
                yield lam, a, b, c


def did_gamma(n: int, l: int) -> tuple[Decomposition, int]:
    """Decomposition of the proper multilinear quotient of E (x) E_{2l}:
    all shapes (a+2, 2^b, 1^c) with a+b+1 <= 2l, plus the sign module
    for even n."""
    if n < 2 or l < 1:
        raise ValueError("need n >= 2 and l >= 1")
    parts = []
    for lam, a, b, c in _hook2_shapes(n):
        if a + b + 1 <= 2 * l:
            parts.append((lam, 1))
    if n % 2 == 0:
        parts.append(((1,) * n, 1))
    dec = Decomposition(parts)
    return dec, dec.total_dim()


def did_gamma_finite(n: int, m: int, l: int) -> tuple[Decomposition, int]:
    """Decomposition of the proper multilinear quotient of
    E_{2m} (x) E_{2l} for m >= l >= 1: hook-pair shapes filtered by
    h_12 = a+b+1 <= 2l and either h_11 + h_12 - 1 = 2a+2b+c+2 < 2(m+l),
    or equality with h_12 even; sign module for even n <= 2(m+l)."""
    if m < l or l < 1:
        raise ValueError("need m >= l >= 1")
    if n < 2:
        raise ValueError("need n >= 2")
    bound = 2 * (m + l)
    parts = []
    for lam, a, b, c in _hook2_shapes(n):
        h12 = a + b + 1
        if h12 > 2 * l:
            continue
        edge = 2 * a + 2 * b + c + 2
        if edge < bound or (edge == bound and h12 % 2 == 0):
            parts.append((lam, 1))
    if n % 2 == 0 and n <= bound:
        parts.append(((1,) * n, 1))
    dec = Decomposition(parts)
    return dec, dec.total_dim()


def intro_partitions(n: int, p: int) -> list[Partition]:
    """The catalogue of partitions guaranteed to appear in the proper
    multilinear quotient of index p: the two distinguished shapes, the
    hook-pair band, the three staircase families, and the sign module
    for even n (for odd index two extra bands below degree 4k)."""
    if p < 2:
        raise ValueError("need p >= 2")
    k = p // 2
    found: set[Partition] = set()

    def add(lam: tuple[int, ...]):
        if sum(lam) == n and is_partition(lam):
            found.add(tuple(lam))

    # (i) the sharp first-row shape and the square shape
    add((p - 1, 1))
    add((p - 1, p - 1))
    # (ii) hook-pair band
    for lam, a, b, c in _hook2_shapes(n):
        if a + b + 1 <= 2 * k - 2:
            add(lam)
    # (iii) staircase families
    for l in range(0, k - 1):
        if n - 2 * l - 4 >= 0:
            add((l + 3, l + 1) + (1,) * (n - 2 * l - 4))
            add((l + 2, l + 2) + (1,) * (n - 2 * l - 4))
        if n - 2 * l - 3 >= 0:
            add((l + 2, l + 1) + (1,) * (n - 2 * l - 3))
    # (iv) sign module for even degree
    if n % 2 == 0:
        add((1,) * n)
    # (v), (vi) for odd index below degree 4k
    if p % 2 == 1 and n <= 4 * k:
        for b in range(1, n // 2 + 1):
            a = 2 * k - 1 - b
            if a >= 0:
                add((a + 2,) + (2,) * b)
        for b in range(0, n // 2 + 1):
            a = 2 * k - 2 - b
            if a >= 0:
                add((a + 2,) + (2,) * b + (1,))
    return sorted(found, reverse=True)
