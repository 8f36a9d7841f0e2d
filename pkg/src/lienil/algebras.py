"""Finite-basis associative algebras given by structure constants.

Constructors cover the Grassmann algebras E_r (basis indexed by the
generator bitmask, so index 0 is the unit), the matrix-span algebras N_k,
ungraded tensor products, and a JSON structure-constant file format.
Construction always validates unitality and associativity: exhaustively
for dimension <= 64 (vectorized for monomial tables), on 10^4 seeded
random triples above that.

Every algebra built by the named constructors is *monomial*: the product
of two basis elements is + or - a basis element, or zero.  Monomial
algebras are represented by int32/int8 numpy tables (`mono_idx`,
`mono_sign`) built directly by vectorized constructors; the sparse
dict-of-dicts path remains for arbitrary structure constants loaded from
files.  The two representations are interchangeable through
`table_entry`, and the mandatory cross-validation against the bit-set
Grassmann arithmetic lives in the test suite.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from .freealg import NcPoly

DEFAULT_DIM_CAP = 4096

Elem = dict[int, Fraction]


class ConstructionError(ValueError):
    pass


class FiniteAlgebra:
    """Associative unital algebra with a fixed finite basis.

    Exactly one of `table` (sparse products as dicts) or `mono`
    (index/sign arrays for a monomial algebra) backs the multiplication.
    The meta dict records how the algebra was built; tensor products of
    Grassmann algebras carry meta["grassmann_slots"] (generator counts
    per slot), which enables support-disjointness pruning in the
    brute-force checker.
    """

    def __init__(self, basis_labels: Sequence[str], unit_index: int,
                 table: dict[tuple[int, int], Elem] | None = None, *,
                 mono: tuple[np.ndarray, np.ndarray] | None = None,
                 validate: bool = True, meta: dict | None = None):
        self.basis_labels = list(basis_labels)
        self.unit_index = unit_index
        self.dim = len(self.basis_labels)
        self.meta = dict(meta or {})
        if (table is None) == (mono is None):
            raise ValueError("provide exactly one of table and mono")
        if mono is not None:
            self.table = None
            self.mono_idx, self.mono_sign = mono
        else:
            self.table = [[{} for _ in range(self.dim)] for _ in range(self.dim)]
            for (i, j), vec in table.items():
                clean = {k: Fraction(c) for k, c in vec.items() if c}
                if clean:
                    self.table[i][j] = clean
            self.mono_idx, self.mono_sign = self._derive_monomial_tables()
        if validate:
            self.validate()

    # -- validation ------------------------------------------------------

    def _derive_monomial_tables(self):
        idx = np.full((self.dim, self.dim), -1, dtype=np.int32)
        sign = np.zeros((self.dim, self.dim), dtype=np.int8)
        for i in range(self.dim):
            for j in range(self.dim):
                vec = self.table[i][j]
                if not vec:
                    continue
                if len(vec) > 1:
                    return None, None
                (k, c), = vec.items()
                if c == 1:
                    idx[i, j], sign[i, j] = k, 1
                elif c == -1:
                    idx[i, j], sign[i, j] = k, -1
                else:
                    return None, None
        return idx, sign

    def validate(self) -> None:
        """Check the two-sided unit and associativity (exhaustive for
        dim <= 64 or any monomial table, 10^4 seeded random triples
        otherwise)."""
        u = self.unit_index
        for i in range(self.dim):
            if self.table_entry(u, i) != {i: Fraction(1)} \
                    or self.table_entry(i, u) != {i: Fraction(1)}:
                raise ConstructionError(f"unit fails on basis element {i}")
        if self.mono_idx is not None:
            self._assoc_monomial()
            return
        if self.dim <= 64:
            triples = ((i, j, k) for i in range(self.dim)
                       for j in range(self.dim) for k in range(self.dim))
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(self.dim), rng.randrange(self.dim),
                        rng.randrange(self.dim)) for _ in range(10_000))
        for i, j, k in triples:
            left = self.mul(self.table_entry(i, j), {k: Fraction(1)})
            right = self.mul({i: Fraction(1)}, self.table_entry(j, k))
            if left != right:
                raise ConstructionError(f"associativity fails on triple ({i},{j},{k})")

    def _assoc_monomial(self) -> None:
        d = self.dim
        idx = self.mono_idx.astype(np.int64)
        sgn = self.mono_sign.astype(np.int64)
        if d <= 64:
            grid = np.indices((d, d, d)).reshape(3, -1)
            ii, jj, kk = grid[0], grid[1], grid[2]
        else:
            rng = np.random.default_rng(0)
            ii, jj, kk = (rng.integers(0, d, size=200_000) for _ in range(3))
        ij, sij = idx[ii, jj], sgn[ii, jj]
        li = idx[np.maximum(ij, 0), kk]
        ls = np.where(ij >= 0, sij * sgn[np.maximum(ij, 0), kk], 0)
        jk, sjk = idx[jj, kk], sgn[jj, kk]
        ri = idx[ii, np.maximum(jk, 0)]
        rs = np.where(jk >= 0, sjk * sgn[ii, np.maximum(jk, 0)], 0)
        li = np.where(ls == 0, -1, li)
        ri = np.where(rs == 0, -1, ri)
        if not (np.array_equal(li, ri) and np.array_equal(ls, rs)):
            raise ConstructionError("associativity fails")

    # -- element arithmetic ----------------------------------------------

    def table_entry(self, i: int, j: int) -> Elem:
        """Sparse product of basis elements i and j."""
        if self.table is not None:
            return dict(self.table[i][j])
        k = int(self.mono_idx[i, j])
        if k < 0:
            return {}
        return {k: Fraction(int(self.mono_sign[i, j]))}

    def unit_elem(self) -> Elem:
        return {self.unit_index: Fraction(1)}

    def basis_elem(self, i: int) -> Elem:
        return {i: Fraction(1)}

    def mul(self, x: Elem, y: Elem) -> Elem:
        out: Elem = {}
        if self.table is None:
            idx, sgn = self.mono_idx, self.mono_sign
            for i, ci in x.items():
                for j, cj in y.items():
                    k = idx[i, j]
                    if k < 0:
                        continue
                    v = out.get(k, Fraction(0)) + ci * cj * int(sgn[i, j])
                    if v:
                        out[k] = v
                    else:
                        del out[k]
            return out
        for i, ci in x.items():
            row = self.table[i]
            for j, cj in y.items():
                cij = ci * cj
                for k, c in row[j].items():
                    v = out.get(k, Fraction(0)) + cij * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return out

    def add(self, x: Elem, y: Elem) -> Elem:
        out = dict(x)
        for k, c in y.items():
            v = out.get(k, Fraction(0)) + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        return out

    def scale(self, x: Elem, c) -> Elem:
        q = Fraction(c)
        return {k: v * q for k, v in x.items()} if q else {}

    def commutator(self, x: Elem, y: Elem) -> Elem:
        return self.add(self.mul(x, y), self.scale(self.mul(y, x), -1))

    def evaluate(self, f: NcPoly, args: Sequence[Elem]) -> Elem:
        """Substitute args into f and expand exactly."""
        for a in args:
            for k in a:
                if not 0 <= k < self.dim:
                    raise ValueError("argument does not live in this algebra")
        arity = f.max_var()
        if arity > len(args):
            raise ValueError(f"polynomial uses x{arity} but only {len(args)} arguments given")
        out: Elem = {}
        for word, coef in f.terms.items():
            prod = self.unit_elem()
            for v in word:
                prod = self.mul(prod, args[v - 1])
                if not prod:
                    break
            for k, c in prod.items():
                val = out.get(k, Fraction(0)) + coef * c
                if val:
                    out[k] = val
                elif k in out:
                    del out[k]
        return out

    def elem_str(self, x: Elem) -> str:
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c = x[k]
            lbl = self.basis_labels[k]
            if c == 1:
                parts.append(lbl)
            elif c == -1:
                parts.append(f"-{lbl}")
            else:
                parts.append(f"{c}*{lbl}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        name = self.meta.get("name", "FiniteAlgebra")
        return f"<{name}, dim {self.dim}>"


# -- constructors ----------------------------------------------------------


def make_grassmann(r: int, max_dim: int = DEFAULT_DIM_CAP) -> FiniteAlgebra:
    """E_r with basis indexed by generator bitmask (index 0 = unit)."""
    from . import grassmann as gr

    if r < 2:
        raise ValueError("Grassmann algebras need at least 2 generators")
    dim = 1 << r
    if dim > max_dim:
        raise ValueError(f"2^{r} = {dim} exceeds the dimension cap {max_dim}")
    masks = np.arange(dim, dtype=np.int64)
    popcount = np.zeros(dim, dtype=np.int64)
    for b in range(r):
        popcount += (masks >> b) & 1
    s = masks[:, None]
    t = masks[None, :]
    inversions = np.zeros((dim, dim), dtype=np.int64)
    for b in range(r):
        inversions += ((t >> b) & 1) * popcount[s >> (b + 1)]
    overlap = (s & t) != 0
    sign = np.where(overlap, 0, np.where(inversions & 1, -1, 1)).astype(np.int8)
    idx = np.where(overlap, -1, s | t).astype(np.int32)
    labels = [gr.mono_str(int(m)) for m in range(dim)]
    meta = {"name": f"E{r}", "grassmann_slots": [r], "slot_dims": [dim],
            "slot_strides": [1]}
    return FiniteAlgebra(labels, 0, mono=(idx, sign), meta=meta)


def make_nk(k: int) -> FiniteAlgebra:
    """The (2k-2)-dimensional span of I, J, ..., J^{k-2}, e_12, ..., e_1k
    inside k x k matrices, multiplication inherited from the matrix
    product.  A basis product landing outside the span (it never does,
    which is validated here) raises ConstructionError."""
    if k < 3:
        raise ValueError("N_k needs k >= 3")

    def matmul(a, b):
        return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(k))
                     for i in range(k))

    ident = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    shift = tuple(tuple(1 if j == i + 1 else 0 for j in range(k)) for i in range(k))
    mats = [ident]
    labels = ["I"]
    power = ident
    for a in range(1, k - 1):
        power = matmul(power, shift)
        mats.append(power)
        labels.append("J" if a == 1 else f"J^{a}")
    for j in range(2, k + 1):
        mats.append(tuple(tuple(1 if (r, c) == (0, j - 1) else 0 for c in range(k))
                          for r in range(k)))
        labels.append(f"e1{j}")
    zero = tuple(tuple(0 for _ in range(k)) for _ in range(k))
    index = {m: i for i, m in enumerate(mats)}
    if len(index) != len(mats):
        raise ConstructionError("N_k basis matrices are not distinct")
    table: dict[tuple[int, int], Elem] = {}
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            prod = matmul(a, b)
            if prod == zero:
                continue
            if prod not in index:
                raise ConstructionError(
                    f"product {labels[i]}*{labels[j]} leaves the span of N_{k}")
            table[(i, j)] = {index[prod]: Fraction(1)}
    return FiniteAlgebra(labels, 0, table, meta={"name": f"N{k}"})


def tensor(factors: Sequence[FiniteAlgebra], max_dim: int = DEFAULT_DIM_CAP) -> FiniteAlgebra:
    """Ungraded tensor product: (a (x) b)(c (x) d) = ac (x) bd, with no
    sign across slots.  Basis elements are tuples of factor basis
    elements in mixed-radix order (last slot varies fastest)."""
    if not factors:
        raise ValueError("tensor product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    dims = [a.dim for a in factors]
    total = 1
    for d in dims:
        total *= d
    if total > max_dim:
        raise ValueError(f"tensor dimension {total} exceeds cap {max_dim}")

    strides = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]

    def decode(idx: int) -> list[int]:
        return [(idx // s) % d for s, d in zip(strides, dims)]

    labels = []
    for idx in range(total):
        parts = decode(idx)
        labels.append("(x)".join(f.basis_labels[p] for f, p in zip(factors, parts)))
    unit = sum(f.unit_index * s for f, s in zip(factors, strides))
    meta = {"name": "(x)".join(a.meta.get("name", "?") for a in factors),
            "slot_dims": dims, "slot_strides": strides}
    slots = []
    for a in factors:
        g = a.meta.get("grassmann_slots")
        if g is None:
            break
        slots.extend(g)
    else:
        meta["grassmann_slots"] = slots

    if all(a.mono_idx is not None for a in factors):
        grid = np.arange(total, dtype=np.int64)
        idx = np.zeros((total, total), dtype=np.int64)
        sign = np.ones((total, total), dtype=np.int8)
        dead = np.zeros((total, total), dtype=bool)
        for f, s, d in zip(factors, strides, dims):
            part = ((grid // s) % d).astype(np.int64)
            fi = f.mono_idx[part[:, None], part[None, :]]
            fs = f.mono_sign[part[:, None], part[None, :]]
            dead |= fi < 0
            idx += np.maximum(fi, 0).astype(np.int64) * s
            sign = (sign * fs).astype(np.int8)
        idx = np.where(dead, -1, idx).astype(np.int32)
        sign = np.where(dead, 0, sign)
        return FiniteAlgebra(labels, unit, mono=(idx, sign), meta=meta)

    table: dict[tuple[int, int], Elem] = {}
    for i in range(total):
        pi = decode(i)
        for j in range(total):
            pj = decode(j)
            cur: Elem = {0: Fraction(1)}
            for slot, (f, s) in enumerate(zip(factors, strides)):
                part = f.table_entry(pi[slot], pj[slot])
                if not part:
                    cur = {}
                    break
                nxt: Elem = {}
                for off, c0 in cur.items():
                    for kk, cc in part.items():
                        key = off + kk * s
                        v = nxt.get(key, Fraction(0)) + c0 * cc
                        if v:
                            nxt[key] = v
                        elif key in nxt:
                            del nxt[key]
                cur = nxt
            if cur:
                table[(i, j)] = cur
    return FiniteAlgebra(labels, unit, table, meta=meta)


# -- JSON structure-constant files ------------------------------------------


def to_json(alg: FiniteAlgebra) -> str:
    entries = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            vec = alg.table_entry(i, j)
            if vec:
                entries.append([i, j, [[k, str(c)] for k, c in sorted(vec.items())]])
    return json.dumps({"basis": alg.basis_labels, "unit": alg.unit_index,
                       "table": entries})


def from_json(text: str) -> FiniteAlgebra:
    data = json.loads(text)
    table: dict[tuple[int, int], Elem] = {}
    for i, j, vec in data["table"]:
        table[(int(i), int(j))] = {int(k): Fraction(c) for k, c in vec}
    return FiniteAlgebra(data["basis"], int(data["unit"]), table, meta={"name": "file"})


def load_structure_file(path: str) -> FiniteAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(fh.read())
