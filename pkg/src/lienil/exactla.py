"""Exact rational scalars and sparse exact linear algebra.

Every dimension computed anywhere in this package comes down to the rank
of a list of sparse rational vectors.  Rows are reduced incrementally by
an exact Gauss-Jordan eliminator that works on primitive integer vectors
(each input row is scaled by the lcm of its denominators and stripped by
its gcd; scaling a row never changes the span).  The eliminator keeps an
int64 numpy fast path and switches the whole state to arbitrary-precision
Python integers before any combine could overflow, so results are always
exact.  No floating point, no modular shortcuts.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

Rational = Fraction

# A sparse vector is a mapping column index -> nonzero rational coefficient.
SparseVec = dict[int, Fraction]

# Switch to Python-int arrays once a combine could push entries past this.
_INT64_GUARD = 1 << 61


def sparse_vec(entries: Mapping[int, object] | Iterable[tuple[int, object]]) -> SparseVec:
    """Build a sparse vector, coercing to Fraction and dropping zeros."""
    items = entries.items() if isinstance(entries, Mapping) else entries
    out: SparseVec = {}
    for col, val in items:
        q = Fraction(val)
        if q:
            out[int(col)] = q
    return out


def _integerize(row: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational row to a primitive integer row (same span)."""
    fracs = {c: Fraction(v) for c, v in row.items() if v}
    if not fracs:
        return {}
    denom = math.lcm(*(f.denominator for f in fracs.values()))
    ints = {c: int(f * denom) for c, f in fracs.items()}
    g = math.gcd(*ints.values())
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


class Eliminator:
    """Incremental exact row reduction with a fixed ambient column count.

    Pivot rows are kept fully reduced against each other (Gauss-Jordan),
    so reducing a vector is a single pass over the stored pivots.  The
    pivot entry of a new row is chosen among its nonzeros by smallest
    absolute value, ties broken by lowest column, which keeps coefficient
    growth down and is deterministic.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_cols: list[int] = []
        self.rows: list[np.ndarray] = []
        self._object_mode = False

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _to_object(self) -> None:
        if not self._object_mode:
            self.rows = [r.astype(object) for r in self.rows]
            self._object_mode = True

    def _combine(self, arr: np.ndarray, piv: np.ndarray, col: int) -> np.ndarray:
        v = int(arr[col])
        p = int(piv[col])
        g = math.gcd(v, p)
        a, b = p // g, v // g
        if a < 0:
            a, b = -a, -b
        if not self._object_mode:
            bound = abs(a) * int(np.abs(arr).max()) + abs(b) * int(np.abs(piv).max())
            if bound >= _INT64_GUARD:
                self._to_object()
                arr = arr.astype(object)
        if self._object_mode and arr.dtype != object:
            arr = arr.astype(object)
        return arr * a - b * piv

    @staticmethod
    def _strip_gcd(arr: np.ndarray) -> np.ndarray:
        if arr.dtype == object:
            g = 0
            for v in arr:
                g = math.gcd(g, int(v))
                if g == 1:
                    break
            if g > 1:
                arr = arr // g
        else:
            nz = arr[arr != 0]
            if nz.size:
                g = int(np.gcd.reduce(np.abs(nz)))
                if g > 1:
                    arr = arr // g
        return arr

    def _as_array(self, row) -> np.ndarray:
        if isinstance(row, np.ndarray):
            if len(row) != self.ncols:
                raise ValueError(f"row length {len(row)} != ambient {self.ncols}")
            arr = row.astype(object) if self._object_mode and row.dtype != object else row.copy()
            return self._strip_gcd(arr)
        ints = _integerize(row)
        dtype = object if self._object_mode else np.int64
        arr = np.zeros(self.ncols, dtype=dtype)
        for c, v in ints.items():
            if c >= self.ncols:
                raise ValueError(f"column {c} outside ambient space of {self.ncols}")
            if dtype is not object and abs(v) >= _INT64_GUARD:
                self._to_object()
                return self._as_array(row)
            arr[c] = v
        return arr

    def residual(self, row: Mapping[int, object]) -> np.ndarray:
        """Reduce a row against the stored pivots; the result has zeros in
        every pivot column and is gcd-primitive."""
        arr = self._as_array(row)
        for col, piv in zip(self.pivot_cols, self.rows):
            if arr[col]:
                if self._object_mode and piv.dtype != object:
                    piv = piv.astype(object)
                arr = self._combine(arr, piv, col)
                arr = self._strip_gcd(arr)
        return arr

    def contains(self, row: Mapping[int, object]) -> bool:
        return not np.any(self.residual(row))

    def residual_exact(self, row: Mapping[int, object]) -> tuple[np.ndarray, int]:
        """Residual without any rescaling: returns (arr, denom) with the
        true reduced vector equal to arr/denom.  Needed when the caller
        reads off linear coordinates rather than just a span question."""
        fracs = {c: Fraction(v) for c, v in row.items() if v}
        denom = math.lcm(*(f.denominator for f in fracs.values())) if fracs else 1
        dtype = object if self._object_mode else np.int64
        arr = np.zeros(self.ncols, dtype=dtype)
        for c, f in fracs.items():
            v = int(f * denom)
            if dtype is not object and abs(v) >= _INT64_GUARD:
                self._to_object()
                return self.residual_exact(row)
            arr[c] = v
        for col, piv in zip(self.pivot_cols, self.rows):
            v = int(arr[col])
            if v:
                p = int(piv[col])
                if not self._object_mode:
                    bound = p * int(np.abs(arr).max()) + abs(v) * int(np.abs(piv).max())
                    if bound >= _INT64_GUARD or denom * p >= _INT64_GUARD:
                        self._to_object()
                        arr = arr.astype(object)
                if self._object_mode:
                    if arr.dtype != object:
                        arr = arr.astype(object)
                    if piv.dtype != object:
                        piv = piv.astype(object)
                arr = arr * p - v * piv
                denom *= p
                g = math.gcd(int(denom), *(int(x) for x in arr[arr != 0])) if np.any(arr) else denom
                if g > 1:
                    arr = arr // g
                    denom //= g
        return arr, denom

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; returns True when it enlarges the span."""
        arr = self.residual(row)
        nz = np.nonzero(arr)[0]
        if nz.size == 0:
            return False
        vals = [abs(int(arr[c])) for c in nz]
        col = int(nz[min(range(len(nz)), key=lambda i: (vals[i], int(nz[i])))])
        if int(arr[col]) < 0:
            arr = -arr
        # Gauss-Jordan: clear the new pivot column from every stored row.
        for i, (pc, prow) in enumerate(zip(self.pivot_cols, self.rows)):
            if prow[col]:
                if self._object_mode and prow.dtype != object:
                    prow = prow.astype(object)
                newp = self._combine(prow, arr, col)
                self.rows[i] = self._strip_gcd(newp)
        if self._object_mode and arr.dtype != object:
            arr = arr.astype(object)
        self.pivot_cols.append(col)
        self.rows.append(arr)
        return True

    def add_all(self, rows: Iterable[Mapping[int, object]]) -> int:
        added = 0
        for row in rows:
            if self.add(row):
                added += 1
        return added


def _ambient(rows: Iterable[Mapping[int, object]]) -> int:
    n = 0
    for row in rows:
        for c in row:
            if c + 1 > n:
                n = c + 1
    return n


def rank(rows: list[Mapping[int, object]], ncols: int | None = None) -> int:
    """Dimension of the rational span of the rows (exact, deterministic)."""
    if ncols is None:
        ncols = _ambient(rows)
    elim = Eliminator(ncols)
    elim.add_all(rows)
    return elim.rank


def in_span(v: Mapping[int, object], rows: list[Mapping[int, object]],
            ncols: int | None = None) -> bool:
    """True iff v lies in the rational span of the rows."""
    if ncols is None:
        ncols = max(_ambient(rows), _ambient([v]))
    elim = Eliminator(ncols)
    elim.add_all(rows)
    return elim.contains(v)
