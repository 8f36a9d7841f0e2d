"""Codimension calculus: binomial transforms between proper and full
codimension sequences, the dimension polynomials of the three named
module families, the lower-bound polynomials with Catalan leading
coefficients, and exact quasi-polynomial closed forms r(n)*2^n + s(n).

Closed forms are obtained by fit-and-verify: the quasi-polynomial shape
is guaranteed, so exact interpolation on enough sample points followed
by exact verification on as many held-out points replaces the original
partial-fraction derivation; any mismatch raises instead of returning a
wrong form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .reptheory import hook_dim


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def derangements(upto: int) -> list[int]:
    """D_0..D_upto via the inverse binomial transform of n!."""
    d = []
    for n in range(upto + 1):
        d.append(math.factorial(n) - sum(math.comb(n, l) * d[l] for l in range(n)))
    return d


# -- exact polynomials -------------------------------------------------------


class QPoly:
    """Dense polynomial over the rationals, coefficients by degree."""

    def __init__(self, coeffs: Sequence[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, other: "QPoly") -> "QPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return QPoly([ (self.coeffs[i] if i < len(self.coeffs) else 0)
                     + (other.coeffs[i] if i < len(other.coeffs) else 0)
                       for i in range(m)])

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def compose_affine(self, a: Fraction, b: Fraction) -> "QPoly":
        """The polynomial n -> p(a*n + b)."""
        out = QPoly([])
        lin = QPoly([b, a])
        power = QPoly([1])
        for c in self.coeffs:
            out = out + QPoly([c * q for q in power.coeffs])
            power = QPoly(_poly_mul(power.coeffs, lin.coeffs))
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            term = "1" if d == 0 else ("n" if d == 1 else f"n^{d}")
            parts.append(f"{c}" if d == 0 else f"{c}*{term}")
        return " + ".join(parts)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def interpolate(points: Sequence[tuple[int, Fraction]]) -> QPoly:
    """Exact Newton interpolation through the given points."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    coeffs_newton = [table[0]]
    for level in range(1, len(points)):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i])
                 for i in range(len(table) - 1)]
        coeffs_newton.append(table[0])
    poly = [Fraction(0)]
    basis = [Fraction(1)]
    out = [Fraction(0)] * len(points)
    for level, c in enumerate(coeffs_newton):
        for d, b in enumerate(basis):
            out[d] += c * b
        basis = _poly_mul(basis, [-xs[level], Fraction(1)])
    return QPoly(out)


@dataclass
class QuasiPoly:
    """Sequence closed form r(n)*2^n + s(n)."""
    r: QPoly
    s: QPoly

    def __call__(self, n: int) -> Fraction:
        return self.r(n) * (2 ** n) + self.s(n)

    def to_json(self) -> dict:
        return {"r": [str(c) for c in self.r.coeffs],
                "s": [str(c) for c in self.s.coeffs]}

    def __str__(self) -> str:
        return f"2^n*({self.r}) + ({self.s})"


@dataclass
class BoundSpec:
    """A proper-codimension lower-bound sequence: explicit head values
    for n < threshold, a polynomial tail from there on."""
    k: int
    head_values: list[Fraction]
    tail_poly: QPoly

    @property
    def threshold(self) -> int:
        return len(self.head_values)

    def gamma(self, l: int) -> Fraction:
        if l < self.threshold:
            return Fraction(self.head_values[l])
        return self.tail_poly(l)


class ClosedFormError(RuntimeError):
    """Fit-and-verify failed: the assumed quasi-polynomial degrees are
    wrong for this sequence."""


def binom_transform(gamma: Callable[[int], Fraction | int], n: int) -> Fraction:
    """c_n = sum_l binom(n, l) gamma_l, exactly."""
    return sum((Fraction(math.comb(n, l)) * Fraction(gamma(l)) for l in range(n + 1)),
               Fraction(0))


# -- module dimension formulas ----------------------------------------------


def m_il_dim(i: int, l: int, n: int, parity: str) -> Fraction:
    """Closed-form dimension of the module generated by the i-th family
    polynomial of half-degree index n with l appended commutator squares;
    parity chooses the odd-degree (2n-2l-1) or even-degree (2n-2l) family."""
    if i not in (1, 2, 3):
        raise ValueError("family index must be 1, 2 or 3")
    if l < 0:
        raise ValueError("l must be nonnegative")
    f = math.factorial
    if parity == "odd":
        if 2 * n - 2 * l - 5 < 0:
            raise ValueError("arguments outside the formula's validity range")
        top = f(2 * n - 1)
        if i == 1:
            val = Fraction(3 * top,
                           f(2 * n - 2 * l - 5) * (2 * n - l - 1) * (2 * n - l - 4)
                           * f(l + 3) * f(l))
        elif i == 2:
            val = Fraction(top,
                           f(2 * n - 2 * l - 5) * (2 * n - l - 2) * (2 * n - l - 3)
                           * f(l + 2) * f(l + 1))
        else:
            if 2 * n - 2 * l - 4 < 0:
                raise ValueError("arguments outside the formula's validity range")
            val = Fraction(2 * top,
                           f(2 * n - 2 * l - 4) * (2 * n - l - 1) * (2 * n - l - 3)
                           * f(l + 2) * f(l))
    elif parity == "even":
        if 2 * n - 2 * l - 4 < 0:
            raise ValueError("arguments outside the formula's validity range")
        top = f(2 * n)
        if i == 1:
            val = Fraction(3 * top,
                           f(2 * n - 2 * l - 4) * (2 * n - l) * (2 * n - l - 3)
                           * f(l + 3) * f(l))
        elif i == 2:
            val = Fraction(top,
                           f(2 * n - 2 * l - 4) * (2 * n - l - 1) * (2 * n - l - 2)
                           * f(l + 2) * f(l + 1))
        else:
            if 2 * n - 2 * l - 3 < 0:
                raise ValueError("arguments outside the formula's validity range")
            val = Fraction(2 * top,
                           f(2 * n - 2 * l - 3) * (2 * n - l) * (2 * n - l - 2)
                           * f(l + 2) * f(l))
    else:
        raise ValueError("parity must be 'odd' or 'even'")
    return val


def m_il_partition(i: int, l: int, n: int, parity: str) -> tuple[int, ...]:
    """The partition whose hook dimension m_il_dim reproduces."""
    j = 2 * n - 2 * l - 1 if parity == "odd" else 2 * n - 2 * l
    if i == 1:
        lam = (l + 3, l + 1) + (1,) * (j - 4)
    elif i == 2:
        lam = (l + 2, l + 2) + (1,) * (j - 4)
    else:
        lam = (l + 2, l + 1) + (1,) * (j - 3)
    return lam


# -- bound polynomials -------------------------------------------------------


def bound_poly(k: int, parity: str) -> QPoly:
    """The degree-(2k-2) lower-bound polynomial for proper codimensions
    at odd degree 2n-1 (sum of the three family dimensions over l) or at
    even degree 2n (same plus 1 for the standard polynomial).  Built by
    exact interpolation of the closed forms and verified on held-out
    points."""
    if k < 2:
        raise ValueError("need k >= 2")
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")

    def value(n: int) -> Fraction:
        total = sum((m_il_dim(i, l, n, parity) for l in range(k - 1) for i in (1, 2, 3)),
                    Fraction(0))
        if parity == "even":
            total += 1
        return total

    base = k + 1 if parity == "odd" else k
    deg = 2 * k - 2
    pts = [(n, value(n)) for n in range(base, base + deg + 1)]
    poly = interpolate(pts)
    for n in range(base + deg + 1, base + 2 * deg + 4):
        if poly(n) != value(n):
            raise ClosedFormError("bound polynomial failed held-out verification")
    if poly.degree != deg:
        raise ClosedFormError(f"bound polynomial has degree {poly.degree}, expected {deg}")
    return poly


def bound_poly_lead(k: int) -> Fraction:
    """Leading coefficient of both bound polynomials: 2^{2k-2} C_k / (2k-2)!."""
    return Fraction(2 ** (2 * k - 2) * catalan(k), math.factorial(2 * k - 2))


def make_bound_spec(k: int, head_values: Sequence[int] | None = None) -> BoundSpec:
    """Bound sequence for the proper codimensions of the index-2k
    variety: derangement numbers below degree 2k, from there the odd
    bound polynomial taken verbatim as a polynomial in the total degree
    (leading coefficient 2^{2k-2} C_k / (2k-2)!), which is what the
    composed codimension form with lead C_k/(2k-2)! is derived from."""
    if k < 2:
        raise ValueError("need k >= 2")
    if head_values is None:
        head_values = derangements(2 * k - 1)
    return BoundSpec(k, [Fraction(v) for v in head_values], bound_poly(k, "odd"))


# -- closed forms ------------------------------------------------------------


def fit_quasi_poly(values: Callable[[int], Fraction], deg_r: int, deg_s: int,
                   start: int = 0) -> QuasiPoly:
    """Fit values(n) = r(n)*2^n + s(n) exactly; deg_s = -1 forces s = 0.
    Samples 2*deg_r + 4 points from `start`, verifies on as many more."""
    unknowns = (deg_r + 1) + (deg_s + 1)
    m = max(2 * deg_r + 4, unknowns)
    rows = []
    rhs = []
    for n in range(start, start + m):
        row = [Fraction(2 ** n) * n ** d for d in range(deg_r + 1)]
        row += [Fraction(n ** d) for d in range(deg_s + 1)]
        rows.append(row)
        rhs.append(Fraction(values(n)))
    sol = _solve_exact(rows, rhs, unknowns)
    if sol is None:
        raise ClosedFormError("no quasi-polynomial of the assumed degrees fits")
    qp = QuasiPoly(QPoly(sol[:deg_r + 1]), QPoly(sol[deg_r + 1:]))
    for n in range(start + m, start + 2 * m):
        if qp(n) != values(n):
            raise ClosedFormError("quasi-polynomial failed held-out verification")
    return qp


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction],
                 unknowns: int) -> list[Fraction] | None:
    """Solve an overdetermined exact system; None when inconsistent."""
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(unknowns):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, len(aug)):
        if aug[i][unknowns]:
            return None
    sol = [Fraction(0)] * unknowns
    for row, col in pivots:
        sol[col] = aug[row][unknowns]
    return sol


def closed_form(spec: BoundSpec) -> QuasiPoly:
    """Exact quasi-polynomial form of the binomial transform of the
    bound sequence: r of the tail's degree, s of degree < threshold."""
    d = max(spec.tail_poly.degree, 0)
    deg_s = spec.threshold - 1
    return fit_quasi_poly(lambda n: binom_transform(spec.gamma, n), d, deg_s)


def combined_bounds(k: int) -> tuple[Fraction, Fraction]:
    """Leading coefficients of the combined lower bounds for the proper
    codimensions and codimensions of the index-2k variety, k >= 4: the
    Grassmann-pair contribution added to the family-polynomial lead."""
    if k < 4:
        raise ValueError("combined bounds need k >= 4")
    fact = math.factorial(2 * k - 2)
    gamma_lead = Fraction(2 ** (2 * k - 3), fact) + bound_poly_lead(k)
    codim_lead = Fraction(1, 2 * fact) + Fraction(catalan(k), fact)
    assert gamma_lead == Fraction(2 ** (2 * k - 3) * (1 + 2 * catalan(k)), fact)
    assert codim_lead == Fraction(1 + 2 * catalan(k), 2 * fact)
    return gamma_lead, codim_lead


def codim_table_csv(k: int, n_max: int) -> str:
    """CSV with columns n, lower-bound value, closed-form value."""
    spec = make_bound_spec(k)
    qp = closed_form(spec)
    lines = ["n,lower_bound,closed_form"]
    for n in range(n_max + 1):
        v = binom_transform(spec.gamma, n)
        lines.append(f"{n},{v},{qp(n)}")
    return "\n".join(lines) + "\n"
