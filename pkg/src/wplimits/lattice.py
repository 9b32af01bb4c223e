"""Multiplicative linear systems over an algebraically closed field.

An :class:`ExponentLattice` encodes ``prod_j t_j ** A[r][j] = c[r]`` for
nonzero unknowns ``t_j`` and nonzero rational targets ``c[r]``.  With a Smith
normal form ``U A V = S`` the substitution ``t = sigma ** V`` and taking the
``U``-combinations of the equations turn the system into
``sigma_s ** d_s = c'_s`` (``s < rank``) and ``1 = c'_s`` (``s >= rank``),
where ``c'_s = prod_r c_r ** U[s][r]``.  Over an algebraically closed field
the system is solvable iff all trailing ``c'_s`` equal 1.

Witnesses use real radicals: :class:`Radical` is ``sign * base ** (1/index)``
with ``base > 0`` rational.  A negative ``c'_s`` under an even ``d_s`` has no
real root; such systems are reported solvable without a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from sympy import factorint, integer_nthroot
from sympy.polys.domains import QQ

from wplimits.linalg import fmt_qq, to_qq


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A, ncols: Optional[int] = None):
    """``(S, U, V)`` with ``U A V = S`` diagonal, ``U``/``V`` unimodular and
    ``S[k][k]`` dividing ``S[k+1][k+1]``, all diagonal entries nonnegative."""
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    S = [list(map(int, row)) for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for M in (S, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        changed = True
            if changed:
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, ci, cj = min(cand)
                if abs(S[ci][cj]) < abs(S[t][t]):
                    if ci != t:
                        swap_rows(t, ci)
                    else:
                        swap_cols(t, cj)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return S, U, V


def integer_rank(A, ncols: Optional[int] = None) -> int:
    S, _, _ = smith_normal_form(A, ncols)
    return sum(1 for k in range(min(len(S), len(S[0]) if S else 0)) if S[k][k])


def integer_kernel(A, ncols: int):
    """A basis of ``{v in Z^ncols : A v = 0}`` (columns of ``V`` past the rank)."""
    S, _, V = smith_normal_form(A, ncols)
    r = sum(1 for k in range(min(len(S), ncols)) if S[k][k])
    return [[V[i][k] for i in range(ncols)] for k in range(r, ncols)]


def _reduce_radical(base, index):
    num, den = int(base.numerator), int(base.denominator)
    for p in sorted(factorint(index)):
        while index % p == 0:
            rn, en = integer_nthroot(num, p)
            rd, ed = integer_nthroot(den, p)
            if not (en and ed):
                break
            num, den, index = rn, rd, index // p
    return QQ(num, den), index


@dataclass(frozen=True)
class Radical:
    """``sign * base ** (1/index)`` with ``base > 0`` rational, index minimal."""

    sign: int
    base: object
    index: int = 1

    @classmethod
    def make(cls, sign, base, index=1) -> "Radical":
        base = to_qq(base)
        if base <= 0:
            raise ValueError("radical base must be positive")
        b, n = _reduce_radical(base, index)
        return cls(1 if sign > 0 else -1, b, n)

    @classmethod
    def rational(cls, value) -> "Radical":
        value = to_qq(value)
        if not value:
            raise ValueError("zero is not a torus element")
        return cls.make(1 if value > 0 else -1, abs(value), 1)

    def __mul__(self, other: "Radical") -> "Radical":
        n = self.index * other.index // gcd(self.index, other.index)
        base = self.base ** (n // self.index) * other.base ** (n // other.index)
        return Radical.make(self.sign * other.sign, base, n)

    def __pow__(self, k: int) -> "Radical":
        base = self.base ** abs(k)
        if k < 0:
            base = 1 / base
        return Radical.make(self.sign ** (k % 2) if self.sign < 0 else 1, base, self.index)

    def is_rational(self) -> bool:
        return self.index == 1

    def value(self):
        """The rational value; only for ``index == 1``."""
        if self.index != 1:
            raise ValueError("irrational radical")
        return self.sign * self.base

    def to_json(self):
        if self.index == 1:
            return fmt_qq(self.sign * self.base)
        return {"sign": self.sign, "base": fmt_qq(self.base), "root": self.index}


@dataclass(frozen=True)
class LatticeSolution:
    solvable: bool
    witness: Optional[tuple] = None
    rank: int = 0
    obstruction: Optional[int] = None

    def __bool__(self):
        return self.solvable


@dataclass(frozen=True)
class ExponentLattice:
    """Rows ``prod_j t_j ** A[r][j] = c[r]``; ``ncols`` fixes the unknown count."""

    A: tuple
    c: tuple
    ncols: int

    @classmethod
    def make(cls, A, c, ncols=None) -> "ExponentLattice":
        A = tuple(tuple(int(a) for a in row) for row in A)
        c = tuple(to_qq(v) for v in c)
        if any(not v for v in c):
            raise ValueError("targets must be nonzero")
        if len(A) != len(c):
            raise ValueError("one target per row")
        n = ncols if ncols is not None else (len(A[0]) if A else 0)
        return cls(A, c, n)

    def evaluate(self, t):
        """Left-hand sides for a witness of :class:`Radical` entries."""
        out = []
        for row in self.A:
            acc = Radical.rational(1)
            for tj, a in zip(t, row):
                if a:
                    acc = acc * (tj ** a)
            out.append(acc)
        return out

    def solve(self) -> LatticeSolution:
        return lattice_solve(self)


def _qq_pow(c, k):
    return c ** k if k >= 0 else (1 / c) ** (-k)


def lattice_solve(lat: ExponentLattice) -> LatticeSolution:
    """Decide solvability exactly and, when real radicals suffice, build a witness."""
    m, n = len(lat.A), lat.ncols
    if m == 0:
        return LatticeSolution(True, tuple(Radical.rational(1) for _ in range(n)), 0)
    S, U, V = smith_normal_form([list(r) for r in lat.A], n)
    r = sum(1 for k in range(min(m, n)) if S[k][k])
    cprime = []
    for s in range(m):
        acc = QQ(1)
        for u, c in zip(U[s], lat.c):
            if u:
                acc *= _qq_pow(c, u)
        cprime.append(acc)
    for s in range(r, m):
        if cprime[s] != 1:
            return LatticeSolution(False, None, r, s)
    sigma = []
    for k in range(n):
        if k >= r:
            sigma.append(Radical.rational(1))
            continue
        d, val = S[k][k], cprime[k]
        if val < 0 and d % 2 == 0:
            return LatticeSolution(True, None, r)
        sigma.append(Radical.make(-1 if val < 0 else 1, abs(val), d))
    t = []
    for j in range(n):
        acc = Radical.rational(1)
        for k in range(n):
            if V[j][k]:
                acc = acc * (sigma[k] ** V[j][k])
        t.append(acc)
    lhs = lat.evaluate(t)
    for got, want in zip(lhs, lat.c):
        if got != Radical.rational(want):
            raise AssertionError("lattice witness failed substitution")
    return LatticeSolution(True, tuple(t), r)


__all__ = [
    "smith_normal_form", "integer_rank", "integer_kernel", "Radical", "ExponentLattice",
    "LatticeSolution", "lattice_solve",
]
