"""Truncated Laurent series with exact rational coefficients.

A :class:`Laurent` value stores the coefficients of ``t**val, t**(val+1), ...``
together with an absolute precision ``prec``: every coefficient of ``t**k``
with ``k < prec`` is known exactly, nothing beyond is.  Arithmetic propagates
precision conservatively, so a result never claims more than its inputs
justify.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy.polys.domains import QQ

ZERO = QQ(0)
ONE = QQ(1)


class PrecisionError(ArithmeticError):
    """Raised when a coefficient beyond the known precision is requested."""


def ps_mul(a, b, n):
    """Product of two power series truncated to ``n`` terms."""
    out = [ZERO] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        lim = n - i
        for j, y in enumerate(b[:lim]):
            if y:
                out[i + j] += x * y
    return out


def ps_inv(a, n):
    """Inverse of a power series with nonzero constant term, by Newton iteration."""
    if not a or not a[0]:
        raise ZeroDivisionError("series is not a unit")
    inv = [ONE / a[0]]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # inv <- inv * (2 - a * inv)
        e = ps_mul(a, inv, k)
        e = [-c for c in e]
        e[0] += 2
        inv = ps_mul(inv, e, k)
    return inv[:n]


def ps_sqrt(a, n, seed):
    """Square root of ``a`` with constant term ``seed`` (``seed**2 == a[0]``).

    Newton iteration ``s <- (s + a/s)/2``, doubling the precision each step.
    """
    if seed * seed != a[0]:
        raise ValueError("seed is not a square root of the constant term")
    s = [seed]
    k = 1
    half = QQ(1, 2)
    while k < n:
        k = min(2 * k, n)
        q = ps_mul(a, ps_inv(s, k), k)
        s = s + [ZERO] * (k - len(s))
        s = [(x + y) * half for x, y in zip(s, q)]
    return s[:n]


@dataclass(frozen=True)
class Laurent:
    val: int
    coeffs: tuple
    prec: int

    @classmethod
    def from_power_series(cls, coeffs, prec: int, shift: int = 0) -> "Laurent":
        """``t**shift * sum(coeffs[k] t**k)`` known to absolute precision ``prec``."""
        n = max(prec - shift, 0)
        c = list(coeffs[:n]) + [ZERO] * max(0, n - len(coeffs))
        return cls(shift, tuple(c), prec)

    def coefficient(self, k: int):
        if k >= self.prec:
            raise PrecisionError(f"coefficient of t^{k} unknown (precision {self.prec})")
        if k < self.val:
            return ZERO
        return self.coeffs[k - self.val]

    def valuation(self):
        """Exponent of the first nonzero known coefficient, or ``None``."""
        for k, c in enumerate(self.coeffs):
            if c:
                return self.val + k
        return None

    def normalized(self) -> "Laurent":
        v = self.valuation()
        if v is None or v == self.val:
            return self
        return Laurent(v, self.coeffs[v - self.val :], self.prec)

    def truncate(self, prec: int) -> "Laurent":
        prec = min(prec, self.prec)
        return Laurent(self.val, self.coeffs[: max(prec - self.val, 0)], prec)

    def __add__(self, other: "Laurent") -> "Laurent":
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val)
        n = max(prec - val, 0)
        out = [ZERO] * n
        for s in (self, other):
            for k, c in enumerate(s.coeffs):
                idx = s.val + k - val
                if idx >= n:
                    break
                out[idx] += c
        return Laurent(val, tuple(out), prec)

    def __neg__(self) -> "Laurent":
        return Laurent(self.val, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def scale(self, c) -> "Laurent":
        return Laurent(self.val, tuple(c * x for x in self.coeffs), self.prec)

    def __mul__(self, other: "Laurent") -> "Laurent":
        a, b = self.normalized(), other.normalized()
        rel = min(a.prec - a.val, b.prec - b.val)
        if rel <= 0:
            return Laurent(a.val + b.val, (), a.val + b.val + max(rel, 0))
        return Laurent(a.val + b.val, tuple(ps_mul(list(a.coeffs), list(b.coeffs), rel)), a.val + b.val + rel)

    def inverse(self) -> "Laurent":
        a = self.normalized()
        if a.valuation() is None:
            raise ZeroDivisionError("series vanishes to the known precision")
        rel = a.prec - a.val
        return Laurent(-a.val, tuple(ps_inv(list(a.coeffs), rel)), -a.val + rel)

    def derivative(self) -> "Laurent":
        out = [c * (self.val + k) for k, c in enumerate(self.coeffs)]
        val = self.val - 1
        if self.val == 0 and out:
            out = out[1:]
            val = 0
        return Laurent(val, tuple(out), self.prec - 1)

    def known_terms(self):
        """Pairs ``(exponent, coefficient)`` for the nonzero known coefficients."""
        return [(self.val + k, c) for k, c in enumerate(self.coeffs) if c]
