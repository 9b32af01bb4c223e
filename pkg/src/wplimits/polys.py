"""Thin helpers over sympy's dense univariate polynomial routines.

Polynomials are ``dup`` lists (descending coefficients in ``QQ``), exactly as
the ``sympy.polys.dense*`` functions expect.  Ascending tuples are used only
at serialization boundaries.  Gcds, modular inverses and factorization go
through FLINT, whose rational polynomial kernels avoid the coefficient growth
of a plain Euclidean algorithm over ``QQ``.
"""

from __future__ import annotations

import flint
from sympy import integer_nthroot
from sympy.polys.densearith import (
    dup_add,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_pow,
    dup_rem,
    dup_div,
    dup_sub,
)
from sympy.polys.densebasic import dup_degree, dup_strip
from sympy.polys.densetools import dup_diff, dup_eval, dup_monic, dup_shift
from sympy.polys.domains import QQ

K = QQ
X = [QQ(1), QQ(0)]
ONE_POLY = [QQ(1)]

__all__ = [
    "K", "X", "ONE_POLY", "add", "sub", "mul", "neg", "scale", "power", "rem", "divmod_",
    "deg", "strip", "diff", "evaluate", "monic", "shift", "gcd", "invert_mod",
    "factor", "from_asc", "to_asc", "linear", "valuation", "exact_quo", "taylor",
    "rational_sqrt", "rational_root", "lc",
]


def add(a, b):
    return dup_add(a, b, K)


def sub(a, b):
    return dup_sub(a, b, K)


# operands above this degree go through FLINT
_BIG = 24


def _is_big(*polys):
    return sum(len(p) for p in polys) > _BIG


def mul(a, b):
    if _is_big(a, b) and a and b:
        return from_flint(to_flint(a) * to_flint(b))
    return dup_mul(a, b, K)


def neg(a):
    return dup_neg(a, K)


def scale(a, c):
    return dup_mul_ground(a, c, K)


def power(a, n: int):
    return dup_pow(a, n, K)


def rem(a, b):
    if _is_big(a, b):
        return from_flint(to_flint(a) % to_flint(b))
    return dup_rem(a, b, K)


def divmod_(a, b):
    if _is_big(a, b):
        q, r = divmod(to_flint(a), to_flint(b))
        return from_flint(q), from_flint(r)
    return dup_div(a, b, K)


def exact_quo(a, b):
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def deg(a) -> int:
    """Degree; ``-1`` for the zero polynomial."""
    return dup_degree(a) if a else -1


def lc(a):
    return a[0] if a else K.zero


def strip(a):
    return dup_strip(list(a))


def diff(a):
    return dup_diff(a, 1, K)


def evaluate(a, x):
    return dup_eval(a, x, K)


def monic(a):
    return dup_monic(a, K) if a else a


def shift(a, c):
    """``a(x + c)``."""
    return dup_shift(a, c, K)


def to_flint(a):
    return flint.fmpq_poly([c if isinstance(c, flint.fmpq) else flint.fmpq(int(c.numerator), int(c.denominator)) for c in reversed(a)])


def from_flint(p):
    coeffs = p.coeffs()
    if coeffs and not isinstance(K.one, flint.fmpq):
        coeffs = [K(int(c.p), int(c.q)) for c in coeffs]
    return dup_strip(list(reversed(coeffs)))


def gcd(a, b):
    """Monic gcd (zero if both inputs are zero)."""
    if not a and not b:
        return []
    return monic(from_flint(to_flint(a).gcd(to_flint(b))))


def invert_mod(a, m):
    """Inverse of ``a`` modulo ``m``; raises if they are not coprime."""
    g, s, _ = to_flint(a).xgcd(to_flint(m))
    if g.degree() != 0:
        raise ArithmeticError("not invertible modulo m")
    return rem(from_flint(s / g), m)


def factor(a):
    """Monic irreducible factors with multiplicities (constant dropped)."""
    if deg(a) <= 0:
        return []
    _, facs = to_flint(a).factor()
    return [(monic(from_flint(p)), e) for p, e in facs]


def from_asc(coeffs):
    return dup_strip([K.convert(c) for c in reversed(list(coeffs))])


def to_asc(a):
    return list(reversed(a))


def linear(root):
    """The monic polynomial ``x - root``."""
    return [K.one, -root]


def valuation(a, p):
    """Largest ``v`` with ``p**v | a`` and the cofactor ``a / p**v``."""
    if not a:
        raise ValueError("valuation of the zero polynomial")
    v = 0
    while True:
        q, r = divmod_(a, p)
        if r:
            return v, a
        a, v = q, v + 1


def taylor(a, x0, n: int):
    """First ``n`` Taylor coefficients of ``a`` at ``x0`` (ascending)."""
    coeffs = to_asc(shift(a, x0)) if a else []
    return (coeffs + [K.zero] * n)[:n]


def rational_root(value, n: int):
    """Exact ``n``-th root of a nonnegative rational, or ``None``."""
    value = K.convert(value)
    if value < 0:
        return None
    num, exact_n = integer_nthroot(int(value.numerator), n)
    den, exact_d = integer_nthroot(int(value.denominator), n)
    if exact_n and exact_d:
        return K(num, den)
    return None


def rational_sqrt(value):
    return rational_root(value, 2)
