"""Exact linear algebra over the rationals.

Matrices are plain lists of rows whose entries are elements of sympy's ``QQ``
domain (``gmpy2.mpq`` when available).  Nothing here allocates floats.
"""

from __future__ import annotations

from sympy.polys.domains import QQ

ZERO = QQ(0)
ONE = QQ(1)


def to_qq(value) -> object:
    """Coerce ints, ``"p/q"`` strings, Fractions and mpq values to ``QQ``."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/")
            return QQ(int(num), int(den))
        return QQ(int(text))
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fmt_qq(value) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    value = to_qq(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def copy_matrix(rows):
    return [list(r) for r in rows]


def rref(rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(reduced, pivots)`` where ``reduced`` contains only the nonzero
    rows and ``pivots[k]`` is the pivot column of row ``k``.
    """
    m = copy_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        if inv != ONE:
            m[r] = [v * inv for v in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                fac = m[i][c]
                row = m[i]
                m[i] = [a - fac * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int):
    """Basis of ``{v : rows * v = 0}`` as a list of length-``ncols`` vectors."""
    if not rows:
        return [[ONE if j == i else ZERO for j in range(ncols)] for i in range(ncols)]
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def row_basis(rows, ncols=None):
    """An echelonized basis of the row space."""
    if not rows:
        return []
    return rref(rows, ncols)[0]


def transpose(rows, nrows_if_empty: int = 0):
    if not rows:
        return [[] for _ in range(nrows_if_empty)]
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), ZERO) for row in a]


def det(square) -> object:
    """Determinant by Gaussian elimination."""
    m = copy_matrix(square)
    n = len(m)
    result = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                fac = m[i][c] * inv
                m[i] = [a - fac * b for a, b in zip(m[i], m[c])]
    return result


def solve(rows, rhs):
    """One solution of ``rows * v = rhs`` or ``None`` when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [ZERO] * ncols
    for row, pc in zip(reduced, pivots):
        v[pc] = row[ncols]
    return v


def in_span(basis_rows, vector) -> bool:
    if not basis_rows:
        return not any(vector)
    return rank(list(basis_rows) + [list(vector)]) == rank(basis_rows)


def is_zero_matrix(rows) -> bool:
    return not any(any(r) for r in rows)
