"""Smooth component models over the rationals and their Riemann-Roch spaces.

A component is either the projective line (``kind="rational"``) or an odd
degree hyperelliptic curve ``y^2 = f(x)`` with ``deg f = 2*genus + 1``.  The
delta marked points are the branches of the nodes on this component.

Differentials are written ``h * dx/y`` (hyperelliptic) or ``h * dx``
(rational) with ``h`` a :class:`FunctionElement`; so ``H^0(omega(E))`` is the
function space ``L(K0 + E)`` with ``K0 = div(dx/y) = (2*genus - 2)*inf``
(respectively ``div(dx) = -2*inf``).

Spaces ``L(D)`` are computed by an ansatz ``(p + q*y)/d``: the denominator
``d`` clears the allowed poles over each x-coordinate, degree bounds for ``p``
and ``q`` come from the exact order at infinity, and the remaining vanishing
conditions are linear equations on Taylor coefficients.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Optional

from sympy.polys.domains import QQ

from wplimits import polys as P
from wplimits.errors import PreconditionError, UnsupportedDivisor
from wplimits.invariants import GenusProfile, expected_h0_twisted_dualizing
from wplimits.linalg import ONE, ZERO, nullspace, solve, to_qq
from wplimits.places import INFINITY, Infinity, PlaceDivisor, Point, Weierstrass
from wplimits.series import Laurent, PrecisionError, ps_inv, ps_mul, ps_sqrt

RATIONAL = "rational"
HYPERELLIPTIC = "hyperelliptic"


@dataclass(frozen=True)
class ComponentModel:
    """A smooth component with an ordered tuple of marked points.

    ``f`` holds the ascending coefficients of ``f(x)`` (empty for rational
    models).  Marked points must be distinct, rational and not roots of ``f``;
    two marked points may share an x-coordinate only as a conjugate pair
    ``(a, b), (a, -b)``.
    """

    kind: str
    f: tuple = ()
    marked: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(to_qq(c) for c in self.f))
        pts = []
        for pt in self.marked:
            if not isinstance(pt, Point):
                pt = Point(*pt) if isinstance(pt, (tuple, list)) else Point(pt)
            pts.append(Point(to_qq(pt.x), None if pt.y is None else to_qq(pt.y)))
        object.__setattr__(self, "marked", tuple(pts))
        if self.kind == RATIONAL:
            if self.f:
                raise PreconditionError("rational models carry no f")
            if any(p.y is not None for p in self.marked):
                raise PreconditionError("points on a rational model have no y")
            if len({p.x for p in self.marked}) != len(self.marked):
                raise PreconditionError("marked points must have distinct x-coordinates")
            return
        if self.kind != HYPERELLIPTIC:
            raise PreconditionError(f"unknown model kind {self.kind!r}")
        fp = self.f_poly
        if P.deg(fp) < 3 or P.deg(fp) % 2 == 0:
            raise PreconditionError("f must have odd degree >= 3")
        if P.deg(P.gcd(fp, P.diff(fp))) > 0:
            raise PreconditionError("f is not squarefree")
        seen = set()
        for pt in self.marked:
            self.check_point(pt)
            if pt in seen:
                raise PreconditionError(f"marked point {pt} repeated")
            seen.add(pt)

    # --- basic data -----------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @cached_property
    def f_poly(self):
        return P.from_asc(self.f)

    @property
    def genus(self) -> int:
        if self.is_rational:
            return 0
        return (P.deg(self.f_poly) - 1) // 2

    @property
    def delta(self) -> int:
        return len(self.marked)

    def check_point(self, pt) -> None:
        """Reject points off the curve and Weierstrass points."""
        if self.is_rational:
            if pt.y is not None:
                raise PreconditionError("points on a rational model have no y")
            return
        if pt.y is None:
            raise PreconditionError("hyperelliptic points need a y-coordinate")
        fa = P.evaluate(self.f_poly, pt.x)
        if pt.y * pt.y != fa:
            raise PreconditionError(f"({pt.x}, {pt.y}) is not on the curve")
        if not fa:
            raise PreconditionError(f"({pt.x}, {pt.y}) is a Weierstrass point")

    def conjugate(self, pt: Point) -> Point:
        if self.is_rational:
            return pt
        return Point(pt.x, -pt.y)

    def points_over(self, a):
        """The rational points with x-coordinate ``a`` (one or two)."""
        if self.is_rational:
            return [Point(a)]
        b = P.rational_sqrt(P.evaluate(self.f_poly, a))
        if b is None or not b:
            raise PreconditionError(f"no non-Weierstrass rational point over x={a}")
        return [Point(a, b), Point(a, -b)]

    def canonical_divisor(self) -> PlaceDivisor:
        """``div(dx/y)`` resp. ``div(dx)``."""
        n = 2 * self.genus - 2 if not self.is_rational else -2
        return PlaceDivisor.build(self, {INFINITY: n})

    def marked_divisor(self, coeffs) -> PlaceDivisor:
        if len(coeffs) != self.delta:
            raise PreconditionError("one coefficient per marked point expected")
        return PlaceDivisor.build(self, {pt: int(c) for pt, c in zip(self.marked, coeffs)})

    def delta_divisor(self, n: int = 1) -> PlaceDivisor:
        return self.marked_divisor([n] * self.delta)

    def with_marked(self, marked) -> "ComponentModel":
        return ComponentModel(self.kind, self.f, tuple(marked))


_Y_CACHE: dict = {}


def y_series(model: ComponentModel, pt: Point, n: int):
    """Taylor coefficients of ``y`` at ``pt`` in ``t = x - a``: the square root
    of ``f(a + t)`` with constant term ``pt.y``."""
    key = (model, pt)
    cached = _Y_CACHE.get(key)
    if cached is not None and len(cached) >= n:
        return cached[:n]
    m = max(n, 2 * len(cached) if cached else 16)
    coeffs = P.taylor(model.f_poly, pt.x, m)
    series = ps_sqrt(coeffs, m, pt.y)
    _Y_CACHE[key] = series
    return series[:n]


def _tup(a):
    return tuple(a)


@dataclass(frozen=True)
class FunctionElement:
    """``(p(x) + q(x) y) / d(x)`` with dup-list coefficients stored as tuples.

    Build through :meth:`make`, which cancels common factors and makes ``d``
    monic.
    """

    model: ComponentModel
    p: tuple
    q: tuple
    d: tuple

    @classmethod
    def make(cls, model, p, q=None, d=None) -> "FunctionElement":
        p = P.strip(p)
        q = P.strip(q or [])
        d = P.strip(d if d is not None else P.ONE_POLY)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if model.is_rational and q:
            raise PreconditionError("rational models have no y")
        if not p and not q:
            return cls(model, (), (), _tup(P.ONE_POLY))
        g = P.gcd(P.gcd(p, q) if q else P.monic(p), d)
        if P.deg(g) > 0:
            p = P.exact_quo(p, g) if p else p
            q = P.exact_quo(q, g) if q else q
            d = P.exact_quo(d, g)
        c = P.lc(d)
        if c != ONE:
            inv = ONE / c
            p, q, d = P.scale(p, inv), P.scale(q, inv), P.scale(d, inv)
        return cls(model, _tup(p), _tup(q), _tup(d))

    @classmethod
    def constant(cls, model, c=1) -> "FunctionElement":
        return cls.make(model, [to_qq(c)] if c else [])

    @classmethod
    def x(cls, model) -> "FunctionElement":
        return cls.make(model, P.X)

    @classmethod
    def y(cls, model) -> "FunctionElement":
        return cls.make(model, [], P.ONE_POLY)

    def is_zero(self) -> bool:
        return not self.p and not self.q

    def _lists(self):
        return list(self.p), list(self.q), list(self.d)

    def __add__(self, other):
        if not isinstance(other, FunctionElement):
            other = FunctionElement.constant(self.model, other)
        p1, q1, d1 = self._lists()
        p2, q2, d2 = other._lists()
        if d1 == d2:
            return FunctionElement.make(self.model, P.add(p1, p2), P.add(q1, q2), d1)
        return FunctionElement.make(
            self.model,
            P.add(P.mul(p1, d2), P.mul(p2, d1)),
            P.add(P.mul(q1, d2), P.mul(q2, d1)),
            P.mul(d1, d2),
        )

    __radd__ = __add__

    def __neg__(self):
        return FunctionElement(self.model, _tup(P.neg(list(self.p))), _tup(P.neg(list(self.q))), self.d)

    def __sub__(self, other):
        if not isinstance(other, FunctionElement):
            other = FunctionElement.constant(self.model, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FunctionElement):
            c = to_qq(other)
            p, q, d = self._lists()
            return FunctionElement.make(self.model, P.scale(p, c), P.scale(q, c), d)
        p1, q1, d1 = self._lists()
        p2, q2, d2 = other._lists()
        f = self.model.f_poly
        pp = P.add(P.mul(p1, p2), P.mul(P.mul(q1, q2), f)) if q1 and q2 else P.mul(p1, p2)
        qq = P.add(P.mul(p1, q2), P.mul(p2, q1))
        return FunctionElement.make(self.model, pp, qq, P.mul(d1, d2))

    __rmul__ = __mul__

    def norm_numerator(self):
        """``p^2 - q^2 f``: the norm of ``p + q y`` down to the x-line."""
        p, q, _ = self._lists()
        n = P.mul(p, p)
        if q:
            n = P.sub(n, P.mul(P.mul(q, q), self.model.f_poly))
        return n

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p, q, d = self._lists()
        return FunctionElement.make(self.model, P.mul(p, d), P.neg(P.mul(q, d)), self.norm_numerator())

    def __truediv__(self, other):
        if not isinstance(other, FunctionElement):
            return self * (ONE / to_qq(other))
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = FunctionElement.constant(self.model, 1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self):
        """d/dx, with ``y' = f'/(2y)``."""
        p, q, d = self._lists()
        dd = P.diff(d)
        pnum = P.sub(P.mul(P.diff(p), d), P.mul(p, dd)) if p else []
        if self.model.is_rational:
            return FunctionElement.make(self.model, pnum, [], P.mul(d, d))
        f = self.model.f_poly
        two_f = P.scale(f, QQ(2))
        qnum = []
        if q:
            qnum = P.add(
                P.mul(two_f, P.sub(P.mul(P.diff(q), d), P.mul(q, dd))),
                P.mul(P.mul(q, P.diff(f)), d),
            )
        return FunctionElement.make(self.model, P.mul(two_f, pnum), qnum, P.mul(two_f, P.mul(d, d)))

    def numerator_over(self, den):
        """``(p', q')`` with ``self = (p' + q' y)/den``; ``d`` must divide ``den``."""
        p, q, d = self._lists()
        cof = P.exact_quo(list(den), d)
        return P.mul(p, cof), P.mul(q, cof)


# --- local expansions ----------------------------------------------------


def _poly_at_infinity(coeffs_desc, step, lead_exp):
    """``u**lead_exp * a(u**-step)`` as ascending coefficients in ``u``."""
    out = [ZERO] * (lead_exp + 1)
    n = P.deg(coeffs_desc)
    for k, c in enumerate(coeffs_desc):
        j = n - k
        out[lead_exp - step * j] += c
    return out


def _expand_at_infinity(elem: FunctionElement, prec: int) -> Laurent:
    model = elem.model
    p, q, d = elem._lists()
    if model.is_rational:
        M = max(P.deg(p), 0)
        ed = P.deg(d)
        base = ed - M
        rel = max(prec - base, 0)
        num = _poly_at_infinity(p, 1, M) if p else [ZERO]
        den = _poly_at_infinity(d, 1, ed)
        num = (num + [ZERO] * rel)[:rel]
        den = (den + [ZERO] * rel)[:rel]
        return Laurent(base, tuple(ps_mul(num, ps_inv(den, rel), rel)) if rel else (), prec)
    gamma = model.genus
    lead = P.lc(model.f_poly)
    s = P.rational_sqrt(lead)
    if s is None:
        raise PreconditionError("expansion at infinity needs a square leading coefficient")
    degs = []
    if p:
        degs.append(2 * P.deg(p))
    if q:
        degs.append(2 * P.deg(q) + 2 * gamma + 1)
    M = max(degs) if degs else 0
    ed = 2 * P.deg(d)
    base = ed - M
    rel = max(prec - base, 0)
    if rel == 0:
        return Laurent(base, (), prec)
    num = [ZERO] * rel
    if p:
        for k, c in enumerate(_poly_at_infinity(p, 2, M)[:rel]):
            num[k] += c
    if q:
        # u^(2g+1) y = sqrt(ftilde(u^2)), ftilde(w) = w^(2g+1) f(1/w)
        nw = rel // 2 + 1
        ftilde = (list(model.f_poly) + [ZERO] * nw)[:nw]
        sw = ps_sqrt(ftilde, nw, s)
        ytil = [ZERO] * rel
        for k, c in enumerate(sw):
            if 2 * k < rel:
                ytil[2 * k] = c
        qpart = _poly_at_infinity(q, 2, M - 2 * gamma - 1)
        qpart = (qpart + [ZERO] * rel)[:rel]
        for k, c in enumerate(ps_mul(qpart, ytil, rel)):
            num[k] += c
    den = (_poly_at_infinity(d, 2, ed) + [ZERO] * rel)[:rel]
    return Laurent(base, tuple(ps_mul(num, ps_inv(den, rel), rel)), prec)


def expand_local(elem: FunctionElement, point, prec: int) -> Laurent:
    """Laurent expansion of ``elem`` at ``point`` known to absolute precision ``prec``.

    Finite points use ``t = x - a``; at infinity the uniformizer ``u`` has
    ``x = u^-2`` and ``u^(2g+1) y -> +sqrt(lc f)`` (``u = 1/x`` on a
    rational model).
    """
    if isinstance(point, Infinity):
        return _expand_at_infinity(elem, prec)
    model = elem.model
    model.check_point(point)
    p, q, d = elem._lists()
    a = point.x
    v, dcof = P.valuation(d, P.linear(a))
    n = max(prec + v, 0)
    if n == 0:
        return Laurent(-v, (), prec)
    num = P.taylor(p, a, n)
    if q:
        ys = y_series(model, point, n)
        qs = ps_mul(P.taylor(q, a, n), ys, n)
        num = [u + w for u, w in zip(num, qs)]
    den = P.taylor(dcof, a, n)
    return Laurent(-v, tuple(ps_mul(num, ps_inv(den, n), n)), prec)


def expand_differential(elem: FunctionElement, point: Point, prec: int) -> Laurent:
    """Expansion of ``elem * dx/y`` (``elem * dx``) divided by ``dt`` at a finite point."""
    h = expand_local(elem, point, prec)
    model = elem.model
    if model.is_rational:
        return h
    v = h.val
    n = max(prec - v, 1)
    yinv = ps_inv(y_series(model, point, n), n)
    return h * Laurent(0, tuple(yinv), n)


def node_value(elem: FunctionElement, point: Point, twist: int):
    """Fiber value of the differential at ``point`` for the sheaf ``omega(twist*point+...)``:
    the coefficient of ``t^-twist dt``."""
    return expand_differential(elem, point, -twist + 1).coefficient(-twist)


def order_at(elem: FunctionElement, place) -> int:
    """Exact order of ``elem`` at a place of residue degree one."""
    if elem.is_zero():
        raise ValueError("order of the zero function")
    model = elem.model
    p, q, d = elem._lists()
    if isinstance(place, Infinity):
        if model.is_rational:
            return P.deg(d) - P.deg(p)
        g = model.genus
        cand = []
        if p:
            cand.append(2 * P.deg(p))
        if q:
            cand.append(2 * P.deg(q) + 2 * g + 1)
        return 2 * P.deg(d) - max(cand)
    if isinstance(place, Weierstrass):
        if len(place.minpoly) != 2:
            raise PreconditionError("order_at handles rational places only")
        pi = P.from_asc(place.minpoly)
        cand = []
        if p:
            cand.append(2 * P.valuation(p, pi)[0])
        if q:
            cand.append(2 * P.valuation(q, pi)[0] + 1)
        vd = P.valuation(d, pi)[0] if P.deg(d) > 0 else 0
        return min(cand) - 2 * vd
    model.check_point(place)
    # bounded by the degree of the pole divisor, which is at most deg of the norm
    bound = 2 * (P.deg(p) + P.deg(q) + P.deg(d) + model.genus + 4)
    prec = 8
    while True:
        v = expand_local(elem, place, prec).valuation()
        if v is not None:
            return v
        if prec > bound:
            raise PrecisionError("order exceeds the a priori bound")
        prec *= 2


# --- Riemann-Roch spaces -------------------------------------------------


def twist_denominator(model: ComponentModel, D: PlaceDivisor):
    """``prod (x - a)^k_a`` clearing all poles allowed by ``D`` over each ``a``."""
    ks = {}
    for place, m in D.terms:
        if isinstance(place, Point):
            ks[place.x] = max(ks.get(place.x, 0), m)
    d = P.ONE_POLY
    for a in sorted(ks):
        if ks[a] > 0:
            d = P.mul(d, P.power(P.linear(a), ks[a]))
    return d


def _check_support(model, D):
    for place, _ in D.terms:
        if isinstance(place, Infinity):
            continue
        if not isinstance(place, Point):
            raise UnsupportedDivisor(f"divisor support {place} is not a rational point or infinity")
        try:
            model.check_point(place)
        except PreconditionError as exc:
            raise UnsupportedDivisor(str(exc)) from exc


def _monomial_rows(model, pt, need, nP, nQ):
    a = pt.x
    # (a + t)^j truncated to ``need`` terms
    pows = []
    cur = [ONE] + [ZERO] * (need - 1)
    for j in range(max(nP, nQ)):
        pows.append(cur)
        nxt = [ZERO] * need
        for s in range(need):
            nxt[s] = a * cur[s] + (cur[s - 1] if s else ZERO)
        cur = nxt
    cols = [pows[j] for j in range(nP)]
    if nQ:
        ys = y_series(model, pt, need)
        cols += [ps_mul(pows[j], ys, need) for j in range(nQ)]
    return [[col[s] for col in cols] for s in range(need)]


@dataclass(frozen=True)
class AnsatzSolution:
    denominator: tuple
    n_p: int
    n_q: int
    vectors: tuple

    def element(self, model, vec) -> FunctionElement:
        p = P.from_asc(vec[: self.n_p])
        q = P.from_asc(vec[self.n_p :])
        return FunctionElement.make(model, p, q, list(self.denominator))


def _ansatz(model: ComponentModel, D: PlaceDivisor) -> AnsatzSolution:
    _check_support(model, D)
    n_inf = D.mult(INFINITY)
    d = twist_denominator(model, D)
    ddeg = P.deg(d)
    if model.is_rational:
        dp, dq = n_inf + ddeg, -1
    else:
        dp = (n_inf + 2 * ddeg) // 2
        dq = (n_inf + 2 * ddeg - 2 * model.genus - 1) // 2
    nP, nQ = max(dp + 1, 0), max(dq + 1, 0)
    if nP + nQ == 0:
        return AnsatzSolution(_tup(d), 0, 0, ())
    rows = []
    xs = sorted({pl.x for pl, _ in D.terms if isinstance(pl, Point)})
    for a in xs:
        pts = model.points_over(a)
        ka = max([0] + [D.mult(pt) for pt in pts])
        for pt in pts:
            need = ka - D.mult(pt)
            if need > 0:
                rows.extend(_monomial_rows(model, pt, need, nP, nQ))
    vectors = nullspace(rows, nP + nQ)
    return AnsatzSolution(_tup(d), nP, nQ, tuple(tuple(v) for v in vectors))


def function_space(model: ComponentModel, D: PlaceDivisor):
    """Basis of ``L(D) = {h : div(h) + D >= 0}``."""
    sol = _ansatz(model, D)
    return [sol.element(model, v) for v in sol.vectors]


@dataclass(frozen=True)
class SectionSpace:
    """``H^0(omega(E))`` with an exact basis.

    ``basis[k]`` is the function ``h`` of the differential ``h * dx/y``
    (``h * dx`` on a rational model).  ``ansatz`` keeps the coefficient
    vectors of the numerators over the common denominator, which is what
    coordinates are computed against.
    """

    model: ComponentModel
    twist: PlaceDivisor
    ansatz: AnsatzSolution = field(repr=False)

    @cached_property
    def basis(self):
        return [self.ansatz.element(self.model, v) for v in self.ansatz.vectors]

    @property
    def dim(self) -> int:
        return len(self.ansatz.vectors)

    def combination(self, coords) -> FunctionElement:
        n = self.ansatz.n_p + self.ansatz.n_q
        vec = [ZERO] * n
        for c, v in zip(coords, self.ansatz.vectors):
            if c:
                vec = [a + c * b for a, b in zip(vec, v)]
        return self.ansatz.element(self.model, vec)

    def numerator_vector(self, elem: FunctionElement):
        p, q = elem.numerator_over(list(self.ansatz.denominator))
        if P.deg(p) >= self.ansatz.n_p or P.deg(q) >= self.ansatz.n_q:
            return None
        pa = P.to_asc(p) + [ZERO] * (self.ansatz.n_p - len(p))
        qa = P.to_asc(q) + [ZERO] * (self.ansatz.n_q - len(q))
        return pa + qa

    def coordinates(self, elem: FunctionElement):
        """Coordinates of ``elem`` in ``basis``; ``None`` if it is not in the space."""
        try:
            vec = self.numerator_vector(elem)
        except ArithmeticError:
            return None
        if vec is None:
            return None
        if self.dim == 0:
            return [] if not any(vec) else None
        cols = [list(v) for v in self.ansatz.vectors]
        rows = [[c[k] for c in cols] for k in range(len(vec))]
        return solve(rows, vec)


def rr_space(model: ComponentModel, E: PlaceDivisor) -> SectionSpace:
    """``H^0(omega(E))`` as ``L(K0 + E)``."""
    D = model.canonical_divisor() + E
    return SectionSpace(model, E, _ansatz(model, D))


def h0(model: ComponentModel, E: PlaceDivisor) -> int:
    return rr_space(model, E).dim


def l_dim(model: ComponentModel, D: PlaceDivisor) -> int:
    """``dim L(D)`` for a function-space divisor."""
    return len(_ansatz(model, D).vectors)


def in_section_space(elem: FunctionElement, model: ComponentModel, E: PlaceDivisor) -> bool:
    """Whether the differential of ``elem`` is a section of ``omega(E)``, by
    checking orders at every place where ``elem`` could violate the bound."""
    if elem.is_zero():
        return True
    D = model.canonical_divisor() + E
    places = set(D.support()) | {INFINITY}
    _, _, d = elem._lists()
    for pi, _ in P.factor(d):
        if P.deg(pi) != 1:
            return False
        a = -pi[1]
        try:
            places.update(model.points_over(a))
        except PreconditionError:
            return False
    for place in places:
        if isinstance(place, Point) or isinstance(place, Infinity):
            if order_at(elem, place) + D.mult(place) < 0:
                return False
    return True


def principal_witness(model: ComponentModel, D: PlaceDivisor) -> Optional[FunctionElement]:
    """A function ``phi`` with ``div(phi) = D``, or ``None`` if ``D`` is not principal."""
    if D.degree() != 0:
        return None
    basis = function_space(model, -D)
    if not basis:
        return None
    if len(basis) != 1:
        raise AssertionError("a degree-0 divisor has l(-D) <= 1")
    return basis[0]


# --- genericity conditions ----------------------------------------------


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: object = None
    values: tuple = ()

    def __bool__(self):
        return self.holds


def _role_check(model: ComponentModel, i: int, profile: GenusProfile) -> None:
    if model.genus != profile.genus(3 - i):
        raise PreconditionError(
            f"model of genus {model.genus} cannot play C_{3 - i} (genus {profile.genus(3 - i)})"
        )
    if model.delta != profile.delta:
        raise PreconditionError(f"model has {model.delta} marked points, profile needs {profile.delta}")


def check_h0_drop(model: ComponentModel, i: int, profile: GenusProfile) -> ConditionResult:
    """h^0(omega(-n Delta)) = max(g_{3-i} - n delta, 0) for n = 0..ell_i.

    Beyond ``ell_i`` the expected value is 0 and ``h^0`` is nonincreasing in
    ``n``, so the finite range decides the condition.
    """
    _role_check(model, i, profile)
    values = []
    for n in range(profile.ell(i) + 1):
        got = h0(model, model.delta_divisor(-n))
        want = expected_h0_twisted_dualizing(profile, i, n)
        values.append((n, got, want))
        if got != want:
            return ConditionResult(False, n, tuple(values))
    return ConditionResult(True, None, tuple(values))


def check_subset_vanishing(model: ComponentModel, i: int, profile: GenusProfile) -> ConditionResult:
    """h^0(omega(-ell_i Delta + I)) = 0 for every reduced I < Delta of degree m_i."""
    _role_check(model, i, profile)
    ell, m, n = profile.ell(i), profile.m(i), profile.delta
    values = []
    for subset in itertools.combinations(range(n), m):
        coeffs = [-ell + (1 if r in subset else 0) for r in range(n)]
        got = h0(model, model.marked_divisor(coeffs))
        values.append((subset, got))
        if got:
            return ConditionResult(False, subset, tuple(values))
    return ConditionResult(True, None, tuple(values))


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def check_composition_vanishing(model: ComponentModel, i: int, profile: GenusProfile, budget: int = 20000) -> ConditionResult:
    """h^0(omega(-D)) = 0 for every effective D supported on Delta with deg D = g_{3-i}."""
    _role_check(model, i, profile)
    total, n = profile.genus(3 - i), profile.delta
    count = comb(total + n - 1, n - 1)
    if count > budget:
        warnings.warn(f"composition-vanishing check for i={i} enumerates {count} divisors (budget {budget})", RuntimeWarning)
    for comp in compositions(total, n):
        if h0(model, model.marked_divisor([-c for c in comp])):
            return ConditionResult(False, comp, ())
    return ConditionResult(True, None, ())
