"""Wronskian ramification divisors and the limit Weierstrass divisor on C.

A linear system ``(V, omega(E))`` on a component is given by functions
``h_k`` (sections ``h_k * dx/y``).  Writing ``h_k = u_k / d_E`` with ``d_E``
the common denominator of ``L(K0 + E)`` and ``u_k = p_k + q_k y``, the
x-derivatives satisfy ``u^(m) = (A_m + B_m y) / (2f)^m`` with

    A_{m+1} = 2f A_m' - 2m f' A_m,    B_{m+1} = 2f B_m' + (1 - 2m) f' B_m.

``Det = det(A_m + B_m y)`` is computed in ``Q[x][y]/(y^2 - f)`` and the
ramification divisor of ``n`` sections is

    R = div(Det) - C(n,2) div(2f) - n div(d_E) + n (K0 + E) + C(n,2) div(dx),

with ``div(dx) = div(y) + K0``.  On a rational model ``f`` is absent and
``div(dx) = K0 = -2 inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional

from wplimits import polys as P
from wplimits.curvemodel import (
    ComponentModel,
    FunctionElement,
    SectionSpace,
    expand_local,
    rr_space,
)
from wplimits.errors import GenericityError, InvariantBreach, PreconditionError
from wplimits.invariants import (
    GenusProfile,
    big_system_twist,
    complete_delta_coefficient,
    vpi_delta_coefficient,
    plucker_ram_degree,
    wnu_delta_coefficient,
)
from wplimits.linalg import ZERO, rank, rref
from wplimits.places import (
    INFINITY,
    Branch,
    Fiber,
    Infinity,
    PlaceDivisor,
    Point,
    Weierstrass,
    minpoly_tuple,
)


# --- divisors of functions -------------------------------------------------


def _div_poly(model: ComponentModel, c) -> dict:
    """Divisor of a nonzero polynomial in x, as a place -> multiplicity map."""
    out = {}
    for pi, v in P.factor(c):
        key = minpoly_tuple(pi)
        if not model.is_rational and not P.rem(model.f_poly, pi):
            out[Weierstrass(key)] = out.get(Weierstrass(key), 0) + 2 * v
        else:
            out[Fiber(key)] = out.get(Fiber(key), 0) + v
    n = P.deg(c)
    out[INFINITY] = out.get(INFINITY, 0) - (n if model.is_rational else 2 * n)
    return out


def _add_into(acc: dict, more: dict, sign: int = 1) -> None:
    for k, v in more.items():
        acc[k] = acc.get(k, 0) + sign * v


def _div_numerator(model: ComponentModel, A, B) -> dict:
    """Divisor of the polynomial element ``A + B y`` (not both zero)."""
    if model.is_rational or not B:
        return _div_poly(model, A)
    if not A:
        out = _div_poly(model, B)
        _add_into(out, _div_y(model))
        return out
    G = P.gcd(A, B)
    out = _div_poly(model, G) if P.deg(G) > 0 else {}
    A1, B1 = P.exact_quo(A, G), P.exact_quo(B, G)
    f = model.f_poly
    gamma = model.genus
    norm = P.sub(P.mul(A1, A1), P.mul(P.mul(B1, B1), f))
    for pi, v in P.factor(norm):
        if not P.rem(f, pi):
            va = P.valuation(A1, pi)[0] if A1 else 10 ** 9
            vb = P.valuation(B1, pi)[0]
            key = Weierstrass(minpoly_tuple(pi))
            out[key] = out.get(key, 0) + min(2 * va, 2 * vb + 1)
            continue
        inv = P.invert_mod(P.rem(B1, pi), pi)
        s = P.rem(P.neg(P.mul(P.rem(A1, pi), inv)), pi)
        if P.rem(P.sub(P.mul(s, s), f), pi):
            raise InvariantBreach("branch value is not a square root of f")
        if P.deg(pi) == 1:
            a = -pi[1]
            place = Point(a, P.evaluate(s, a) if s else ZERO)
        else:
            place = Branch(minpoly_tuple(pi), tuple(P.to_asc(s)))
        out[place] = out.get(place, 0) + v
    inf = min(-2 * P.deg(A1), -2 * P.deg(B1) - (2 * gamma + 1))
    out[INFINITY] = out.get(INFINITY, 0) + inf
    return out


def _div_y(model: ComponentModel) -> dict:
    out = {}
    for pi, _ in P.factor(model.f_poly):
        out[Weierstrass(minpoly_tuple(pi))] = 1
    out[INFINITY] = -(2 * model.genus + 1)
    return out


def divisor_of(elem: FunctionElement, model: Optional[ComponentModel] = None) -> PlaceDivisor:
    """The divisor of a nonzero function over closed points."""
    model = model or elem.model
    if elem.is_zero():
        raise PreconditionError("the zero function has no divisor")
    p, q, d = elem._lists()
    acc = _div_numerator(model, p, q)
    _add_into(acc, _div_poly(model, d), -1)
    D = PlaceDivisor.build(model, acc)
    if D.degree() != 0:
        raise InvariantBreach(f"principal divisor of degree {D.degree()}")
    return D


def div_dx(model: ComponentModel) -> PlaceDivisor:
    K0 = model.canonical_divisor()
    if model.is_rational:
        return K0
    return PlaceDivisor.build(model, _div_y(model)) + K0


# --- linear systems and Wronskians -----------------------------------------


@dataclass(frozen=True)
class LinearSystem:
    """Sections ``basis[k] * dx/y`` (``* dx`` if rational) of ``omega(twist)``."""

    model: ComponentModel
    twist: PlaceDivisor
    basis: tuple

    def __post_init__(self):
        space = self.space
        coords = []
        for b in self.basis:
            c = space.coordinates(b)
            if c is None:
                raise PreconditionError("a basis element is not a section of the twisted sheaf")
            coords.append(c)
        if not self.basis or rank(coords, space.dim) != len(self.basis):
            raise PreconditionError("linear system basis is empty or dependent")

    @property
    def space(self) -> SectionSpace:
        return _cached_space(self.model, self.twist)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def degree(self) -> int:
        return (self.model.canonical_divisor() + self.twist).degree()

    @classmethod
    def complete(cls, model: ComponentModel, twist: PlaceDivisor) -> "LinearSystem":
        return cls(model, twist, tuple(rr_space(model, twist).basis))

    def retwist(self, twist: PlaceDivisor) -> "LinearSystem":
        """The same sections viewed in ``omega(twist)`` (``twist`` must dominate)."""
        return LinearSystem(self.model, twist, self.basis)

    def numerators(self):
        den = list(self.space.ansatz.denominator)
        return den, [b.numerator_over(den) for b in self.basis]


@lru_cache(maxsize=256)
def _cached_space(model, twist):
    return rr_space(model, twist)


def _ring_mul(f, a, b):
    a0, a1 = a
    b0, b1 = b
    c0 = P.mul(a0, b0)
    if a1 and b1:
        c0 = P.add(c0, P.mul(P.mul(a1, b1), f))
    c1 = P.add(P.mul(a0, b1), P.mul(a1, b0))
    return (c0, c1)


def _ring_det(f, M):
    """Determinant over ``Q[x][y]/(y^2 - f)`` by memoized Laplace expansion."""
    n = len(M)
    memo = {}

    def rec(mask, col):
        if col == n:
            return (P.ONE_POLY, [])
        if mask in memo:
            return memo[mask]
        acc0, acc1 = [], []
        pos = 0
        for r in range(n):
            if mask >> r & 1:
                entry = M[r][col]
                if entry[0] or entry[1]:
                    sub = rec(mask & ~(1 << r), col + 1)
                    if sub[0] or sub[1]:
                        t0, t1 = _ring_mul(f, entry, sub)
                        if pos % 2:
                            acc0, acc1 = P.sub(acc0, t0), P.sub(acc1, t1)
                        else:
                            acc0, acc1 = P.add(acc0, t0), P.add(acc1, t1)
                pos += 1
        memo[mask] = (acc0, acc1)
        return memo[mask]

    return rec((1 << n) - 1, 0)


def derivative_table(model: ComponentModel, numerators, n: int):
    """``[m][k] = (A_m, B_m)`` for ``u_k^(m) = (A_m + B_m y)/(2f)^m``."""
    cols = []
    if model.is_rational:
        for p, _ in numerators:
            col, cur = [], p
            for _ in range(n):
                col.append((cur, []))
                cur = P.diff(cur)
            cols.append(col)
    else:
        f = model.f_poly
        two_f = P.scale(f, P.K(2))
        fp = P.diff(f)
        for p, q in numerators:
            col, A, B = [], p, q
            for m in range(n):
                col.append((A, B))
                A = P.sub(P.mul(two_f, P.diff(A)), P.scale(P.mul(fp, A), P.K(2 * m))) if A else []
                B = P.add(P.mul(two_f, P.diff(B)), P.scale(P.mul(fp, B), P.K(1 - 2 * m))) if B else []
            cols.append(col)
    return [[cols[k][m] for k in range(len(cols))] for m in range(n)]


def wronskian_numerator(sys: LinearSystem):
    """``(Det_A, Det_B)`` with ``Det = det(A_m + B_m y)`` over the numerators."""
    den, nums = sys.numerators()
    n = sys.dim
    table = derivative_table(sys.model, nums, n)
    f = sys.model.f_poly if not sys.model.is_rational else []
    return _ring_det(f, table)


def wronskian_element(sys: LinearSystem) -> FunctionElement:
    """``det(d^m h_k / dx^m)`` as a function."""
    model = sys.model
    den, _ = sys.numerators()
    A, B = wronskian_numerator(sys)
    if not A and not B:
        raise PreconditionError("zero Wronskian: the basis is dependent")
    n = sys.dim
    scale_poly = P.power(den, n)
    if not model.is_rational:
        scale_poly = P.mul(scale_poly, P.power(P.scale(model.f_poly, P.K(2)), comb(n, 2)))
    return FunctionElement.make(model, A, B, scale_poly)


@dataclass(frozen=True)
class RamDivisor:
    divisor: PlaceDivisor
    total_degree: int

    def to_json(self) -> dict:
        return self.divisor.to_json()


def ram_divisor(sys: LinearSystem) -> RamDivisor:
    model = sys.model
    n = sys.dim
    den, _ = sys.numerators()
    A, B = wronskian_numerator(sys)
    if not A and not B:
        raise PreconditionError("zero Wronskian: the basis is dependent")
    acc = _div_numerator(model, A, B)
    _add_into(acc, _div_poly(model, den), -n)
    c2 = comb(n, 2)
    if not model.is_rational:
        _add_into(acc, _div_poly(model, P.scale(model.f_poly, P.K(2))), -c2)
    R = PlaceDivisor.build(model, acc)
    R = R + (model.canonical_divisor() + sys.twist) * n + div_dx(model) * c2
    expected = plucker_ram_degree(n, sys.degree, model.genus)
    if R.degree() != expected:
        raise InvariantBreach(f"ramification degree {R.degree()} != Plucker value {expected}")
    if not R.is_effective():
        raise InvariantBreach("ramification divisor is not effective")
    return RamDivisor(R, R.degree())


# --- independent vanishing-order oracle ------------------------------------


def _slot_vectors_finite(sys, pt, prec):
    den, nums = sys.numerators()
    vecs = []
    for p, q in nums:
        elem = FunctionElement.make(sys.model, p, q)
        series = expand_local(elem, pt, prec)
        vecs.append([series.coefficient(k) for k in range(prec)])
    return vecs, list(range(prec))


def _slot_vectors_weierstrass(sys, place):
    den, nums = sys.numerators()
    e = -place.minpoly[0]
    width = max(max(len(p), len(q)) for p, q in nums) + 1
    vecs = []
    for p, q in nums:
        tp = P.taylor(p, e, width)
        tq = P.taylor(q, e, width)
        v = []
        for j in range(width):
            v += [tp[j], tq[j]]
        vecs.append(v)
    return vecs, list(range(2 * width))


def _slot_vectors_infinity(sys):
    den, nums = sys.numerators()
    model = sys.model
    width = max(max(len(p), len(q)) for p, q in nums)
    slots = {}
    for j in range(width):
        if model.is_rational:
            slots[("p", j)] = -j
        else:
            slots[("p", j)] = -2 * j
            slots[("q", j)] = -2 * j - 2 * model.genus - 1
    keys = sorted(slots, key=lambda k: slots[k])
    vecs = []
    for p, q in nums:
        pa, qa = P.to_asc(p), P.to_asc(q)
        row = []
        for kind, j in keys:
            src = pa if kind == "p" else qa
            row.append(src[j] if j < len(src) else ZERO)
        vecs.append(row)
    return vecs, [slots[k] for k in keys]


def vanishing_orders(sys: LinearSystem, place):
    """Distinct orders of vanishing of the system's sections at a rational place,
    by echelonizing local coefficient vectors (no Wronskian involved)."""
    model = sys.model
    den, _ = sys.numerators()
    n = sys.dim
    D = model.canonical_divisor() + sys.twist
    if isinstance(place, Infinity):
        vecs, orders = _slot_vectors_infinity(sys)
        shift = (P.deg(den) if model.is_rational else 2 * P.deg(den)) + D.mult(INFINITY)
    elif isinstance(place, Weierstrass):
        if len(place.minpoly) != 2:
            raise PreconditionError("vanishing orders need a rational place")
        vecs, orders = _slot_vectors_weierstrass(sys, place)
        shift = 0
    else:
        k_a = P.valuation(den, P.linear(place.x))[0]
        shift = -k_a + D.mult(place)
        prec = max(2 * n, 8)
        while True:
            vecs, orders = _slot_vectors_finite(sys, place, prec)
            _, pivots = rref(vecs, len(orders))
            if len(pivots) == n:
                break
            prec *= 2
            if prec > 4096:
                raise InvariantBreach("vanishing orders not separated")
    _, pivots = rref(vecs, len(orders))
    if len(pivots) != n:
        raise InvariantBreach("vanishing-order echelon lost rank")
    return sorted(orders[c] + shift for c in pivots)


def gap_weight(sys: LinearSystem, place) -> int:
    """``sum(a_k - k)`` over the vanishing sequence at ``place``."""
    orders = vanishing_orders(sys, place)
    return sum(orders) - comb(len(orders), 2)


# --- assembly on the nodal curve --------------------------------------------


@dataclass(frozen=True)
class NodalDivisor:
    """A divisor on C: off-node parts on each component plus node multiplicities."""

    off1: PlaceDivisor
    off2: PlaceDivisor
    nodes: tuple

    @classmethod
    def from_components(cls, curve, D1: PlaceDivisor, D2: PlaceDivisor, node_extra) -> "NodalDivisor":
        nodes = []
        rest1, rest2 = dict(D1.terms), dict(D2.terms)
        for r in range(curve.delta):
            P1, P2 = curve.comp1.marked[r], curve.comp2.marked[r]
            nodes.append(rest1.pop(P1, 0) + rest2.pop(P2, 0) + node_extra[r])
        return cls(
            PlaceDivisor.build(curve.comp1, rest1),
            PlaceDivisor.build(curve.comp2, rest2),
            tuple(nodes),
        )

    def degree(self) -> int:
        return self.off1.degree() + self.off2.degree() + sum(self.nodes)

    def is_effective(self) -> bool:
        return self.off1.is_effective() and self.off2.is_effective() and min(self.nodes, default=0) >= 0

    def to_json(self) -> dict:
        return {
            "component1": self.off1.to_json(),
            "component2": self.off2.to_json(),
            "nodes": list(self.nodes),
            "total_degree": self.degree(),
        }


@dataclass(frozen=True)
class LimitDivisorReport:
    divisor: NodalDivisor
    component_ram: tuple
    delta_coefficient: int
    systems: tuple

    @property
    def total_degree(self) -> int:
        return self.divisor.degree()

    def node_parts(self, curve):
        """Per node: (mult in component 1 ramification, in component 2, explicit term)."""
        out = []
        for r in range(curve.delta):
            a = self.component_ram[0].divisor.mult(curve.comp1.marked[r])
            b = self.component_ram[1].divisor.mult(curve.comp2.marked[r])
            out.append((a, b, self.delta_coefficient))
        return out

    def to_json(self, curve) -> dict:
        return {
            "divisor": self.divisor.to_json(),
            "component_ramification": [R.to_json() for R in self.component_ram],
            "delta_coefficient": self.delta_coefficient,
            "node_decomposition": [list(t) for t in self.node_parts(curve)],
        }


def _check_dims(profile, systems):
    for sys in systems:
        if sys.dim != profile.g:
            raise PreconditionError(f"linear system of dimension {sys.dim}, expected g = {profile.g}")


def _assemble(curve, profile, systems, coeff, effective_check=True) -> LimitDivisorReport:
    _check_dims(profile, systems)
    rams = tuple(ram_divisor(s) for s in systems)
    D = NodalDivisor.from_components(curve, rams[0].divisor, rams[1].divisor, [coeff] * curve.delta)
    g = profile.g
    if D.degree() != g ** 3 - g:
        raise InvariantBreach(f"limit divisor degree {D.degree()} != g^3 - g = {g ** 3 - g}")
    if effective_check and curve.delta >= 2 and not D.is_effective():
        raise InvariantBreach("assembled limit divisor is not effective")
    return LimitDivisorReport(D, rams, coeff, tuple(systems))


def _system_on(curve, sys, j):
    if sys.model != curve.component(j):
        raise PreconditionError(f"system does not live on component {j}")


def assemble_Wnu(curve, profile: GenusProfile, V1: LinearSystem, V2: LinearSystem) -> LimitDivisorReport:
    """Component ramification of ``(V_i, omega_i((1 + g_{3-i}) Delta))`` plus ``g(delta-2) Delta``."""
    for j, V in ((1, V1), (2, V2)):
        _system_on(curve, V, j)
        if V.twist != curve.delta_divisor(j, big_system_twist(profile, j)):
            raise PreconditionError(f"V{j} must live in omega_{j}((1 + g_{3 - j}) Delta)")
    return _assemble(curve, profile, (V1, V2), wnu_delta_coefficient(profile))


def assemble_limit_via_vpi(curve, profile: GenusProfile, Vpi1: LinearSystem, Vpi2: LinearSystem) -> LimitDivisorReport:
    """Ramification of ``(V_{pi,i}, L_{i,i})`` plus ``g(g - 1 - ell_1 - ell_2) Delta``."""
    for j, V in ((1, Vpi1), (2, Vpi2)):
        _system_on(curve, V, j)
        if V.twist != curve.delta_divisor(j, 1 + profile.ell(j)):
            raise PreconditionError(f"V_pi{j} must live in L_{j},{j}")
    return _assemble(curve, profile, (Vpi1, Vpi2), vpi_delta_coefficient(profile))


def systems_from_vpi(curve, profile, vpi1, vpi2):
    """``(V_{pi,i}, L_{i,i})`` and the same sections inside ``omega_i((1+g_{3-i})Delta)``."""
    small, big = [], []
    for j, V in ((1, vpi1), (2, vpi2)):
        sys = LinearSystem(curve.component(j), V.space.twist, tuple(V.elements()))
        small.append(sys)
        big.append(sys.retwist(curve.delta_divisor(j, big_system_twist(profile, j))))
    return tuple(small), tuple(big)


def complete_systems_divisor(curve, profile: GenusProfile) -> LimitDivisorReport:
    """``W_1 + W_2 + (g^2 - g(g+1)/delta) Delta`` with ``W_i`` the complete systems."""
    from wplimits.curvemodel import h0

    if profile.delta < 2:
        raise PreconditionError("the complete-systems divisor is assembled only for delta >= 2")
    coeff = complete_delta_coefficient(profile)
    systems = []
    for i in (1, 2):
        model = curve.component(i)
        n = profile.genus(i) // profile.delta
        if h0(model, model.delta_divisor(-n)):
            raise GenericityError(f"h^0(omega_{i}(-{n} Delta)) != 0", n)
        systems.append(LinearSystem.complete(model, curve.delta_divisor(i, 1 + profile.genus(3 - i) // profile.delta)))
    report = _assemble(curve, profile, systems, coeff)
    via4 = assemble_limit_via_vpi(curve, profile, systems[0], systems[1])
    if via4.divisor != report.divisor:
        raise InvariantBreach("complete-systems assembly disagrees with the general formula")
    return report
