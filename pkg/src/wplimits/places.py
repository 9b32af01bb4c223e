"""Closed points of a component model and exact divisors supported on them.

Places of a model ``y^2 = f(x)`` (or of the x-line for a rational model):

``Point(x, y)``        a rational point, not a root of ``f``; ``y`` is ``None``
                       on a rational model
``Infinity()``         the unique point at infinity
``Weierstrass(pi)``    the ramified place over an irreducible factor of ``f``
``Branch(pi, s)``      one of the two places over ``pi`` (deg >= 2), namely the
                       one where ``y = s(x) mod pi``
``Fiber(pi)``          the full preimage of the x-line point ``pi``: an inert
                       place, or a split pair whose two branches carry equal
                       multiplicity

Minimal polynomials and branch tags are ascending coefficient tuples.  Every
divisor is stored in one canonical form, so two pipelines producing the same
divisor produce equal objects.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from wplimits import polys as P
from wplimits.linalg import fmt_qq


@dataclass(frozen=True)
class Point:
    x: object
    y: Optional[object] = None

    def sort_key(self):
        return (0, self.x, 0 if self.y is None else 1, self.y if self.y is not None else 0)


@dataclass(frozen=True)
class Infinity:
    def sort_key(self):
        return (1,)


@dataclass(frozen=True)
class Weierstrass:
    minpoly: tuple

    def sort_key(self):
        return (2, len(self.minpoly), self.minpoly)


@dataclass(frozen=True)
class Branch:
    minpoly: tuple
    branch: tuple

    def sort_key(self):
        return (3, len(self.minpoly), self.minpoly, len(self.branch), self.branch)


@dataclass(frozen=True)
class Fiber:
    minpoly: tuple

    def sort_key(self):
        return (4, len(self.minpoly), self.minpoly)


INFINITY = Infinity()


def minpoly_tuple(pi) -> tuple:
    return tuple(P.to_asc(P.monic(pi)))


def place_degree(model, place) -> int:
    if isinstance(place, (Point, Infinity)):
        return 1
    d = len(place.minpoly) - 1
    if isinstance(place, Fiber):
        return d if model.is_rational else 2 * d
    return d


def _canonical_terms(model, mapping):
    out = defaultdict(int)
    groups = {}
    for place, mult in mapping.items():
        if not mult:
            continue
        if isinstance(place, Fiber):
            pi = P.from_asc(place.minpoly)
            if model.is_rational:
                if P.deg(pi) == 1:
                    out[Point(-pi[1])] += mult
                else:
                    out[place] += mult
                continue
            if not P.rem(model.f_poly, pi):
                out[Weierstrass(place.minpoly)] += 2 * mult
                continue
            if P.deg(pi) == 1:
                a = -pi[1]
                b = P.rational_sqrt(P.evaluate(model.f_poly, a))
                if b is None:
                    out[place] += mult
                else:
                    out[Point(a, b)] += mult
                    out[Point(a, -b)] += mult
                continue
            groups.setdefault(place.minpoly, [0, defaultdict(int)])[0] += mult
        elif isinstance(place, Branch):
            groups.setdefault(place.minpoly, [0, defaultdict(int)])[1][place.branch] += mult
        else:
            out[place] += mult
    for key, (fiber, branches) in groups.items():
        if not branches:
            out[Fiber(key)] += fiber
            continue
        pi = P.from_asc(key)
        tags = sorted(branches)
        s0 = tags[0]
        s1 = tuple(P.to_asc(P.rem(P.neg(P.from_asc(s0)), pi))) if s0 else s0
        extra = set(tags) - {s0, s1}
        if extra:
            raise ValueError("more than two branches over one x-line point")
        m0 = branches.get(s0, 0) + fiber
        m1 = branches.get(s1, 0) + fiber
        if m0 == m1:
            out[Fiber(key)] += m0
        else:
            out[Branch(key, s0)] += m0
            out[Branch(key, s1)] += m1
    items = [(p, m) for p, m in out.items() if m]
    items.sort(key=lambda pm: pm[0].sort_key())
    return tuple(items)


@dataclass(frozen=True)
class PlaceDivisor:
    """A finite formal sum of places of one component model."""

    model: object
    terms: tuple = ()

    @classmethod
    def build(cls, model, mapping=None) -> "PlaceDivisor":
        return cls(model, _canonical_terms(model, dict(mapping or {})))

    @classmethod
    def zero(cls, model) -> "PlaceDivisor":
        return cls(model, ())

    def as_dict(self) -> dict:
        return dict(self.terms)

    def mult(self, place) -> int:
        for p, m in self.terms:
            if p == place:
                return m
        return 0

    def _combine(self, other, sign):
        if other.model != self.model:
            raise ValueError("divisors live on different models")
        acc = defaultdict(int, self.as_dict())
        for p, m in other.terms:
            acc[p] += sign * m
        return PlaceDivisor.build(self.model, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return PlaceDivisor(self.model, tuple((p, -m) for p, m in self.terms))

    def __mul__(self, k: int):
        if k == 0:
            return PlaceDivisor.zero(self.model)
        return PlaceDivisor(self.model, tuple((p, k * m) for p, m in self.terms))

    __rmul__ = __mul__

    def degree(self) -> int:
        return sum(m * place_degree(self.model, p) for p, m in self.terms)

    def is_effective(self) -> bool:
        return all(m >= 0 for _, m in self.terms)

    def support(self):
        return [p for p, _ in self.terms]

    def rational_support(self):
        """Places of residue degree one (rational points, Weierstrass points
        with rational x, and infinity)."""
        out = []
        for p, _ in self.terms:
            if isinstance(p, (Point, Infinity)):
                out.append(p)
            elif isinstance(p, Weierstrass) and len(p.minpoly) == 2:
                out.append(p)
        return out

    def to_json(self) -> dict:
        entries = []
        for p, m in self.terms:
            entries.append({"place": place_to_json(p), "mult": m, "degree": place_degree(self.model, p)})
        return {"terms": entries, "total_degree": self.degree()}


def place_to_json(place):
    if isinstance(place, Infinity):
        return "infinity"
    if isinstance(place, Point):
        out = {"x": fmt_qq(place.x)}
        if place.y is not None:
            out["y"] = fmt_qq(place.y)
        return out
    if isinstance(place, Weierstrass) and len(place.minpoly) == 2:
        return {"x": fmt_qq(-place.minpoly[0]), "y": "0"}
    out = {"minpoly": [fmt_qq(c) for c in place.minpoly]}
    if isinstance(place, Weierstrass):
        out["branch"] = "ramified"
    elif isinstance(place, Branch):
        out["branch"] = [fmt_qq(c) for c in place.branch]
    else:
        out["branch"] = "fiber"
    return out
