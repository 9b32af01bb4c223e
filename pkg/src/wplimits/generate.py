"""Seeded random component models with small-height rational data.

Hyperelliptic models are built as ``f = B(x)^2 + prod(x - a_r) * R(x)`` with
``f`` monic of degree ``2*genus + 1``: then ``(a_r, B(a_r))`` lies on the
curve for every chosen ``a_r``.  This allows up to ``2*genus + 1`` distinct
x-coordinates; on genus 1 further points come from the chord construction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Optional

from wplimits import polys as P
from wplimits.curvemodel import HYPERELLIPTIC, RATIONAL, ComponentModel
from wplimits.errors import PreconditionError
from wplimits.linalg import to_qq
from wplimits.places import Point

DEFAULT_HEIGHT = 20


def _rand_rational(rng: random.Random, height: int):
    return to_qq(Fraction(rng.randint(-height, height), rng.randint(1, 3)))


def _distinct(rng, count, height, avoid=()):
    seen = set(avoid)
    out = []
    while len(out) < count:
        a = _rand_rational(rng, height)
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out


def random_rational_model(rng: random.Random, delta: int, height: int = DEFAULT_HEIGHT) -> ComponentModel:
    return ComponentModel(RATIONAL, (), tuple(Point(a) for a in _distinct(rng, delta, height)))


def _chord_point(model_f, p1: Point, p2: Point) -> Optional[Point]:
    """Third intersection of the line through two points of a monic cubic model."""
    if p1.x == p2.x:
        return None
    s = (p2.y - p1.y) / (p2.x - p1.x)
    f2 = model_f[1]
    x3 = s * s - f2 - p1.x - p2.x
    return Point(x3, s * (x3 - p1.x) + p1.y)


def random_hyperelliptic_model(
    rng: random.Random,
    genus: int,
    delta: int,
    height: int = DEFAULT_HEIGHT,
    conjugate_pairs: int = 0,
    max_tries: int = 500,
) -> ComponentModel:
    """A monic odd-degree model with ``delta`` marked points.

    ``conjugate_pairs`` of the marked points come as ``(a, b), (a, -b)``
    pairs (placed first); the rest have distinct x-coordinates.
    """
    if genus < 1:
        raise PreconditionError("hyperelliptic models need genus >= 1")
    n = 2 * genus + 1
    if 2 * conjugate_pairs > delta:
        raise PreconditionError("too many conjugate pairs for delta")
    for _ in range(max_tries):
        singles = delta - 2 * conjugate_pairs
        k = min(conjugate_pairs + singles, n)
        xs = _distinct(rng, k, height)
        B = [to_qq(rng.randint(-height // 4 - 1, height // 4 + 1)) for _ in range(genus + 1)]
        R = [P.K.one] + [to_qq(rng.randint(-height // 4 - 1, height // 4 + 1)) for _ in range(n - k)]
        prod = P.ONE_POLY
        for a in xs:
            prod = P.mul(prod, P.linear(a))
        f = P.add(P.mul(B, B), P.mul(prod, R))
        if P.deg(f) != n or P.lc(f) != 1:
            continue
        if P.deg(P.gcd(f, P.diff(f))) > 0:
            continue
        ys = [P.evaluate(B, a) for a in xs]
        if any(not y for y in ys):
            continue
        pts = []
        for r in range(conjugate_pairs):
            pts += [Point(xs[r], ys[r]), Point(xs[r], -ys[r])]
        pts += [Point(a, y) for a, y in zip(xs[conjugate_pairs:], ys[conjugate_pairs:])]
        pts = pts[:delta]
        if len(pts) < delta:
            if genus != 1:
                continue
            pts = _extend_by_chords(f, pts, delta, rng)
            if pts is None:
                continue
        try:
            return ComponentModel(HYPERELLIPTIC, tuple(P.to_asc(f)), tuple(pts))
        except PreconditionError:
            continue
    raise RuntimeError("random model generation exhausted its tries")


def _extend_by_chords(f, pts, delta, rng):
    # the seed points are collinear (y = B(x) is a line in genus 1), so chords
    # among them alone only return the third seed point; add the conjugates
    pool = list(pts) + [Point(p.x, -p.y) for p in pts]
    used_x = {p.x for p in pts}
    for _ in range(50):
        if len(pts) >= delta:
            return pts
        p1, p2 = rng.sample(pool, 2)
        q = _chord_point(f, p1, p2)
        if q is None or not q.y or q.x in used_x:
            continue
        if q.y * q.y != P.evaluate(f, q.x):
            raise AssertionError("chord point off the curve")
        pool.append(q)
        pts = pts + [q]
        used_x.add(q.x)
    return None


def random_model(rng: random.Random, genus: int, delta: int, height: int = DEFAULT_HEIGHT, **kw) -> ComponentModel:
    if genus == 0:
        return random_rational_model(rng, delta, height)
    return random_hyperelliptic_model(rng, genus, delta, height, **kw)


def generic_model(
    rng: random.Random,
    genus: int,
    delta: int,
    accept: Optional[Callable[[ComponentModel], bool]] = None,
    height: int = DEFAULT_HEIGHT,
    max_tries: int = 200,
) -> ComponentModel:
    """Rejection sampling until ``accept(model)`` holds."""
    for _ in range(max_tries):
        model = random_model(rng, genus, delta, height)
        if accept is None or accept(model):
            return model
    raise RuntimeError("no acceptable model found within the try budget")
