import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wplimits.curvemodel import RATIONAL, ComponentModel, FunctionElement, rr_space
from wplimits.errors import PreconditionError
from wplimits.generate import random_model
from wplimits.invariants import plucker_ram_degree
from wplimits.linalg import det, to_qq
from wplimits.places import INFINITY, PlaceDivisor, Point, Weierstrass
from wplimits.ramification import (
    LinearSystem,
    divisor_of,
    gap_weight,
    ram_divisor,
    vanishing_orders,
    wronskian_element,
)

seeds = st.integers(0, 10 ** 6)


def test_divisors_of_coordinates(quintic):
    x, y = FunctionElement.x(quintic), FunctionElement.y(quintic)
    dx = divisor_of(x)
    assert dx.mult(Point(0, 1)) == 1 and dx.mult(Point(0, -1)) == 1 and dx.mult(INFINITY) == -2
    dy = divisor_of(y)
    assert dy.mult(INFINITY) == -5 and dy.degree() == 0
    assert dy.mult(Weierstrass((to_qq(1), to_qq(1)))) == 1
    assert divisor_of(FunctionElement.constant(quintic, 7)).terms == ()
    with pytest.raises(PreconditionError):
        divisor_of(FunctionElement.constant(quintic, 0))


@given(seeds)
def test_divisor_is_additive(seed):
    rng = random.Random(seed)
    model = random_model(rng, rng.randint(0, 2), 1, 10)
    x = FunctionElement.x(model)
    a = x - FunctionElement.constant(model, rng.randint(-5, 5))
    b = FunctionElement.y(model) + x if not model.is_rational else x * x + FunctionElement.constant(model, 1)
    assert divisor_of(a * b) == divisor_of(a) + divisor_of(b)
    assert divisor_of(a / b) == divisor_of(a) - divisor_of(b)
    assert divisor_of(a * b).degree() == 0


def test_quintic_canonical_ramification(quintic):
    sys = LinearSystem.complete(quintic, PlaceDivisor.zero(quintic))
    R = ram_divisor(sys)
    # six Weierstrass points: x = -1, the quartic factor of x^5 + 1, infinity
    assert R.total_degree == 6 == plucker_ram_degree(2, 2, 2)
    assert R.divisor.mult(INFINITY) == 1
    w = Weierstrass((to_qq(1), to_qq(1)))
    assert R.divisor.mult(w) == 1
    assert gap_weight(sys, INFINITY) == 1 and gap_weight(sys, w) == 1
    assert vanishing_orders(sys, quintic.marked[0]) == [0, 1]


def test_wronskian_on_the_line():
    line = ComponentModel(RATIONAL, (), (Point(0), Point(1)))
    E = line.delta_divisor(1) + PlaceDivisor.build(line, {INFINITY: 1})
    sys = LinearSystem.complete(line, E)
    assert sys.dim == 2
    W = wronskian_element(sys)
    assert not W.is_zero()
    assert ram_divisor(sys).total_degree == plucker_ram_degree(2, sys.degree, 0) == 0


def test_dependent_basis_rejected(quintic):
    space = rr_space(quintic, PlaceDivisor.zero(quintic))
    b = space.basis[0]
    with pytest.raises(PreconditionError):
        LinearSystem(quintic, PlaceDivisor.zero(quintic), (b, b * FunctionElement.constant(quintic, 2)))


@given(seeds)
def test_ramification_ignores_basis_choice(seed):
    rng = random.Random(seed)
    model = random_model(rng, rng.randint(0, 2), 2, 10)
    E = model.delta_divisor(rng.randint(1, 2))
    sys = LinearSystem.complete(model, E)
    n = sys.dim
    while True:
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if det([[to_qq(v) for v in r] for r in M]):
            break
    basis = []
    for row in M:
        acc = FunctionElement.constant(model, 0)
        for c, b in zip(row, sys.basis):
            acc = acc + b * FunctionElement.constant(model, c)
        basis.append(acc)
    other = LinearSystem(model, E, tuple(basis))
    R = ram_divisor(sys)
    assert ram_divisor(other).divisor == R.divisor
    assert R.total_degree == plucker_ram_degree(n, sys.degree, model.genus)
    for place in R.divisor.rational_support() + [INFINITY] + list(model.marked):
        assert gap_weight(sys, place) == R.divisor.mult(place)
