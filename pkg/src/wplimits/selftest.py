"""Randomized self-check driver behind ``wplimits selftest``."""

from __future__ import annotations

import random

from wplimits import chains as CH
from wplimits.curvemodel import (
    check_composition_vanishing,
    check_h0_drop,
    check_subset_vanishing,
    l_dim,
)
from wplimits.errors import NotSemiStable
from wplimits.generate import random_model
from wplimits.invariants import GenusProfile, total_limit_degree
from wplimits.places import INFINITY, PlaceDivisor


def _random_profile(rng, gmax=4, dmax=4):
    while True:
        try:
            return GenusProfile(rng.randint(0, gmax), rng.randint(0, gmax), rng.randint(1, dmax))
        except NotSemiStable:
            continue


def check_profile(rng, mutate=False):
    pr = _random_profile(rng, 6, 6)
    g = pr.g
    assert total_limit_degree(pr) == g ** 3 - g
    for i in (1, 2):
        assert 0 <= pr.m(i) < pr.delta, f"m_{i} out of range for {pr.as_tuple()}"


def check_riemann_roch(rng, mutate=False):
    genus, delta = rng.randint(0, 2), rng.randint(1, 3)
    model = random_model(rng, genus, delta, 10)
    coeffs = [rng.randint(-3, 3) for _ in range(delta)]
    D = model.marked_divisor(coeffs) + PlaceDivisor.build(model, {INFINITY: rng.randint(-2, 3)})
    K = model.canonical_divisor()
    lhs = l_dim(model, D) - l_dim(model, K - D)
    rhs = D.degree() - genus + 1 + (1 if mutate else 0)
    assert lhs == rhs, f"Riemann-Roch fails: {lhs} != {rhs} on genus {genus}, coeffs {coeffs}"


def check_implications(rng, mutate=False):
    pr = _random_profile(rng, 3, 3)
    i = rng.randint(1, 2)
    other = pr.genus(3 - i)
    model = random_model(rng, other, pr.delta, 10)
    c1 = check_h0_drop(model, i, pr)
    c3 = check_subset_vanishing(model, i, pr)
    c5 = check_composition_vanishing(model, i, pr)
    assert not (c5 and not c3), f"composition vanishing without subset vanishing on {pr.as_tuple()}"
    assert not (c3 and not c1), f"subset vanishing without h0 drop on {pr.as_tuple()}"


def check_chain(rng, mutate=False):
    pr = _random_profile(rng, 3, 3)
    mu = [rng.randint(1, 3) for _ in range(pr.delta)]
    chain = CH.build_chain(pr, mu)
    lam = {v: rng.randint(-3, 3) for v in chain.vertices}
    degs = CH.twist_degrees(chain, lam)
    assert sum(degs.values()) == 2 * pr.g - 2
    shifted = CH.twist_degrees(chain, {v: w + 5 for v, w in lam.items()})
    assert shifted == degs, "constant shift changed twist degrees"


CHECKS = {
    "profile": check_profile,
    "riemann_roch": check_riemann_roch,
    "implications": check_implications,
    "chain": check_chain,
}


def run_selftest(seed: int = 0, size: int = 5, mutate: bool = False) -> dict:
    """Run every check ``size`` times; ``mutate`` corrupts the Riemann-Roch target."""
    rng = random.Random(seed)
    counts = {name: 0 for name in CHECKS}
    failures = []
    for k in range(size):
        for name, fn in CHECKS.items():
            try:
                fn(rng, mutate)
                counts[name] += 1
            except AssertionError as exc:
                failures.append({"check": name, "iteration": k, "message": str(exc)})
    return {"seed": seed, "size": size, "passed": counts, "failures": failures}
