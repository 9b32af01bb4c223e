import random

import pytest
from conftest import curve_for
from hypothesis import given
from hypothesis import strategies as st

from wplimits.curvemodel import check_subset_vanishing
from wplimits.errors import PreconditionError
from wplimits.generate import random_model
from wplimits.grassmann import (
    act_on_subspace,
    membership_pair,
    membership_single,
    orbit_descriptor_pair,
    orbit_descriptor_single,
    plucker,
    subset_vanishing_via_plucker,
)
from wplimits.invariants import GenusProfile
from wplimits.linalg import to_qq
from wplimits.nodalglue import NodalCurve, compatible_glue_pair, same_class, vpi_subspace

small = st.integers(-4, 4)
nonzero = st.integers(-6, 6).filter(bool)


def test_plucker_examples():
    assert plucker([[1, 0, 0], [0, 1, 0]]).coords == (1, 0, 0)
    p = plucker([[1, 1, 1], [0, 1, 2]])
    assert p.coords == (1, 2, 1)
    assert plucker([[2, 4]]).coords == (1, 2)
    with pytest.raises(PreconditionError):
        plucker([[1, 2], [2, 4]])


def rows_strategy(d, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=d, max_size=d)


@given(st.sampled_from([(1, 3), (2, 3), (2, 4), (3, 5)]).flatmap(
    lambda dn: st.tuples(st.just(dn), rows_strategy(*dn), st.lists(nonzero, min_size=dn[1], max_size=dn[1]))))
def test_torus_character_identity(data):
    (d, n), rows, t = data
    try:
        p = plucker(rows, n)
    except PreconditionError:
        return
    scaled = [[to_qq(ts) * v for ts, v in zip(t, r)] for r in rows]
    assert plucker(scaled, n) == p.act(t)
    assert p.satisfies_relations()


def test_random_vector_breaks_relations():
    from wplimits.grassmann import PluckerVector

    assert not PluckerVector(2, 4, tuple(to_qq(v) for v in (1, 1, 1, 1, 1, 5))).satisfies_relations()


@given(st.integers(0, 10 ** 6))
def test_plucker_and_direct_subset_vanishing_agree(seed):
    rng = random.Random(seed)
    triple = rng.choice([(2, 3, 2), (1, 2, 3), (3, 3, 2), (0, 2, 3)])
    pr = GenusProfile(*triple)
    i = next(k for k in (1, 2) if pr.ell(k) and pr.m(k))
    pairs = 1 if rng.random() < 0.5 and pr.genus(3 - i) else 0
    comps = {}
    for j in (1, 2):
        kw = {"conjugate_pairs": pairs} if j == 3 - i and pairs else {}
        comps[j] = random_model(rng, pr.genus(j), pr.delta, 12, **kw)
    curve = NodalCurve(comps[1], comps[2])
    direct = check_subset_vanishing(curve.component(3 - i), i, pr).holds
    assert subset_vanishing_via_plucker(curve, pr, i) == direct


@pytest.mark.parametrize("triple, i, kind, dim", [
    ((2, 3, 2), 1, "orbit", 1),
    ((2, 3, 2), 2, "singleton", 0),
    ((3, 3, 2), 1, "orbit", 1),
    ((1, 2, 3), 1, "orbit", 2),
    ((1, 2, 3), 2, "orbit", 2),
])
def test_single_orbit_descriptors(triple, i, kind, dim):
    d = orbit_descriptor_single(curve_for(*triple), GenusProfile(*triple), i)
    assert (d.kind, d.dimension) == (kind, dim)


def test_pair_orbit_descriptors():
    d = orbit_descriptor_pair(curve_for(1, 2, 3), GenusProfile(1, 2, 3))
    assert (d.dim_D, d.dim_Z, d.dimension) == (3, 1, 2)
    assert orbit_descriptor_pair(curve_for(2, 2, 2), GenusProfile(2, 2, 2)).kind == "singleton-pair"


def _glue(rng, n):
    return tuple(to_qq(rng.choice([-1, 1]) * rng.randint(1, 9)) / rng.randint(1, 4) for _ in range(n))


@given(st.sampled_from([((2, 3, 2), 1), ((1, 2, 3), 1), ((1, 2, 3), 2), ((3, 3, 2), 2)]), st.integers(0, 10 ** 6))
def test_membership_recovers_glue(case, seed):
    triple, i = case
    curve, pr = curve_for(*triple), GenusProfile(*triple)
    glue = _glue(random.Random(seed), pr.delta)
    m = membership_single(curve, pr, i, vpi_subspace(curve, pr, i, glue))
    assert m
    want = glue if i == 1 else tuple(1 / g for g in glue)
    assert same_class(m.witness, want)


@given(st.lists(nonzero, min_size=3, max_size=3))
def test_torus_action_moves_witness(t):
    curve, pr = curve_for(1, 2, 3), GenusProfile(1, 2, 3)
    V = vpi_subspace(curve, pr, 1, (1, 1, 1))
    moved = act_on_subspace(curve, pr, 1, V, t)
    m = membership_single(curve, pr, 1, moved)
    assert m and same_class(m.witness, t)


def test_non_members_are_rejected():
    curve, pr = curve_for(1, 2, 3), GenusProfile(1, 2, 3)
    V = vpi_subspace(curve, pr, 1, (1, 1, 1))
    space_dim = V.space.dim
    # a coordinate subspace misses the kernel or has vanishing Pluecker coordinates
    rows = [[to_qq(1) if c == r else to_qq(0) for c in range(space_dim)] for r in range(pr.g)]
    assert not membership_single(curve, pr, 1, rows)
    with pytest.raises(PreconditionError):
        membership_single(curve_for(2, 3, 2), GenusProfile(2, 3, 2), 2, V)


@pytest.mark.parametrize("triple", [(1, 2, 3), (3, 3, 2)])
@given(q=st.lists(nonzero, min_size=3, max_size=3), s=nonzero)
def test_pair_membership(triple, q, s):
    curve, pr = curve_for(*triple), GenusProfile(*triple)
    g1, g2 = compatible_glue_pair(pr, q[: pr.delta], s, 1)
    V1 = vpi_subspace(curve, pr, 1, g1)
    assert membership_pair(curve, pr, V1, vpi_subspace(curve, pr, 2, g2))
    bent = (g2[0] * 2,) + g2[1:]
    assert not membership_pair(curve, pr, V1, vpi_subspace(curve, pr, 2, bent))


def test_pair_membership_absorbed_by_singleton_factor():
    curve, pr = curve_for(2, 3, 2), GenusProfile(2, 3, 2)
    g1, g2 = compatible_glue_pair(pr, [2, 3], -1, -1)
    V1 = vpi_subspace(curve, pr, 1, g1)
    m = membership_pair(curve, pr, V1, vpi_subspace(curve, pr, 2, g2))
    assert m and m.witness[1] is None
