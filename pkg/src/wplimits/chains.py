"""Semi-stable chain models of C and twist bookkeeping on their components.

Node ``p`` (1-based) of C is replaced by a path ``C1 - E_p_1 - ... -
E_p_(mu_p - 1) - C2`` of smooth rational curves.  A twist tuple assigns an
integer weight to every component; twisting the relative dualizing sheaf by
``sum lambda_E E`` changes its degree on ``E`` by
``sum_{E' != E} lambda_E' #(E cap E') - lambda_E #(E cap rest)``, since the
sum of all components is linearly equivalent to zero on a regular total space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from wplimits.errors import PreconditionError
from wplimits.invariants import GenusProfile


def component_id(p: int, q: int) -> str:
    return f"E_{p}_{q}"


def main_id(i: int) -> str:
    return f"C{i}"


@dataclass(frozen=True)
class ChainModel:
    profile: GenusProfile
    mu: tuple
    vertices: tuple = field(default=())
    edges: tuple = field(default=())

    def genus_of(self, v: str) -> int:
        if v == "C1":
            return self.profile.g1
        if v == "C2":
            return self.profile.g2
        return 0

    def valence(self, v: str) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def meetings(self, u: str, v: str) -> int:
        return sum(1 for a, b in self.edges if {a, b} == {u, v})

    def neighbors(self, v: str):
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def arithmetic_genus(self) -> int:
        b1 = len(self.edges) - len(self.vertices) + _components(self.vertices, self.edges)
        return sum(self.genus_of(v) for v in self.vertices) + b1

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "vertices": [{"id": v, "genus": self.genus_of(v)} for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "genus": self.arithmetic_genus(),
        }


def _components(vertices, edges) -> int:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in vertices})


def build_chain(profile: GenusProfile, mu) -> ChainModel:
    mu = tuple(int(m) for m in mu)
    if len(mu) != profile.delta:
        raise PreconditionError(f"mu needs {profile.delta} entries")
    if any(m < 1 for m in mu):
        raise PreconditionError("mu entries must be positive")
    vertices = ["C1", "C2"]
    edges = []
    for p, m in enumerate(mu, start=1):
        path = ["C1"] + [component_id(p, q) for q in range(1, m)] + ["C2"]
        vertices += path[1:-1]
        edges += list(zip(path, path[1:]))
    chain = ChainModel(profile, mu, tuple(vertices), tuple(edges))
    if chain.arithmetic_genus() != profile.g:
        raise AssertionError("chain model changed the arithmetic genus")
    return chain


def twist_degrees(chain: ChainModel, lam: dict) -> dict:
    """Degree of ``omega(sum lambda_E E)`` on each component."""
    missing = set(chain.vertices) - set(lam)
    if missing:
        raise PreconditionError(f"lambda misses components {sorted(missing)}")
    out = {}
    for v in chain.vertices:
        val = chain.valence(v)
        deg = 2 * chain.genus_of(v) - 2 + val - lam[v] * val
        for u in chain.neighbors(v):
            deg += lam[u] * chain.meetings(u, v)
        out[v] = deg
    total = sum(out.values())
    if total != 2 * chain.profile.g - 2:
        raise AssertionError("twisted degrees do not sum to 2g - 2")
    return out


@dataclass(frozen=True)
class ConstraintCheck:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


def validate_lambda_constraints(chain: ChainModel, profile: GenusProfile, i: int, lam: dict) -> ConstraintCheck:
    Ci = main_id(i)
    cap = profile.genus(3 - i)
    bad = []
    if lam.get(Ci, 0) != 0:
        bad.append(f"lambda_{{{i},C{i}}}=0")
    for v in chain.vertices:
        if lam.get(v, 0) < 0:
            bad.append(f"lambda_{{{i},{v}}}>=0")
    for v in sorted(chain.neighbors(Ci)):
        if lam.get(v, 0) > cap:
            bad.append(f"lambda_{{{i},{v}}}<=g_{3 - i}")
    return ConstraintCheck(not bad, tuple(bad))


def normalize_mu(mu) -> tuple:
    """Primitive positive integer representative of the class of ``mu``."""
    vals = [Fraction(m) for m in mu]
    if not vals or any(v <= 0 for v in vals):
        raise PreconditionError("mu entries must be positive")
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = gcd(*ints)
    return tuple(n // g for n in ints)


@dataclass(frozen=True)
class LambdaSearch:
    """Tuples passing necessary conditions only; uniqueness is not certified."""

    candidates: tuple
    examined: int
    exhausted: bool
    bound: int
    note: str = "necessary-condition filter; the true twist is not computed"


def feasible_lambda_search(chain: ChainModel, profile: GenusProfile, i: int, budget: int = 100000) -> LambdaSearch:
    """Enumerate weight tuples with ``lambda_{C_i} = 0`` inside a heuristic box.

    Weights range over ``0..g_{3-i} * max(mu)`` (neighbors of ``C_i`` up to
    ``g_{3-i}``).  A tuple survives if all degrees are nonnegative except
    possibly on ``C_{3-i}`` and the degree on ``C_i`` is at least
    ``2 g_i - 2 + delta``.
    """
    Ci, Cj = main_id(i), main_id(3 - i)
    cap = profile.genus(3 - i)
    bound = cap * max(chain.mu)
    free = [v for v in chain.vertices if v != Ci]
    near = chain.neighbors(Ci)
    ranges = [range(0, (cap if v in near else bound) + 1) for v in free]
    out = []
    examined = 0
    for combo in itertools.product(*ranges):
        if examined >= budget:
            return LambdaSearch(tuple(out), examined, True, bound)
        examined += 1
        lam = dict(zip(free, combo))
        lam[Ci] = 0
        if not validate_lambda_constraints(chain, profile, i, lam):
            continue
        degs = twist_degrees(chain, lam)
        if any(d < 0 for v, d in degs.items() if v != Cj):
            continue
        if degs[Ci] < 2 * profile.genus(i) - 2 + profile.delta:
            continue
        out.append(tuple(sorted(lam.items())))
    return LambdaSearch(tuple(out), examined, False, bound)
