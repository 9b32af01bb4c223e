"""Node-evaluation images, Pluecker vectors and diagonal torus orbits.

The torus ``T = (k^*)^delta`` scales the node coordinates of ``k^delta``.  On
Pluecker coordinates of a ``d``-dimensional subspace it acts by the subset
characters ``p_S -> (prod_{s in S} t_s) p_S``, so the stabilizer of ``[p]``
is cut out by the characters ``e_S - e_S0`` over the nonzero coordinates and
the orbit dimension is the rank of that integer lattice.

Subsets are ``itertools.combinations`` order (lexicographic); the coordinate
``p_S`` is the minor on the rows ``S`` of a ``delta x d`` basis matrix whose
columns span the subspace, and vectors are normalized so the first nonzero
coordinate is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from wplimits.curvemodel import SectionSpace, check_subset_vanishing, rr_space
from wplimits.errors import GenericityError, PreconditionError
from wplimits.invariants import GenusProfile
from wplimits.lattice import ExponentLattice, integer_rank, lattice_solve
from wplimits.linalg import ONE, ZERO, det, in_span, nullspace, rank, row_basis, solve, to_qq, transpose
from wplimits.nodalglue import NodalCurve, VpiSubspace, node_value_matrix, reference_side


@dataclass(frozen=True)
class NodeEvaluation:
    """``e_{i,j}``: rows indexed by nodes, columns by ``space.basis``."""

    i: int
    j: int
    space: SectionSpace
    matrix: tuple

    @property
    def rank(self) -> int:
        rows = [list(r) for r in self.matrix]
        return rank(rows, self.space.dim) if self.space.dim else 0

    def image_basis(self):
        """Basis vectors (in ``k^delta``) of the image."""
        if not self.space.dim:
            return []
        return row_basis(transpose([list(r) for r in self.matrix]))

    def kernel(self):
        if not self.space.dim:
            return []
        return nullspace([list(r) for r in self.matrix], self.space.dim)


def node_evaluation(curve: NodalCurve, profile: GenusProfile, i: int, j: int) -> NodeEvaluation:
    space = rr_space(curve.component(j), reference_side(curve, profile, i, j))
    return NodeEvaluation(i, j, space, tuple(tuple(r) for r in node_value_matrix(space)))


@dataclass(frozen=True)
class PluckerVector:
    d: int
    n: int
    coords: tuple

    @property
    def subsets(self):
        return list(itertools.combinations(range(self.n), self.d))

    def coordinate(self, S) -> object:
        return dict(zip(self.subsets, self.coords))[tuple(S)]

    def all_nonzero(self) -> bool:
        return all(c for c in self.coords)

    def signed(self, seq) -> object:
        """Coordinate of an unsorted index sequence (alternating in its entries)."""
        seq = list(seq)
        if len(set(seq)) != len(seq):
            return ZERO
        sign = 1
        for a in range(len(seq)):
            for b in range(a + 1, len(seq)):
                if seq[a] > seq[b]:
                    sign = -sign
        return sign * self.coordinate(sorted(seq))

    def satisfies_relations(self) -> bool:
        """Grassmann-Pluecker relations over all ``(d-1)``- and ``(d+1)``-subsets."""
        if self.d in (0, self.n):
            return True
        for I in itertools.combinations(range(self.n), self.d - 1):
            for J in itertools.combinations(range(self.n), self.d + 1):
                total = ZERO
                for k, jk in enumerate(J):
                    rest = J[:k] + J[k + 1 :]
                    term = self.signed(list(I) + [jk]) * self.signed(rest)
                    total += term if k % 2 == 0 else -term
                if total:
                    return False
        return True

    def act(self, t) -> "PluckerVector":
        """``t . p`` under the diagonal torus, renormalized."""
        raw = []
        for S, c in zip(self.subsets, self.coords):
            w = ONE
            for s in S:
                w *= to_qq(t[s])
            raw.append(w * c)
        return _normalized(self.d, self.n, raw)


def _normalized(d, n, raw) -> PluckerVector:
    lead = next((c for c in raw if c), None)
    if lead is None:
        raise PreconditionError("all Pluecker coordinates vanish")
    return PluckerVector(d, n, tuple(c / lead for c in raw))


def plucker(basis_rows, n: Optional[int] = None) -> PluckerVector:
    """Pluecker vector of the span of ``basis_rows`` (vectors in ``k^n``)."""
    rows = [[to_qq(v) for v in r] for r in basis_rows]
    if n is None:
        n = len(rows[0]) if rows else 0
    d = len(rows)
    if d and rank(rows, n) != d:
        raise PreconditionError("Pluecker input is rank deficient")
    raw = []
    for S in itertools.combinations(range(n), d):
        raw.append(det([[r[s] for r in rows] for s in S]) if d else ONE)
    return _normalized(d, n, raw)


def image_W(curve: NodalCurve, profile: GenusProfile, i: int):
    """``W_i``, the image of ``e_{i,3-i}``, and the evaluation itself."""
    ev = node_evaluation(curve, profile, i, 3 - i)
    return ev.image_basis(), ev


def subset_vanishing_via_plucker(curve: NodalCurve, profile: GenusProfile, i: int) -> bool:
    """All Pluecker coordinates of ``W_i`` nonzero, with ``e_{i,3-i}`` injective
    onto a ``(delta - m_i)``-dimensional image."""
    if profile.ell(i) == 0 or profile.m(i) == 0:
        raise PreconditionError("the Pluecker test needs ell_i > 0 and m_i > 0")
    basis, ev = image_W(curve, profile, i)
    target = profile.delta - profile.m(i)
    if ev.space.dim != target or len(basis) != target:
        return False
    return plucker(basis, profile.delta).all_nonzero()


@dataclass(frozen=True)
class OrbitDescriptor:
    """``kind`` is ``"orbit"``, ``"singleton"`` or ``"singleton-pair"``."""

    kind: str
    dimension: int
    torus_dim: int
    stabilizer_rows: tuple = ()
    base: tuple = ()
    dim_D: Optional[int] = None
    dim_Z: Optional[int] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "dimension": self.dimension, "torus_dim": self.torus_dim}
        if self.dim_D is not None:
            out["dim_D"] = self.dim_D
            out["dim_Z"] = self.dim_Z
        return out


def stabilizer_rows(p: PluckerVector, offset: int = 0, width: Optional[int] = None):
    """Characters ``e_S - e_S0`` over the nonzero coordinates of ``p``."""
    width = width if width is not None else p.n
    support = [S for S, c in zip(p.subsets, p.coords) if c]
    rows = []
    S0 = support[0]
    for S in support[1:]:
        v = [0] * width
        for s in S:
            v[offset + s] += 1
        for s in S0:
            v[offset + s] -= 1
        rows.append(v)
    return rows


def _require_subset_vanishing(curve, profile, i):
    if profile.m(i) == 0:
        ok = check_subset_vanishing(curve.component(3 - i), i, profile).holds
    else:
        ok = subset_vanishing_via_plucker(curve, profile, i)
    if not ok:
        raise GenericityError(f"subset-vanishing condition fails for i={i}", i)


def orbit_descriptor_single(curve: NodalCurve, profile: GenusProfile, i: int) -> OrbitDescriptor:
    delta = profile.delta
    if profile.genus(3 - i) % delta == 0:
        return OrbitDescriptor("singleton", 0, delta)
    _require_subset_vanishing(curve, profile, i)
    basis, _ = image_W(curve, profile, i)
    p = plucker(basis, delta)
    rows = stabilizer_rows(p)
    r = integer_rank(rows, delta) if rows else 0
    if r != delta - 1:
        raise AssertionError(f"orbit dimension {r} != delta - 1")
    return OrbitDescriptor("orbit", r, delta, tuple(map(tuple, rows)), p.coords)


def _D_rows(profile):
    lam1, lam2 = profile.lam
    n = profile.delta
    rows = []
    for r in range(n):
        v = [0] * (2 * n)
        v[r] = lam2
        v[n + r] = -lam1
        rows.append(v)
    return rows


def _scalar_rows(n):
    rows = []
    for block in (0, n):
        for r in range(1, n):
            v = [0] * (2 * n)
            v[block + r] = 1
            v[block] = -1
            rows.append(v)
    return rows


def orbit_descriptor_pair(curve: NodalCurve, profile: GenusProfile) -> OrbitDescriptor:
    """The D-orbit of ``(W_1, W_2)`` inside ``T x T``."""
    n = profile.delta
    if gcd_divisible(profile):
        return OrbitDescriptor("singleton-pair", 0, 2 * n)
    if profile.lam is None:
        raise PreconditionError("the pair orbit needs ell_1 * ell_2 != 0")
    rows_D = _D_rows(profile)
    dim_D = 2 * n - integer_rank(rows_D, 2 * n)
    dim_Z = 2 * n - integer_rank(rows_D + _scalar_rows(n), 2 * n)
    stab = list(rows_D)
    for i, offset in ((1, 0), (2, n)):
        _require_subset_vanishing(curve, profile, i)
        basis, _ = image_W(curve, profile, i)
        stab += stabilizer_rows(plucker(basis, n), offset, 2 * n)
    dim_stab = 2 * n - integer_rank(stab, 2 * n)
    dim = dim_D - dim_stab
    if (dim_D, dim_Z, dim) != (n, 1, n - 1):
        raise AssertionError(f"pair orbit dims D={dim_D}, Z={dim_Z}, orbit={dim}")
    return OrbitDescriptor("orbit", dim, 2 * n, tuple(map(tuple, stab)), (), dim_D, dim_Z)


def gcd_divisible(profile: GenusProfile) -> bool:
    return profile.g1 % profile.delta == 0 and profile.g2 % profile.delta == 0


# --- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.member


def _subspace_rows(V):
    if isinstance(V, VpiSubspace):
        return [list(r) for r in V.rows]
    return [[to_qq(x) for x in r] for r in V]


def _ratio_witness(pU: PluckerVector, pW: PluckerVector):
    """``t`` with ``t . W = U`` normalized by ``t_0 = 1``, from coordinate ratios."""
    n, d = pU.n, pU.d
    t = [ONE]
    for r in range(1, n):
        others = [s for s in range(n) if s not in (0, r)]
        S = tuple(others[: d - 1])
        with_r = tuple(sorted(S + (r,)))
        with_0 = tuple(sorted(S + (0,)))
        t.append(
            (pU.coordinate(with_r) / pW.coordinate(with_r)) * (pW.coordinate(with_0) / pU.coordinate(with_0))
        )
    return tuple(t)


def membership_single(curve: NodalCurve, profile: GenusProfile, i: int, V) -> Membership:
    """Whether ``V`` lies in the image of the orbit of ``W_i`` under pull-back by ``e_{i,i}``."""
    if profile.genus(3 - i) % profile.delta == 0:
        raise PreconditionError("delta divides g_{3-i}: the locus is a single point")
    _require_subset_vanishing(curve, profile, i)
    rows = _subspace_rows(V)
    if len(rows) != profile.g or rank(rows) != profile.g:
        raise PreconditionError(f"V must have dimension g = {profile.g}")
    ev = node_evaluation(curve, profile, i, i)
    for k in ev.kernel():
        if not in_span(rows, k):
            return Membership(False, None, "V does not contain ker e_ii")
    E = [list(r) for r in ev.matrix]
    image = row_basis([[sum(e * v for e, v in zip(row, vec)) for row in E] for vec in rows])
    d = profile.delta - profile.m(i)
    if len(image) != d:
        return Membership(False, None, "e_ii(V) has the wrong dimension")
    pU = plucker(image, profile.delta)
    if not pU.all_nonzero():
        return Membership(False, None, "e_ii(V) has a vanishing Pluecker coordinate")
    basis_W, _ = image_W(curve, profile, i)
    pW = plucker(basis_W, profile.delta)
    n = profile.delta
    A, c = [], []
    for S, u, w in zip(pU.subsets, pU.coords, pW.coords):
        row = [1 if s in S else 0 for s in range(n)] + [-1]
        A.append(row)
        c.append(u / w)
    sol = lattice_solve(ExponentLattice.make(A, c, n + 1))
    if not sol:
        return Membership(False, None, "no torus element maps W_i to e_ii(V)")
    t = _ratio_witness(pU, pW)
    if pW.act(t) != pU:
        raise AssertionError("ratio witness does not reproduce e_ii(V)")
    return Membership(True, t)


def membership_pair(curve: NodalCurve, profile: GenusProfile, V1, V2) -> Membership:
    """Both single memberships plus ``t1^lam2 = t2^lam1`` modulo the scalar ambiguities."""
    if gcd_divisible(profile):
        raise PreconditionError("delta divides gcd(g1, g2): product of points")
    if profile.lam is None:
        raise PreconditionError("the pair locus needs ell_1 * ell_2 != 0")
    wit = []
    for i, V in ((1, V1), (2, V2)):
        if profile.genus(3 - i) % profile.delta == 0:
            space = rr_space(curve.component(i), reference_side(curve, profile, i, i))
            if rank(_subspace_rows(V)) != space.dim:
                return Membership(False, None, f"V{i} must be all of H^0(L_{i},{i})")
            wit.append(None)
            continue
        m = membership_single(curve, profile, i, V)
        if not m:
            return Membership(False, None, f"V{i}: {m.reason}")
        wit.append(m.witness)
    if None in wit:
        return Membership(True, tuple(wit), "one factor is a point; the relation is absorbed")
    lam1, lam2 = profile.lam
    t1, t2 = wit
    targets = [a ** lam2 / b ** lam1 for a, b in zip(t1, t2)]
    sol = lattice_solve(ExponentLattice.make([[-lam2, lam1] for _ in targets], targets, 2))
    if not sol:
        return Membership(False, tuple(wit), "torus witnesses violate t1^lam2 = t2^lam1")
    return Membership(True, tuple(wit))


def act_on_subspace(curve: NodalCurve, profile: GenusProfile, i: int, V, t):
    """``e_ii^{-1}(t . e_ii(V))`` for ``V`` containing ``ker e_ii``."""
    ev = node_evaluation(curve, profile, i, i)
    E = [list(r) for r in ev.matrix]
    rows = _subspace_rows(V)
    image = row_basis([[sum(e * v for e, v in zip(row, vec)) for row in E] for vec in rows])
    out = [list(k) for k in ev.kernel()]
    for u in image:
        tu = [to_qq(ts) * x for ts, x in zip(t, u)]
        x = solve(E, tu)
        if x is None:
            raise PreconditionError("e_ii is not surjective")
        out.append(x)
    return row_basis(out)
