"""The nodal curve C = C1 u C2 and invertible sheaves glued over its nodes.

Node ``r`` identifies ``comp1.marked[r]`` with ``comp2.marked[r]``.  A sheaf
``omega_j(E_j)`` on a component is trivialized at a marked point ``P`` with
local coordinate ``t = x - a`` by the generator ``t^(-E_j(P)) dt``: the fiber
value of a section is the coefficient of ``t^(-E_j(P)) dt`` in its
expansion.  For ``E_j(P) = 1`` this is the residue.

A :class:`GluedSheaf` identifies the fibers by ``value1(r) = glue[r] *
value2(r)``.  With the residue trivialization the dualizing sheaf of C has
glue ``(-1, ..., -1)``.  Rescaling either side by a global constant rescales
every glue entry by the same factor, so glue vectors are compared modulo one
overall scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from wplimits.curvemodel import (
    ComponentModel,
    FunctionElement,
    SectionSpace,
    check_h0_drop,
    expand_local,
    node_value,
    principal_witness,
    rr_space,
)
from wplimits.errors import GenericityError, PreconditionError
from wplimits.invariants import GenusProfile, sheaf_twist
from wplimits.lattice import ExponentLattice, LatticeSolution, lattice_solve
from wplimits.linalg import ONE, fmt_qq, nullspace, rank, row_basis, to_qq
from wplimits.places import PlaceDivisor


@dataclass(frozen=True)
class NodalCurve:
    comp1: ComponentModel
    comp2: ComponentModel

    def __post_init__(self):
        if self.comp1.delta != self.comp2.delta:
            raise PreconditionError("both components need the same number of marked points")
        if self.comp1.delta < 1:
            raise PreconditionError("at least one node is required")
        self.profile  # validates semi-stability

    @property
    def delta(self) -> int:
        return self.comp1.delta

    @property
    def profile(self) -> GenusProfile:
        return GenusProfile(self.comp1.genus, self.comp2.genus, self.delta)

    @property
    def genus(self) -> int:
        return self.profile.g

    def component(self, j: int) -> ComponentModel:
        if j not in (1, 2):
            raise PreconditionError("component index must be 1 or 2")
        return self.comp1 if j == 1 else self.comp2

    def delta_divisor(self, j: int, n: int = 1) -> PlaceDivisor:
        return self.component(j).delta_divisor(n)


def _glue_tuple(glue, delta):
    out = tuple(to_qq(v) for v in glue)
    if len(out) != delta:
        raise PreconditionError(f"glue needs {delta} entries")
    if any(not v for v in out):
        raise PreconditionError("glue entries must be nonzero")
    return out


@dataclass(frozen=True)
class GluedSheaf:
    """``omega_1(side1)`` and ``omega_2(side2)`` glued by ``glue``."""

    side1: PlaceDivisor
    side2: PlaceDivisor
    glue: tuple

    def side(self, j: int) -> PlaceDivisor:
        return self.side1 if j == 1 else self.side2

    def degree(self, curve: NodalCurve) -> int:
        return sum(
            self.side(j).degree() + curve.component(j).canonical_divisor().degree() for j in (1, 2)
        )

    def to_json(self) -> dict:
        return {
            "side1": self.side1.to_json(),
            "side2": self.side2.to_json(),
            "glue": [fmt_qq(v) for v in self.glue],
        }


def make_glued(curve: NodalCurve, side1: PlaceDivisor, side2: PlaceDivisor, glue) -> GluedSheaf:
    if side1.model != curve.comp1 or side2.model != curve.comp2:
        raise PreconditionError("side divisors must live on the curve's components")
    return GluedSheaf(side1, side2, _glue_tuple(glue, curve.delta))


def omega_glue(delta: int) -> tuple:
    return tuple(-ONE for _ in range(delta))


def dualizing_sheaf(curve: NodalCurve) -> GluedSheaf:
    return GluedSheaf(curve.delta_divisor(1), curve.delta_divisor(2), omega_glue(curve.delta))


def reference_side(curve: NodalCurve, profile: GenusProfile, i: int, j: int) -> PlaceDivisor:
    """The twist of ``L_{i,j} = omega_j((1 +- ell_i) Delta)``."""
    return curve.delta_divisor(j, sheaf_twist(profile, i, j))


def L_pi(curve: NodalCurve, profile: GenusProfile, i: int, glue=None) -> GluedSheaf:
    """The glued sheaf with sides ``L_{i,1}, L_{i,2}``.

    For ``ell_i = 0`` both sides are ``omega_j(Delta)`` and only the dualizing
    glue yields the restriction of the relative dualizing sheaf, so ``glue``
    must be omitted or proportional to ``(-1, ..., -1)``.
    """
    _check_profile(curve, profile)
    if glue is None:
        glue = omega_glue(curve.delta)
    glue = _glue_tuple(glue, curve.delta)
    if profile.ell(i) == 0 and not same_class(glue, omega_glue(curve.delta)):
        raise PreconditionError("ell_i = 0 forces the dualizing glue")
    return GluedSheaf(reference_side(curve, profile, i, 1), reference_side(curve, profile, i, 2), glue)


def _check_profile(curve: NodalCurve, profile: GenusProfile) -> None:
    if curve.profile != profile:
        raise PreconditionError(f"curve has profile {curve.profile.as_tuple()}, not {profile.as_tuple()}")


def same_class(a, b) -> bool:
    """Equality of glue vectors modulo one global scalar."""
    if len(a) != len(b):
        return False
    ratio = to_qq(a[0]) / to_qq(b[0])
    return all(to_qq(x) == ratio * to_qq(y) for x, y in zip(a, b))


def node_value_matrix(space: SectionSpace):
    """Rows indexed by marked points, columns by ``space.basis``."""
    model, E = space.model, space.twist
    rows = []
    for pt in model.marked:
        k = E.mult(pt)
        rows.append([node_value(b, pt, k) for b in space.basis])
    return rows


@dataclass(frozen=True)
class GluedSections:
    """Global sections as coefficient pairs over the two side bases.

    ``pairs[k] = (a, b)`` means the section is ``space1.combination(a)`` on
    C1 and ``space2.combination(b)`` on C2.  ``rho1``/``rho2`` have one row
    per global section (the ``a`` resp. ``b`` vectors): their ranks are the
    ranks of the restriction maps.
    """

    dim: int
    pairs: tuple
    space1: SectionSpace
    space2: SectionSpace
    rho1: tuple
    rho2: tuple

    def rho(self, j: int):
        return self.rho1 if j == 1 else self.rho2

    def rho_rank(self, j: int) -> int:
        rows = [list(r) for r in self.rho(j)]
        return rank(rows) if rows else 0

    def rho_injective(self, j: int) -> bool:
        return self.rho_rank(j) == self.dim

    def rho_nonzero(self, j: int) -> bool:
        return self.rho_rank(j) > 0


def glued_h0(curve: NodalCurve, sheaf: GluedSheaf) -> GluedSections:
    s1 = rr_space(curve.comp1, sheaf.side1)
    s2 = rr_space(curve.comp2, sheaf.side2)
    n1 = node_value_matrix(s1)
    n2 = node_value_matrix(s2)
    rows = []
    for r in range(curve.delta):
        rows.append(list(n1[r]) + [-sheaf.glue[r] * v for v in n2[r]])
    ncols = s1.dim + s2.dim
    kernel = nullspace(rows, ncols) if ncols else []
    pairs = tuple((tuple(v[: s1.dim]), tuple(v[s1.dim :])) for v in kernel)
    return GluedSections(
        dim=len(kernel),
        pairs=pairs,
        space1=s1,
        space2=s2,
        rho1=tuple(a for a, _ in pairs),
        rho2=tuple(b for _, b in pairs),
    )


@dataclass(frozen=True)
class VpiSubspace:
    """``V_{pi,i}`` inside ``H^0(L_{i,i})``: ``rows`` are coordinates in ``space.basis``."""

    space: SectionSpace
    rows: tuple
    glue: tuple
    i: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    def elements(self):
        return [self.space.combination(r) for r in self.rows]


def vpi_subspace(curve: NodalCurve, profile: GenusProfile, i: int, glue=None) -> VpiSubspace:
    """Image of the restriction of ``H^0(L_{pi,i})`` to ``C_i``."""
    _check_profile(curve, profile)
    cond = check_h0_drop(curve.component(3 - i), i, profile)
    if not cond:
        raise GenericityError(f"h0-drop condition fails for i={i} at n={cond.witness}", cond.witness)
    sheaf = L_pi(curve, profile, i, glue)
    sections = glued_h0(curve, sheaf)
    if sections.dim != profile.g:
        raise AssertionError("h^0(L_{pi,i}) differs from g although the h0-drop condition holds")
    image = row_basis([list(r) for r in sections.rho(i)])
    if len(image) != profile.g:
        raise AssertionError("restriction to C_i is not injective although the h0-drop condition holds")
    space = sections.space1 if i == 1 else sections.space2
    return VpiSubspace(space, tuple(tuple(r) for r in image), sheaf.glue, i)


# --- smoothability ---------------------------------------------------------


def leading_coefficient(elem: FunctionElement, pt) -> object:
    """First nonzero coefficient of ``elem`` in ``t = x - a`` at ``pt``."""
    prec = 4
    while True:
        series = expand_local(elem, pt, prec)
        v = series.valuation()
        if v is not None:
            return series.coefficient(v)
        prec *= 2
        if prec > 4096:
            raise AssertionError("expansion vanished to excessive order")


@dataclass(frozen=True)
class SmoothableResult:
    holds: bool
    witnesses: tuple = ()
    corrected_glue: Optional[tuple] = None
    failing_side: Optional[int] = None
    lattice: Optional[LatticeSolution] = None

    def __bool__(self):
        return self.holds


def _side_witnesses(curve, profile, i, sheaf):
    """Principal witnesses ``phi_j`` with ``side_j = ref_j + div(phi_j)``."""
    out = []
    for j in (1, 2):
        model = curve.component(j)
        diff = sheaf.side(j) - reference_side(curve, profile, i, j)
        phi = principal_witness(model, diff)
        if phi is None:
            return j, out
        out.append(phi)
    return None, out


def corrected_glue(curve: NodalCurve, sheaf: GluedSheaf, witnesses) -> tuple:
    """The glue of ``sheaf`` transported to the reference trivializations.

    Multiplication by ``phi_j`` maps ``omega_j(side_j)`` onto the reference
    sheaf and scales the fiber value at ``P`` by the leading coefficient of
    ``phi_j`` at ``P``.
    """
    phi1, phi2 = witnesses
    out = []
    for r in range(curve.delta):
        c1 = leading_coefficient(phi1, curve.comp1.marked[r])
        c2 = leading_coefficient(phi2, curve.comp2.marked[r])
        out.append(sheaf.glue[r] * c1 / c2)
    return tuple(out)


def smoothable_single(curve: NodalCurve, profile: GenusProfile, i: int, sheaf: GluedSheaf) -> SmoothableResult:
    """Whether ``sheaf`` restricts to ``L_{i,j}`` on both components (any glue)."""
    _check_profile(curve, profile)
    if profile.ell(i) == 0:
        raise PreconditionError(f"ell_{i} = 0: the single-sheaf criterion needs ell_i != 0")
    failing, wit = _side_witnesses(curve, profile, i, sheaf)
    if failing is not None:
        return SmoothableResult(False, tuple(wit), None, failing)
    return SmoothableResult(True, tuple(wit), corrected_glue(curve, sheaf, wit))


def power_relation_lattice(profile: GenusProfile, c1, c2) -> ExponentLattice:
    """``c1_r^lam2 * c2_r^lam1 = w * (-1)^(lam1+lam2)`` for one unknown ``w``."""
    lam1, lam2 = profile.lam
    sign = -ONE if (lam1 + lam2) % 2 else ONE
    targets = [(a ** lam2) * (b ** lam1) * sign for a, b in zip(c1, c2)]
    return ExponentLattice.make([[1] for _ in targets], targets, 1)


def smoothable_pair(curve: NodalCurve, profile: GenusProfile, L1: GluedSheaf, L2: GluedSheaf) -> SmoothableResult:
    """Both single criteria plus ``L1^lam2 L2^lam1 = omega^(lam1+lam2)`` on gluing classes.

    With the reference trivializations the two sides of that relation carry
    equal twists and identical fiber generators, so it reduces to the glue
    identity encoded by :func:`power_relation_lattice`.
    """
    _check_profile(curve, profile)
    if profile.lam is None:
        raise PreconditionError("the pair criterion needs ell_1 * ell_2 != 0")
    r1 = smoothable_single(curve, profile, 1, L1)
    if not r1:
        return SmoothableResult(False, r1.witnesses, None, r1.failing_side)
    r2 = smoothable_single(curve, profile, 2, L2)
    if not r2:
        return SmoothableResult(False, r2.witnesses, None, r2.failing_side)
    sol = lattice_solve(power_relation_lattice(profile, r1.corrected_glue, r2.corrected_glue))
    return SmoothableResult(sol.solvable, r1.witnesses + r2.witnesses, (r1.corrected_glue, r2.corrected_glue), None, sol)


def compatible_glue_pair(profile: GenusProfile, q, s1=1, s2=1):
    """Glues ``(s1 * q^lam1, s2 * q^-lam2)`` for ``L_{pi,1}, L_{pi,2}``: these
    satisfy the power relation for every ``q``."""
    if profile.lam is None:
        raise PreconditionError("needs ell_1 * ell_2 != 0")
    lam1, lam2 = profile.lam
    q = [to_qq(v) for v in q]
    s1, s2 = to_qq(s1), to_qq(s2)
    return (
        tuple(s1 * v ** lam1 for v in q),
        tuple(s2 / v ** lam2 for v in q),
    )


def solve_partner_glue(profile: GenusProfile, glue1) -> LatticeSolution:
    """Solve ``glue2_r^lam1 = (-1)^(lam1+lam2) * glue1_r^-lam2`` for ``glue2``."""
    if profile.lam is None:
        raise PreconditionError("needs ell_1 * ell_2 != 0")
    lam1, lam2 = profile.lam
    sign = -ONE if (lam1 + lam2) % 2 else ONE
    n = len(glue1)
    A = [[lam1 if k == r else 0 for k in range(n)] for r in range(n)]
    c = [sign / to_qq(g) ** lam2 for g in glue1]
    return lattice_solve(ExponentLattice.make(A, c, n))


__all__ = [
    "NodalCurve", "GluedSheaf", "GluedSections", "VpiSubspace", "SmoothableResult", "make_glued",
    "omega_glue", "dualizing_sheaf", "reference_side", "L_pi", "same_class", "node_value_matrix",
    "glued_h0", "vpi_subspace", "leading_coefficient", "corrected_glue", "smoothable_single",
    "smoothable_pair", "power_relation_lattice", "compatible_glue_pair", "solve_partner_glue",
]
