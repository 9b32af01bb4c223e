"""Integer invariants of a two-component nodal curve.

Everything here is exact integer arithmetic on the triple ``(g1, g2, delta)``:
component genera and the number of nodes.  Indices ``i`` are 1 or 2 and
``3 - i`` is the other component throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd
from typing import Optional

from wplimits.errors import InvariantBreach, NotSemiStable, PreconditionError


def _check_index(i: int) -> None:
    if i not in (1, 2):
        raise PreconditionError(f"component index must be 1 or 2, got {i}")


@dataclass(frozen=True)
class GenusProfile:
    g1: int
    g2: int
    delta: int

    def __post_init__(self):
        if min(self.g1, self.g2) < 0:
            raise PreconditionError("component genera must be nonnegative")
        if self.delta < 1:
            raise PreconditionError("delta must be positive")
        if not (self.delta > 1 or self.g1 * self.g2 > 0):
            raise NotSemiStable(
                f"({self.g1},{self.g2},{self.delta}) is not semi-stable: "
                "need delta > 1 or g1*g2 > 0"
            )

    @property
    def g(self) -> int:
        return self.g1 + self.g2 + self.delta - 1

    def genus(self, i: int) -> int:
        _check_index(i)
        return self.g1 if i == 1 else self.g2

    def ell(self, i: int) -> int:
        """Ceiling of ``g_{3-i} / delta``."""
        other = self.genus(3 - i)
        return -(-other // self.delta)

    def m(self, i: int) -> int:
        return self.ell(i) * self.delta - self.genus(3 - i)

    @property
    def lam(self) -> Optional[tuple]:
        l1, l2 = self.ell(1), self.ell(2)
        if l1 * l2 == 0:
            return None
        c = gcd(l1, l2)
        return (l1 // c, l2 // c)

    def as_tuple(self) -> tuple:
        return (self.g1, self.g2, self.delta)


@dataclass(frozen=True)
class TwistData:
    ell: tuple
    m: tuple
    lam: Optional[tuple]


@dataclass(frozen=True)
class SheafDegreeTable:
    """``deg_L[i-1][j-1]`` is the degree of L_{i,j} on C_j; ``h0_L`` the
    expected section counts when the relevant genericity condition holds."""

    deg_L: tuple
    h0_L: tuple


def sheaf_twist(profile: GenusProfile, i: int, j: int) -> int:
    """Multiple of Delta twisting the dualizing sheaf of C_j in L_{i,j}."""
    _check_index(i)
    _check_index(j)
    sign = 1 if (i - j) % 2 == 0 else -1
    return 1 + sign * profile.ell(i)


def sheaf_degree(profile: GenusProfile, i: int, j: int) -> int:
    return 2 * profile.genus(j) - 2 + sheaf_twist(profile, i, j) * profile.delta


def expected_h0_L(profile: GenusProfile, i: int, j: int) -> int:
    if i == j:
        return profile.g + profile.m(i)
    ell = profile.ell(i)
    other = profile.genus(j)
    if ell >= 1:
        return other - (ell - 1) * profile.delta
    return other + profile.delta - 1


def compute_profile(g1: int, g2: int, delta: int):
    profile = GenusProfile(g1, g2, delta)
    twist = TwistData(
        ell=(profile.ell(1), profile.ell(2)),
        m=(profile.m(1), profile.m(2)),
        lam=profile.lam,
    )
    table = SheafDegreeTable(
        deg_L=tuple(tuple(sheaf_degree(profile, i, j) for j in (1, 2)) for i in (1, 2)),
        h0_L=tuple(tuple(expected_h0_L(profile, i, j) for j in (1, 2)) for i in (1, 2)),
    )
    return profile, twist, table


def expected_h0_twisted_dualizing(profile: GenusProfile, i: int, n: int) -> int:
    """Generic value of h^0(omega_{3-i}(-n Delta))."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    return max(profile.genus(3 - i) - n * profile.delta, 0)


def vpi_delta_coefficient(profile: GenusProfile) -> int:
    g = profile.g
    return g * (g - 1 - profile.ell(1) - profile.ell(2))


def complete_delta_coefficient(profile: GenusProfile) -> int:
    d = profile.delta
    if gcd(profile.g1, profile.g2) % d:
        raise PreconditionError(f"delta={d} does not divide gcd(g1, g2)")
    g = profile.g
    num = g * (g + 1)
    if num % d:
        raise AssertionError("delta must divide g(g+1) here")
    return g * g - num // d


def wnu_delta_coefficient(profile: GenusProfile) -> int:
    return profile.g * (profile.delta - 2)


def plucker_ram_degree(dim_V: int, deg_L: int, genus: int) -> int:
    """Degree of the ramification divisor of a ``dim_V``-dimensional system."""
    if dim_V < 1:
        raise PreconditionError("a linear system needs dimension >= 1")
    return dim_V * deg_L + dim_V * (dim_V - 1) * (genus - 1)


def big_system_twist(profile: GenusProfile, i: int) -> int:
    """The twist ``1 + g_{3-i}`` of the ambient system on C_i."""
    return 1 + profile.genus(3 - i)


def limit_degree_parts(profile: GenusProfile) -> tuple:
    """Ramification degrees of both component systems and the node term."""
    g = profile.g
    parts = []
    for i in (1, 2):
        deg = 2 * profile.genus(i) - 2 + big_system_twist(profile, i) * profile.delta
        parts.append(plucker_ram_degree(g, deg, profile.genus(i)))
    parts.append(wnu_delta_coefficient(profile) * profile.delta)
    return tuple(parts)


def total_limit_degree(profile: GenusProfile) -> int:
    g = profile.g
    total = g ** 3 - g
    if sum(limit_degree_parts(profile)) != total:
        raise InvariantBreach("ramification degrees do not add up to g^3 - g")
    return total


def component_count_delta2(profile: GenusProfile) -> int:
    if profile.delta != 2:
        raise PreconditionError("the component count formula needs delta = 2")
    return profile.g - gcd(profile.g1 + 1, profile.g2 + 1)


def is_V_irreducible(profile: GenusProfile) -> bool:
    return profile.g1 == 1 and profile.g2 == 1


def binom2(n: int) -> int:
    return comb(n, 2)
