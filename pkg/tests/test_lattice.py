import numpy as np
import sympy
from hypothesis import given
from hypothesis import strategies as st

from wplimits.lattice import (
    ExponentLattice,
    Radical,
    integer_kernel,
    integer_rank,
    lattice_solve,
    smith_normal_form,
)

entries = st.integers(-2, 2)


def int_matrices(max_rows=3, max_cols=2):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m)
        )
    )


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@given(int_matrices(4, 4))
def test_smith_form_identity(A):
    S, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [S[k][k] for k in range(min(len(A), len(A[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert integer_rank(A) == sympy.Matrix(A).rank()


@given(int_matrices(3, 4))
def test_integer_kernel(A):
    n = len(A[0])
    ker = integer_kernel(A, n)
    assert len(ker) == n - sympy.Matrix(A).rank()
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_square_root_of_four():
    sol = lattice_solve(ExponentLattice.make([[2]], [4]))
    assert sol and sol.witness[0] in (Radical.rational(2), Radical.rational(-2))


def test_irrational_and_complex_witnesses():
    sol = lattice_solve(ExponentLattice.make([[2]], [2]))
    assert sol and sol.witness[0] == Radical.make(1, 2, 2)
    sol = lattice_solve(ExponentLattice.make([[2]], [-1]))
    assert sol and sol.witness is None


def test_zero_row_needs_unit_target():
    assert not lattice_solve(ExponentLattice.make([[0]], [3]))
    assert lattice_solve(ExponentLattice.make([[0]], [1]))
    # t^2 = 4 and t^2 = 9 together are inconsistent
    assert not lattice_solve(ExponentLattice.make([[2], [2]], [4, 9]))


def test_radical_arithmetic():
    r = Radical.make(1, 8, 6)
    assert r == Radical.make(1, 2, 2)
    assert (r ** 2).is_rational() and (r ** 2).value() == 2
    assert (Radical.make(-1, 3, 1) ** 2).value() == 9


N = 1680  # every denominator 2*d with d <= 8 divides N
_GRIDS = {n: np.stack(np.meshgrid(*[np.arange(N)] * n, indexing="ij"), -1).reshape(-1, n) for n in (1, 2)}


def brute_solvable(A, alpha, beta, sign):
    """Solvability of prod t_j^A[r][j] = (-1)^sign_r 2^alpha_r 3^beta_r over nonzero complex t."""
    M = sympy.Matrix(A)
    r = M.rank()
    if M.row_join(sympy.Matrix(alpha)).rank() != r or M.row_join(sympy.Matrix(beta)).rank() != r:
        return False
    # arguments: t_j = exp(2 pi i k_j / N) up to modulus; need A k = N sign / 2 mod N
    vals = (_GRIDS[len(A[0])] @ np.array(A, dtype=np.int64).T) % N
    want = (np.array(sign) * (N // 2)) % N
    return bool(np.any(np.all(vals == want, axis=1)))


@given(
    st.integers(1, 2).flatmap(
        lambda n: st.integers(1, 3).flatmap(
            lambda m: st.tuples(
                st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m),
                st.lists(st.integers(-3, 3), min_size=m, max_size=m),
                st.lists(st.integers(-2, 2), min_size=m, max_size=m),
                st.lists(st.integers(0, 1), min_size=m, max_size=m),
            )
        )
    )
)
def test_solvability_matches_brute_force(data):
    A, alpha, beta, sign = data
    c = [sympy.Rational(-1 if s else 1) * sympy.Rational(2) ** a * sympy.Rational(3) ** b
         for a, b, s in zip(alpha, beta, sign)]
    lat = ExponentLattice.make(A, [f"{v.p}/{v.q}" for v in c], len(A[0]))
    sol = lattice_solve(lat)
    assert sol.solvable == brute_solvable(A, alpha, beta, sign)
    if sol.witness is not None:
        assert lat.evaluate(sol.witness) == [Radical.rational(v) for v in lat.c]
