import random
from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from catent.category import chain, coproduct_category, discrete, product_category
from catent.errors import NotSquare, ShapeMismatch, SizeLimit
from catent.linalg import (
    RationalMatrix,
    category_magnitude,
    has_nonnegative_weighting,
    magnitude,
    mobius_inverse,
    solve,
    solve_coweighting,
    solve_weighting,
)

from strategies import POSETS

F = Fraction


def vec(*xs):
    return tuple(F(x) for x in xs)


small_entries = st.integers(-2, 3)


@st.composite
def square_matrices(draw, max_size=4, entries=small_entries):
    n = draw(st.integers(1, max_size))
    return RationalMatrix.from_rows(
        [[draw(entries) for _ in range(n)] for _ in range(n)]
    )


def brute_force_nonnegative(M):
    """Vertex enumeration with sympy: try every column support.

    ``{w : M w = 1, w >= 0}`` is pointed, so it is nonempty iff it has a
    vertex, i.e. iff some set of linearly independent columns solves the
    system with nonnegative coefficients.
    """
    n = M.rows
    A = sympy.Matrix(M.tolist())
    ones = sympy.ones(n, 1)
    for k in range(1, n + 1):
        for support in combinations(range(n), k):
            sub = A[:, list(support)]
            if sub.rank() < k:
                continue
            try:
                sol, params = sub.gauss_jordan_solve(ones)
            except ValueError:
                continue
            if params.shape[0]:
                continue
            if all(x >= 0 for x in sol):
                return True
    return False


class TestRationalMatrix:
    def test_shape_checked(self):
        with pytest.raises(ShapeMismatch):
            RationalMatrix(2, 2, (F(1),))
        with pytest.raises(ShapeMismatch):
            RationalMatrix.from_rows([[1, 2], [3]])

    def test_products(self):
        M = RationalMatrix.from_rows([[1, 2], [3, 4]])
        assert (M @ RationalMatrix.identity(2)) == M
        assert M @ [1, 1] == vec(3, 7)
        assert M.T.tolist() == [[1, 3], [2, 4]]
        assert M.kron(RationalMatrix.identity(1)) == M
        assert M.submatrix([1]).tolist() == [[4]]

    def test_direct_sum(self):
        M = RationalMatrix.from_rows([[1]]).direct_sum(RationalMatrix.from_rows([[2, 3], [4, 5]]))
        assert M.tolist() == [[1, 0, 0], [0, 2, 3], [0, 4, 5]]


class TestWeighting:
    def test_identity(self):
        assert solve_weighting(RationalMatrix.identity(3)) == vec(1, 1, 1)

    def test_chain(self):
        assert solve_weighting([[1, 1], [0, 1]]) == vec(0, 1)

    def test_negative(self):
        assert solve_weighting([[1, 2], [0, 1]]) == vec(-1, 1)

    def test_inconsistent(self):
        assert solve_weighting([[1, 1], [2, 2]]) is None

    def test_not_square(self):
        with pytest.raises(NotSquare):
            solve_weighting([[1, 2]])
        with pytest.raises(NotSquare):
            magnitude([[1, 2]])

    def test_coweighting(self):
        assert solve_coweighting(RationalMatrix.identity(3)) == vec(1, 1, 1)
        assert solve_coweighting([[1, 1], [0, 1]]) == vec(1, 0)

    def test_free_variables_zero(self):
        assert solve([[1, 1], [1, 1]], [1, 1]) == vec(1, 0)


@given(square_matrices())
def test_weighting_solves_exactly(M):
    w = solve_weighting(M)
    if w is not None:
        assert M @ w == (F(1),) * M.rows
    else:
        # oracle: inconsistency means rank of [M | 1] exceeds rank of M
        A = sympy.Matrix(M.tolist())
        assert A.row_join(sympy.ones(M.rows, 1)).rank() > A.rank()
    cw = solve_coweighting(M)
    if cw is not None:
        assert M.T @ cw == (F(1),) * M.rows


@given(square_matrices())
def test_symmetric_coweighting_is_weighting(M):
    S = RationalMatrix.from_rows([[M[i, j] + M[j, i] for j in range(M.cols)] for i in range(M.rows)])
    assert solve_weighting(S) == solve_coweighting(S)


class TestMagnitude:
    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_identity(self, n):
        assert magnitude(RationalMatrix.identity(n)).magnitude == n

    def test_empty(self):
        result = magnitude(RationalMatrix(0, 0, ()))
        assert result.magnitude == 0 and result.weighting == ()

    def test_chain(self):
        r = magnitude([[1, 1], [0, 1]])
        assert r.magnitude == 1 and r.weighting == vec(0, 1) and r.coweighting == vec(1, 0)

    def test_indiscrete(self):
        r = magnitude([[1, 1], [1, 1]])
        assert r.magnitude == 1
        assert r.weighting == vec(1, 0)

    def test_zero_magnitude(self):
        assert magnitude([[1, 2], [0, 1]]).magnitude == 0

    def test_no_magnitude(self):
        # weighting exists (w = (1, 0)) but no coweighting: column 2 is zero
        r = magnitude([[1, 0], [1, 0]])
        assert r.weighting is not None and r.coweighting is None
        assert r.magnitude is None


@given(square_matrices())
def test_weighting_and_coweighting_sums_agree(M):
    r = magnitude(M)
    if r.weighting is not None and r.coweighting is not None:
        assert sum(r.weighting) == sum(r.coweighting) == r.magnitude
    else:
        assert r.magnitude is None


@settings(max_examples=50)
@given(square_matrices(max_size=3), square_matrices(max_size=3))
def test_magnitude_additive_and_multiplicative(M, N):
    a, b = magnitude(M).magnitude, magnitude(N).magnitude
    if a is None or b is None:
        return
    assert magnitude(M.direct_sum(N)).magnitude == a + b
    assert magnitude(M.kron(N)).magnitude == a * b


class TestNonnegative:
    def test_identity(self):
        assert has_nonnegative_weighting(RationalMatrix.identity(3)) == (True, vec(1, 1, 1))

    def test_infeasible(self):
        assert has_nonnegative_weighting([[1, 2], [0, 1]]) == (False, None)

    def test_indiscrete(self):
        ok, w = has_nonnegative_weighting([[1, 1], [1, 1]])
        assert ok and all(x >= 0 for x in w) and sum(w) == 1

    def test_size_limit(self, monkeypatch):
        with pytest.raises(SizeLimit):
            has_nonnegative_weighting(RationalMatrix.identity(13))
        monkeypatch.setenv("CATENT_SIZE_LIMIT", "20")
        assert has_nonnegative_weighting(RationalMatrix.identity(13))[0]


def _corpus_matrices():
    rng = random.Random(7)
    out = []
    for n in range(1, 5):
        for _ in range(60):
            out.append(RationalMatrix.from_rows(
                [[rng.choice([-1, 0, 0, 1, 1, 2, F(1, 2)]) for _ in range(n)] for _ in range(n)]
            ))
    # every 0/1 matrix of size <= 2
    for n in (1, 2):
        for bits in product([0, 1], repeat=n * n):
            out.append(RationalMatrix.from_rows([bits[i * n:(i + 1) * n] for i in range(n)]))
    return out


def test_nonnegative_matches_vertex_enumeration():
    disagreements = []
    for M in _corpus_matrices():
        ok, w = has_nonnegative_weighting(M)
        if ok:
            assert M @ w == (F(1),) * M.rows and min(w) >= 0
        if ok != brute_force_nonnegative(M):
            disagreements.append(M.tolist())
    assert disagreements == []


class TestMobius:
    def test_chain(self):
        assert mobius_inverse([[1, 1], [0, 1]]).tolist() == [[1, -1], [0, 1]]

    def test_identity(self):
        assert mobius_inverse(RationalMatrix.identity(3)) == RationalMatrix.identity(3)

    def test_singular(self):
        assert mobius_inverse([[1, 1], [1, 1]]) is None

    def test_chain3_is_poset_mobius(self):
        # mu(x, y) = 1 if x = y, -1 if y covers x, 0 otherwise
        assert mobius_inverse(chain(3).zeta).tolist() == [[1, -1, 0], [0, 1, -1], [0, 0, 1]]


@given(square_matrices())
def test_mobius_is_inverse(M):
    inv = mobius_inverse(M)
    A = sympy.Matrix(M.tolist())
    if inv is None:
        assert A.det() == 0
    else:
        assert inv @ M == RationalMatrix.identity(M.rows)
        assert inv.tolist() == [[F(int(x.p), int(x.q)) for x in row] for row in A.inv().tolist()]


class TestCategoryMagnitude:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_discrete(self, n):
        assert category_magnitude(discrete(n)).magnitude == n

    def test_chain(self):
        r = category_magnitude(chain(2))
        assert r.magnitude == 1 and r.weighting == vec(0, 1)

    @pytest.mark.parametrize("a", sorted(POSETS))
    @pytest.mark.parametrize("b", sorted(POSETS))
    def test_product_and_coproduct(self, a, b):
        A, B = POSETS[a], POSETS[b]
        ma, mb = category_magnitude(A).magnitude, category_magnitude(B).magnitude
        assert category_magnitude(product_category(A, B)).magnitude == ma * mb
        assert category_magnitude(coproduct_category(A, B)).magnitude == ma + mb
