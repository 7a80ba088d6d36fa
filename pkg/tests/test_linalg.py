import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpca.linalg import BitMatrix, InconsistentSystemError, rank, solve_linear


def test_identity():
    r = [1, 0, 1, 1, 0]
    assert solve_linear(BitMatrix.identity(5), r) == r


def test_zero_matrix_inconsistent():
    m = BitMatrix.from_lists([[0, 0], [0, 0]])
    with pytest.raises(InconsistentSystemError):
        solve_linear(m, [1, 0])


def test_rank_deficient_is_not_an_error():
    m = BitMatrix.from_lists([[1, 1, 0], [1, 1, 0]])
    x = solve_linear(m, [1, 1])
    assert m.apply(x) == [1, 1]
    # free variables default to 0
    assert x == [1, 0, 0]


def test_rhs_length_checked():
    with pytest.raises(ValueError):
        solve_linear(BitMatrix.identity(3), [1, 0])


@st.composite
def systems(draw):
    rows = draw(st.integers(1, 12))
    cols = draw(st.integers(1, 12))
    m = draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    rhs = draw(st.lists(st.integers(0, 1), min_size=rows, max_size=rows))
    return BitMatrix.from_lists(m), rhs


@given(systems())
def test_solution_reproduces_rhs(sys_):
    m, rhs = sys_
    try:
        x = solve_linear(m, rhs)
    except InconsistentSystemError:
        # inconsistent exactly when appending rhs raises the rank
        aug = BitMatrix(tuple(r | (b << m.ncols) for r, b in zip(m.rows, rhs)), m.ncols + 1)
        assert rank(aug) == rank(m) + 1
    else:
        assert m.apply(x) == rhs


def test_random_square_systems_against_bruteforce():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        rhs = [rng.randint(0, 1) for _ in range(n)]
        solutions = [
            [(v >> j) & 1 for j in range(n)] for v in range(1 << n) if m.apply([(v >> j) & 1 for j in range(n)]) == rhs
        ]
        if solutions:
            assert solve_linear(m, rhs) in solutions
        else:
            with pytest.raises(InconsistentSystemError):
                solve_linear(m, rhs)
