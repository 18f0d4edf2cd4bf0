import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paragrass.qnum import QContext, q_exp_scalar, q_factorial, q_int


def test_context_defaults():
    ctx = QContext(4)
    assert ctx.m == 1 and ctx.alpha == 1.0 and ctx.tol == 1e-10
    assert abs(abs(ctx.q) - 1) < ctx.tol
    assert abs(ctx.q ** (2 * ctx.k) - 1) < ctx.tol


@pytest.mark.parametrize("kwargs", [dict(k=1), dict(k=3, m=0), dict(k=3, alpha=0.0), dict(k=3, tol=0.0),
                                    dict(k=2.5), dict(k=3, alpha=1j)])
def test_context_rejects(kwargs):
    with pytest.raises(ValueError):
        QContext(**kwargs)


@pytest.mark.parametrize("k, n, expected", [
    (3, 0, 0.0),
    (3, 2, 1.0),
    (4, 2, math.sin(math.pi / 2) / math.sin(math.pi / 4)),
    (5, 5, 0.0),
])
def test_q_int_examples(k, n, expected):
    assert q_int(QContext(k), n) == pytest.approx(expected, abs=1e-12)


def test_q_int_zero_branch_is_exact():
    for k in range(2, 12):
        ctx = QContext(k)
        assert q_int(ctx, 0) == 0.0
        assert q_int(ctx, k) == 0.0
        assert q_int(ctx, 2 * k) == 0.0


def test_q_int_matches_complex_definition():
    for k in range(2, 9):
        ctx = QContext(k)
        q = ctx.q
        for n in range(0, 2 * k):
            direct = (q ** n - q ** -n) / (q - 1 / q)
            assert abs(direct.imag) < 1e-12
            assert q_int(ctx, n) == pytest.approx(direct.real, abs=1e-12)


def test_q_int_negative():
    with pytest.raises(ValueError):
        q_int(QContext(3), -1)


@pytest.mark.parametrize("k, n, expected", [(3, 0, 1.0), (3, 2, 1.0), (4, 2, math.sqrt(2))])
def test_q_factorial_examples(k, n, expected):
    assert q_factorial(QContext(k), n) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [-1, 3, 7])
def test_q_factorial_out_of_range(n):
    with pytest.raises(ValueError):
        q_factorial(QContext(3), n)


@pytest.mark.parametrize("k, x, expected", [(2, 0, 1), (5, 0, 1), (2, 1, 2), (3, 1, 3)])
def test_q_exp_examples(k, x, expected):
    assert q_exp_scalar(QContext(k), x) == pytest.approx(expected, abs=1e-12)


@given(st.integers(2, 40))
def test_recurrence(k):
    ctx = QContext(k)
    q = ctx.q
    for n in range(k):
        assert abs(q_int(ctx, n + 1) - (q * q_int(ctx, n) + q ** -n)) < ctx.tol


@given(st.integers(2, 40))
def test_symmetry(k):
    ctx = QContext(k)
    for n in range(k + 1):
        assert q_int(ctx, n) == pytest.approx(q_int(ctx, k - n), abs=ctx.tol)


@given(st.integers(2, 30))
def test_factorial_reflection(k):
    ctx = QContext(k)
    top = q_factorial(ctx, k - 1)
    for n in range(k):
        assert q_factorial(ctx, n) * q_factorial(ctx, k - 1 - n) == pytest.approx(top, rel=1e-10)


def test_classical_limit():
    ctx = QContext(10 ** 6)
    values = [q_int(ctx, n) for n in range(6)]
    for n, v in enumerate(values):
        assert abs(v - n) < 1e-4
    coarse = [q_int(QContext(k), 5) for k in (10, 100, 1000, 10 ** 6)]
    assert all(a < b for a, b in zip(coarse, coarse[1:]))
