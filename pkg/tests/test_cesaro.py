"""Streaming iterated averages against exact and coefficient-form oracles."""
import math
import random

import numpy as np
import pytest

from simplexflow import (
    CesaroState,
    ConstantSpeed,
    Parameters,
    cesaro_coefficients,
    cesaro_push,
    iterate,
    make_point,
    tail_mass,
    vertex_point,
)
from simplexflow.analysis import cesaro_coefficient_rows
from simplexflow.errors import OrderOverflow, SizeLimit

from oracles import rational_cesaro_means, rational_cesaro_rows, sample_interior


def test_constant_input_all_orders_constant():
    params = Parameters(0.5, 0.5, 0.5)
    x = params.fixed_point
    state = CesaroState(4)
    for _ in range(50):
        cesaro_push(state, x)
    for k in range(5):
        assert max(abs(v - e) for v, e in zip(state.value(k), x.coords)) <= 1e-15


def test_two_vertex_average():
    state = CesaroState(1)
    cesaro_push(state, vertex_point(1))
    cesaro_push(state, vertex_point(2))
    assert state.value(0) == (0.0, 1.0, 0.0)
    assert state.value(1) == (0.5, 0.5, 0.0)


def test_streaming_matches_exact_repeated_averaging():
    rng = random.Random(109)
    points = [sample_interior(rng) for _ in range(200)]
    state = CesaroState(3)
    for p in points:
        state.push(p)
    exact = rational_cesaro_means(points, 3)
    for k in range(4):
        for v, e in zip(state.value(k), exact[k]):
            assert abs(v - float(e)) <= 1e-13


def test_streaming_matches_coefficient_reconstruction():
    # independent route: dot the coefficient rows with the stored orbit
    traj = iterate(make_point(0.5, 0.3, 0.2), Parameters(1, 1, 1), ConstantSpeed(0.9), 300)
    state = CesaroState(3)
    for row in traj.coords:
        state.push(row)
    n = len(traj) - 1
    rows = cesaro_coefficient_rows(3, n)
    for k in range(4):
        recon = rows[k] @ traj.coords
        assert max(abs(u - v) for u, v in zip(state.value(k), recon)) <= 1e-12


def test_order_zero_row_is_indicator():
    row = cesaro_coefficients(0, 7)
    assert list(row) == [0, 0, 0, 0, 0, 0, 0, 1]


def test_order_one_row_is_uniform():
    for n in (0, 1, 5, 40):
        row = cesaro_coefficients(1, n)
        assert np.allclose(row, 1.0 / (n + 1), rtol=0, atol=1e-16)


def test_order_two_row_n2():
    row = cesaro_coefficients(2, 2)
    expect = (11 / 18, 5 / 18, 2 / 18)
    assert max(abs(u - v) for u, v in zip(row, expect)) <= 1e-15


def test_rows_match_exact_recursion():
    exact = rational_cesaro_rows(3, 25)
    got = cesaro_coefficient_rows(3, 25)
    for k in range(4):
        for u, v in zip(got[k], exact[k]):
            assert abs(u - float(v)) <= 1e-14


def test_rows_nonnegative_and_sum_to_one():
    rows = cesaro_coefficient_rows(3, 1000)
    for row in rows:
        assert np.all(row >= 0.0)
        assert abs(math.fsum(row) - 1.0) <= 1e-12


def test_tail_mass_order_zero_is_one():
    for eps in (0.01, 0.5, 1.0):
        assert tail_mass(0, 50, eps) == 1.0


def test_tail_mass_order_one_formula():
    for n in (10, 100, 999):
        for eps in (0.05, 0.1, 0.5):
            expect = 1.0 - math.floor(eps * n) / (n + 1)
            assert abs(tail_mass(1, n, eps) - expect) <= 1e-12


def test_tail_mass_order_two_settles_at_fixed_eps():
    # at fixed eps the tail mass falls toward 1 - eps + eps*log(eps); the
    # approach to 1 happens only as eps then shrinks
    eps = 0.1
    limit = 1.0 - eps + eps * math.log(eps)
    vals = [tail_mass(2, n, eps) for n in (100, 1000, 4000)]
    assert vals[0] >= vals[1] >= vals[2] >= limit
    assert vals[2] - limit < 5e-4


def test_tail_mass_approaches_one_as_eps_shrinks():
    vals = [tail_mass(2, 2000, eps) for eps in (0.5, 0.2, 0.1, 0.01, 0.001)]
    assert all(u < v for u, v in zip(vals, vals[1:]))
    assert vals[-1] > 0.99


def test_order_overflow():
    with pytest.raises(OrderOverflow):
        CesaroState(100)
    state = CesaroState(2)
    state.push((0.5, 0.3, 0.2))
    with pytest.raises(OrderOverflow):
        state.value(3)


def test_coefficient_size_limit():
    with pytest.raises(SizeLimit):
        cesaro_coefficients(2, 200_000)
    with pytest.raises(SizeLimit):
        cesaro_coefficients(9, 10)


def test_push_before_value():
    state = CesaroState(1)
    with pytest.raises(ValueError):
        state.value(0)
