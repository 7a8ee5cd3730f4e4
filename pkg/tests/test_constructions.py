from fractions import Fraction

import pytest

from fsc.codec import encode_std, std_length
from fsc.constructions import (
    COIN_ROUTES,
    COIN_STATES,
    DEFAULT_COINS,
    coin_program,
    coin_table,
    coin_transducer,
    mean_coin_count,
    min_coin_decomposition,
    theorem2_m,
    theorem2_sigma_bound,
    theorem2_transducer,
    theorem2_u,
    theorem2_x,
    verify_example1,
    verify_theorem2_bounds,
    w_string,
)
from fsc.core import evaluate

from oracles import coin_count_bfs


@pytest.mark.parametrize("m, w", [(1, "101"), (2, "101001")])
def test_w_string(m, w):
    assert w_string(m) == w


def test_w_string_length():
    assert len(w_string(99)) == 5050
    assert all(len(w_string(m)) == m * (m + 1) // 2 + m + 1 for m in range(1, 30))
    with pytest.raises(ValueError):
        w_string(0)


def test_coin_transducer_shape():
    t = coin_transducer()
    assert t.n == 12
    assert len(encode_std(t)) == 352
    assert evaluate(t, "1") == "1"
    assert evaluate(t, "101001") == "10"


def test_coin_routes_are_silent():
    t = coin_transducer()
    for coin, route in COIN_ROUTES.items():
        out, state = t.run(route)
        assert out == ""
        assert state == COIN_STATES[coin]
        assert evaluate(t, route + "0") == "0" * coin


def test_decomposition_examples():
    assert min_coin_decomposition(0) == ()
    assert min_coin_decomposition(36) == (18, 18)


def test_decompositions_against_bfs():
    table = coin_table(200)
    for i, combo in enumerate(table):
        assert sum(combo) == i
        assert len(combo) == coin_count_bfs(i, DEFAULT_COINS)


def test_mean_coin_count():
    assert mean_coin_count(99) == Fraction(318, 100)


def test_coin_program_first():
    assert coin_program(1) == "1" + COIN_ROUTES[1] + "0" + "1" + "1"


def test_coin_program_all_m():
    t = coin_transducer()
    for m in range(1, 100):
        assert evaluate(t, coin_program(m)) == w_string(m)
    assert len(coin_program(99)) <= 2008


def test_coin_program_range():
    with pytest.raises(ValueError):
        coin_program(100)


def test_u_strings():
    assert [theorem2_u(i, 1) for i in (1, 2, 3)] == ["10111", "10011", "10001"]
    with pytest.raises(ValueError):
        theorem2_u(4, 1)
    assert theorem2_x(1, 1) == "101111001110001"
    assert len(theorem2_x(1, 71)) == 3 * 71**2 * 5 == 75615


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ladder_programs(n):
    for m in (1, 2, theorem2_m(n)):
        t, p1 = theorem2_transducer(n, m)
        assert t.n == 2 * n
        assert len(p1) == (2 * n + 1) * m + 2 * n - 1
        assert evaluate(t, p1) == theorem2_x(n, m)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sigma_bound_needs_m_at_least_4n(n):
    # the closed form leaves out 2 bits per transition, which 2m absorbs once m >= 4n
    for m in range(4 * n, 300):
        assert std_length(theorem2_transducer(n, m)[0]) <= theorem2_sigma_bound(n, m)
    assert std_length(theorem2_transducer(n, 1)[0]) > theorem2_sigma_bound(n, 1)


def test_ladder_small_case():
    t, p1 = theorem2_transducer(1, 1)
    assert p1 == "0101"
    assert evaluate(t, "0101") == theorem2_x(1, 1)


def test_theorem2_n1_numbers():
    h = verify_theorem2_bounds(1)
    assert (h.m, h.p1_len, h.bound_rhs) == (71, 214, 2276)
    assert h.mm_half == Fraction(5041, 2)
    assert h.passed


def test_theorem2_n2():
    h = verify_theorem2_bounds(2)
    assert h.m == 155
    assert h.sigma_ok and h.total_ok
    assert h.k_n >= 1


def test_theorem2_budget():
    with pytest.raises(ValueError):
        verify_theorem2_bounds(4)


def test_example1_report():
    assert all(ok for _, ok, _ in verify_example1().checks())
