import math
import random

import pytest

from lrank.errors import DomainError
from lrank.numerics import (dangerous_ratio, eq1_holds, eq2_holds, eq3_holds, gamma, heavy_ratio,
                            iter_log, log_power, solve_k, tower)


def test_iter_log_examples():
    assert iter_log(0, 7.5) == 7.5
    assert iter_log(2, math.exp(math.e)) == pytest.approx(1, abs=1e-12)
    assert iter_log(1, math.e) == pytest.approx(1, abs=1e-15)


def test_iter_log_domain():
    with pytest.raises(DomainError):
        iter_log(2, 1.0)  # needs x > e
    with pytest.raises(DomainError):
        iter_log(1, 0.0)


def test_tower_examples():
    assert tower(0) == 1
    assert tower(1) == pytest.approx(math.e)
    assert tower(2) == pytest.approx(15.1543, abs=1e-4)
    for i in range(1, 4):
        assert iter_log(i, tower(i)) == pytest.approx(1, abs=1e-12)
    with pytest.raises(DomainError):
        tower(5)


def test_gamma_examples():
    assert gamma(0, 4, 1) == pytest.approx(4, rel=1e-9)
    assert gamma(0, 4, 256 / 27) == pytest.approx(3, rel=1e-9)
    assert gamma(0, 4, 256) == pytest.approx(1, rel=1e-9)


@pytest.mark.parametrize("i,k", [(0, 4.0), (0, 9.5), (1, 5.0), (1, 30.0), (2, 20.0), (2, 60.0)])
def test_gamma_solves_its_equation(i, k):
    top = log_power(i, k)
    lo_end = log_power(i, tower(i)) if i else 0.0
    for frac in (0.0, 0.1, 0.5, 0.9, 1.0):
        log_n = frac * (top - lo_end)
        x = gamma(i, k, math.exp(log_n))
        assert tower(i) - 1e-9 <= x <= k + 1e-9
        assert top - log_power(i, x) == pytest.approx(log_n, rel=1e-9, abs=1e-9)


def test_gamma_monotone_in_n():
    prev = math.inf
    for n in [1, 2, 5, 10, 100, 1000, 10 ** 4]:
        x = gamma(1, 20.0, n)
        assert x <= prev + 1e-12
        prev = x


def test_gamma_domain():
    with pytest.raises(DomainError):
        gamma(0, 4, 0.5)
    with pytest.raises(DomainError):
        gamma(0, 4, 300)
    with pytest.raises(DomainError):
        gamma(2, 2.0, 1)


def test_solve_k_examples():
    assert solve_k(2, 256).k == 4
    assert solve_k(2, 1).k == 1


def test_solve_k_t3_against_scan():
    sol = solve_k(3, 27)
    assert abs(sol.residual) <= 1e-9
    # dense scan oracle: the least grid point satisfying the inequality lies just above k
    grid = [tower(1) + j * 1e-4 for j in range(200000)]
    first = next(x for x in grid if x * math.log(math.log(x)) >= math.log(27))
    assert first - 1e-4 <= sol.k <= first


def test_solve_k_closed_form_reported():
    sol = solve_k(3, 1e6)
    assert sol.closed_form == pytest.approx(2 * math.log(1e6) / iter_log(3, 1e6))


def test_eq1_to_eq3_on_grid():
    rng = random.Random(0)
    for _ in range(1000):
        x = math.exp(rng.uniform(-5, 12))
        a = math.exp(rng.uniform(-5, 12))
        assert eq1_holds(x, a)
    for i in (1, 2, 3):
        lo = tower(i - 1)
        for _ in range(1000):
            x = lo + math.exp(rng.uniform(-6, 10))
            a = math.exp(rng.uniform(-6, 10))
            assert eq2_holds(i, x, a)
            assert eq3_holds(i, x, a)


@pytest.mark.parametrize("t", [2, 3])
def test_appendix_ratio_trends(t):
    # heavy ratio is O(c^4), dangerous ratio O(c): one constant K, fitted at the
    # smallest sampled c, bounds the whole range up to 10^3
    cs = [tower(t - 1) + 0.5 + (1000 - tower(t - 1)) * j / 200 for j in range(201)]
    heavy = [heavy_ratio(t, c) / c ** 4 for c in cs]
    danger = [dangerous_ratio(t, c) / c for c in cs]
    assert max(heavy) <= heavy[0] * (1 + 1e-9)
    assert max(danger) <= danger[0] * (1 + 1e-9)
