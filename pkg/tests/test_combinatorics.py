from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hardylab.combinatorics import (
    Scenario,
    binom,
    coefficient_f,
    coefficient_f_closed_qq,
    valid_pairs,
    weighted_average_bound,
)
from hardylab.errors import ScenarioError


def brute_f(n, a, b, x=1, y=1):
    values = []
    for m in range(n + 1):
        first = 1
        for k in range(a):
            first = first * (m - k) // (k + 1) if m >= a else 0
        second = 1
        for k in range(b):
            second = second * (n - m - k) // (k + 1) if n - m >= b else 0
        values.append(x * first + y * second)
    low = min(values)
    return low, values.index(low)


@pytest.mark.parametrize("m,k,expected", [(4, 2, 6), (3, 5, 0), (10, 5, 252), (0, 0, 1)])
def test_binom_values(m, k, expected):
    assert binom(m, k) == expected


def test_binom_is_exact_for_large_arguments():
    # Far beyond 64 bits; must not wrap.
    assert binom(200, 100) == 90548514656103281165404177077484163874504589675413336841320
    with pytest.raises(ValueError):
        binom(-1, 2)


@pytest.mark.parametrize("args,expected,argmin", [
    ((3, 3, 1), 1, 2),
    ((3, 2, 2), 1, 1),
    ((5, 2, 2), 4, 2),
    ((7, 2, 2), 9, 3),
])
def test_coefficient_f_examples(args, expected, argmin):
    result = coefficient_f(Scenario(*args))
    assert result.value == expected
    assert result.argmin == argmin
    assert brute_f(*args) == (expected, argmin)


@pytest.mark.parametrize("n,q,expected", [(5, 2, 4), (7, 2, 9), (3, 2, 1)])
def test_closed_qq_examples(n, q, expected):
    assert coefficient_f_closed_qq(n, q) == expected


@pytest.mark.parametrize("n,q", [(7, 3), (5, 4), (3, 0)])
def test_closed_qq_rejects(n, q):
    with pytest.raises(ScenarioError):
        coefficient_f_closed_qq(n, q)


@pytest.mark.parametrize("n", range(2, 13))
def test_f_identities_exhaustive(n):
    for a, b in valid_pairs(n):
        s = Scenario(n, a, b)
        f = coefficient_f(s).value
        assert (f, coefficient_f(s).argmin) == brute_f(n, a, b)
        if b == 1:
            assert f == n - a + 1
        if a == b and a % 2 == 0:
            assert coefficient_f_closed_qq(n, a) == f
        assert f <= weighted_average_bound(n, a, b)
        assert f >= 1


def test_rational_weights():
    s = Scenario(5, 2, 2, Fraction(1, 2), Fraction(1, 3))
    value, m = coefficient_f(s)
    expected = min(Fraction(1, 2) * binom(k, 2) + Fraction(1, 3) * binom(5 - k, 2) for k in range(6))
    assert value == expected
    assert isinstance(value, Fraction)


def test_equal_weights_scale_out():
    s = Scenario(6, 3, 2, 3, 3)
    assert coefficient_f(s).value == 3 * coefficient_f(Scenario(6, 3, 2)).value


@pytest.mark.parametrize("args,fragment", [
    ((3, 3, 3), "n+1"),
    ((3, 1, 1), "|alpha|"),
    ((3, 2, 3), "|beta|"),
    ((1, 2, 1), "n must"),
    ((3, 4, 1), "|alpha|"),
])
def test_scenario_rejections(args, fragment):
    with pytest.raises(ScenarioError, match=fragment.replace("|", r"\|").replace("+", r"\+")):
        Scenario(*args)


def test_scenario_rejects_nonpositive_weights():
    with pytest.raises(ScenarioError):
        Scenario(3, 2, 1, x=0)
    with pytest.raises(ScenarioError):
        Scenario(3, 2, 1, y=-1)


def test_unchecked_constructor_skips_range_checks():
    s = Scenario.unchecked(3, 3, 3)
    assert s.violation() is not None
    assert s.alpha_size + s.beta_size == 6


@given(st.integers(2, 12), st.data())
def test_scenarios_from_valid_pairs_construct(n, data):
    a, b = data.draw(st.sampled_from(valid_pairs(n)))
    s = Scenario(n, a, b)
    assert s.violation() is None
