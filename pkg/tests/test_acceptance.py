"""Exit criteria. Each test is one criterion; run with ``pytest tests/test_acceptance.py``.

A one-line PASS/FAIL summary per criterion is printed at the end of the run
(see ``conftest.py``).
"""
import math
from fractions import Fraction

import pytest

from hardylab.combinatorics import Scenario, coefficient_f, coefficient_f_closed_qq, valid_pairs
from hardylab.inequality import (
    epsilon_tolerance,
    optimality_search,
    threshold_visibility,
    wide_family_search,
)
from hardylab.lhv import ambient_affine_rank, check_tightness, classical_bound, verify_logic
from hardylab.paradox import (
    ZERO_TOL,
    constructible_pairs,
    construct,
    success_probability_closed,
    success_probability_supplement,
)

pytestmark = pytest.mark.acceptance

TABLE_I = {
    "(n,1)": [0.681250, 0.707107, 0.737431, 0.764501, 0.787467, 0.806795, 0.823130, 0.837049],
    "(2,1)": [0.682242, 0.703526, 0.730699, 0.755929, 0.777878, 0.796691, 0.812819, 0.826718],
    "(n-1,1)": [0.682242, 0.671442, 0.702481, 0.734966, 0.763073, 0.786584, 0.806221, 0.822742],
    "(2,2)": [0.714286, 0.714286, 0.666667, 0.666667, 0.647059, 0.647059, 0.636364, 0.636364],
}
BOXED = {3: "(n,1)", 4: "(n-1,1)", **{n: "(2,2)" for n in range(5, 11)}}
ROW_PAIRS = {"(n,1)": lambda n: (n, 1), "(2,1)": lambda n: (2, 1),
             "(n-1,1)": lambda n: (n - 1, 1), "(2,2)": lambda n: (2, 2)}
GAMMAS = (0.5, 1.0, 2.0)


def _report(failures, limit=12):
    shown = "\n  ".join(str(f) for f in failures[:limit])
    more = f"\n  ... {len(failures) - limit} more" if len(failures) > limit else ""
    return f"{len(failures)} failing case(s):\n  {shown}{more}"


def test_ac01_table1_reproduction():
    failures = []
    for k, n in enumerate(range(3, 11)):
        column = {}
        for label, pick in ROW_PAIRS.items():
            v = threshold_visibility(Scenario(n, *pick(n))).v_thr
            column[label] = v
            if abs(v - TABLE_I[label][k]) > 1e-5:
                failures.append((n, label, v, TABLE_I[label][k]))
        winner = min(column, key=column.get)
        if winner != BOXED[n]:
            failures.append((n, "argmin", winner, BOXED[n]))
    assert not failures, _report(failures)


def test_ac02_success_probabilities():
    failures = []
    for n in range(3, 11):
        p_s = construct(Scenario(n, n, 1), 1.0).success_probability
        p_g = construct(Scenario(n, 2, 2), 1.0).success_probability
        want_s = (1 + math.cos(math.pi / (n - 1))) / 2 ** n
        want_g = 1 / 2 ** (n - 1)
        if abs(p_s - want_s) > 1e-12 or abs(p_g - want_g) > 1e-12 or not p_g > p_s:
            failures.append((n, p_s, want_s, p_g, want_g))
    assert not failures, _report(failures)


def test_ac03_logic_certification():
    failures = []
    for n in range(2, 9):
        for a, b in valid_pairs(n):
            if not verify_logic(Scenario(n, a, b)).passed:
                failures.append(("valid scenario failed", n, a, b))
    for n, a, b in [(3, 3, 3), (4, 4, 2), (5, 4, 3)]:
        if verify_logic(Scenario.unchecked(n, a, b)).passed:
            failures.append(("no counterexample", n, a, b))
    for n in range(2, 7):
        for a in range(2, n + 1):
            for b in range(1, a + 1):
                if a + b >= n + 2 and verify_logic(Scenario.unchecked(n, a, b)).passed:
                    failures.append(("no counterexample", n, a, b))
    assert not failures, _report(failures)


def test_ac04_f_maximality():
    failures = []
    for n in range(2, 9):
        for a, b in valid_pairs(n):
            s = Scenario(n, a, b)
            f = coefficient_f(s).value
            at_f = classical_bound(s, f)[0]
            above = classical_bound(s, f + 1)[0]
            if at_f != 0 or above < 1:
                failures.append((n, a, b, at_f, above))
    for n in range(2, 13):
        for a, b in valid_pairs(n):
            f = coefficient_f(Scenario(n, a, b)).value
            if b == 1 and f != n - a + 1:
                failures.append(("beta=1 identity", n, a, f))
            if a == b and a % 2 == 0 and coefficient_f_closed_qq(n, a) != f:
                failures.append(("closed form", n, a, f))
    assert not failures, _report(failures)


def test_ac05_zero_constraint_residuals():
    failures = []
    for n in range(3, 9):
        for gamma in GAMMAS:
            for a, b in constructible_pairs(n):
                s = Scenario(n, a, b)
                r = construct(s, gamma)
                closed = success_probability_closed(s, gamma)
                supplement = success_probability_supplement(s, gamma)
                if r.max_zero_constraint_residual > ZERO_TOL:
                    failures.append(("residual", n, a, b, gamma, r.max_zero_constraint_residual))
                # values at rounding level (~1e-32) count as zero
                if not r.success_probability > ZERO_TOL or not closed > ZERO_TOL:
                    failures.append(("success not positive", n, a, b, gamma, r.success_probability))
                spread = max(closed, supplement, r.success_probability) - min(
                    closed, supplement, r.success_probability)
                if spread > 1e-12:
                    failures.append(("formula disagreement", n, a, b, gamma, spread))
    assert not failures, _report(failures)


def test_ac06_tightness():
    failures = []
    for args in [(3, 2, 1), (3, 3, 1), (4, 4, 1)]:
        r = check_tightness(Scenario(*args))
        if not r.is_tight or r.ambient_affine_dim != 3 ** args[0] - 1:
            failures.append((args, r))
    for n in range(1, 7):
        if ambient_affine_rank(n) != 3 ** n - 1:
            failures.append(("ambient", n))
    assert not failures, _report(failures)


def test_ac07_small_n_optima():
    failures = []
    r3 = optimality_search(3)
    if r3.winner != (3, 1) or abs(r3.v_thr - math.sqrt(2 * math.sqrt(3) - 3)) > 1e-9:
        failures.append((3, r3.winner, r3.v_thr))
    r4 = optimality_search(4)
    if r4.winner != (3, 1) or abs(r4.v_thr - 9 / 7 * math.sqrt(3 / 11)) > 1e-9:
        failures.append((4, r4.winner, r4.v_thr))
    for n in range(5, 11):
        r = optimality_search(n)
        if r.winner != (2, 2) or r.ties != ((2, 2),):
            failures.append((n, r.winner, r.ties))
    assert not failures, _report(failures)


def test_ac08_experimental_tolerance():
    eps = epsilon_tolerance(Scenario(3, 2, 2), 1.0)
    assert isinstance(eps, Fraction)
    assert eps == Fraction(1, 24)
    assert round(float(eps), 3) == 0.042 and float(eps) > 0.041


def test_ac09_supplement_comparison():
    failures = []
    for n in range(3, 9):
        for gamma in GAMMAS:
            for a in range(2, n + 1):
                if a % 2 or 2 * a > n + 1:
                    continue
                equal = success_probability_closed(Scenario(n, a, a), gamma)
                for b in range(1, a):
                    if a + b > n + 1:
                        continue
                    p = success_probability_closed(Scenario(n, a, b), gamma)
                    if not p < equal:
                        failures.append((n, a, b, gamma, p, equal))
    assert not failures, _report(failures)


def test_ac10_visibility_bound():
    failures = []
    for n in range(3, 11):
        for a, b in valid_pairs(n):
            r = threshold_visibility(Scenario(n, a, b))
            if r.v_thr is None:
                continue
            bound = float(r.lower_bound)
            if r.v_thr < bound - 1e-9:
                failures.append(("below bound", n, a, b, r.v_thr, bound))
            equal = abs(r.v_thr - bound) <= 1e-9
            if equal != (a == b and a % 2 == 0):
                failures.append(("equality iff |a|=|b| even", n, a, b, r.v_thr, bound))
    for n in range(3, 7):
        for a, b in valid_pairs(n):
            w = wide_family_search(Scenario(n, a, b))
            if w.excess > 1e-6:
                failures.append(("wider family exceeds symmetric", n, a, b, w.value, w.symmetric_value))
    assert not failures, _report(failures)
