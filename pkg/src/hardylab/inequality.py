"""Quantum side of the generalized Hardy inequalities on GHZ states.

The quantum value is maximised over the symmetric family: every site uses
the same balanced a- and b-directions on the n-qubit GHZ state, leaving two
free angles ``theta1 = n*theta_a`` and ``theta2 = theta_b - theta_a``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .combinatorics import Scenario, binom, coefficient_f, coefficient_f_closed_qq, valid_pairs
from .errors import ResourceLimitError, ScenarioError
from .paradox import case_of, success_probability_closed

TWO_PI = 2.0 * math.pi
GRID_SIZE = 720
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
STEP_TOL = 1e-12
MAX_SWEEPS = 20000
VIOLATION_TOL = 1e-12
TIE_TOL = 1e-9


def trace_bell(s: Scenario) -> Fraction:
    """Trace of the Bell operator; negative for every valid scenario."""
    f = coefficient_f(s).value
    return Fraction(f) - s.x * binom(s.n, s.alpha_size) - s.y * binom(s.n, s.beta_size)


def _weights(s: Scenario) -> tuple[float, float, float]:
    f = coefficient_f(s).value
    return (float(f), float(s.x * binom(s.n, s.alpha_size)), float(s.y * binom(s.n, s.beta_size)))


def _objective(s: Scenario) -> Callable[[float, float], float]:
    """``2^n`` times the symmetric quantum value, as a function of (theta1, theta2)."""
    f, x, y = _weights(s)
    a, b = s.alpha_size, s.beta_size
    shift = (b % 2) * math.pi

    def g(t1: float, t2: float) -> float:
        return (f * (1.0 + math.cos(t1))
                - x * (1.0 + math.cos(t1 + a * t2))
                - y * (1.0 + math.cos(t1 + b * t2 + shift)))

    return g


def symmetric_qm_value(s: Scenario, theta1: float, theta2: float) -> float:
    return _objective(s)(theta1, theta2) / 2 ** s.n


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-13) -> tuple[float, float]:
    """Maximise a unimodal function on [lo, hi]; returns (argmax, max)."""
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _coordinate_ascent(g, t1: float, t2: float, half_width: float) -> tuple[float, float, float]:
    best = g(t1, t2)
    for _ in range(MAX_SWEEPS):
        start = (t1, t2)
        n1, v1 = golden_section_max(lambda t: g(t, t2), t1 - half_width, t1 + half_width)
        if v1 > best:
            t1, best = n1, v1
        n2, v2 = golden_section_max(lambda t: g(t1, t), t2 - half_width, t2 + half_width)
        if v2 > best:
            t2, best = n2, v2
        step = max(abs(t1 - start[0]), abs(t2 - start[1]))
        if step < STEP_TOL:
            break
    return t1, t2, best


@dataclass(frozen=True)
class QMMaximum:
    value: float
    theta1: float
    theta2: float
    grid_value: float


@lru_cache(maxsize=None)
def _cos_table(size: int) -> np.ndarray:
    table = np.cos(TWO_PI * np.arange(size) / size)
    table.flags.writeable = False
    return table


def grid_search(s: Scenario, size: int = GRID_SIZE, workers: int = 1,
                backend: Optional[str] = None) -> tuple[float, int, int]:
    """Best grid point of ``2^n * value`` over a size x size grid on [0, 2pi)^2.

    Ties resolve to the lowest (row, column) index regardless of ``workers``.
    """
    if size % 2:
        raise ValueError("grid size must be even so that pi is a grid angle")
    impl = kernels.load_backend(backend) if backend else kernels
    f, x, y = _weights(s)
    table = _cos_table(size)
    workers = max(1, min(workers, size))
    bounds = [size * k // workers for k in range(workers + 1)]

    def run(k: int):
        return impl.grid_argmax(table, f, x, y, s.alpha_size, s.beta_size, bounds[k], bounds[k + 1])

    if workers == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(workers)))
    best = parts[0]
    for part in parts[1:]:
        if part[0] > best[0]:
            best = part
    return best


@lru_cache(maxsize=None)
def maximize_qm(s: Scenario) -> QMMaximum:
    """Global maximum of the symmetric quantum value over both angles.

    A 720 x 720 grid locates the basin; coordinate ascent with golden-section
    line searches then polishes it. Fully deterministic.
    """
    g = _objective(s)
    grid_best, i, j = grid_search(s)
    step = TWO_PI / GRID_SIZE
    t1, t2, best = _coordinate_ascent(g, i * step, j * step, step)
    scale = 2 ** s.n
    return QMMaximum(best / scale, t1 % TWO_PI, t2 % TWO_PI, grid_best / scale)


def qm_max_profile(s: Scenario, theta2: float) -> float:
    """Maximum over theta1 at fixed theta2 (in closed form), times ``2^n``.

    The theta1-dependence is a single sinusoid, so its maximum is the
    modulus of the corresponding phasor sum.
    """
    f, x, y = _weights(s)
    a, b = s.alpha_size, s.beta_size
    phasor = f - x * np.exp(1j * a * theta2) - y * np.exp(1j * (b * theta2 + (b % 2) * math.pi))
    return f - x - y + np.abs(phasor)


# Visibility --------------------------------------------------------------

@dataclass(frozen=True)
class VisibilityReport:
    scenario: Scenario
    trace_value: Fraction
    qm_max: float
    symmetric_max: float
    theta1_star: float
    theta2_star: float
    v_thr: Optional[float]
    v_prime: Fraction
    lower_bound: Fraction
    closed_form: Optional[Fraction]

    @property
    def violated(self) -> bool:
        return self.v_thr is not None


def v_prime(s: Scenario) -> Fraction:
    f = coefficient_f(s).value
    return (s.x * binom(s.n, s.alpha_size) + s.y * binom(s.n, s.beta_size)) / Fraction(f)


def threshold_visibility(s: Scenario) -> VisibilityReport:
    trace = trace_bell(s)
    best = maximize_qm(s)
    vp = v_prime(s)
    lower = 1 - Fraction(2) / (1 + vp)
    closed = None
    if s.is_even_equal and s.is_unit_weight:
        closed = v_thr_closed_qq(s.n, s.alpha_size).general
    # The trivial strategy always scores 0, so the quantum maximum is never
    # negative even when the symmetric family cannot reach 0.
    qm_max = max(best.value, 0.0)
    if qm_max <= VIOLATION_TOL:
        v_thr = None
    else:
        magnitude = -float(trace)
        v_thr = magnitude / (magnitude + 2 ** s.n * qm_max)
    return VisibilityReport(s, trace, qm_max, best.value, best.theta1, best.theta2,
                            v_thr, vp, lower, closed)


@dataclass(frozen=True)
class ClosedVisibility:
    general: Fraction
    q2: Optional[Fraction]

    def __float__(self) -> float:
        return float(self.general)


def v_thr_closed_qq(n: int, q: int) -> ClosedVisibility:
    """Closed-form threshold visibility for ``|alpha| = |beta| = q`` (even)."""
    coefficient_f_closed_qq(n, q)  # validates (n, q)
    half = n // 2
    total = 2 * binom(n, q)
    low = binom(half, q) + binom(n - half, q)
    general = Fraction(total - low, total + low)
    q2 = None
    if q == 2:
        k = (n + 1) // 2
        q2 = Fraction(3 * k - 1, 5 * k - 3)
    return ClosedVisibility(general, q2)


def helper_bounds(n: int, alpha_size: int, beta_size: int) -> tuple[Fraction, Optional[Fraction]]:
    """The proof helpers W and U (U only for ``|beta| = 1``)."""
    Scenario(n, alpha_size, beta_size)
    w = (Fraction(binom(n, alpha_size) + binom(n, beta_size))
         / (Fraction(binom(n, alpha_size), 2 ** alpha_size)
            + Fraction(binom(n, beta_size), 2 ** beta_size)))
    u = None
    if beta_size == 1:
        u = Fraction(binom(n, alpha_size) + n, n - alpha_size + 1)
    return w, u


@dataclass(frozen=True)
class OptimalityReport:
    n: int
    winner: tuple[int, int]
    v_thr: float
    ties: tuple[tuple[int, int], ...]
    ranked: tuple[tuple[int, int, float], ...]


def optimality_search(n: int) -> OptimalityReport:
    """Rank every admissible (|alpha|, |beta|) by threshold visibility (x = y = 1)."""
    if not 3 <= n <= 10:
        raise ResourceLimitError(f"optimality search supports 3 <= n <= 10 (got {n})")
    rows = []
    for a, b in valid_pairs(n):
        report = threshold_visibility(Scenario(n, a, b))
        if report.v_thr is not None:
            rows.append((a, b, report.v_thr))
    ranked = tuple(sorted(rows, key=lambda r: (r[2], r[0], r[1])))
    best = ranked[0][2]
    ties = tuple((a, b) for a, b, v in ranked if v <= best + TIE_TOL)
    return OptimalityReport(n, ties[0], best, ties, ranked)


# Error tolerance ---------------------------------------------------------

_EXACT_COS = {Fraction(0): 1, Fraction(1, 3): Fraction(1, 2), Fraction(1, 2): 0,
              Fraction(2, 3): Fraction(-1, 2), Fraction(1): -1, Fraction(4, 3): Fraction(-1, 2),
              Fraction(3, 2): 0, Fraction(5, 3): Fraction(1, 2)}


def _exact_success_at_unit_gamma(s: Scenario) -> Optional[Fraction]:
    if case_of(s) == "case2":
        return Fraction(1, 2 ** (s.n - 1))
    tau0 = Fraction(s.alpha_size * s.beta_size, s.alpha_size - s.beta_size)
    cos = _EXACT_COS.get(tau0 % 2)
    if cos is None:
        return None
    return (1 - cos) / Fraction(2 ** s.n)


def epsilon_tolerance(s: Scenario, gamma: float = 1.0) -> Fraction | float:
    """Largest common zero-constraint error that still leaves a violation.

    Exact when the success probability is a known rational (GHZ state with
    angles that are simple fractions of pi), a float otherwise.
    """
    f = coefficient_f(s).value
    weight = s.x * binom(s.n, s.alpha_size) + s.y * binom(s.n, s.beta_size)
    p = _exact_success_at_unit_gamma(s) if gamma == 1 else None
    if p is not None:
        return Fraction(f) * p / weight
    return float(f) * success_probability_closed(s, gamma) / float(weight)


# Wider family cross-check ------------------------------------------------

def wide_family_value(s: Scenario, params) -> float:
    """Bell value for free amplitudes, state imbalance and both angles.

    ``params = (u_a, u_b, chi, theta1, theta2)`` with ``a0 = cos u_a``,
    ``b0 = cos u_b``, ``h0 = cos chi``; theta1 and theta2 as in the
    symmetric family (``theta1 = n*theta_a - theta_h``).
    """
    u_a, u_b, chi, t1, t2 = params
    n, a, b = s.n, s.alpha_size, s.beta_size
    f, x, y = _weights(s)
    a0, a1 = math.cos(u_a), math.sin(u_a)
    b0, b1 = math.cos(u_b), math.sin(u_b)
    h0, h1 = math.cos(chi), math.sin(chi)
    succ = abs(a0 ** n * h0 + a1 ** n * h1 * complex(math.cos(t1), math.sin(t1))) ** 2
    phase_a = t1 + a * t2
    p_a = abs(b0 ** a * a0 ** (n - a) * h0
              + b1 ** a * a1 ** (n - a) * h1 * complex(math.cos(phase_a), math.sin(phase_a))) ** 2
    phase_b = t1 + b * t2 + (b % 2) * math.pi
    p_b = abs(b1 ** b * a0 ** (n - b) * h0
              + b0 ** b * a1 ** (n - b) * h1 * complex(math.cos(phase_b), math.sin(phase_b))) ** 2
    return f * succ - x * p_a - y * p_b


@dataclass(frozen=True)
class WideSearchResult:
    value: float
    params: tuple[float, ...]
    symmetric_value: float

    @property
    def excess(self) -> float:
        return self.value - self.symmetric_value


def wide_family_search(s: Scenario, starts: int = 48, seed: int = 0) -> WideSearchResult:
    """Multistart local search over the 5-parameter family.

    Starts from the symmetric optimum plus ``starts`` seeded random points.
    """
    sym = maximize_qm(s)
    quarter = math.pi / 4
    bounds = [(0.0, math.pi / 2), (0.0, math.pi / 2), (1e-9, math.pi / 2 - 1e-9),
              (None, None), (None, None)]
    rng = np.random.default_rng(seed)
    initial = [np.array([quarter, quarter, quarter, sym.theta1, sym.theta2])]
    for _ in range(starts):
        initial.append(np.concatenate([rng.uniform(0.0, math.pi / 2, 3), rng.uniform(0.0, TWO_PI, 2)]))
    best_value, best_params = -math.inf, None
    for x0 in initial:
        res = minimize(lambda p: -wide_family_value(s, p), x0, method="L-BFGS-B", bounds=bounds)
        value = -float(res.fun)
        if value > best_value:
            best_value, best_params = value, tuple(float(v) for v in res.x)
    return WideSearchResult(best_value, best_params, max(sym.value, 0.0))
