"""Construction of generalized Hardy paradoxes on generalized GHZ states."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .combinatorics import Scenario, valid_pairs
from .errors import ScenarioError
from .quantum import (
    Event,
    GhzState,
    SingleQubitBasis,
    event_probability,
    make_ghz,
)

ZERO_TOL = 1e-10
TIE_TOL = 1e-12


@dataclass(frozen=True)
class LocalSettings:
    """The a- and b-measurement directions, shared by every site."""

    a_basis: SingleQubitBasis
    b_basis: SingleQubitBasis

    @property
    def theta_a(self) -> float:
        return self.a_basis.phi

    @property
    def theta_b(self) -> float:
        return self.b_basis.phi


@dataclass(frozen=True)
class ParadoxReport:
    scenario: Scenario
    gamma: float
    theta_h: float
    settings: LocalSettings
    success_probability: float
    max_zero_constraint_residual: float
    case_tag: str
    branch: tuple[int, int]

    @property
    def is_paradox(self) -> bool:
        """True when the zero constraints hold and the success event is possible."""
        return self.max_zero_constraint_residual <= ZERO_TOL and self.success_probability > TIE_TOL


def case_of(s: Scenario) -> str:
    if s.beta_size < s.alpha_size:
        return "case1"
    if s.alpha_size % 2:
        raise ScenarioError(
            f"|alpha| = |beta| = {s.alpha_size} is odd; the equal-size construction needs an even size")
    if s.alpha_size == s.n:
        raise ScenarioError("equal-size construction needs |alpha| < n")
    return "case2"


def _subsets(n: int, k: int) -> Iterator[frozenset[int]]:
    for combo in combinations(range(n), k):
        yield frozenset(combo)


def zero_constraint_events(s: Scenario, settings: LocalSettings) -> list[Event]:
    """Events ``b_alpha a_rest`` for every |alpha|-subset, then ``bbar_beta a_rest``.

    Subsets come in lexicographic order of their (0-based) qubit indices.
    """
    a, b = settings.a_basis, settings.b_basis
    b_bar = b.complement()
    events = []
    for chosen_basis, size in ((b, s.alpha_size), (b_bar, s.beta_size)):
        for subset in _subsets(s.n, size):
            events.append(Event([chosen_basis if k in subset else a for k in range(s.n)]))
    return events


def success_event(n: int, settings: LocalSettings) -> Event:
    return Event([settings.a_basis] * n)


def solve_settings(s: Scenario, gamma: float, theta_h: float = 0.0) -> LocalSettings:
    """Solve the angle and norm equations for the zero constraints.

    Uses branch constants ``m1 = m2 = 0`` when |beta| < |alpha| and
    ``m1 = 0, m2 = |beta|/2`` when |alpha| = |beta| (even).
    """
    if not gamma > 0:
        raise ScenarioError(f"gamma must be > 0 (got {gamma})")
    n, a, b = s.n, s.alpha_size, s.beta_size
    if case_of(s) == "case1":
        tau0 = a * b / (a - b)
        theta_a = (theta_h + (1.0 - tau0) * math.pi) / n
        theta_b = b * math.pi / (a - b) + theta_a
        ratio_a = gamma ** ((a + b) / (n * (a + b) - 2 * a * b))
        ratio_b = ratio_a ** ((a - b) / (a + b))
        return LocalSettings(SingleQubitBasis.from_ratio(ratio_a, theta_a),
                             SingleQubitBasis.from_ratio(ratio_b, theta_b))
    theta_a = theta_h / n
    theta_b = (math.pi + theta_h - (n - a) * theta_a) / a
    ratio_a = gamma ** (1.0 / (n - a))
    return LocalSettings(SingleQubitBasis.from_ratio(ratio_a, theta_a),
                         SingleQubitBasis(math.sqrt(0.5), math.sqrt(0.5), theta_b))


def construct(s: Scenario, gamma: float, theta_h: float = 0.0) -> ParadoxReport:
    """Solve the settings and evaluate every event on the explicit state vector."""
    settings = solve_settings(s, gamma, theta_h)
    psi = make_ghz(GhzState(s.n, gamma, theta_h))
    residual = max(event_probability(psi, e) for e in zero_constraint_events(s, settings))
    success = event_probability(psi, success_event(s.n, settings))
    tag = case_of(s)
    branch = (0, 0) if tag == "case1" else (0, s.beta_size // 2)
    return ParadoxReport(s, gamma, theta_h, settings, success, residual, tag, branch)


def success_probability_closed(s: Scenario, gamma: float) -> float:
    """Success probability from the kappa parameterization."""
    n, a, b = s.n, s.alpha_size, s.beta_size
    g2 = gamma * gamma
    if case_of(s) == "case1":
        denom = n * (a + b) - 2 * a * b
        kappa0 = cmath.exp(1j * math.pi * ((a * b / (a - b)) % 2.0))
        kappa1 = gamma ** (2 * a * b / denom)
        kappa2 = gamma ** (2 * (a + b) / denom)
        return g2 * abs(kappa0 - kappa1) ** 2 / ((1 + g2) * (1 + kappa2) ** n)
    kappa1 = gamma ** (a / (n - a))
    kappa2 = gamma ** (2 / (n - a))
    return g2 * (1 + kappa1) ** 2 / ((1 + g2) * (1 + kappa2) ** n)


def success_probability_supplement(s: Scenario, gamma: float) -> float:
    """Success probability from the tau parameterization."""
    n, a, b = s.n, s.alpha_size, s.beta_size
    g2 = gamma * gamma
    tau1 = 2 * (a + b) / ((n - b) * a + (n - a) * b)
    lifted = gamma ** (n * tau1 / 2 - 1)
    if case_of(s) == "case1":
        tau0 = a * b / (a - b)
        numerator = abs(cmath.exp(1j * math.pi * (tau0 % 2.0)) - lifted) ** 2
    else:
        numerator = (1 + lifted) ** 2
    return g2 * numerator / ((1 + g2) * (1 + gamma ** tau1) ** n)


def standard_success(n: int) -> float:
    """Success probability of the standard [n; n, 1] paradox on the GHZ state."""
    return (1.0 + math.cos(math.pi / (n - 1))) / 2 ** n


def generalized_success(n: int) -> float:
    return 1.0 / 2 ** (n - 1)


@dataclass(frozen=True)
class SweepRow:
    n: int
    p_standard: float
    p_generalized: float
    p_standard_constructed: float
    p_generalized_constructed: float

    @property
    def generalized_wins(self) -> bool:
        return self.p_generalized > self.p_standard


def sweep_success(n_min: int, n_max: int) -> list[SweepRow]:
    """Standard vs. generalized success probabilities on the GHZ state.

    The constructed columns come from solving the settings and evaluating
    the state vector; the others are the closed forms.
    """
    if not 3 <= n_min <= n_max:
        raise ScenarioError(f"need 3 <= n_min <= n_max (got {n_min}, {n_max})")
    rows = []
    for n in range(n_min, n_max + 1):
        standard = construct(Scenario(n, n, 1), 1.0).success_probability
        generalized = construct(Scenario(n, 2, 2), 1.0).success_probability
        rows.append(SweepRow(n, standard_success(n), generalized_success(n), standard, generalized))
    return rows


def constructible_pairs(n: int) -> list[tuple[int, int]]:
    """Valid (|alpha|, |beta|) admitting the construction (equal sizes must be even)."""
    return [(a, b) for a, b in valid_pairs(n) if a != b or a % 2 == 0]


@dataclass(frozen=True)
class BestChoice:
    n: int
    gamma: float
    alpha_size: int
    beta_size: int
    probability: float
    ties: tuple[tuple[int, int], ...]
    table: tuple[tuple[int, int, float], ...]

    @property
    def degenerate(self) -> bool:
        return len(self.ties) > 1


def best_paradox_choice(n: int, gamma: float) -> BestChoice:
    """Exhaustive argmax of the constructed success probability over (|alpha|, |beta|)."""
    if n < 3:
        raise ScenarioError(f"n must be >= 3 (got {n})")
    table = tuple((a, b, success_probability_closed(Scenario(n, a, b), gamma))
                  for a, b in constructible_pairs(n))
    top = max(p for _, _, p in table)
    ties = tuple((a, b) for a, b, p in table if p >= top - TIE_TOL)
    a, b = ties[0]
    return BestChoice(n, gamma, a, b, top, ties, table)
