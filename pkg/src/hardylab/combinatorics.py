"""Exact integer combinatorics for generalized Hardy inequalities.

Everything here works on Python integers and :class:`fractions.Fraction`,
so nothing can overflow or round.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple, Union

from .errors import ScenarioError

Number = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        # Go through repr so 0.5 -> 1/2 rather than a binary expansion of 0.1.
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Scenario:
    """An ``[n; |alpha|, |beta|; x, y]`` scenario.

    ``alpha_size`` and ``beta_size`` are the subset sizes carrying the
    b-outcome-1 and b-outcome-0 zero constraints; ``x`` and ``y`` weight the
    two constraint families in the inequality.
    """

    n: int
    alpha_size: int
    beta_size: int
    x: Fraction = field(default=Fraction(1))
    y: Fraction = field(default=Fraction(1))

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _as_fraction(self.x))
        object.__setattr__(self, "y", _as_fraction(self.y))
        for name in ("n", "alpha_size", "beta_size"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise ScenarioError(f"{name} must be an integer")
        if getattr(self, "_skip_checks", False):
            return
        problem = self.violation()
        if problem:
            raise ScenarioError(problem)

    def violation(self) -> str | None:
        """Describe the first violated constraint, or return None."""
        n, a, b = self.n, self.alpha_size, self.beta_size
        if n < 2:
            return f"n must be >= 2 (got {n})"
        if not 2 <= a <= n:
            return f"need 2 <= |alpha| <= n (got |alpha|={a}, n={n})"
        if not 1 <= b <= a:
            return f"need 1 <= |beta| <= |alpha| (got |beta|={b}, |alpha|={a})"
        if a + b > n + 1:
            return f"need |alpha|+|beta| <= n+1 (got {a}+{b} > {n + 1})"
        if self.x <= 0 or self.y <= 0:
            return f"weights must be positive (got x={self.x}, y={self.y})"
        return None

    @classmethod
    def unchecked(cls, n: int, alpha_size: int, beta_size: int, x=1, y=1) -> "Scenario":
        """Build a scenario without range checks.

        Only for probing what happens outside the admissible region (for
        instance, finding counterexamples to the logical argument when |alpha|+|beta| > n+1).
        """
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_skip_checks", True)
        for key, value in (("n", n), ("alpha_size", alpha_size), ("beta_size", beta_size),
                           ("x", x), ("y", y)):
            object.__setattr__(obj, key, value)
        obj.__post_init__()
        return obj

    @property
    def is_unit_weight(self) -> bool:
        return self.x == 1 and self.y == 1

    @property
    def is_even_equal(self) -> bool:
        return self.alpha_size == self.beta_size and self.alpha_size % 2 == 0

    def label(self) -> str:
        return f"[{self.n};{self.alpha_size},{self.beta_size};{self.x},{self.y}]"


def valid_pairs(n: int) -> list[tuple[int, int]]:
    """All admissible (|alpha|, |beta|) for ``n`` qubits, ascending."""
    return [(a, b) for a in range(2, n + 1) for b in range(1, a + 1) if a + b <= n + 1]


def binom(m: int, k: int) -> int:
    """Binomial coefficient with ``binom(m, k) = 0`` for ``k > m``.

    Python integers are arbitrary precision, so the result is always exact.
    """
    if m < 0 or k < 0:
        raise ValueError(f"binom needs nonnegative arguments, got ({m}, {k})")
    return comb(m, k)


class FCoefficient(NamedTuple):
    value: Number
    argmin: int


def coefficient_f(s: Scenario) -> FCoefficient:
    """Largest success-term coefficient keeping the inequality classical.

    Scans ``m = 0..n`` and minimises ``x*C(m,|alpha|) + y*C(n-m,|beta|)``;
    the smallest minimising ``m`` is reported.
    """
    unit = s.is_unit_weight
    best: Number | None = None
    best_m = 0
    for m in range(s.n + 1):
        if unit:
            value: Number = binom(m, s.alpha_size) + binom(s.n - m, s.beta_size)
        else:
            value = s.x * binom(m, s.alpha_size) + s.y * binom(s.n - m, s.beta_size)
        if best is None or value < best:
            best, best_m = value, m
    assert best is not None
    return FCoefficient(best, best_m)


def coefficient_f_closed_qq(n: int, q: int) -> int:
    """Closed form of F for ``|alpha| = |beta| = q`` (q even) and unit weights."""
    if q % 2:
        raise ScenarioError(f"q must be even (got {q})")
    if q < 2 or 2 * q > n + 1:
        raise ScenarioError(f"need 2 <= q and 2q <= n+1 (got q={q}, n={n})")
    half = (n + 1) // 2
    return binom(half, q) + binom(n - half, q)


def weighted_average_bound(n: int, alpha_size: int, beta_size: int) -> Fraction:
    """Average of ``C(m,|alpha|) + C(n-m,|beta|)`` under binomial weights on m.

    Upper bound for F with unit weights.
    """
    return (Fraction(binom(n, alpha_size), 2 ** alpha_size)
            + Fraction(binom(n, beta_size), 2 ** beta_size))
