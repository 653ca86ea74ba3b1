"""Classical (local-hidden-variable) side, by exhaustive deterministic enumeration.

Strategy index layout: bits ``0..n-1`` hold the a-values of qubits 1..n,
bits ``n..2n-1`` hold the b-values. Reported argmaxes are always the lowest
strategy index attaining the maximum.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .combinatorics import Scenario, binom, coefficient_f
from .errors import ResourceLimitError

MAX_LHV_N = int(os.environ.get("HARDYLAB_MAX_LHV_N", "12"))
MAX_TIGHTNESS_N = 6
_INT64_HEADROOM = 2 ** 62


@dataclass(frozen=True)
class DeterministicStrategy:
    a_bits: tuple[int, ...]
    b_bits: tuple[int, ...]

    @classmethod
    def from_index(cls, index: int, n: int) -> "DeterministicStrategy":
        return cls(tuple((index >> k) & 1 for k in range(n)),
                   tuple((index >> (n + k)) & 1 for k in range(n)))

    @property
    def n(self) -> int:
        return len(self.a_bits)

    @property
    def index(self) -> int:
        n = self.n
        return (sum(bit << k for k, bit in enumerate(self.a_bits))
                | sum(bit << (n + k) for k, bit in enumerate(self.b_bits)))


def _guard(n: int, limit: int = MAX_LHV_N) -> None:
    if n > limit:
        raise ResourceLimitError(f"n={n} exceeds the enumeration limit of {limit}"
                                 " (override with HARDYLAB_MAX_LHV_N)")


def enumerate_strategies(n: int) -> Iterator[DeterministicStrategy]:
    _guard(n)
    for index in range(4 ** n):
        yield DeterministicStrategy.from_index(index, n)


def subset_masks(n: int, size: int) -> np.ndarray:
    """Bit masks of all ``size``-subsets of n qubits, lexicographic order."""
    return np.array([sum(1 << k for k in combo) for combo in combinations(range(n), size)],
                    dtype=np.int64)


def bell_value(s: Scenario, strategy: DeterministicStrategy, f: Fraction | int | None = None) -> Fraction:
    """Bell expression of one strategy, straight from the product definition."""
    if f is None:
        f = coefficient_f(s).value
    n, a, b = s.n, strategy.a_bits, strategy.b_bits
    value = Fraction(f) * all(a)
    for subset in combinations(range(n), s.alpha_size):
        if all(b[k] if k in subset else a[k] for k in range(n)):
            value -= s.x
    for subset in combinations(range(n), s.beta_size):
        if all((1 - b[k]) if k in subset else a[k] for k in range(n)):
            value -= s.y
    return value


@dataclass(frozen=True)
class ScanResult:
    max_value: Fraction
    argmax: int
    counterexample: int


def _integer_weights(s: Scenario, f) -> tuple[int, int, int, int]:
    f, x, y = Fraction(f), Fraction(s.x), Fraction(s.y)
    scale = lcm(f.denominator, x.denominator, y.denominator)
    weights = [int(v * scale) for v in (f, x, y)]
    worst = (abs(weights[0]) + weights[1] * binom(s.n, s.alpha_size)
             + weights[2] * binom(s.n, s.beta_size))
    if worst >= _INT64_HEADROOM:
        raise OverflowError(f"Bell coefficients too large for 64-bit scan: bound {worst}")
    return (*weights, scale)


def scan(s: Scenario, f=None, workers: int = 1, backend: Optional[str] = None) -> ScanResult:
    """Maximize the Bell expression over all 4^n strategies.

    The index range is split into ``workers`` contiguous blocks; the merge
    keeps the largest value and, among equals, the lowest index.
    """
    _guard(s.n)
    if f is None:
        f = coefficient_f(s).value
    impl = kernels.load_backend(backend) if backend else kernels
    f_w, x_w, y_w, scale = _integer_weights(s, f)
    masks_a = subset_masks(s.n, s.alpha_size)
    masks_b = subset_masks(s.n, s.beta_size)
    total = 4 ** s.n
    workers = max(1, min(workers, total))
    bounds = [total * k // workers for k in range(workers + 1)]

    def run(k: int):
        return impl.scan_strategies(s.n, masks_a, masks_b, f_w, x_w, y_w, bounds[k], bounds[k + 1])

    if workers == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(workers)))
    best_value, best_index = parts[0][0], parts[0][1]
    counterexample = -1
    for value, index, cex in parts:
        if value > best_value:
            best_value, best_index = value, index
        if counterexample < 0 and cex >= 0:
            counterexample = cex
    return ScanResult(Fraction(best_value, scale), best_index, counterexample)


@dataclass(frozen=True)
class LogicReport:
    scenario: Scenario
    passed: bool
    strategies_checked: int
    counterexample: Optional[DeterministicStrategy]


def verify_logic(s: Scenario, workers: int = 1, backend: Optional[str] = None) -> LogicReport:
    """Check that vanishing zero-constraint products force ``a_1...a_n = 0``."""
    result = scan(s, f=1, workers=workers, backend=backend)
    cex = (DeterministicStrategy.from_index(result.counterexample, s.n)
           if result.counterexample >= 0 else None)
    return LogicReport(s, cex is None, 4 ** s.n, cex)


def classical_bound(s: Scenario, f_override=None, workers: int = 1,
                    backend: Optional[str] = None) -> tuple[Fraction, DeterministicStrategy]:
    result = scan(s, f=f_override, workers=workers, backend=backend)
    return result.max_value, DeterministicStrategy.from_index(result.argmax, s.n)


# Tightness ---------------------------------------------------------------

def correlation_vector(strategy: DeterministicStrategy) -> np.ndarray:
    """Deterministic correlations indexed by a per-party choice (a, b or omit).

    Coordinate ``sum_k c_k 3^k`` with ``c_k`` = 0 (measure a), 1 (measure b)
    or 2 (omit) for party k+1; the entry is the product of the chosen
    values, so the all-omit coordinate is always 1.
    """
    vec = np.ones(1, dtype=np.int64)
    for a_val, b_val in zip(strategy.a_bits, strategy.b_bits):
        # Party k becomes the most significant trit so far.
        vec = np.concatenate([vec * a_val, vec * b_val, vec])
    return vec


def integer_rank(rows: np.ndarray) -> int:
    """Exact rank of an integer matrix by fraction-free elimination.

    Rows are reduced to primitive form (content divided out) after each
    elimination step. Works in int64 while products provably fit and
    switches to Python integers otherwise.
    """
    m = np.array(rows, dtype=np.int64, copy=True)
    if m.ndim != 2 or m.size == 0:
        return 0
    n_rows, n_cols = m.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.flatnonzero(m[rank:, col])
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        below = rank + 1 + np.flatnonzero(m[rank + 1:, col])
        if below.size:
            p = m[rank, col]
            factors = m[below, col][:, None]
            if m.dtype != object:
                bound = (abs(int(p)) * int(np.abs(m[below]).max())
                         + int(np.abs(factors).max()) * int(np.abs(m[rank]).max()))
                if bound >= _INT64_HEADROOM:
                    m = m.astype(object)
                    p = m[rank, col]
                    factors = m[below, col][:, None]
            block = p * m[below] - factors * m[rank]
            if m.dtype == object:
                g = np.array([np.gcd.reduce(r) if r.any() else 1 for r in block], dtype=object)
                g = np.where(g == 0, 1, g)
            else:
                g = np.gcd.reduce(block, axis=1)
                g[g == 0] = 1
            m[below] = block // g[:, None]
        rank += 1
    return rank


def affine_rank(vectors: np.ndarray) -> int:
    """Affine rank of points whose all-omit coordinate is the constant 1."""
    return integer_rank(vectors) - 1


@dataclass(frozen=True)
class TightnessReport:
    scenario: Scenario
    saturating_vertex_count: int
    affine_rank: int
    ambient_affine_dim: int
    is_tight: bool


def saturating_strategies(s: Scenario, f=None) -> list[int]:
    """Indices of strategies whose Bell value is exactly 0 (the classical max)."""
    _guard(s.n, MAX_TIGHTNESS_N)
    if f is None:
        f = coefficient_f(s).value
    f_w, x_w, y_w, _ = _integer_weights(s, f)
    n = s.n
    idx = np.arange(4 ** n, dtype=np.int64)
    full = (1 << n) - 1
    a, b = idx & full, idx >> n
    values = f_w * (a == full).astype(np.int64)
    for mask in subset_masks(n, s.alpha_size):
        values -= x_w * (((b & mask) == mask) & ((a | mask) == full))
    for mask in subset_masks(n, s.beta_size):
        values -= y_w * (((b & mask) == 0) & ((a | mask) == full))
    return [int(k) for k in np.flatnonzero(values == 0)]


def check_tightness(s: Scenario) -> TightnessReport:
    """Decide whether the inequality defines a facet of the LHV polytope."""
    _guard(s.n, MAX_TIGHTNESS_N)
    saturating = saturating_strategies(s)
    vectors = np.array([correlation_vector(DeterministicStrategy.from_index(k, s.n))
                        for k in saturating])
    rank = affine_rank(vectors)
    ambient = 3 ** s.n - 1
    return TightnessReport(s, len(saturating), rank, ambient, rank == ambient - 1)


def ambient_affine_rank(n: int) -> int:
    """Affine rank of all 4^n correlation vectors (should be 3^n - 1)."""
    _guard(n, MAX_TIGHTNESS_N)
    vectors = np.array([correlation_vector(DeterministicStrategy(a, b))
                        for b in product((0, 1), repeat=n) for a in product((0, 1), repeat=n)])
    return affine_rank(vectors)
