"""Dense state vectors for generalized GHZ states and product-projector events.

Index convention: little-endian, qubit 1 is the lowest bit of the
computational-basis index. Every module in the package uses it.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import PostconditionError, ResourceLimitError

TWO_PI = 2.0 * math.pi
NORM_TOL = 1e-12
CLAMP_TOL = 1e-12
MAX_QUBITS = int(os.environ.get("HARDYLAB_MAX_QUBITS", "14"))


def wrap_angle(theta: float) -> float:
    """Reduce an angle into [0, 2pi)."""
    w = math.fmod(theta, TWO_PI)
    if w < 0:
        w += TWO_PI
    if w >= TWO_PI:
        w = 0.0
    return w


def angle_distance(a: float, b: float) -> float:
    d = wrap_angle(a - b)
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class GhzState:
    """``h0|0..0> + h1|1..1>`` with ``gamma = |h1|/|h0|`` and ``arg h1 = theta_h``."""

    n: int
    gamma: float
    theta_h: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive (got {self.n})")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be finite and > 0 (got {self.gamma})")

    @property
    def h0(self) -> float:
        return 1.0 / math.sqrt(1.0 + self.gamma ** 2)

    @property
    def h1_abs(self) -> float:
        return self.gamma / math.sqrt(1.0 + self.gamma ** 2)

    @property
    def h1(self) -> complex:
        return self.h1_abs * cmath.exp(1j * self.theta_h)


@dataclass(frozen=True)
class SingleQubitBasis:
    """Measurement direction ``c0|0> + c1 e^{i phi}|1>`` with c0, c1 >= 0."""

    c0: float
    c1: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if self.c0 < 0 or self.c1 < 0:
            raise ValueError("amplitudes must be nonnegative")
        if abs(self.c0 ** 2 + self.c1 ** 2 - 1.0) > NORM_TOL:
            raise ValueError(f"basis not normalized: c0^2 + c1^2 = {self.c0 ** 2 + self.c1 ** 2!r}")
        object.__setattr__(self, "phi", wrap_angle(self.phi))

    @classmethod
    def from_ratio(cls, ratio: float, phi: float) -> "SingleQubitBasis":
        """Direction with ``c0/c1 = ratio``."""
        norm = math.hypot(ratio, 1.0)
        return cls(ratio / norm, 1.0 / norm, phi)

    def complement(self) -> "SingleQubitBasis":
        """Orthogonal direction ``c1|0> + c0 e^{i(phi+pi)}|1>``."""
        return SingleQubitBasis(self.c1, self.c0, self.phi + math.pi)

    def vector(self) -> np.ndarray:
        return np.array([self.c0, self.c1 * cmath.exp(1j * self.phi)], dtype=complex)


PLUS_X = SingleQubitBasis(math.sqrt(0.5), math.sqrt(0.5), 0.0)
PLUS_Y = SingleQubitBasis(math.sqrt(0.5), math.sqrt(0.5), math.pi / 2)


@dataclass(frozen=True)
class Event:
    """Rank-1 product projector; ``bases[k]`` acts on qubit k+1."""

    bases: tuple[SingleQubitBasis, ...]

    def __init__(self, bases: Sequence[SingleQubitBasis]):
        object.__setattr__(self, "bases", tuple(bases))

    @property
    def n(self) -> int:
        return len(self.bases)

    def vector(self) -> np.ndarray:
        # Kronecker order puts the last factor on the lowest bit, so reverse.
        return reduce(np.kron, [b.vector() for b in reversed(self.bases)])


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        size = amps.shape[0]
        if amps.ndim != 1 or size < 2 or size & (size - 1):
            raise ValueError("state vector length must be a power of two >= 2")
        if abs(np.vdot(amps, amps).real - 1.0) > 1e-10:
            raise ValueError("state vector is not normalized")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1


def make_ghz(state: GhzState) -> StateVector:
    if state.n > MAX_QUBITS:
        raise ResourceLimitError(f"n={state.n} exceeds the state-vector limit of {MAX_QUBITS} qubits")
    amps = np.zeros(2 ** state.n, dtype=complex)
    amps[0] = state.h0
    amps[-1] = state.h1
    return StateVector(amps)


def _checked_probability(p: float) -> float:
    if p < -CLAMP_TOL or p > 1.0 + CLAMP_TOL:
        raise PostconditionError(f"probability {p!r} outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def event_probability(psi: StateVector, event: Event) -> float:
    """``|<phi_e|psi>|^2`` for a product event."""
    if event.n != psi.n:
        raise ValueError(f"event acts on {event.n} qubits, state has {psi.n}")
    amp = np.vdot(event.vector(), psi.amplitudes)
    return _checked_probability(float(abs(amp) ** 2))


def closed_form_event_probability(state: GhzState, settings, kind: str, subset_size: int = 0) -> float:
    """Probability of the symmetric events on a generalized GHZ state.

    ``kind`` selects the event:

    ``alpha_zero``
        b-basis on ``subset_size`` qubits, a-basis on the rest.
    ``beta_zero``
        complement b-basis on ``subset_size`` qubits, a-basis on the rest.
    ``success``
        a-basis on every qubit (``subset_size`` ignored).

    ``settings`` is any object with ``a_basis`` and ``b_basis`` attributes.
    """
    n = state.n
    a, b = settings.a_basis, settings.b_basis
    h0, h1 = state.h0, state.h1_abs
    if kind == "success":
        k = 0
        first = a.c0 ** n * h0
        second = a.c1 ** n * h1
        phase = n * a.phi - state.theta_h
    elif kind in ("alpha_zero", "beta_zero"):
        k = subset_size
        if not 0 <= k <= n:
            raise ValueError(f"subset size {k} out of range for n={n}")
        rest = n - k
        phase = rest * a.phi + k * b.phi - state.theta_h
        if kind == "alpha_zero":
            first = b.c0 ** k * a.c0 ** rest * h0
            second = b.c1 ** k * a.c1 ** rest * h1
        else:
            first = b.c1 ** k * a.c0 ** rest * h0
            second = b.c0 ** k * a.c1 ** rest * h1
            phase += (k % 2) * math.pi
    else:
        raise ValueError(f"unknown event kind {kind!r}")
    value = abs(first + second * cmath.exp(1j * wrap_angle(phase))) ** 2
    return _checked_probability(value)


def mixed_event_probability(p_pure: float, visibility: float, n: int) -> float:
    """Event probability after mixing with white noise at the given visibility."""
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1] (got {visibility})")
    return visibility * p_pure + (1.0 - visibility) / 2 ** n
