"""Discrete-time coined quantum walk on the line.

The walker lives on a finite window of the integer lattice that is wide
enough to hold the whole light cone of the requested number of steps, so
the truncation is exact: nothing ever reaches the edge.

One step is the Hadamard coin followed by a (possibly barrier-modified)
shift ``alpha * S + beta * I``.  Both the flip-flop shift, which flips the
coin state while hopping, and the moving shift, which keeps it, are
supported.  Only the flip-flop variant stays unitary once barriers are
switched on; the moving variant is still allowed so that its loss of
norm can be demonstrated, and the result is marked ``unitary=False``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field, replace
from typing import NamedTuple

import numpy as np

from .errors import BoundaryOverflow, BudgetExceeded

__all__ = [
    "BarrierParams",
    "CoinState",
    "InitialState",
    "ShiftKind",
    "SpinorField",
    "apply_coin",
    "apply_shift",
    "evolve",
    "new_field",
    "probabilities",
    "step",
]

INV_SQRT2 = 1.0 / math.sqrt(2.0)


class ShiftKind(enum.Enum):
    FLIP_FLOP = "flipflop"
    MOVING = "moving"


class InitialState(enum.Enum):
    """Localized starting states at the origin."""

    LEFT_LOCALIZED = "left"
    UNBIASED = "unbiased"

    def coin(self) -> CoinState:
        if self is InitialState.LEFT_LOCALIZED:
            return CoinState(1.0 + 0j, 0j)
        return CoinState(INV_SQRT2 + 0j, 1j * INV_SQRT2)


class CoinState(NamedTuple):
    """Left- and right-moving amplitudes at a single site."""

    left: complex
    right: complex


@dataclass(frozen=True)
class BarrierParams:
    """Tunneling amplitudes ``alpha = cos(phi)`` and ``beta = i sin(phi)``.

    ``phi = 0`` is the barrier-free walk, ``phi = pi/2`` a walker that
    never hops.
    """

    phi: float

    def __post_init__(self):
        if not (0.0 <= self.phi <= math.pi / 2) or math.isnan(self.phi):
            raise ValueError(f"phi must lie in [0, pi/2], got {self.phi!r}")

    @classmethod
    def from_alpha(cls, alpha: float) -> BarrierParams:
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
        return cls(math.acos(alpha))

    @property
    def alpha(self) -> float:
        return math.cos(self.phi)

    @property
    def beta(self) -> complex:
        return 1j * math.sin(self.phi)


def _resolve(barriers: BarrierParams | None) -> tuple[float, complex]:
    if barriers is None:
        return 1.0, 0j
    return barriers.alpha, barriers.beta


@dataclass(frozen=True)
class SpinorField:
    """Two-component wavefunction on the lattice window.

    ``amplitudes[j]`` holds ``(psi_L, psi_R)`` at position ``offset + j``.
    ``budget`` is the number of steps the window was sized for and ``t``
    the number already taken.
    """

    offset: int
    amplitudes: np.ndarray = dc_field(repr=False)
    t: int = 0
    budget: int = 0
    unitary: bool = True

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self.amplitudes))

    def amplitude(self, n: int) -> CoinState:
        j = n - self.offset
        if not 0 <= j < len(self.amplitudes):
            return CoinState(0j, 0j)
        left, right = self.amplitudes[j]
        return CoinState(complex(left), complex(right))

    def probability_array(self) -> np.ndarray:
        """Probability at every stored position, guard sites included."""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def norm(self) -> float:
        return math.sqrt(math.fsum(self.probability_array()))


def new_field(steps_budget: int, init: InitialState | CoinState) -> SpinorField:
    """Localize the walker at the origin in a window for ``steps_budget`` steps.

    ``init`` may also be an arbitrary :class:`CoinState`, which is stored
    as given (not normalized).
    """
    if steps_budget < 0:
        raise ValueError(f"steps_budget must be >= 0, got {steps_budget}")
    radius = steps_budget + 1
    amps = np.zeros((2 * radius + 1, 2), dtype=np.complex128)
    coin = init.coin() if isinstance(init, InitialState) else CoinState(*init)
    amps[radius] = coin
    return SpinorField(offset=-radius, amplitudes=amps, t=0, budget=steps_budget)


def apply_coin(field: SpinorField) -> SpinorField:
    """Hadamard coin at every site."""
    left = field.amplitudes[:, 0]
    right = field.amplitudes[:, 1]
    amps = np.empty_like(field.amplitudes)
    amps[:, 0] = (left + right) * INV_SQRT2
    amps[:, 1] = (left - right) * INV_SQRT2
    return replace(field, amplitudes=amps)


def apply_shift(
    field: SpinorField,
    kind: ShiftKind,
    barriers: BarrierParams | None = None,
) -> SpinorField:
    """Apply ``alpha * S + beta * I`` for the chosen shift ``S``.

    Raises
    ------
    BoundaryOverflow
        If a hopping amplitude sits on the outermost stored site.
    """
    alpha, beta = _resolve(barriers)
    src = field.amplitudes
    left, right = src[:, 0], src[:, 1]
    if alpha != 0.0 and (left[0] != 0 or right[-1] != 0):
        raise BoundaryOverflow(
            f"amplitude at window edge (t={field.t}, budget={field.budget})"
        )

    amps = beta * src if beta != 0 else np.zeros_like(src)
    if kind is ShiftKind.FLIP_FLOP:
        amps[:-1, 1] += alpha * left[1:]   # |n,L> -> |n-1,R>
        amps[1:, 0] += alpha * right[:-1]  # |n,R> -> |n+1,L>
    elif kind is ShiftKind.MOVING:
        amps[:-1, 0] += alpha * left[1:]   # |n,L> -> |n-1,L>
        amps[1:, 1] += alpha * right[:-1]  # |n,R> -> |n+1,R>
    else:
        raise TypeError(f"unknown shift kind {kind!r}")

    unitary = field.unitary and (kind is ShiftKind.FLIP_FLOP or beta == 0)
    return replace(field, amplitudes=amps, unitary=unitary)


def step(
    field: SpinorField,
    kind: ShiftKind = ShiftKind.FLIP_FLOP,
    barriers: BarrierParams | None = None,
) -> SpinorField:
    """One application of ``U = (alpha S + beta I)(I x H)``."""
    out = apply_shift(apply_coin(field), kind, barriers)
    return replace(out, t=field.t + 1)


def evolve(
    field: SpinorField,
    kind: ShiftKind = ShiftKind.FLIP_FLOP,
    barriers: BarrierParams | None = None,
    t: int = 1,
) -> SpinorField:
    """Apply :func:`step` ``t`` times."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if field.t + t > field.budget:
        raise BudgetExceeded(
            f"{t} more steps from t={field.t} exceeds budget {field.budget}"
        )
    for _ in range(t):
        field = step(field, kind, barriers)
    return field


def probabilities(field: SpinorField) -> dict[int, float]:
    """Map position -> probability over the light cone ``[-t, t]``."""
    probs = field.probability_array()
    lo = -field.t - field.offset
    return {
        int(n): float(p)
        for n, p in zip(range(-field.t, field.t + 1), probs[lo:lo + 2 * field.t + 1])
    }
