"""Continuous-time quantum walk on regular graphs with hopping barriers.

Barriers that hold back a fraction ``eps`` of each hop turn the adjacency
matrix of a ``k``-regular graph into ``k eps I + (1 - eps) A``.  The
identity part only contributes a global phase, so the barrier walk at
time ``t`` equals the barrier-free walk at ``(1 - eps) t``.  The identity
term is deliberately kept in :func:`barrier_adjacency` so that claim can
be checked rather than assumed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "CtqwConfig",
    "CtqwState",
    "Graph",
    "barrier_adjacency",
    "complete",
    "ctqw_evolve",
    "cycle",
    "global_phase",
    "global_phase_distance",
    "localized",
]


@dataclass(frozen=True)
class Graph:
    adjacency: np.ndarray = field(repr=False)
    degree: int = 0

    def __post_init__(self):
        a = np.asarray(self.adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0) or not np.all((a == 0) | (a == 1)):
            raise ValueError("adjacency must be 0/1 with zero diagonal")
        rows = a.sum(axis=1)
        if not np.all(rows == rows[0]):
            raise ValueError("graph is not regular")
        object.__setattr__(self, "adjacency", a.astype(float))
        object.__setattr__(self, "degree", int(rows[0]))

    @property
    def vertices(self) -> int:
        return self.adjacency.shape[0]


def cycle(v: int) -> Graph:
    if v < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {v}")
    a = np.zeros((v, v))
    idx = np.arange(v)
    a[idx, (idx + 1) % v] = 1
    a[(idx + 1) % v, idx] = 1
    return Graph(a)


def complete(v: int) -> Graph:
    if v < 2:
        raise ValueError(f"a complete graph needs at least 2 vertices, got {v}")
    return Graph(np.ones((v, v)) - np.eye(v))


@dataclass(frozen=True)
class CtqwConfig:
    graph: Graph
    gamma: float = 1.0
    eps: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma!r}")
        if not 0.0 <= self.eps < 1.0:
            raise ValueError(f"eps must satisfy 0 <= eps < 1, got {self.eps!r}")


@dataclass(frozen=True)
class CtqwState:
    amplitudes: np.ndarray
    t: float = 0.0


def localized(v: int, vertex: int = 0) -> CtqwState:
    amps = np.zeros(v, dtype=np.complex128)
    amps[vertex] = 1.0
    return CtqwState(amps)


def barrier_adjacency(cfg: CtqwConfig) -> np.ndarray:
    """``k eps I + (1 - eps) A``."""
    g = cfg.graph
    return g.degree * cfg.eps * np.eye(g.vertices) + (1.0 - cfg.eps) * g.adjacency


def ctqw_evolve(
    cfg: CtqwConfig, initial: CtqwState, t: float, use_barriers: bool = True
) -> CtqwState:
    """``exp(-i H t) psi`` with ``H = -gamma A`` (or ``A'`` with barriers).

    Uses the eigendecomposition of the real symmetric Hamiltonian.
    """
    a = barrier_adjacency(cfg) if use_barriers else cfg.graph.adjacency
    psi = np.asarray(initial.amplitudes, dtype=np.complex128)
    if psi.shape != (a.shape[0],):
        raise DimensionMismatch(f"state has shape {psi.shape}, graph has {a.shape[0]} vertices")
    energies, vecs = np.linalg.eigh(-cfg.gamma * a)
    out = vecs @ (np.exp(-1j * energies * t) * (vecs.T @ psi))
    return CtqwState(out, initial.t + t)


def _vectors(a: CtqwState, b: CtqwState):
    x = np.asarray(a.amplitudes)
    y = np.asarray(b.amplitudes)
    if x.shape != y.shape:
        raise DimensionMismatch(f"shapes differ: {x.shape} vs {y.shape}")
    return x, y


def global_phase(a: CtqwState, b: CtqwState) -> complex:
    """Unit phase ``p`` with ``a ~ p * b``, fixed by b's largest component."""
    x, y = _vectors(a, b)
    j = int(np.argmax(np.abs(y)))
    return cmath.exp(1j * (cmath.phase(x[j]) - cmath.phase(y[j])))


def global_phase_distance(a: CtqwState, b: CtqwState) -> float:
    """``max |a - p b|`` after aligning ``b`` to ``a`` with :func:`global_phase`."""
    x, y = _vectors(a, b)
    return float(np.max(np.abs(x - global_phase(a, b) * y)))
