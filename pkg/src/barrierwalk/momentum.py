r"""Momentum-space solution of the barrier walk.

Fourier transforming the one-step recurrence turns the walk into a 2x2
matrix ``M_k`` per momentum ``k``:

.. math::
   M_k = \frac{1}{\sqrt 2}\begin{pmatrix}
         \alpha e^{ik} + \beta & -\alpha e^{ik} + \beta \\
         \alpha e^{-ik} + \beta & \alpha e^{-ik} - \beta
         \end{pmatrix},

with eigenvalues :math:`e^{\pm i\omega_k}`, :math:`\cos\omega_k = \alpha\cos k/\sqrt 2`.
Position amplitudes are recovered by the inverse transform
:math:`\psi(n,t) = \int_{-\pi}^{\pi} \frac{dk}{2\pi}\,\tilde\psi(k,t) e^{-ikn}`,
evaluated here with the periodic midpoint rule.

Two integrand forms are available.  ``"closed"`` uses the reduced form in
which both eigen-branches share the phase :math:`e^{-i(\omega_k t + kn)}`
(obtained by shifting the ``+omega`` branch by ``pi`` in ``k``);
``"direct"`` integrates the eigen-expansion of :math:`\tilde\psi(k,t)`
as it stands.  They agree to rounding at equal node counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEigenvectors, QuadratureNodeSingular, SingularParameterization
from .walk import BarrierParams, CoinState

__all__ = [
    "DispersionPoint",
    "MomentumKernel",
    "QuadratureSpec",
    "closed_form_distribution",
    "closed_form_wavefunctions",
    "kernel",
    "momentum_wavefunction",
    "omega",
    "position_wavefunction",
]

SQRT2 = math.sqrt(2.0)
# closer than this to pi/4 the per-factor closed form blows up at k = pi/2
PI4_EXCLUSION = 1e-9
_DENOM_TOL = 1e-12


@dataclass(frozen=True)
class DispersionPoint:
    k: float
    omega: float
    cos_omega: float
    sin_omega: float


def _dispersion(k, alpha):
    """Vectorised ``(omega, cos omega, sin omega)`` on the ``[0, pi]`` branch."""
    cos_k = np.cos(k)
    c = alpha * cos_k / SQRT2
    s = np.sqrt(2.0 - alpha**2 * cos_k**2) / SQRT2
    return np.arccos(c), c, s


def omega(k: float, alpha: float) -> DispersionPoint:
    """Dispersion relation ``cos(omega_k) = alpha cos(k) / sqrt(2)``.

    >>> round(omega(0.0, 1.0).omega / math.pi, 12)
    0.25
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    w, c, s = _dispersion(k, alpha)
    return DispersionPoint(float(k), float(w), float(c), float(s))


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform midpoint rule with ``nodes`` points on ``[-pi, pi]``.

    Node counts with ``nodes % 4 == 2`` are refused: those are exactly the
    counts that put a midpoint node on ``k = +-pi/2``.
    """

    nodes: int

    def __post_init__(self):
        if self.nodes < 4:
            raise ValueError(f"need at least 4 nodes, got {self.nodes}")
        if self.nodes % 4 == 2:
            raise ValueError(f"{self.nodes} nodes would place a node on k = +-pi/2")

    @classmethod
    def default(cls, t: int) -> QuadratureSpec:
        return cls(max(1024, 16 * t))

    def grid(self) -> np.ndarray:
        h = 2.0 * math.pi / self.nodes
        return -math.pi + (np.arange(self.nodes) + 0.5) * h


@dataclass(frozen=True)
class MomentumKernel:
    """``M_k`` together with its eigenvalues and normalised eigenvectors.

    ``eigenvectors[:, 0]`` belongs to ``e^{+i omega}``, column 1 to ``e^{-i omega}``.
    """

    k: float
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _kernel_matrix(k, alpha, beta):
    e = np.exp(1j * k)
    return np.array(
        [[alpha * e + beta, -alpha * e + beta],
         [alpha / e + beta, alpha / e - beta]],
        dtype=np.complex128,
    ) / SQRT2


def _eigen_branches(k, alpha, beta):
    """Per-branch projection weights and lower eigenvector components.

    For sign ``s = +1, -1`` returns ``w_s`` and ``v_s`` such that the
    normalised eigenvector is ``sqrt(w_s) * (1, v_s)``.  Since ``w_s`` is
    real and positive, ``<psi_s|(1,0)> |psi_s> = w_s * (1, v_s)``.
    """
    k = np.asarray(k, dtype=float)
    w, _, sin_w = _dispersion(k, alpha)
    emk = np.exp(-1j * k)
    denom = alpha - beta * emk
    if np.any(np.abs(denom) < _DENOM_TOL):
        raise DegenerateEigenvectors(
            f"alpha - beta e^(-ik) vanishes (phi = pi/4, k = pi/2)"
        )
    numer = 1.0 + 2j * alpha * beta * np.sin(k)
    out = []
    for s in (1.0, -1.0):
        v = (alpha + beta * emk - SQRT2 * np.exp(1j * (s * w - k))) / denom
        weight = numer / (
            4.0 - 2.0 * SQRT2 * alpha * np.cos(s * w - k)
            + s * 2.0 * SQRT2 * 1j * beta * sin_w
        )
        out.append((weight.real, v))
    return w, out


def kernel(k: float, barriers: BarrierParams) -> MomentumKernel:
    alpha, beta = barriers.alpha, barriers.beta
    w, ((wp, vp), (wm, vm)) = _eigen_branches(k, alpha, beta)
    vecs = np.array(
        [[math.sqrt(wp), math.sqrt(wm)],
         [math.sqrt(wp) * complex(vp), math.sqrt(wm) * complex(vm)]],
        dtype=np.complex128,
    )
    vals = np.exp(np.array([1j, -1j]) * float(w))
    return MomentumKernel(float(k), _kernel_matrix(k, alpha, beta), vals, vecs)


def _momentum_components(k, t, alpha, beta):
    w, ((wp, vp), (wm, vm)) = _eigen_branches(k, alpha, beta)
    ep = np.exp(1j * w * t)
    em = np.conj(ep)
    left = ep * wp + em * wm
    right = ep * wp * vp + em * wm * vm
    return left, right


def momentum_wavefunction(k: float, t: int, barriers: BarrierParams) -> CoinState:
    """``(M_k)^t (1, 0)`` through the eigen-expansion."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    left, right = _momentum_components(k, t, barriers.alpha, barriers.beta)
    return CoinState(complex(left), complex(right))


def _check_phi(barriers: BarrierParams):
    if abs(barriers.phi - math.pi / 4) < PI4_EXCLUSION:
        raise SingularParameterization(
            "phi = pi/4 is singular for the closed-form integrals; "
            "use the step-by-step simulation instead"
        )


def _closed_integrands(k, t, alpha, beta):
    """Four integrand pieces of the reduced form (phase factor included).

    ``psi_L(n) = (-1)^(n+t) F[a_L](n) + F[b_L](n)``, likewise for ``R``.
    """
    w, _, sin_w = _dispersion(k, alpha)
    emk = np.exp(-1j * k)
    if np.any(np.abs(alpha - beta * emk) < _DENOM_TOL) or np.any(
        np.abs(alpha + beta * emk) < _DENOM_TOL
    ):
        raise QuadratureNodeSingular("a node sits on alpha +- beta e^(-ik) = 0")
    ab_sin = 2j * alpha * beta * np.sin(k)
    base = 4.0 - 2.0 * SQRT2 * alpha * np.cos(w + k)
    b_sin = 2.0 * SQRT2 * 1j * beta * sin_w
    tail = SQRT2 * np.exp(-1j * (w + k))
    phase = np.exp(-1j * w * t)

    first = (1.0 - ab_sin) / (base + b_sin) * phase
    second = (1.0 + ab_sin) / (base - b_sin) * phase
    first_r = first * (alpha - beta * emk - tail) / (alpha + beta * emk)
    second_r = second * (alpha + beta * emk - tail) / (alpha - beta * emk)
    return first, second, first_r, second_r


def _midpoint_transform(values: np.ndarray, ns: np.ndarray) -> np.ndarray:
    """``(1/N) sum_j f(k_j) exp(-i k_j n)`` on the midpoint grid, via FFT."""
    n_nodes = len(values)
    spectrum = np.fft.fft(values)
    ns = np.asarray(ns)
    sign = np.where(ns % 2 == 0, 1.0, -1.0)
    return sign * np.exp(-1j * math.pi * ns / n_nodes) * spectrum[ns % n_nodes] / n_nodes


def closed_form_wavefunctions(
    ns,
    t: int,
    barriers: BarrierParams,
    quad: QuadratureSpec | None = None,
    form: str = "closed",
) -> tuple[np.ndarray, np.ndarray]:
    """Position amplitudes ``(psi_L, psi_R)`` at every ``n`` in ``ns``.

    Parameters
    ----------
    ns : array_like of int
        Lattice positions.
    t : int
        Number of steps.
    barriers : BarrierParams
        Must keep ``|phi - pi/4| >= 1e-9``.
    quad : QuadratureSpec, optional
        Defaults to ``QuadratureSpec.default(t)``.
    form : {"closed", "direct"}
        Which integrand to use; see the module docstring.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    _check_phi(barriers)
    quad = quad or QuadratureSpec.default(t)
    ns = np.atleast_1d(np.asarray(ns, dtype=np.int64))
    k = quad.grid()
    alpha, beta = barriers.alpha, barriers.beta

    if form == "closed":
        first, second, first_r, second_r = _closed_integrands(k, t, alpha, beta)
        parity = np.where((ns + t) % 2 == 0, 1.0, -1.0)
        # the shared factor exp(-ikn) is applied by the transform
        left = parity * _midpoint_transform(first, ns) + _midpoint_transform(second, ns)
        right = parity * _midpoint_transform(first_r, ns) + _midpoint_transform(second_r, ns)
    elif form == "direct":
        mom_l, mom_r = _momentum_components(k, t, alpha, beta)
        left = _midpoint_transform(mom_l, ns)
        right = _midpoint_transform(mom_r, ns)
    else:
        raise ValueError(f"form must be 'closed' or 'direct', got {form!r}")
    return left, right


def position_wavefunction(
    n: int,
    t: int,
    barriers: BarrierParams,
    quad: QuadratureSpec | None = None,
    form: str = "closed",
) -> CoinState:
    left, right = closed_form_wavefunctions([n], t, barriers, quad, form)
    return CoinState(complex(left[0]), complex(right[0]))


def closed_form_distribution(
    t: int,
    barriers: BarrierParams,
    quad: QuadratureSpec | None = None,
) -> dict[int, float]:
    """Probability at each ``n`` in ``[-t, t]`` from the closed-form integrals."""
    ns = np.arange(-t, t + 1)
    left, right = closed_form_wavefunctions(ns, t, barriers, quad)
    probs = np.abs(left) ** 2 + np.abs(right) ** 2
    return {int(n): float(p) for n, p in zip(ns, probs)}
