"""Transfer matrix of an arbitrary finite-range potential by direct evolution.

Writing the wave as ``psi = A(x) e^{ikx} + B(x) e^{-ikx}`` with the usual
derivative constraint, the Schrodinger equation becomes a linear evolution
for the coefficient pair,

    d/dx (A, B)^T = v(x)/(2ik) [[1, e^{-2ikx}], [-e^{2ikx}, -1]] (A, B)^T,

and the transfer matrix is the propagator of this system across the
support.  The generator is trace-free, so det M = 1 up to integration
error.  Integration runs in the position variable throughout, which keeps
every auxiliary quantity single-valued however many times the phase
``e^{-2ikx}`` wraps the unit circle.

The solver is an embedded Dormand-Prince 5(4) pair with a PI step
controller (safety 0.9).  An independent shooting solver for the same
amplitudes lives in :mod:`scatter1d.shooting` and shares no code with
this path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (ConvergenceError, DegenerateDenominatorError, DomainError,
                     NearZeroError, SpectralSingularityError)
from .potential import PotentialSpec, evaluate_potential

#: |M22| below which amplitude extraction refuses to divide and instead
#: signals a spectral singularity.
SINGULARITY_EPS = 1e-8

_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
# Difference between the 5th- and 4th-order weights (error estimator).
_DP_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex
    k: float

    def determinant(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """(R_left, R_right, T), optionally with the conjugate potential's R_right."""

    r_left: complex
    r_right: complex
    t: complex
    r_right_conj_potential: Optional[complex] = None


@dataclass(frozen=True)
class SampledPotential:
    """A finite-range potential given by its support and an evaluator.

    The evaluator is only consulted inside the support; callers promise
    v(x) = 0 outside it.
    """

    support: tuple[float, float]
    evaluate: Callable[[float], complex]

    @classmethod
    def from_spec(cls, spec: PotentialSpec) -> "SampledPotential":
        return cls(support=(0.0, spec.L),
                   evaluate=lambda x: evaluate_potential(spec, x))

    def conjugate(self) -> "SampledPotential":
        ev = self.evaluate
        return SampledPotential(support=self.support,
                                evaluate=lambda x: ev(x).conjugate())


def _integrate_rk45(rhs: Callable[[float, np.ndarray], np.ndarray],
                    x0: float, x1: float, y0: np.ndarray,
                    rtol: float, atol: float,
                    on_accept: Optional[Callable[[float, np.ndarray], None]] = None,
                    max_steps: int = 2_000_000) -> np.ndarray:
    """Dormand-Prince 5(4) with a PI controller for complex vector ODEs."""
    y = np.asarray(y0, dtype=complex).copy()
    span = x1 - x0
    if span == 0.0:
        return y
    x = x0
    h = 0.01 * span
    k_stages = [rhs(x, y)] + [None] * 6
    err_prev = 1.0
    for _ in range(max_steps):
        remaining = x1 - x
        if abs(h) >= abs(remaining):
            h = remaining
            last = True
        else:
            last = False
        for i in range(1, 7):
            yi = y.copy()
            for j, a in enumerate(_DP_A[i]):
                if a != 0.0:
                    yi += (h * a) * k_stages[j]
            k_stages[i] = rhs(x + _DP_C[i] * h, yi)
        y_new = y.copy()
        for j, a in enumerate(_DP_A[6]):
            if a != 0.0:
                y_new += (h * a) * k_stages[j]
        k_stages[6] = rhs(x + h, y_new)
        err_vec = np.zeros_like(y)
        for j, e in enumerate(_DP_E):
            if e != 0.0:
                err_vec += (h * e) * k_stages[j]
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean(np.abs(err_vec / scale) ** 2)))
        if err <= 1.0:
            x += h
            y = y_new
            k_stages[0] = k_stages[6]
            if on_accept is not None:
                on_accept(x, y)
            if last:
                return y
            factor = 0.9 * (err + 1e-300) ** -0.17 * err_prev ** 0.04
            err_prev = max(err, 1e-10)
        else:
            factor = max(0.2, 0.9 * err ** -0.2)
        h *= min(5.0, max(0.2, factor))
        if abs(h) < 1e-14 * abs(span):
            raise ConvergenceError(f"step-size underflow near x={x!r}")
    raise ConvergenceError("step budget exhausted")


def transfer_matrix(pot: SampledPotential, k: float, tol: float = 1e-10) -> TransferMatrix:
    """M(k) by integrating the coefficient evolution across the support.

    ``tol`` is the local error target per step; the controller's margin
    keeps the accumulated error of the same order for supports up to a few
    thousand phase oscillations.
    """
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError("k must be positive and finite")
    if not 0.0 < tol <= 1e-3:
        raise DomainError("tol must lie in (0, 1e-3]")
    a_lo, a_hi = pot.support
    v = pot.evaluate
    two_ik = 2j * k

    def rhs(x: float, y: np.ndarray) -> np.ndarray:
        vx = v(x)
        if vx == 0:
            return np.zeros(4, dtype=complex)
        c = vx / two_ik
        e = cmath.exp(-two_ik * x)
        u11, u12, u21, u22 = y
        return np.array([
            c * (u11 + e * u21),
            c * (u12 + e * u22),
            -c * (u11 / e + u21),
            -c * (u12 / e + u22),
        ])

    y = _integrate_rk45(rhs, a_lo, a_hi, np.array([1, 0, 0, 1], dtype=complex),
                        rtol=0.05 * tol, atol=0.05 * tol)
    return TransferMatrix(m11=y[0], m12=y[1], m21=y[2], m22=y[3], k=k)


def amplitudes_from_matrix(M: TransferMatrix,
                           singularity_eps: float = SINGULARITY_EPS) -> ScatteringAmplitudes:
    """(R_left, R_right, T) from the matrix entries.

    Raises :class:`SpectralSingularityError` when |M22| < ``singularity_eps``,
    which is the numerical detection hook for poles of T on the real k axis.
    """
    mag = abs(M.m22)
    if mag < singularity_eps:
        raise SpectralSingularityError(
            f"|M22|={mag:.3e} below {singularity_eps:.1e}: spectral singularity", mag)
    t = 1.0 / M.m22
    return ScatteringAmplitudes(r_left=-M.m21 / M.m22, r_right=M.m12 / M.m22, t=t)


def matrix_from_amplitudes(amps: ScatteringAmplitudes, k: float) -> TransferMatrix:
    """Inverse of :func:`amplitudes_from_matrix`; used as a consistency check."""
    t = amps.t
    return TransferMatrix(m11=t - amps.r_left * amps.r_right / t,
                          m12=amps.r_right / t,
                          m21=-amps.r_left / t,
                          m22=1.0 / t,
                          k=k)


def amplitudes_numeric(pot: SampledPotential, k: float,
                       tol: float = 1e-10) -> ScatteringAmplitudes:
    """Convenience wrapper: integrate, then convert the matrix."""
    return amplitudes_from_matrix(transfer_matrix(pot, k, tol))


def left_reflection_via_conjugate(pot: SampledPotential, k: float,
                                  tol: float = 1e-10) -> complex:
    """R_left through the time-reversal relation.

    Runs the evolution for the potential and for its complex conjugate and
    combines R_left = T^2 conj(R^r_{v*}) / (R^r conj(R^r_{v*}) - 1).
    """
    M = transfer_matrix(pot, k, tol)
    amps = amplitudes_from_matrix(M)
    Mc = transfer_matrix(pot.conjugate(), k, tol)
    rr_conj_star = (Mc.m12 / Mc.m22).conjugate()
    denom = amps.r_right * rr_conj_star - 1.0
    if abs(denom) < 1e-12:
        raise DegenerateDenominatorError(
            "R^r * conj(R^r_{v*}) - 1 vanishes; the relation's excluded case")
    return amps.t * amps.t * rr_conj_star / denom


def s_boundary(pot: SampledPotential, k: float,
               tol: float = 1e-10) -> tuple[complex, complex]:
    """Boundary pair (S0, S1) of the auxiliary second-order system at a_plus.

    S0(x) and S1(x) track a solution S and its z-derivative along the phase
    contour z = e^{-2ikx}; in the position parametrization they obey
    S0' = -2ik z S1 and S1' = i v(x)/(2kz) S0 with S0(a_minus) = z(a_minus),
    S1(a_minus) = 1.  T = 1/S1(a_plus) and R^r = S0/S1(a_plus) - z(a_plus).
    """
    s0, s1, _ = _evolve_s(pot, k, tol, want_integral=False)
    return s0, s1


def left_reflection_integral(pot: SampledPotential, k: float,
                             tol: float = 1e-10) -> complex:
    """R_left as the contour integral -int S''/(S S'^2) dz, in x form.

    After eliminating S'' through the defining equation the integrand is
    -i v(x) e^{2ikx} / (2k S1(x)^2), accumulated alongside the evolution
    of (S0, S1).  Raises :class:`NearZeroError` if the path passes within
    1e-10 of a zero of S0 or S1 (callers should fall back to
    :func:`left_reflection_via_conjugate`).
    """
    _, _, integral = _evolve_s(pot, k, tol, want_integral=True)
    return integral


def _evolve_s(pot: SampledPotential, k: float, tol: float,
              want_integral: bool) -> tuple[complex, complex, complex]:
    if not (k > 0.0 and math.isfinite(k)):
        raise DomainError("k must be positive and finite")
    if not 0.0 < tol <= 1e-3:
        raise DomainError("tol must lie in (0, 1e-3]")
    a_lo, a_hi = pot.support
    v = pot.evaluate
    two_ik = 2j * k

    def rhs(x: float, y: np.ndarray) -> np.ndarray:
        z = cmath.exp(-two_ik * x)
        s0, s1 = y[0], y[1]
        ds0 = -two_ik * z * s1
        vx = v(x)
        ds1 = 0.5j * vx / (k * z) * s0
        if want_integral:
            dint = -0.5j * vx / (k * z * s1 * s1)
            return np.array([ds0, ds1, dint])
        return np.array([ds0, ds1, 0.0 + 0j])

    smallest = [math.inf]

    def watch(_x: float, y: np.ndarray) -> None:
        smallest[0] = min(smallest[0], abs(y[0]), abs(y[1]))

    z_lo = cmath.exp(-two_ik * a_lo)
    y0 = np.array([z_lo, 1.0, 0.0], dtype=complex)
    y = _integrate_rk45(rhs, a_lo, a_hi, y0, rtol=0.05 * tol, atol=0.05 * tol,
                        on_accept=watch)
    if want_integral and smallest[0] < 1e-10:
        raise NearZeroError(
            f"integration path passed within {smallest[0]:.1e} of a zero of S0/S1",
            location=a_hi)
    return complex(y[0]), complex(y[1]), complex(y[2])
