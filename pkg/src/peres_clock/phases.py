"""Reflection phases: the quantity the quantum clock differentiates.

For a stationary scattering state the observable is the phase difference
between the reflected and incident components at a probe point x = -X < 0,

    dtheta(E; X) = arg(reflected) - arg(incident),

oriented and branch-resolved so that dtheta is smooth in E and its energy
derivative (the clock reading, hbar d dtheta / dE) is a positive elapsed
time with the classical ballistic part appearing with a + sign.  Additive
constants are irrelevant: the clock only sees d/dE.

Closed forms implemented here:

* step (0 < E < V0):      2 k d + pi + 2 arctan(k / p)
  from the reflection amplitude A = -(p + i k)/(p - i k), |A| = 1.

* exponential wall:       2 k X - 2 (k/beta) ln(2 m alpha / (hbar beta)^2)
                          + 2 arg Gamma(1 + 2 i k / beta) + pi
  from the small-argument limit of the MacDonald-function eigenstate
  K_{2ik/beta}((8 m alpha)^(1/2) e^(beta x / 2) / (hbar beta)).  The
  equivalent phase factor phi = arg Gamma^{-1}(2ik/beta), resolved
  continuously from phi -> pi/2 as k -> 0, is exposed separately; for
  large beta, phi approaches pi - arctan(beta / (2 k gamma_E)).

* gravity, far field (z = (b+X)/a >= 10):   2 zeta + pi/2,
  zeta = (2/3) z^(3/2), from the oscillatory Airy asymptotics; the
  incident and reflected components are the complex conjugate travelling
  waves (1/2 sqrt(pi)) z^(-1/4) exp(-+ i (zeta - pi/4)).

* gravity, near the turning point (z >= 0 small, validity z <~ 0.5):
      arctan( 2 sqrt(3) [3^(2/3) G(2/3) z - 3^(4/3) G(4/3)]
                       / [3^(2/3) G(2/3) z + 3^(4/3) G(4/3)] )
  from the leading small-argument Bessel expansion of the Airy state;
  continuous on z >= 0 since the denominator never vanishes.

Branch policy: every arctan-based phase is anchored by continuity from a
fixed limit (E -> 0 for the step, k -> 0 for the exponential, z -> 0 for
the near-turning form) rather than by principal values.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import atan, atan2, gamma, isfinite, log, pi, sqrt

from .errors import DomainError, RegimeError
from .potentials import ScatteringState
from .specfun import arg_gamma_one_plus_imag
from .units import GravityScales

REGIME_STEP = "step"
REGIME_EXPONENTIAL = "exponential"
REGIME_GRAVITY_FAR = "gravity_far_field"
REGIME_GRAVITY_NEAR = "gravity_near_turning"


@dataclass(frozen=True)
class PhaseResult:
    """Unwrapped reflected-minus-incident phase and its decomposition.

    ``total == propagation + reflection`` exactly; ``propagation`` is the
    2kX-type accumulation over the free flight, ``reflection`` the
    amplitude-argument contribution of the turnaround.
    """

    total: float
    propagation: float
    reflection: float
    regime: str


@dataclass(frozen=True)
class ReflectionAmplitude:
    """Complex reflection amplitude; unit modulus for total reflection."""

    value: complex


def step_amplitude(state: ScatteringState, v0: float) -> ReflectionAmplitude:
    """Reflection amplitude A = -(p + ik)/(p - ik) of the step, E < V0."""
    _require_below_barrier(state, v0)
    k = state.k
    p = state.p
    assert p is not None
    a = -(p + 1j * k) / (p - 1j * k)
    return ReflectionAmplitude(value=a)


def step_phase(state: ScatteringState, v0: float, d: float) -> PhaseResult:
    """Reflection phase for the step potential probed at x = -d.

    The reflection term pi + 2 arctan(k/p) is the branch of arg A that is
    continuous from the hard-wall limit arg(-1) = pi at E -> 0; it grows
    monotonically to 2 pi as E -> V0.
    """
    _require_below_barrier(state, v0)
    if not (isfinite(d) and d >= 0.0):
        raise DomainError("d must be >= 0")
    k = state.k
    p = state.p
    assert p is not None
    propagation = 2.0 * k * d
    reflection = pi + 2.0 * atan2(k, p)
    return PhaseResult(
        total=propagation + reflection,
        propagation=propagation,
        reflection=reflection,
        regime=REGIME_STEP,
    )


def _require_below_barrier(state: ScatteringState, v0: float) -> None:
    if not (isfinite(v0) and v0 > 0):
        raise DomainError("V0 must be positive")
    if state.E >= v0:
        raise DomainError("step reflection requires E < V0")
    if state.p is None:
        raise DomainError("state was not built against a step potential")


def exp_phase_factor(k: float, beta: float) -> float:
    """Phase phi of the reciprocal-Gamma reflection factor, arg 1/Gamma(2ik/beta).

    Branch-resolved by continuity from phi(k -> 0+) = pi/2.  Identity used:
    arg Gamma(2ik/beta) = arg Gamma(1 + 2ik/beta) - pi/2, with the
    right-hand arg tracked continuously.
    """
    if not (isfinite(k) and k > 0):
        raise DomainError("k must be positive")
    if not (isfinite(beta) and beta > 0):
        raise DomainError("beta must be positive")
    w = 2.0 * k / beta
    return 0.5 * pi - arg_gamma_one_plus_imag(w)


def exp_phase(state: ScatteringState, alpha: float, beta: float, X: float) -> PhaseResult:
    """Reflection phase for the exponential wall probed at x = -X.

    Valid when the probe sits in the asymptotic region (beta * X >> 1 is
    assumed, not enforced).  Propagation component 2kX; the reflection
    component carries the Gamma phase and the beta-dependent logarithm.
    """
    if not (isfinite(alpha) and alpha > 0):
        raise DomainError("alpha must be positive")
    if not (isfinite(beta) and beta > 0):
        raise DomainError("beta must be positive")
    if not (isfinite(X) and X >= 0.0):
        raise DomainError("X must be >= 0")
    hbar = state.units.hbar
    m = state.particle.m_inertial
    k = state.k
    w = 2.0 * k / beta
    ln_scale = log(2.0 * m * alpha / (hbar * beta) ** 2)
    propagation = 2.0 * k * X
    reflection = -(w * ln_scale) + 2.0 * arg_gamma_one_plus_imag(w) + pi
    return PhaseResult(
        total=propagation + reflection,
        propagation=propagation,
        reflection=reflection,
        regime=REGIME_EXPONENTIAL,
    )


GRAVITY_FAR_MIN_Z = 10.0


def gravity_phase_far(
    scales: GravityScales, state: ScatteringState, g: float, X: float
) -> PhaseResult:
    """Far-field reflection phase 2 zeta + pi/2 for uniform gravity.

    Requires z = (b + X)/a >= 10; below that the asymptotic expansion the
    formula rests on is not trustworthy and callers must use the
    near-turning form or the numerical oracle.
    """
    if not (isfinite(X) and X >= 0.0):
        raise DomainError("X must be >= 0")
    z = (scales.b + X) / scales.a
    if z < GRAVITY_FAR_MIN_Z:
        raise RegimeError(
            f"far-field phase needs (b + X)/a >= {GRAVITY_FAR_MIN_Z}, got z = {z:.3f}"
        )
    zeta = (2.0 / 3.0) * z**1.5
    return PhaseResult(
        total=2.0 * zeta + 0.5 * pi,
        propagation=2.0 * zeta,
        reflection=0.5 * pi,
        regime=REGIME_GRAVITY_FAR,
    )


# Coefficients of the near-turning-point phase: 3^(2/3) Gamma(2/3) multiplies
# z, 3^(4/3) Gamma(4/3) the constant.
_NEAR_P = 3.0 ** (2.0 / 3.0) * gamma(2.0 / 3.0)
_NEAR_Q = 3.0 ** (4.0 / 3.0) * gamma(4.0 / 3.0)


def gravity_phase_near(z: float) -> PhaseResult:
    """Reflection phase just below the classical turning point.

    ``z`` is the scaled distance (b - x)/a >= 0 of the probe below the
    turning point; the expansion is accurate for z <~ 0.5.  The ratio
    inside the arctan runs from -1 at z = 0 toward +1, so the principal
    branch is already the continuous one.
    """
    if not isfinite(z) or z < 0.0:
        raise DomainError("z must be >= 0")
    r = (_NEAR_P * z - _NEAR_Q) / (_NEAR_P * z + _NEAR_Q)
    total = atan(2.0 * sqrt(3.0) * r)
    return PhaseResult(
        total=total,
        propagation=0.0,
        reflection=total,
        regime=REGIME_GRAVITY_NEAR,
    )


def current_density(value: complex, derivative: complex, state: ScatteringState) -> float:
    """Probability current j = (hbar / m_i) Im(u* du/dx) at one point."""
    u = complex(value)
    du = complex(derivative)
    return state.units.hbar / state.particle.m_inertial * (u.conjugate() * du).imag


def airy_incident_asymptotic(z: float, scales: GravityScales) -> tuple[complex, complex]:
    """Incident (up-moving) travelling Airy component, per unit normalisation.

    Returns (u, du/dx) of (1 / (2 sqrt(pi))) z^(-1/4) exp(-i (zeta - pi/4))
    at scaled depth z = (b - x)/a below the turning point; dz/dx = -1/a.
    """
    if not (isfinite(z) and z > 0):
        raise DomainError("z must be positive")
    zeta = (2.0 / 3.0) * z**1.5
    u = 1.0 / (2.0 * sqrt(pi)) * z**-0.25 * cmath.exp(-1j * (zeta - 0.25 * pi))
    du_dz = u * complex(-0.25 / z, -sqrt(z))
    return u, -du_dz / scales.a
