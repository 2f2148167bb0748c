"""The three reflecting potentials and their classical reference times.

All three problems are total-reflection setups: a particle of energy E comes
in from the left and is turned around by

    step:        V(x) = 0 for x < 0,  V0 for x >= 0          (E < V0 only)
    exponential: V(x) = alpha * exp(beta * x)
    gravity:     V(x) = m_g * g * x

``classical_round_trip`` gives the out-and-back time of the corresponding
classical particle launched from x = -X toward the barrier:

    step:        2 X / v
    exponential: 2 X / v + (2 / (beta v)) ln(4 E / alpha)
    gravity:     2 sqrt(2 (b + X) / g)      with b = E / (m_g g)

The exponential form is the large-X asymptote of the exact trajectory time;
the oracle module recovers both from direct integration of the equation of
motion.  The probe point sits at x = -X < 0, so the distance to the gravity
turning point is b + X.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, isfinite, log, sqrt
from typing import Optional, Union

from .errors import DomainError
from .units import ParticleSpec, UnitSystem


@dataclass(frozen=True)
class StepPotential:
    """Square step of height v0 filling x >= 0."""

    v0: float

    def __post_init__(self):
        if not (isfinite(self.v0) and self.v0 > 0):
            raise DomainError("step height v0 must be positive")


@dataclass(frozen=True)
class ExponentialPotential:
    """Soft wall V(x) = alpha * exp(beta * x)."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (isfinite(self.alpha) and self.alpha > 0):
            raise DomainError("alpha must be positive")
        if not (isfinite(self.beta) and self.beta > 0):
            raise DomainError("beta must be positive")


@dataclass(frozen=True)
class LinearGravityPotential:
    """Uniform gravity V(x) = m_g * g * x."""

    m_grav: float
    g: float

    def __post_init__(self):
        if not (isfinite(self.m_grav) and self.m_grav > 0):
            raise DomainError("m_grav must be positive")
        if not (isfinite(self.g) and self.g > 0):
            raise DomainError("g must be positive")


Potential = Union[StepPotential, ExponentialPotential, LinearGravityPotential]


@dataclass(frozen=True)
class ScatteringState:
    """Incident energy with its derived kinematic quantities.

    k = sqrt(2 m_i E) / hbar and v = hbar k / m_i.  For a step with E < V0
    the evanescent decay rate p = sqrt(2 m_i (V0 - E)) / hbar is also
    populated; otherwise ``p`` is None.
    """

    E: float
    k: float
    v: float
    p: Optional[float]
    particle: ParticleSpec
    units: UnitSystem


def scattering_state(
    E: float,
    particle: ParticleSpec,
    units: UnitSystem,
    potential: Optional[Potential] = None,
) -> ScatteringState:
    """Build the kinematic state for energy E under the given unit system."""
    if not (isfinite(E) and E > 0):
        raise DomainError("E must be positive and finite")
    hbar = units.hbar
    m = particle.m_inertial
    k = sqrt(2.0 * m * E) / hbar
    v = hbar * k / m
    p = None
    if isinstance(potential, StepPotential) and E < potential.v0:
        p = sqrt(2.0 * m * (potential.v0 - E)) / hbar
    return ScatteringState(E=E, k=k, v=v, p=p, particle=particle, units=units)


def evaluate(pot: Potential, x: float) -> float:
    """Potential energy V(x)."""
    if not isfinite(x):
        raise DomainError("x must be finite")
    if isinstance(pot, StepPotential):
        return pot.v0 if x >= 0.0 else 0.0
    if isinstance(pot, ExponentialPotential):
        return pot.alpha * exp(pot.beta * x)
    if isinstance(pot, LinearGravityPotential):
        return pot.m_grav * pot.g * x
    raise DomainError(f"unknown potential {pot!r}")


def classical_turning_point(pot: Potential, state: ScatteringState) -> Optional[float]:
    """Position where E = V(x) for the classical particle.

    Returns None for an over-barrier step (E >= V0): there is no reflecting
    barrier in that case.
    """
    E = state.E
    if isinstance(pot, StepPotential):
        return 0.0 if E < pot.v0 else None
    if isinstance(pot, ExponentialPotential):
        return log(E / pot.alpha) / pot.beta
    if isinstance(pot, LinearGravityPotential):
        return E / (pot.m_grav * pot.g)
    raise DomainError(f"unknown potential {pot!r}")


def classical_round_trip(pot: Potential, state: ScatteringState, X: float) -> float:
    """Classical out-and-back time from the probe point x = -X.

    For the step this is the ballistic 2X/v (reflection happens exactly at
    the wall); over-barrier energies are rejected because the reflection
    problem is only posed for E < V0.
    """
    if not (isfinite(X) and X >= 0.0):
        raise DomainError("X must be >= 0")
    v = state.v
    if isinstance(pot, StepPotential):
        if state.E >= pot.v0:
            raise DomainError("classical round trip requires E < V0 for the step")
        return 2.0 * X / v
    if isinstance(pot, ExponentialPotential):
        return 2.0 * X / v + (2.0 / (pot.beta * v)) * log(4.0 * state.E / pot.alpha)
    if isinstance(pot, LinearGravityPotential):
        b = state.E / (pot.m_grav * pot.g)
        return 2.0 * sqrt(2.0 * (b + X) / pot.g)
    raise DomainError(f"unknown potential {pot!r}")
