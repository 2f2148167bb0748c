"""Quantum time-of-flight for reflecting potentials via a model quantum clock.

The clock reading is the energy derivative of the reflected-minus-incident
phase of a stationary scattering state, DT = hbar * d(dtheta)/dE.  The
library computes that phase (and the clock time, its classical/quantum
split, and the under-barrier dwell time) for a square step, an exponential
wall and a uniform gravitational potential, in natural or SI units, with an
independent numerical oracle for every closed form.

Headline result reproduced here: far from the classical turning point the
quantum turnaround time in uniform gravity equals the classical one for any
mass, while within about one penetration depth of the turning point a
mass-dependent quantum delay of order 0.5 (hbar m_i / m_g^2 g^2)^(1/3)
appears.
"""

from .clock import (
    LARGE_BETA_PHASE_CONSTANT,
    NEAR_TURNING_COEFFICIENT,
    ClockResult,
    exp_clock,
    exp_quantum_delay_large_beta,
    gravity_clock_far,
    gravity_clock_near,
    peres_dt,
    step_clock,
)
from .dwell import (
    DIMENSIONLESS_FORBIDDEN_INTEGRAL,
    DwellResult,
    dwell_time,
    forbidden_probability,
    incident_flux,
)
from .errors import ConvergenceError, DomainError, RegimeError
from .phases import (
    PhaseResult,
    ReflectionAmplitude,
    current_density,
    exp_phase,
    exp_phase_factor,
    gravity_phase_far,
    gravity_phase_near,
    step_amplitude,
    step_phase,
)
from .potentials import (
    ExponentialPotential,
    LinearGravityPotential,
    Potential,
    ScatteringState,
    StepPotential,
    classical_round_trip,
    classical_turning_point,
    evaluate,
    scattering_state,
)
from .units import (
    ELECTRON_MASS_KG,
    HBAR_SI,
    STANDARD_GRAVITY,
    GravityScales,
    ParticleSpec,
    UnitSystem,
    electron,
    gravity_scales,
    natural_units,
    si_units,
    universal_particle,
)

__version__ = "0.1.0"

__all__ = [
    "ClockResult",
    "ConvergenceError",
    "DIMENSIONLESS_FORBIDDEN_INTEGRAL",
    "DomainError",
    "DwellResult",
    "ELECTRON_MASS_KG",
    "ExponentialPotential",
    "GravityScales",
    "HBAR_SI",
    "LARGE_BETA_PHASE_CONSTANT",
    "LinearGravityPotential",
    "NEAR_TURNING_COEFFICIENT",
    "ParticleSpec",
    "PhaseResult",
    "Potential",
    "ReflectionAmplitude",
    "RegimeError",
    "STANDARD_GRAVITY",
    "ScatteringState",
    "StepPotential",
    "UnitSystem",
    "classical_round_trip",
    "classical_turning_point",
    "current_density",
    "dwell_time",
    "electron",
    "evaluate",
    "exp_clock",
    "exp_phase",
    "exp_phase_factor",
    "exp_quantum_delay_large_beta",
    "forbidden_probability",
    "gravity_clock_far",
    "gravity_clock_near",
    "gravity_phase_far",
    "gravity_phase_near",
    "gravity_scales",
    "incident_flux",
    "natural_units",
    "peres_dt",
    "scattering_state",
    "si_units",
    "step_amplitude",
    "step_clock",
    "step_phase",
    "universal_particle",
]
