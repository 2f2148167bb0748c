"""Unit systems, particle specifications and the gravitational length scales.

Two unit systems are supported.  In natural units hbar = 1 and masses,
energies and accelerations are free dimensionless numbers; in SI units
hbar carries its CODATA value and inputs are in kg, J, m, s.

The inertial and gravitational masses are kept distinct throughout so that
equivalence-principle checks can vary them independently.  Setting them
equal recovers the universal-free-fall case.

For a particle of energy E in the linear potential V(x) = m_g * g * x the
two characteristic lengths are

    a = (hbar^2 / (2 m_i m_g g))^(1/3)     evanescent penetration depth
    b = E / (m_g g)                        classical turning point

``a`` is the Airy length: the stationary state is Ai((x - b)/a), which
decays over a depth of order ``a`` beyond the turning point.  For an
electron in the Earth's field a is a bit under a millimetre.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

from .errors import DomainError

# CODATA values; the derived desk numbers are insensitive to revision digits.
HBAR_SI = 1.054571817e-34       # J s
ELECTRON_MASS_KG = 9.1093837015e-31
STANDARD_GRAVITY = 9.81         # m / s^2


@dataclass(frozen=True)
class UnitSystem:
    """A unit system, fully described by its name and the value of hbar."""

    name: str       # "natural" or "si"
    hbar: float

    def __post_init__(self):
        if self.name not in ("natural", "si"):
            raise DomainError(f"unknown unit system {self.name!r}")
        if not (isfinite(self.hbar) and self.hbar > 0):
            raise DomainError("hbar must be positive and finite")
        if self.name == "natural" and self.hbar != 1.0:
            raise DomainError("natural units require hbar == 1 exactly")


def natural_units() -> UnitSystem:
    """Natural units: hbar = 1, everything else dimensionless."""
    return UnitSystem("natural", 1.0)


def si_units() -> UnitSystem:
    """SI units: hbar in J s, masses in kg, lengths in m, energies in J."""
    return UnitSystem("si", HBAR_SI)


@dataclass(frozen=True)
class ParticleSpec:
    """Inertial and gravitational mass of the probe particle."""

    m_inertial: float
    m_grav: float

    def __post_init__(self):
        for label, m in (("m_inertial", self.m_inertial), ("m_grav", self.m_grav)):
            if not (isfinite(m) and m > 0):
                raise DomainError(f"{label} must be positive and finite, got {m!r}")

    @property
    def is_universal(self) -> bool:
        """True when inertial and gravitational mass coincide."""
        return self.m_inertial == self.m_grav


def universal_particle(m: float) -> ParticleSpec:
    """Particle with equal inertial and gravitational mass ``m``."""
    return ParticleSpec(m_inertial=m, m_grav=m)


def electron() -> ParticleSpec:
    """The electron, in SI kilograms."""
    return universal_particle(ELECTRON_MASS_KG)


@dataclass(frozen=True)
class GravityScales:
    """Penetration depth ``a`` and classical turning point ``b``."""

    a: float
    b: float

    def __post_init__(self):
        if not (isfinite(self.a) and self.a > 0):
            raise DomainError("penetration scale a must be positive")
        if not isfinite(self.b):
            raise DomainError("turning point b must be finite")


def gravity_scales(units: UnitSystem, particle: ParticleSpec, g: float, E: float) -> GravityScales:
    """Characteristic scales of the uniform-gravity problem.

    Parameters
    ----------
    units : UnitSystem
    particle : ParticleSpec
    g : float
        Gravitational acceleration, > 0.
    E : float
        Particle energy, > 0.

    Returns
    -------
    GravityScales
        a = (hbar^2 / (2 m_i m_g g))^(1/3) and b = E / (m_g g).
    """
    if not (isfinite(g) and g > 0):
        raise DomainError("g must be positive and finite")
    if not (isfinite(E) and E > 0):
        raise DomainError("E must be positive and finite")
    a = (units.hbar**2 / (2.0 * particle.m_inertial * particle.m_grav * g)) ** (1.0 / 3.0)
    b = E / (particle.m_grav * g)
    return GravityScales(a=a, b=b)
