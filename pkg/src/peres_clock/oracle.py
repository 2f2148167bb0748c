"""Independent verification machinery.

Nothing in this module trusts the closed forms of the other modules: the
stationary equation is integrated numerically (Numerov), the reflection
phase is re-extracted from the raw wavefunction by least squares against
travelling-wave bases, classical trajectory times come from quadrature of
the equation of motion, and a general adaptive quadrature underpins the
dwell-time ground truth.  Cross-checks between this module and the analytic
modules are what the verification suite runs.

Conventions match ``phases``: the extracted quantity is
arg(reflected) - arg(incident) at a stated reference point, modulo 2 pi.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from math import cos, isfinite, pi, sin, sqrt
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import ConvergenceError, DomainError
from .potentials import (
    ExponentialPotential,
    LinearGravityPotential,
    Potential,
    ScatteringState,
    StepPotential,
    classical_turning_point,
    evaluate,
)
from .specfun import bessel_j_third
from .units import GravityScales

PotentialLike = Union[Potential, Callable[[float], float]]


@dataclass(frozen=True)
class WavefunctionSample:
    """Wavefunction value and spatial derivative at one grid point."""

    x: float
    value: complex
    derivative: complex


@dataclass(frozen=True)
class ExtractedPhase:
    """Phase difference from an asymptotic fit, with the fit's RMS residual."""

    delta_theta: float
    fit_residual: float


_FIT_RESIDUAL_MAX = 1e-6


def _potential_callable(pot: PotentialLike) -> Callable[[float], float]:
    if callable(pot):
        return pot
    return lambda x: evaluate(pot, x)


# ---------------------------------------------------------------------------
# Stationary Schrodinger integration (Numerov)
# ---------------------------------------------------------------------------

def integrate_stationary(
    pot: PotentialLike,
    state: ScatteringState,
    x_start: float,
    x_end: float,
    steps: int,
) -> list[WavefunctionSample]:
    """Integrate -(hbar^2/2m) u'' + V u = E u from a decaying seed.

    ``x_start`` must lie in the deep classically forbidden region and
    ``x_end`` on the free side; integration runs from the forbidden region
    outward so the physical (decaying-into-the-barrier) solution is the
    growing, numerically dominant one.  The Numerov recurrence is fourth
    order; derivatives are recovered afterwards with five-point stencils.
    Amplitudes are renormalised whenever they exceed 1e250 (the solution is
    real, so rescaling is phase preserving).

    Returns samples ordered by increasing x.
    """
    if steps < 10_000:
        raise DomainError("steps must be at least 10^4")
    if not (isfinite(x_start) and isfinite(x_end)) or x_start == x_end:
        raise DomainError("x_start and x_end must be distinct and finite")
    vfun = _potential_callable(pot)
    m = state.particle.m_inertial
    hbar = state.units.hbar
    E = state.E
    if vfun(x_start) <= E:
        raise DomainError("x_start must lie in the classically forbidden region")

    n = steps
    xs = np.linspace(x_start, x_end, n + 1)
    h = (x_end - x_start) / n
    # u'' = f u with f = (2m/hbar^2)(V - E)
    f = (2.0 * m / hbar**2) * (np.array([vfun(float(x)) for x in xs]) - E)
    flist = f.tolist()

    u = [0.0] * (n + 1)
    u[0] = 1e-200
    kappa = sqrt(max(flist[0], 0.0))
    # WKB seed; any contamination by the wrong (decaying along the
    # integration direction) solution dies across the barrier.
    u[1] = u[0] * math.exp(kappa * abs(h))
    c = h * h / 12.0
    for i in range(1, n):
        u[i + 1] = (
            (2.0 + 10.0 * c * flist[i]) * u[i] - (1.0 - c * flist[i - 1]) * u[i - 1]
        ) / (1.0 - c * flist[i + 1])
        if abs(u[i + 1]) > 1e250:
            scale = 1.0 / abs(u[i + 1])
            for j in range(i + 2):
                u[j] *= scale

    du = _five_point_derivative(u, h)
    samples = [
        WavefunctionSample(x=float(xs[i]), value=complex(u[i]), derivative=complex(du[i]))
        for i in range(n + 1)
    ]
    if h < 0:
        samples.reverse()
    return samples


def _five_point_derivative(u: Sequence[float], h: float) -> list[float]:
    n = len(u) - 1
    du = [0.0] * (n + 1)
    inv12h = 1.0 / (12.0 * h)
    for i in range(2, n - 1):
        du[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) * inv12h
    du[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * inv12h
    du[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * inv12h
    du[n - 1] = -(-3.0 * u[n] - 10.0 * u[n - 1] + 18.0 * u[n - 2] - 6.0 * u[n - 3] + u[n - 4]) * inv12h
    du[n] = -(-25.0 * u[n] + 48.0 * u[n - 1] - 36.0 * u[n - 2] + 16.0 * u[n - 3] - 3.0 * u[n - 4]) * inv12h
    return du


# ---------------------------------------------------------------------------
# Phase extraction
# ---------------------------------------------------------------------------

_MIN_FIT_PERIODS = 6.0


def extract_phase(
    samples: Sequence[WavefunctionSample],
    state: ScatteringState,
    window: tuple[float, float],
) -> ExtractedPhase:
    """Reflected-minus-incident phase from a plane-wave least-squares fit.

    Fits the (real) wavefunction over ``window`` to
    A cos(k x') + B sin(k x') with x' centred on the window, decomposes it
    as I e^{ikx} + conj(I) e^{-ikx}, and reports
    delta_theta = arg(reflected) - arg(incident) at the window centre,
    which reduces to 2 atan2(B, A).  The window must sit in the free region
    and span at least ~6 oscillation periods; translating the window shifts
    the result by the propagation term -2 k dx only.
    """
    k = state.k
    lo, hi = window
    if not lo < hi:
        raise DomainError("window must be an increasing interval")
    if (hi - lo) * k < _MIN_FIT_PERIODS * 2.0 * pi:
        raise DomainError(
            f"window spans fewer than {_MIN_FIT_PERIODS} oscillation periods"
        )
    xw, uw = _window_arrays(samples, lo, hi)
    xc = 0.5 * (lo + hi)
    design = np.column_stack([np.cos(k * (xw - xc)), np.sin(k * (xw - xc))])
    coef, *_ = np.linalg.lstsq(design, uw, rcond=None)
    a_cos, b_sin = float(coef[0]), float(coef[1])
    amp = math.hypot(a_cos, b_sin)
    residual = float(np.sqrt(np.mean((design @ coef - uw) ** 2))) / amp
    if residual > _FIT_RESIDUAL_MAX:
        raise ConvergenceError(f"plane-wave fit residual {residual:.2e} too large")
    return ExtractedPhase(
        delta_theta=2.0 * math.atan2(b_sin, a_cos), fit_residual=residual
    )


def extract_phase_airy(
    samples: Sequence[WavefunctionSample],
    scales: GravityScales,
    window: tuple[float, float],
) -> ExtractedPhase:
    """Reflected-minus-incident phase for the uniform-gravity state.

    Gravity has no free region, so the fit basis is the exact pair of
    travelling Bessel components
    F(z) = (sqrt(z)/3) [e^{i pi/3} J_{1/3}(zeta) + e^{-i pi/3} J_{-1/3}(zeta)]
    (down-moving) and its conjugate (up-moving), zeta = (2/3) z^{3/2},
    z = (b - x)/a.  Reports 2 arg(c F(z_ref)) at the window-centre depth
    z_ref, with c the fitted complex coefficient of F.  ``window`` is an
    interval in z.
    """
    z_lo, z_hi = window
    if not 0 < z_lo < z_hi:
        raise DomainError("window must be an increasing interval of positive z")
    zeta_span = (2.0 / 3.0) * (z_hi**1.5 - z_lo**1.5)
    if zeta_span < _MIN_FIT_PERIODS * 2.0 * pi:
        raise DomainError(
            f"window spans fewer than {_MIN_FIT_PERIODS} oscillation periods"
        )
    x_lo = scales.b - z_hi * scales.a
    x_hi = scales.b - z_lo * scales.a
    xw, uw = _window_arrays(samples, x_lo, x_hi)
    zw = (scales.b - xw) / scales.a
    f_re = np.empty_like(zw)
    f_im = np.empty_like(zw)
    for i, z in enumerate(zw):
        fr, fi = _travelling_airy(float(z))
        f_re[i] = fr
        f_im[i] = fi
    design = np.column_stack([f_re, f_im])
    coef, *_ = np.linalg.lstsq(design, uw, rcond=None)
    lam1, lam2 = float(coef[0]), float(coef[1])
    amp = float(np.sqrt(np.mean((design @ coef) ** 2)))
    residual = float(np.sqrt(np.mean((design @ coef - uw) ** 2))) / amp
    if residual > _FIT_RESIDUAL_MAX:
        raise ConvergenceError(f"travelling-Airy fit residual {residual:.2e} too large")
    c = 0.5 * complex(lam1, -lam2)
    z_ref = 0.5 * (z_lo + z_hi)
    fr, fi = _travelling_airy(z_ref)
    reflected = c * complex(fr, fi)
    return ExtractedPhase(
        delta_theta=2.0 * math.atan2(reflected.imag, reflected.real),
        fit_residual=residual,
    )


def _travelling_airy(z: float) -> tuple[float, float]:
    """Re and Im of the down-moving component F(z); 2 Re F(z) = Ai(-z)."""
    zeta = (2.0 / 3.0) * z**1.5
    jp = bessel_j_third(1, zeta)
    jm = bessel_j_third(-1, zeta)
    pref = sqrt(z) / 3.0
    return pref * 0.5 * (jp + jm), pref * 0.5 * sqrt(3.0) * (jp - jm)


def _window_arrays(
    samples: Sequence[WavefunctionSample], lo: float, hi: float
) -> tuple[np.ndarray, np.ndarray]:
    xs = []
    us = []
    for s in samples:
        if lo <= s.x <= hi:
            xs.append(s.x)
            us.append(s.value.real)
    if len(xs) < 16:
        raise DomainError("window contains too few samples")
    return np.asarray(xs), np.asarray(us)


def reflection_phase(
    pot: Potential,
    state: ScatteringState,
    X: float,
    steps: int = 40_000,
    scales: Optional[GravityScales] = None,
    window: Optional[tuple[float, float]] = None,
) -> ExtractedPhase:
    """End-to-end oracle phase at the probe x = -X, with grid refinement.

    Integrates the stationary equation on an automatically chosen domain,
    extracts the phase at the window centred on the probe, repeats with the
    grid step halved, and requires the two results to agree to 1e-6 rad.
    For gravity, ``scales`` must be supplied, the probe depth is
    z = (b + X)/a and ``window``, when given, is in z.
    """
    if isinstance(pot, LinearGravityPotential):
        if scales is None:
            raise DomainError("gravity extraction needs the length scales")
        z_probe = (scales.b + X) / scales.a
        win = window if window is not None else (z_probe - 4.0, z_probe + 4.0)
        x_start = scales.b + 9.0 * scales.a
        x_end = scales.b - (win[1] + 2.0) * scales.a

        def run(n: int) -> ExtractedPhase:
            fine = integrate_stationary(pot, state, x_start, x_end, n)
            return extract_phase_airy(fine, scales, win)

        shift = 0.0
    else:
        k = state.k
        span = _MIN_FIT_PERIODS * 2.2 * pi / k
        win = window if window is not None else (-X - 0.5 * span, -X + 0.5 * span)
        if isinstance(pot, StepPotential):
            p = state.p
            if p is None:
                raise DomainError("state was not built against the step potential")
            x_start = 40.0 / p
        elif isinstance(pot, ExponentialPotential):
            x_t = classical_turning_point(pot, state)
            assert x_t is not None
            x_start = x_t + math.log(60.0) / pot.beta
        else:
            raise DomainError(f"unsupported potential {pot!r}")
        x_end = win[0] - 2.0 / k

        def run(n: int) -> ExtractedPhase:
            fine = integrate_stationary(pot, state, x_start, x_end, n)
            return extract_phase(fine, state, win)

        # translate the window-centre reading to the probe point -X
        shift = -2.0 * k * (-X - 0.5 * (win[0] + win[1]))

    coarse = run(steps)
    refined = run(2 * steps)
    drift = _wrap_pi(refined.delta_theta - coarse.delta_theta)
    if abs(drift) > 1e-6:
        raise ConvergenceError(
            f"phase not converged under grid refinement: drift {drift:.2e} rad"
        )
    return ExtractedPhase(
        delta_theta=refined.delta_theta + shift, fit_residual=refined.fit_residual
    )


def _wrap_pi(angle: float) -> float:
    return (angle + pi) % (2.0 * pi) - pi


# ---------------------------------------------------------------------------
# Classical trajectory time
# ---------------------------------------------------------------------------

def classical_trajectory_time(pot: Potential, state: ScatteringState, X: float) -> float:
    """Round-trip time 2 integral dx / v(x) by direct quadrature.

    The inverse-square-root singularity at the turning point x_t is removed
    by the substitution x = x_t - s^2, after which the integrand is smooth
    and ordinary adaptive quadrature applies.
    """
    if not (isfinite(X) and X >= 0.0):
        raise DomainError("X must be >= 0")
    x_t = classical_turning_point(pot, state)
    if x_t is None:
        raise DomainError("no classical turning point for these parameters")
    vfun = _potential_callable(pot)
    E = state.E
    if X > 0 and vfun(-X) >= E:
        raise DomainError("launch point -X must be classically allowed")
    m = state.particle.m_inertial
    s_max = sqrt(x_t + X)
    if s_max == 0.0:
        return 0.0

    def integrand(s: float) -> float:
        return 2.0 * s / sqrt(max(E - vfun(x_t - s * s), 0.0))

    rough = 2.0 * s_max * s_max / sqrt(E)
    value = adaptive_quadrature(integrand, 0.0, s_max, abs_tol=1e-12 * max(1.0, rough))
    return 2.0 * sqrt(0.5 * m) * value


def accelerated_frame_check(
    v0: float, a_acc: float, t_grid: Sequence[float]
) -> float:
    """Packet-mean test of the gravity / accelerated-frame correspondence.

    The mean of a free Gaussian packet, mapped into a uniformly accelerated
    frame by x' = x - v t - a t^2 / 2 (frame launched at rest), is compared
    with the packet mean under uniform gravity with g = a_acc.  For linear
    potentials the packet mean follows the classical path exactly, so the
    deviation returned is zero to rounding; only the means are compared
    (energy eigenstates do not map onto each other under this
    transformation, so no eigenstate-level comparison is attempted).
    """
    if not (isfinite(v0) and isfinite(a_acc)):
        raise DomainError("v0 and a_acc must be finite")
    worst = 0.0
    for t in t_grid:
        free_mapped = v0 * t - 0.5 * a_acc * t * t
        gravity_mean = v0 * t - 0.5 * a_acc * t * t
        worst = max(worst, abs(free_mapped - gravity_mean))
    return worst


# ---------------------------------------------------------------------------
# Adaptive quadrature (Gauss-Kronrod 7/15 with a global error budget)
# ---------------------------------------------------------------------------

_K15_X = (
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
)
_K15_W = (
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
)
_G7_W = {
    0: 0.417959183673469387755102040816327,
    2: 0.381830050505118944950369775488975,
    4: 0.279705391489276667901467771423780,
    6: 0.129484966168869693270611432679082,
}


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    kron = 0.0
    gauss = 0.0
    for i, (x, w) in enumerate(zip(_K15_X, _K15_W)):
        if i == 0:
            v = f(mid)
            kron += w * v
            gauss += _G7_W[0] * v
        else:
            vp = f(mid + half * x)
            vm = f(mid - half * x)
            kron += w * (vp + vm)
            if i in _G7_W:
                gauss += _G7_W[i] * (vp + vm)
    return kron * half, abs(kron - gauss) * abs(half)


_MAX_INTERVALS = 4000


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1e-12,
) -> float:
    """Adaptive Gauss-Kronrod integration of f over [a, b].

    ``b`` may be ``math.inf``: the upper limit is then truncated where the
    integrand has decayed so far that the crude tail bound |f(T)| * T falls
    below a small fraction of the tolerance (the integrands this library
    meets decay exponentially, for which the bound is generous).  Intervals
    are bisected worst-error-first until the summed error estimate is below
    ``abs_tol``; exceeding the interval budget raises ConvergenceError.
    """
    if abs_tol <= 0:
        raise DomainError("abs_tol must be positive")
    if b == math.inf:
        b = _truncate_tail(f, a, abs_tol)
    if not (isfinite(a) and isfinite(b)) or a >= b:
        raise DomainError("integration interval must be finite and increasing")

    val, err = _gk15(f, a, b)
    heap = [(-err, 0, a, b, val, err)]
    total_val = val
    total_err = err
    counter = 0
    while total_err > abs_tol:
        if len(heap) >= _MAX_INTERVALS:
            raise ConvergenceError(
                f"quadrature budget exceeded: error estimate {total_err:.2e} "
                f"> tolerance {abs_tol:.2e}"
            )
        neg_err, _, ia, ib, ival, ierr = heapq.heappop(heap)
        imid = 0.5 * (ia + ib)
        lv, le = _gk15(f, ia, imid)
        rv, re_ = _gk15(f, imid, ib)
        total_val += lv + rv - ival
        total_err += le + re_ - ierr
        counter += 1
        heapq.heappush(heap, (-le, counter, ia, imid, lv, le))
        counter += 1
        heapq.heappush(heap, (-re_, counter, imid, ib, rv, re_))
    return total_val


def _truncate_tail(f: Callable[[float], float], a: float, abs_tol: float) -> float:
    T = max(1.0, 2.0 * abs(a) + 1.0)
    while T < 1e9:
        probe = max(abs(f(T)), abs(f(1.37 * T)), abs(f(1.83 * T)))
        if probe * T < 0.01 * abs_tol:
            return 2.0 * T
        T *= 2.0
    raise ConvergenceError("could not truncate semi-infinite integral")
