"""Self-verification suite: every closed form against an independent route.

Each check produces one fixed-format line; the suite passes only if every
check passes.  The output is deterministic (pure computations, fixed grids,
fixed formatting), so two runs are byte identical.

Checks cover: the special-function identity suite (Airy-Bessel
decomposition, Wronskian band, oscillatory asymptotic error envelope,
imaginary-order MacDonald two-route overlap, reciprocal-Gamma factorials),
route agreement analytic vs finite difference for all three potentials,
direct Schrodinger integration against the analytic phases, the
equivalence-principle grid, the near-turning-point coefficient, the dwell
pipeline (quadrature vs closed form, electron desk numbers), the
exponential-wall limits with the fitted large-beta constant, classical
trajectory quadrature, current unitarity, and the accelerated-frame
packet-mean identity.  A far-field phase-error-vs-depth curve is emitted
as informational lines quantifying where the asymptotic regime starts.
"""

from __future__ import annotations

import math
from math import pi, sqrt
from typing import Callable, Iterable, TextIO

from . import dwell as dwell_mod
from . import oracle
from .clock import (
    LARGE_BETA_PHASE_CONSTANT,
    NEAR_TURNING_COEFFICIENT,
    exp_clock,
    gravity_clock_far,
    gravity_clock_near,
    peres_dt,
    step_clock,
)
from .phases import (
    airy_incident_asymptotic,
    current_density,
    exp_phase,
    gravity_phase_far,
    gravity_phase_near,
    step_phase,
)
from .potentials import (
    ExponentialPotential,
    LinearGravityPotential,
    StepPotential,
    classical_round_trip,
    scattering_state,
)
from .specfun import (
    EULER_GAMMA,
    _iv_series_unit as specfun_iv_series,
    airy_ai,
    bessel_j_third,
    bessel_j_third_prime,
    bessel_k_third,
    recip_gamma_complex,
    re_digamma_one_plus_imag,
)
from .units import (
    GravityScales,
    ParticleSpec,
    electron,
    gravity_scales,
    natural_units,
    si_units,
    universal_particle,
)


class _Table:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.failures = 0

    def check(self, name: str, value: float, bound: float, *, larger_ok: bool = False) -> None:
        ok = value >= bound if larger_ok else value <= bound
        if not ok:
            self.failures += 1
        rel = ">=" if larger_ok else "<="
        self.lines.append(
            f"{'PASS' if ok else 'FAIL'}  {name:<38} {value:.12g} {rel} {bound:.12g}"
        )

    def check_range(self, name: str, value: float, lo: float, hi: float) -> None:
        ok = lo <= value <= hi
        if not ok:
            self.failures += 1
        self.lines.append(
            f"{'PASS' if ok else 'FAIL'}  {name:<38} {value:.12g} in [{lo:.12g}, {hi:.12g}]"
        )

    def info(self, text: str) -> None:
        self.lines.append(f"INFO  {text}")


def _wrap_pi(angle: float) -> float:
    return (angle + pi) % (2.0 * pi) - pi


def _frange(lo: float, hi: float, n: int) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _exact_bessel_phase(z: float) -> float:
    """Reflected-minus-incident phase 2 arg F(z) of the exact gravity state.

    The far-field closed form carries the convention constant +pi relative
    to this raw component-argument difference; constants drop out of every
    clock reading, and the comparisons below subtract the offset explicitly.
    """
    zeta = (2.0 / 3.0) * z**1.5
    jp = bessel_j_third(1, zeta)
    jm = bessel_j_third(-1, zeta)
    re_f = 0.5 * (jp + jm)
    im_f = 0.5 * sqrt(3.0) * (jp - jm)
    return 2.0 * math.atan2(im_f, re_f)


def _specfun_checks(t: _Table) -> None:
    # Airy-Bessel decomposition on z in [0.05, 12]
    worst = 0.0
    for z in _frange(0.05, 12.0, 240):
        zeta = (2.0 / 3.0) * z**1.5
        lhs = airy_ai(-z)
        rhs = (sqrt(z) / 3.0) * (bessel_j_third(1, zeta) + bessel_j_third(-1, zeta))
        worst = max(worst, abs(lhs - rhs))
    t.check("airy_bessel_identity", worst, 1e-9)

    # Wronskian magnitude band on zeta in [0.1, 20]
    worst = 0.0
    for zeta in _frange(0.1, 20.0, 200):
        w = bessel_j_third(1, zeta) * bessel_j_third_prime(-1, zeta) - bessel_j_third(
            -1, zeta
        ) * bessel_j_third_prime(1, zeta)
        worst = max(worst, abs(abs(w) * (pi * zeta / 2.0) - math.sin(pi / 3.0)))
    t.check("bessel_wronskian_band", worst, 1e-8)

    # Wronskian sign for this ordering is negative
    w1 = bessel_j_third(1, 1.0) * bessel_j_third_prime(-1, 1.0) - bessel_j_third(
        -1, 1.0
    ) * bessel_j_third_prime(1, 1.0)
    t.check("bessel_wronskian_sign_at_1", w1, -0.5, larger_ok=False)

    # Oscillatory asymptotic error envelope: |err| * z^(7/4) stays below
    # 0.075 (measured envelope coefficient is ~0.0588 = pi^-1/2 (5/72)(3/2)).
    worst = 0.0
    for z in _frange(10.0, 40.0, 301):
        zeta = (2.0 / 3.0) * z**1.5
        asym = z**-0.25 / sqrt(pi) * math.sin(zeta + 0.25 * pi)
        worst = max(worst, abs(airy_ai(-z) - asym) * z**1.75)
    t.check("airy_oscillatory_error_envelope", worst, 0.075)
    t.check_range("airy_error_envelope_coefficient", worst, 0.045, 0.062)

    # MacDonald two-route overlap band (ascending series vs the defining
    # integral) straddling the internal switch point x = max(6, nu)
    worst = 0.0
    for nu in (0.5, 3.0, 8.0, 15.0, 20.0):
        xb = max(6.0, nu)
        for x in _frange(xb - 1.0, xb + 1.0, 9):
            v_series = _macdonald_series_route(nu, x)
            v_quad = _macdonald_quadrature_route(nu, x)
            worst = max(worst, abs(v_series - v_quad) / abs(v_series))
    t.check("macdonald_route_overlap", worst, 1e-8)

    # K_{1/3} against its own integral representation at accessible points
    worst = 0.0
    for x in (0.5, 1.0, 1.5):
        quad = oracle.adaptive_quadrature(
            lambda tt, xx=x: math.exp(-xx * math.cosh(tt)) * math.cosh(tt / 3.0),
            0.0,
            math.acosh(1.0 + 60.0 / x),
            abs_tol=1e-13,
        )
        worst = max(worst, abs(bessel_k_third(x) - quad) / quad)
    t.check("k_third_integral_representation", worst, 1e-9)

    # 1/Gamma matches factorials on the real axis
    worst = 0.0
    fact = 1.0
    for n in range(0, 11):
        if n > 0:
            fact *= n
        worst = max(worst, abs(recip_gamma_complex(complex(n + 1)) - 1.0 / fact))
    t.check("recip_gamma_factorials", worst, 1e-12)


def _macdonald_series_route(nu: float, x: float) -> float:
    # the ascending-series regime, addressed directly so the comparison can
    # cross the public switch point
    order = 1j * nu
    pref = (0.5 * x) ** order * recip_gamma_complex(1.0 + order)
    i_inu = pref * specfun_iv_series(order, x)
    return -pi * i_inu.imag / math.sinh(pi * nu)


def _macdonald_quadrature_route(nu: float, x: float) -> float:
    return oracle.adaptive_quadrature(
        lambda t: math.exp(-x * math.cosh(t)) * math.cos(nu * t),
        0.0,
        math.acosh(1.0 + 60.0 / x),
        abs_tol=1e-14,
    )


def _route_agreement_checks(t: _Table) -> None:
    units = natural_units()
    part = universal_particle(1.0)

    worst = 0.0
    v0 = 2.0
    for E in _frange(0.2, 1.8, 5):
        for d in _frange(0.0, 4.0, 5):
            st = scattering_state(E, part, units, StepPotential(v0))
            an = step_clock(st, v0, d).dT_total
            fd = peres_dt(
                lambda EE: step_phase(
                    scattering_state(EE, part, units, StepPotential(v0)), v0, d
                ),
                E,
                units,
            ).dT_total
            worst = max(worst, abs(an - fd) / abs(an))
    t.check("route_agreement_step", worst, 1e-5)

    worst = 0.0
    alpha, beta = 1.0, 2.0
    for E in _frange(0.3, 2.4, 5):
        for X in _frange(1.0, 9.0, 5):
            st = scattering_state(E, part, units)
            an = exp_clock(st, alpha, beta, X).dT_total
            fd = peres_dt(
                lambda EE: exp_phase(scattering_state(EE, part, units), alpha, beta, X),
                E,
                units,
            ).dT_total
            worst = max(worst, abs(an - fd) / abs(an))
    t.check("route_agreement_exponential", worst, 1e-5)

    worst = 0.0
    g = 1.0
    for E in _frange(0.5, 2.0, 5):
        for X in _frange(8.0, 30.0, 5):
            st = scattering_state(E, part, units)
            sc = gravity_scales(units, part, g, E)
            an = gravity_clock_far(sc, st, g, X).dT_total
            fd = peres_dt(
                lambda EE: gravity_phase_far(
                    gravity_scales(units, part, g, EE),
                    scattering_state(EE, part, units),
                    g,
                    X,
                ),
                E,
                units,
            ).dT_total
            worst = max(worst, abs(an - fd) / abs(an))
    t.check("route_agreement_gravity", worst, 1e-5)


def _oracle_checks(t: _Table) -> None:
    units = natural_units()
    part = universal_particle(1.0)

    # step: direct integration vs analytic phase, mod 2 pi
    v0, E, X = 2.0, 1.0, 1.5
    st = scattering_state(E, part, units, StepPotential(v0))
    got = oracle.reflection_phase(StepPotential(v0), st, X, steps=20_000)
    want = step_phase(st, v0, X).total
    t.check("oracle_phase_step", abs(_wrap_pi(got.delta_theta - want)), 1e-5)

    # exponential wall
    alpha, beta, E, X = 1.0, 2.0, 0.5, 6.0
    st = scattering_state(E, part, units)
    got = oracle.reflection_phase(ExponentialPotential(alpha, beta), st, X, steps=40_000)
    want = exp_phase(st, alpha, beta, X).total
    t.check("oracle_phase_exponential", abs(_wrap_pi(got.delta_theta - want)), 1e-5)

    # gravity: oracle vs exact Bessel-form phase at the probe depth, and the
    # far-field formula vs the same reference (the constant offset between
    # the two conventions is pi, which drops out of every clock reading)
    g, E = 1.0, 1.0
    part1 = universal_particle(1.0)
    st = scattering_state(E, part1, units)
    sc = gravity_scales(units, part1, g, E)
    z_probe = 25.0
    X = z_probe * sc.a - sc.b
    got = oracle.reflection_phase(
        LinearGravityPotential(1.0, g), st, X, steps=30_000, scales=sc, window=(20.0, 30.0)
    )
    z_ref = 25.0
    exact = _exact_bessel_phase(z_ref)
    t.check("oracle_phase_gravity_vs_exact", abs(_wrap_pi(got.delta_theta - exact)), 1e-4)
    # the far-field formula carries the convention constant +pi (irrelevant
    # to the clock) relative to the raw component arguments
    far = gravity_phase_far(sc, st, g, X).total
    t.check("farfield_vs_exact_at_z25", abs(_wrap_pi(far - exact - pi)), 2e-3)

    # gravity eigenfunction reproduces Ai((x-b)/a) pointwise
    samples = oracle.integrate_stationary(
        LinearGravityPotential(1.0, g), st, sc.b + 9.0 * sc.a, -10.0, 30_000
    )
    anchor = max(samples, key=lambda q: abs(q.value.real))
    scale = airy_ai((anchor.x - sc.b) / sc.a) / anchor.value.real
    worst = 0.0
    for s in samples:
        if -10.0 <= s.x <= 3.0:
            ai = airy_ai((s.x - sc.b) / sc.a)
            worst = max(worst, abs(s.value.real * scale - ai))
    t.check("oracle_gravity_eigenfunction", worst, 1e-6)

    # classical trajectory quadrature vs closed forms
    worst = 0.0
    stp = scattering_state(1.0, part, units, StepPotential(2.0))
    worst = max(
        worst,
        abs(
            oracle.classical_trajectory_time(StepPotential(2.0), stp, sqrt(2.0))
            - classical_round_trip(StepPotential(2.0), stp, sqrt(2.0))
        )
        / 2.0,
    )
    stg = scattering_state(1.0, part, units)
    worst = max(
        worst,
        abs(
            oracle.classical_trajectory_time(LinearGravityPotential(1.0, 1.0), stg, 1.0)
            - 4.0
        )
        / 4.0,
    )
    t.check("classical_trajectory_closed_forms", worst, 1e-8)

    # exponential classical time approaches the ballistic-plus-log form
    ste = scattering_state(math.e**2, part, units)
    exact_t = oracle.classical_trajectory_time(ExponentialPotential(1.0, 2.0), ste, 12.0)
    asym_t = classical_round_trip(ExponentialPotential(1.0, 2.0), ste, 12.0)
    t.check("classical_trajectory_exp_asymptote", abs(exact_t - asym_t) / asym_t, 1e-6)

    # accelerated-frame packet means coincide exactly
    dev = oracle.accelerated_frame_check(1.3, 2.7, [0.1 * i for i in range(101)])
    t.check("accelerated_frame_means", dev, 1e-12)

    # far-field phase error vs depth: how fast the asymptotic regime sets in
    def _far_error(z: float) -> float:
        far_total = 2.0 * (2.0 / 3.0) * z**1.5 + 0.5 * pi
        return abs(_wrap_pi(far_total - _exact_bessel_phase(z) - pi))

    for z in (4.0, 6.0, 8.0, 10.0, 14.0, 20.0, 30.0):
        t.info(f"farfield_phase_error z={z:.12g} err={_far_error(z):.12g}")
    t.check("farfield_phase_error_at_z10", _far_error(10.0), 0.02)


def _gravity_checks(t: _Table) -> None:
    units = natural_units()
    g = 1.0

    # equivalence principle far from the turning point
    worst_fd = 0.0
    worst_id = 0.0
    for m in (0.5, 1.0, 2.0, 4.0):
        part = universal_particle(m)
        for E in _frange(0.5, 2.0, 4):
            a = (1.0 / (2.0 * m * m * g)) ** (1.0 / 3.0)
            for zt in (20.0, 30.0, 45.0, 60.0):
                b = E / (m * g)
                X = zt * a - b
                if X < 0:
                    continue
                st = scattering_state(E, part, units)
                sc = gravity_scales(units, part, g, E)
                fd = peres_dt(
                    lambda EE: gravity_phase_far(
                        gravity_scales(units, part, g, EE),
                        scattering_state(EE, part, units),
                        g,
                        X,
                    ),
                    E,
                    units,
                ).dT_total
                classical = 2.0 * sqrt(2.0 * (b + X) / g)
                worst_fd = max(worst_fd, abs(fd - classical) / classical)
                analytic = gravity_clock_far(sc, st, g, X).dT_total
                worst_id = max(worst_id, abs(analytic - classical) / classical)
    t.check("equivalence_fd_vs_classical", worst_fd, 1e-4)
    t.check("equivalence_analytic_identity", worst_id, 1e-12)

    # mass independence of the analytic far-field time at fixed b + X
    base = None
    spread = 0.0
    for m in (0.5, 1.0, 2.0, 4.0):
        part = universal_particle(m)
        E = 1.0
        sc = gravity_scales(units, part, g, E)
        X = 30.0 - sc.b
        st = scattering_state(E, part, units)
        val = gravity_clock_far(sc, st, g, X).dT_total
        if base is None:
            base = val
        spread = max(spread, abs(val - base) / base)
    t.check("equivalence_mass_independence", spread, 1e-10)

    # near-turning-point coefficient and its finite-difference cross-check
    t.check_range("near_turning_coefficient", NEAR_TURNING_COEFFICIENT, 0.485, 0.495)
    part = universal_particle(1.0)
    sc = gravity_scales(units, part, g, 1.0)
    analytic = gravity_clock_near(sc, part, g, units).dT_total
    h = 1e-6
    slope = (gravity_phase_near(h).total - gravity_phase_near(0.0).total) / h
    fd = units.hbar * slope / (sc.a * part.m_grav * g)
    t.check("near_turning_fd_agreement", abs(fd - analytic) / analytic, 1e-5)

    # near-turning mass dependence: (m_i, m_g) = (8, 1) doubles the delay
    p81 = ParticleSpec(8.0, 1.0)
    sc81 = gravity_scales(units, p81, g, 1.0)
    r = gravity_clock_near(sc81, p81, g, units).dT_total / analytic
    t.check("near_turning_mass_ratio", abs(r - 2.0), 1e-12)

    # current unitarity of the asymptotic travelling components
    st = scattering_state(1.0, part, units)
    worst = 0.0
    j_ref = None
    for z in (15.0, 20.0, 30.0, 40.0):
        u_in, du_in = airy_incident_asymptotic(z, sc)
        j_in = current_density(u_in, du_in, st)
        j_out = current_density(u_in.conjugate(), du_in.conjugate(), st)
        worst = max(worst, abs(j_in + j_out) / abs(j_in))
        if j_ref is None:
            j_ref = j_in
        worst = max(worst, abs(j_in - j_ref) / abs(j_ref))
    t.check("current_unitarity", worst, 1e-6)


def _dwell_checks(t: _Table) -> None:
    units = natural_units()
    part = universal_particle(1.0)
    g = 1.0

    worst = 0.0
    for a in (0.1, 1.0, 10.0):
        sc = GravityScales(a=a, b=1.0)
        p_closed = dwell_mod.forbidden_probability(sc, dwell_mod.METHOD_CLOSED_FORM)
        p_quad = dwell_mod.forbidden_probability(sc, dwell_mod.METHOD_QUADRATURE)
        worst = max(worst, abs(p_closed - p_quad) / p_closed)
    t.check("dwell_quadrature_vs_closed", worst, 1e-8)

    quad_I = oracle.adaptive_quadrature(
        lambda z: z * bessel_k_third((2.0 / 3.0) * z**1.5) ** 2 if z > 0 else 0.0,
        0.0,
        math.inf,
        abs_tol=1e-12,
    )
    t.check(
        "dimensionless_integral_identity",
        abs(quad_I - dwell_mod.DIMENSIONLESS_FORBIDDEN_INTEGRAL)
        / dwell_mod.DIMENSIONLESS_FORBIDDEN_INTEGRAL,
        1e-8,
    )

    sc = gravity_scales(units, part, g, 1.0)
    st = scattering_state(1.0, part, units)
    res = dwell_mod.dwell_time(sc, st, part, g, units)
    t.check_range("dwell_kappa_first_principles", res.kappa, 0.52, 0.54)
    closed_kappa = (0.75) ** (1.0 / 3.0) * math.gamma(2.0 / 3.0) ** 2 / pi
    t.info(
        f"dwell_kappa computed={res.kappa:.12g} closed_form={closed_kappa:.12g} "
        f"alt_quoted_decimal=0.4 vindicated=closed_form"
    )
    near = gravity_clock_near(sc, part, g, units).dT_total
    t.check_range("dwell_vs_near_clock_ratio", res.dwell_time / near, 1.0 / 1.5, 1.5)

    # electron desk numbers
    si = si_units()
    e = electron()
    sc_e = gravity_scales(si, e, 9.81, 1e-30)
    t.check_range("electron_penetration_depth_mm", sc_e.a * 1e3, 0.8, 1.0)
    st_e = scattering_state(1e-30, e, si)
    res_e = dwell_mod.dwell_time(sc_e, st_e, e, 9.81, si)
    t.check_range("electron_dwell_ms", res_e.dwell_time * 1e3, 2.7, 6.0)


def _exp_limit_checks(t: _Table) -> None:
    units = natural_units()
    part = universal_particle(1.0)

    worst = 0.0
    for (E, alpha, beta, X) in ((0.5, 1.0, 2.0, 5.0), (2.0, 1.0, 1.0, 4.0), (0.5, 3.0, 10.0, 3.0)):
        st = scattering_state(E, part, units)
        an = exp_clock(st, alpha, beta, X).dT_total
        fd = peres_dt(
            lambda EE: exp_phase(scattering_state(EE, part, units), alpha, beta, X),
            E,
            units,
        ).dT_total
        worst = max(worst, abs(an - fd) / abs(an))
    t.check("exp_analytic_vs_fd", worst, 1e-6)

    # fit the constant of the large-beta rational phase model from the exact
    # digamma bracket; it converges to -gamma_E (magnitude gamma_E)
    st = scattering_state(0.5, part, units)
    beta = 1e4
    w = 2.0 * st.k / beta
    c_fit = re_digamma_one_plus_imag(w)
    t.check("large_beta_constant_fit", abs(c_fit + EULER_GAMMA), 1e-4)
    t.info(
        f"large_beta_constant fitted={-c_fit:.12g} euler_gamma={LARGE_BETA_PHASE_CONSTANT:.12g}"
    )

    qs = []
    for beta in (10.0, 100.0, 1000.0):
        qs.append(exp_clock(st, 1.0, beta, 1.0).dT_quantum)
    mono = qs[0] > qs[1] > qs[2] > 0.0
    t.check("exp_quantum_monotone_vanishing", 1.0 if mono else 0.0, 0.5, larger_ok=True)


def _step_checks(t: _Table) -> None:
    units = natural_units()
    part = universal_particle(1.0)
    v0 = 2.0
    worst = 0.0
    for frac in (0.1, 0.3, 0.5, 0.7, 0.9):
        E = frac * v0
        st = scattering_state(E, part, units, StepPotential(v0))
        fd = peres_dt(
            lambda EE: step_phase(
                scattering_state(EE, part, units, StepPotential(v0)), v0, 0.0
            ),
            E,
            units,
        ).dT_total
        an = units.hbar / sqrt(E * (v0 - E))
        worst = max(worst, abs(fd - an) / an)
    t.check("step_delay_fd_vs_analytic", worst, 1e-6)

    # delay sinks like V0^(-1/2): at V0 = 1e6 E it is 1e-3 of the E = V0/2
    # value up to the exact factor sqrt(1e6/(1e6 - 1))
    E = 1.0
    big_v0 = 1e6 * E
    st_big = scattering_state(E, part, units, StepPotential(big_v0))
    ref = step_clock(scattering_state(E, part, units, StepPotential(2 * E)), 2 * E, 0.0)
    ratio = step_clock(st_big, big_v0, 0.0).dT_quantum / ref.dT_quantum
    t.check("step_delay_vanishes_large_v0", ratio, 1.0001e-3)

    # delay is linear in hbar: SI value is hbar_SI times the natural one
    si = si_units()
    st_si = scattering_state(E, part, si, StepPotential(v0))
    r = step_clock(st_si, v0, 0.0).dT_quantum / step_clock(
        scattering_state(E, part, units, StepPotential(v0)), v0, 0.0
    ).dT_quantum
    t.check("step_delay_linear_in_hbar", abs(r - si.hbar), 1e-22)


def run_verification(stream: TextIO) -> int:
    """Run every check, print the table to ``stream``, return 0/1."""
    t = _Table()
    _specfun_checks(t)
    _route_agreement_checks(t)
    _oracle_checks(t)
    _gravity_checks(t)
    _dwell_checks(t)
    _exp_limit_checks(t)
    _step_checks(t)
    for line in t.lines:
        stream.write(line + "\n")
    n_checks = sum(1 for ln in t.lines if not ln.startswith("INFO"))
    status = "ok" if t.failures == 0 else "FAILED"
    stream.write(f"verify: {n_checks - t.failures}/{n_checks} checks passed: {status}\n")
    return 0 if t.failures == 0 else 1
