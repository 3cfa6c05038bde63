"""Self-contained oracle suite behind the ``validate`` CLI command.

Every check pits an implementation against an independent route to the
same number (explicit summation, quadrature, closed forms, ray-matrix
eigenmodes, Monte-Carlo sampling) or asserts an exact identity. Checks
are deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, special

from . import experiment, field, gases, optics, overlap, spectra


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, residual: float, tolerance: float) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(residual <= tolerance),
        detail=f"residual {residual:.3e} (tolerance {tolerance:.1e})",
    )


def check_field_closed_form_vs_roundtrip(rng: np.random.Generator,
                                         n_draws: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(n_draws):
        r1 = rng.uniform(0.0, 0.999)
        r2 = rng.uniform(0.0, min(0.997 / max(r1, 1e-12), 0.999))
        cfg = field.ScatterConfig(
            amplitude=rng.uniform(1e-6, 1e-3),
            pump_field=rng.uniform(0.1, 10.0),
            wavenumber=rng.uniform(1e6, 2e7),
            displacement=rng.uniform(-1e-7, 1e-7),
        )
        d = rng.uniform(1e-3, 1e-2)
        exact = field.intracavity_field(cfg, r1, r2, d).field
        summed = field.roundtrip_field_sum(cfg, r1, r2, d, 10_000).field
        worst = max(worst, abs(summed - exact) / abs(exact))
    return _result("field closed form vs round-trip summation", worst, 1e-6)


def check_field_average_quadrature(rng: np.random.Generator,
                                   n_draws: int = 200) -> CheckResult:
    worst = 0.0
    for _ in range(n_draws):
        r1 = rng.uniform(0.0, 0.999)
        r2 = rng.uniform(0.0, 0.999)
        amplitude = rng.uniform(1e-6, 1e-3)
        pump_field = rng.uniform(0.1, 10.0)
        wavenumber = rng.uniform(1e6, 2e7)
        # resonant separation: k*d a multiple of pi
        d = math.pi * rng.integers(1000, 40000) / wavenumber
        closed = field.position_averaged_intensity(amplitude, pump_field ** 2, r1, r2)
        numeric = field.position_averaged_intensity_numeric(
            amplitude, pump_field, wavenumber, r1, r2, d, n_points=10_000
        )
        worst = max(worst, abs(numeric - closed) / closed)
    return _result("position-averaged intensity vs quadrature", worst, 1e-6)


def check_field_mirror_asymmetry(rng: np.random.Generator) -> CheckResult:
    r1, r2 = 0.9, 0.5
    forward = field.position_averaged_intensity(1e-3, 1.0, r1, r2)
    swapped = field.position_averaged_intensity(1e-3, 1.0, r2, r1)
    expected = (1.0 + r1 ** 2) / (1.0 + r2 ** 2)
    residual = abs(forward / swapped - expected)
    return _result("averaged intensity left-mirror asymmetry", residual, 1e-12)


def check_power_budget_identities(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for coupling in ("averaged", "antinode"):
        for _ in range(50):
            f = rng.uniform(1.0, 1e5)
            budget = field.cavity_power_budget(1e-4, rng.uniform(0.1, 5.0), f, coupling)
            worst = max(
                worst,
                abs(budget.cavity_power - 2.0 * budget.transmitted_power),
                abs(budget.free_space_mode_power - 2.0 * budget.free_space_one_way_power),
            )
    return _result("power budget pairwise identities", worst, 0.0)


def check_power_linearity(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        pump = rng.uniform(0.1, 5.0)
        scale = rng.uniform(2.0, 100.0)
        f = rng.uniform(10.0, 1e4)
        base = field.transmitted_power(1e-4, pump, 0.003, 0.01, f)
        scaled = field.transmitted_power(1e-4, scale * pump, 0.003, 0.01, f)
        worst = max(worst, abs(scaled / base - scale) / scale)
    return _result("scattered power linear in pump power", worst, 1e-12)


def check_finesse_monotone(rng: np.random.Generator) -> CheckResult:
    transmissions = np.linspace(1e-4, 0.9, 200)
    values = [optics.finesse(optics.MirrorSpec(1.0 - t), optics.MirrorSpec(0.99))
              for t in transmissions]
    monotone = all(a > b for a, b in zip(values, values[1:]))
    return CheckResult("finesse monotone decreasing in transmission", monotone,
                       "strictly decreasing over T in [1e-4, 0.9]" if monotone
                       else "monotonicity violated")


def check_finesse_taylor(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for t in np.linspace(1e-4, 0.0099, 40):
        mirror = optics.MirrorSpec(1.0 - t)
        exact = optics.finesse(mirror, mirror)
        approx = 2.0 * math.pi / (2.0 * t)
        worst = max(worst, abs(exact - approx) / exact)
    return _result("finesse Taylor expansion below T=0.01", worst, 0.02)


def check_cavity_params_identities(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(100):
        rc = rng.uniform(5e-3, 0.5)
        geometry = optics.CavityGeometry(
            mirror_separation=rng.uniform(0.05, 1.95) * rc,
            radius_of_curvature=rc,
            left_mirror=optics.MirrorSpec(rng.uniform(0.5, 0.99999)),
            right_mirror=optics.MirrorSpec(rng.uniform(0.5, 0.99999)),
        )
        wavelength = rng.uniform(300e-9, 1600e-9)
        params = optics.derive_cavity_params(geometry, wavelength)
        worst = max(
            worst,
            abs(params.linewidth * params.finesse / params.free_spectral_range - 1.0),
            abs(params.q_factor * wavelength
                / (2.0 * geometry.mirror_separation * params.finesse) - 1.0),
            abs(params.rayleigh_length
                / (math.pi * params.waist ** 2 / wavelength) - 1.0),
            abs(params.mode_volume
                / (math.pi * params.waist ** 2 * geometry.mirror_separation / 4.0) - 1.0),
        )
    return _result("derived cavity parameter identities", worst, 1e-12)


def check_abcd_waist(rng: np.random.Generator, n_draws: int = 100) -> CheckResult:
    worst = 0.0
    for _ in range(n_draws):
        rc = rng.uniform(5e-3, 0.5)
        d = rng.uniform(0.05, 1.95) * rc
        wavelength = rng.uniform(300e-9, 1600e-9)
        closed = optics.symmetric_waist(d, rc, wavelength)
        oracle = optics.abcd_roundtrip_waist(d, rc, wavelength)
        worst = max(worst, abs(closed - oracle) / closed)
    return _result("waist vs ABCD round-trip eigenmode", worst, 1e-9)


def check_abcd_mode_spacing(rng: np.random.Generator, n_draws: int = 100) -> CheckResult:
    worst = 0.0
    for _ in range(n_draws):
        rc = rng.uniform(5e-3, 0.5)
        d = rng.uniform(0.05, 1.95) * rc
        closed = optics.transverse_mode_spacing(d, rc)
        oracle = optics.abcd_roundtrip_mode_spacing(d, rc)
        worst = max(worst, abs(closed - oracle) / closed)
    return _result("transverse mode spacing vs ABCD Gouy phase", worst, 1e-9)


def check_dipole_normalization(rng: np.random.Generator) -> CheckResult:
    residual = abs(overlap.dipole_normalization() - 1.0)
    return _result("dipole mode intensity normalization", residual, 1e-6)


def check_gaussian_normalization(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    mode = overlap.GaussianMode(waist=45e-6, wavelength=532e-9)
    for z in (0.0, mode.rayleigh_length, 10.0 * mode.rayleigh_length):
        worst = max(worst, abs(overlap.gaussian_normalization(45e-6, 532e-9, z) - 1.0))
    return _result("gaussian mode intensity normalization", worst, 1e-6)


def check_overlap_far_field(rng: np.random.Generator) -> CheckResult:
    wavelength, waist = 532e-9, 45e-6
    z0 = overlap.GaussianMode(waist, wavelength).rayleigh_length
    analytic = overlap.overlap_eta_analytic(wavelength, waist)
    near = overlap.overlap_eta_numeric(wavelength, waist, 100.0 * z0)
    far = overlap.overlap_eta_numeric(wavelength, waist, 1e4 * z0)
    residual_near = abs(near - analytic) / analytic
    residual_far = abs(far - analytic) / analytic
    passed = residual_near <= 1e-3 and residual_far <= 1e-5
    return CheckResult("overlap quadrature far-field convergence", passed,
                       f"residual {residual_near:.3e} at 100 z0, "
                       f"{residual_far:.3e} at 1e4 z0")


def check_overlap_monotone(rng: np.random.Generator) -> CheckResult:
    wavelength, waist = 532e-9, 45e-6
    z0 = overlap.GaussianMode(waist, wavelength).rayleigh_length
    factors = [10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0]
    values = [overlap.overlap_eta_numeric(wavelength, waist, f * z0) for f in factors]
    analytic = overlap.overlap_eta_analytic(wavelength, waist)
    monotone = all(a > b for a, b in zip(values, values[1:]))
    approaches = all(v > analytic for v in values)
    passed = monotone and approaches
    return CheckResult("overlap approaches analytic limit monotonically", passed,
                       "decreasing toward the analytic value beyond 10 z0"
                       if passed else "monotone approach violated")


def check_purcell_equivalence(rng: np.random.Generator,
                              n_draws: int = 1000) -> CheckResult:
    worst = 0.0
    for _ in range(n_draws):
        f = rng.uniform(1.0, 1e6)
        wavelength = rng.uniform(200e-9, 2000e-9)
        waist = rng.uniform(5e-6, 5e-4)
        d = rng.uniform(1e-3, 1.0)
        q = 2.0 * d * f / wavelength
        v = math.pi * waist ** 2 * d / 4.0
        a = overlap.purcell_factor(q, wavelength, v)
        b = overlap.purcell_ratio(f, wavelength, waist)
        worst = max(worst, abs(a - b) / b)
    return _result("Purcell factor equals interference power ratio", worst, 1e-12)


def check_purcell_separation_cancels(rng: np.random.Generator) -> CheckResult:
    wavelength, waist, f = 532e-9, 45e-6, 1000.0
    values = []
    for _ in range(50):
        d = rng.uniform(1e-4, 10.0)
        q = 2.0 * d * f / wavelength
        v = math.pi * waist ** 2 * d / 4.0
        values.append(overlap.purcell_factor(q, wavelength, v))
    residual = (max(values) - min(values)) / values[0]
    return _result("mirror separation cancels in the Purcell factor", residual, 1e-12)


def _overlap_closed_form(observed_fwhm: float, linewidth: float) -> float:
    # independent Faddeeva-function route to the Gaussian-Lorentzian integral
    sigma = observed_fwhm / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    hwhm = linewidth / 2.0
    a = hwhm / (sigma * math.sqrt(2.0))
    return math.pi * hwhm * special.erfcx(a) / (sigma * math.sqrt(2.0 * math.pi))


def check_spectral_overlap_closed_form(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    xenon = gases.builtin_species("Xe")
    profile = spectra.SpectralProfile.for_gas(xenon, 532e-9)
    for _ in range(40):
        linewidth = 10 ** rng.uniform(5.5, 10.0)
        quadrature = spectra.spectral_overlap(profile, linewidth)
        closed = _overlap_closed_form(profile.doppler_fwhm_observed, linewidth)
        worst = max(worst, abs(quadrature - closed) / closed)
    return _result("spectral overlap vs Faddeeva closed form", worst, 1e-6)


def check_spectral_overlap_limits(rng: np.random.Generator) -> CheckResult:
    xenon = gases.builtin_species("Xe")
    profile = spectra.SpectralProfile.for_gas(xenon, 532e-9)
    widths = np.logspace(5.0, 12.0, 30)
    values = [spectra.spectral_overlap(profile, w) for w in widths]
    monotone = all(a < b for a, b in zip(values, values[1:]))
    bounded = all(0.0 < v <= 1.0 + 1e-12 for v in values)
    broad = abs(values[-1] - 1.0) < 1e-3
    # the leading correction to the narrow-cavity asymptote is
    # -linewidth/(sigma*sqrt(2*pi)); 2% agreement needs width < observed/50
    sigma = profile.doppler_fwhm_observed / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    narrow_width = profile.doppler_fwhm_observed / 50.0
    asymptote = (math.pi / 2.0) * narrow_width / (sigma * math.sqrt(2.0 * math.pi))
    narrow = abs(spectra.spectral_overlap(profile, narrow_width) - asymptote) / asymptote
    passed = monotone and bounded and broad and narrow < 0.02
    return CheckResult(
        "spectral overlap limits and monotonicity", passed,
        f"monotone={monotone}, bounded={bounded}, broad residual "
        f"{abs(values[-1] - 1.0):.2e}, narrow residual {narrow:.2e}"
    )


def check_polarization_sum_rule(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(100):
        eps = rng.uniform(0.0, 0.5)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        total = (spectra.polarization_signal(theta, eps)
                 + spectra.polarization_signal(theta + math.pi / 2.0, eps))
        worst = max(worst, abs(total - (1.0 + eps)))
    return _result("polarization quarter-turn sum rule", worst, 1e-12)


def check_scan_linearity(rng: np.random.Generator) -> CheckResult:
    geometry = optics.CavityGeometry(6e-3, 45e-3, optics.MirrorSpec(0.997),
                                     optics.MirrorSpec(0.997))
    params = optics.derive_cavity_params(geometry, 532e-9)
    xenon = gases.builtin_species("Xe")
    scale = rng.uniform(2.0, 10.0)
    base = spectra.scan_spectrum(params, [(xenon, 1.0)], 5e9, 2e6, 532e-9)
    scaled = spectra.scan_spectrum(params, [(xenon, scale)], 5e9, 2e6, 532e-9)
    residual = float(np.max(np.abs(scaled.signals - scale * base.signals))
                     / np.max(scaled.signals))
    return _result("scan signal linear in species weight", residual, 1e-12)


def check_doppler_monte_carlo(rng: np.random.Generator) -> CheckResult:
    xenon = gases.builtin_species("Xe")
    seed = int(rng.integers(0, 2 ** 31))
    sampled = spectra.doppler_fwhm_monte_carlo(532e-9, xenon.temperature,
                                               xenon.molar_mass, 1_000_000, seed)
    expected = math.sqrt(2.0) * spectra.doppler_fwhm(532e-9, xenon.temperature,
                                                     xenon.molar_mass)
    residual = abs(sampled - expected) / expected
    return _result("Monte-Carlo Doppler width sqrt(2) factor", residual, 0.01)


def check_species_ratio(rng: np.random.Generator) -> CheckResult:
    geometry = optics.CavityGeometry(6e-3, 45e-3, optics.MirrorSpec(0.997),
                                     optics.MirrorSpec(0.997))
    params = optics.derive_cavity_params(geometry, 532e-9)
    table = gases.load_species_table()
    ratios = spectra.species_ratio([table["Xe"], table["CF3H"], table["N2"]],
                                   params, 532e-9)
    expected = (1.0, 0.36, 0.09)
    worst = max(abs(r - e) for r, e in zip(ratios, expected))
    return _result("species ratio against the expected triple", worst, 0.03)


def check_backout_roundtrip(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(100):
        free_space = rng.uniform(1e-16, 1e-12)
        f = rng.uniform(10.0, 1e5)
        ovl = rng.uniform(0.01, 1.0)
        share = rng.uniform(0.1, 1.0)
        measured = free_space * (4.0 * share * f / math.pi) * ovl
        recovered = experiment.free_space_backout(measured, f, ovl, share)
        worst = max(worst, abs(recovered - free_space) / free_space)
    return _result("free-space back-out round trip", worst, 1e-12)


def check_forecast_consistency(rng: np.random.Generator) -> CheckResult:
    table = gases.load_species_table()
    anchor = experiment.ScenarioConfig(
        cavity=optics.CavityGeometry(6e-3, 45e-3, optics.MirrorSpec(0.997),
                                     optics.MirrorSpec(0.997)),
        gas=table["Xe"],
        pressure=1e4,
        pump=optics.PumpBeam(wavelength=532e-9, power=1.0, waist=50e-6),
        anchor=experiment.AnchorMeasurement(50e-15, 1000.0, 0.042),
    )
    target = experiment.ultracold_target_species(table["Xe"])
    report = experiment.ultracold_forecast(anchor, target, 1e5, 1e5)
    waist = optics.symmetric_waist(6e-3, 45e-3, 532e-9)
    residual = max(
        abs(report.ensemble_rate
            - report.per_molecule_in_cavity_rate * report.n_molecules),
        abs(report.cavity_free_space_ratio
            - overlap.purcell_ratio(1e5, 532e-9, waist)),
    )
    return _result("forecast internal consistency", residual, 0.0)


def check_unit_convention_cancels(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        unit = rng.uniform(1e-3, 1e3)
        f = rng.uniform(10.0, 1e5)
        wavelength = rng.uniform(300e-9, 1600e-9)
        waist = rng.uniform(1e-5, 1e-4)
        budget = field.cavity_power_budget(1e-4, unit, f, "antinode")
        dip = overlap.dipole_mode_power(1e-4, unit, wavelength, waist)
        ratio = budget.cavity_power / dip
        expected = overlap.purcell_ratio(f, wavelength, waist)
        worst = max(worst, abs(ratio - expected) / expected)
    return _result("arbitrary power unit cancels in ratios", worst, 1e-12)


ALL_CHECKS: tuple[Callable[[np.random.Generator], CheckResult], ...] = (
    check_field_closed_form_vs_roundtrip,
    check_field_average_quadrature,
    check_field_mirror_asymmetry,
    check_power_budget_identities,
    check_power_linearity,
    check_finesse_monotone,
    check_finesse_taylor,
    check_cavity_params_identities,
    check_abcd_waist,
    check_abcd_mode_spacing,
    check_dipole_normalization,
    check_gaussian_normalization,
    check_overlap_far_field,
    check_overlap_monotone,
    check_purcell_equivalence,
    check_purcell_separation_cancels,
    check_spectral_overlap_closed_form,
    check_spectral_overlap_limits,
    check_polarization_sum_rule,
    check_scan_linearity,
    check_doppler_monte_carlo,
    check_species_ratio,
    check_backout_roundtrip,
    check_forecast_consistency,
    check_unit_convention_cancels,
)


def run_all(seed: int = 0) -> list[CheckResult]:
    """Run every check with one seeded generator; order is fixed."""
    rng = np.random.default_rng(seed)
    return [check(rng) for check in ALL_CHECKS]


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name}: {r.detail}")
    n_passed = sum(r.passed for r in results)
    lines.append(f"{n_passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
