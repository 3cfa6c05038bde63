"""End-to-end scenario composition: enhancement reports and forecasts.

Absolute powers always flow from a measured anchor; the dimensionless
scattering amplitude is never modeled microscopically, so every absolute
prediction is a rescaling of an observed signal.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Sequence

from .config import parse_config, require
from .constants import PLANCK, SPEED_OF_LIGHT
from .errors import ConfigError
from .gases import GasSpecies, load_species_table
from .optics import (CavityGeometry, MirrorSpec, PumpBeam, number_density,
                     symmetric_waist)
from .overlap import purcell_ratio

ENHANCEMENT_SCHEMA = "cavray.enhancement-report/1"
FORECAST_SCHEMA = "cavray.forecast-report/1"


@dataclass(frozen=True)
class AnchorMeasurement:
    """A measured cavity signal used to scale absolute predictions."""

    measured_power: float    # W, detected through the outcoupling mirror
    finesse: float
    spectral_overlap: float

    def __post_init__(self):
        if self.measured_power <= 0.0:
            raise ValueError(f"anchor power must be positive, got {self.measured_power}")
        if self.finesse <= 0.0:
            raise ValueError(f"anchor finesse must be positive, got {self.finesse}")
        if not 0.0 < self.spectral_overlap <= 1.0:
            raise ValueError(
                f"anchor overlap must be in (0, 1], got {self.spectral_overlap}"
            )


@dataclass(frozen=True)
class ScenarioConfig:
    """One experimental scenario: cavity, gas, pump and optional anchor.

    cavity_waist overrides the waist derived from the nominal geometry,
    for anchoring on a measured or independently quoted mode size.
    """

    cavity: CavityGeometry
    gas: GasSpecies
    pressure: float          # Pa
    pump: PumpBeam
    anchor: AnchorMeasurement | None = None
    cavity_waist: float | None = None

    def effective_cavity_waist(self, wavelength: float) -> float:
        if self.cavity_waist is not None:
            return self.cavity_waist
        return symmetric_waist(self.cavity.mirror_separation,
                               self.cavity.radius_of_curvature, wavelength)

    @classmethod
    def from_file(cls, path: str | os.PathLike,
                  species_table: dict[str, GasSpecies] | None = None) -> "ScenarioConfig":
        values = parse_config(path)
        if species_table is None:
            species_table = load_species_table()
        name = str(require(values, "gas.species", path))
        if name not in species_table:
            raise ConfigError(path, None, f"unknown species {name!r}; table has: "
                              + ", ".join(sorted(species_table)))
        gas = species_table[name]
        temperature = values.get("gas.temperature")
        if temperature is not None:
            gas = GasSpecies(gas.name, gas.molar_mass, gas.polarizability,
                             float(temperature))
        geometry = CavityGeometry(
            mirror_separation=float(require(values, "cavity.separation", path)),
            radius_of_curvature=float(require(values, "cavity.curvature", path)),
            left_mirror=MirrorSpec(float(require(values, "cavity.left_reflectivity", path))),
            right_mirror=MirrorSpec(float(require(values, "cavity.right_reflectivity", path))),
        )
        pump = PumpBeam(
            wavelength=float(require(values, "pump.wavelength", path)),
            power=float(values.get("pump.power", 1.0)),
            waist=float(require(values, "pump.waist", path)),
            polarization_angle=float(values.get("pump.polarization_angle", math.pi / 2)),
        )
        anchor = None
        if "anchor.measured_power" in values:
            anchor = AnchorMeasurement(
                measured_power=float(values["anchor.measured_power"]),
                finesse=float(require(values, "anchor.finesse", path)),
                spectral_overlap=float(require(values, "anchor.spectral_overlap", path)),
            )
        waist = values.get("cavity.waist")
        return cls(cavity=geometry, gas=gas,
                   pressure=float(require(values, "gas.pressure", path)),
                   pump=pump, anchor=anchor,
                   cavity_waist=None if waist is None else float(waist))


def photon_rate(power: float, wavelength: float) -> float:
    """Photons per second carried by ``power`` at ``wavelength``."""
    if power < 0.0 or wavelength <= 0.0:
        raise ValueError("power must be nonnegative and wavelength positive")
    return power * wavelength / (PLANCK * SPEED_OF_LIGHT)


def interaction_volume(cavity_waist: float, pump_waist: float) -> float:
    """Effective volume of two crossed Gaussian beams, pi^(3/2) wc^2 wp / 2."""
    return math.pi ** 1.5 * cavity_waist ** 2 * pump_waist / 2.0


def contributing_particles(density: float, pump_waist: float,
                           cavity_waist: float, spectral_overlap: float) -> float:
    """Number of particles that actually feed the cavity signal.

    Particles inside the crossed-beam volume, thinned by the spectral
    overlap that selects the velocity classes the cavity accepts.
    """
    if density < 0.0 or pump_waist <= 0.0 or cavity_waist <= 0.0:
        raise ValueError("density must be nonnegative and waists positive")
    if not 0.0 < spectral_overlap <= 1.0:
        raise ValueError(f"overlap must be in (0, 1], got {spectral_overlap}")
    return density * interaction_volume(cavity_waist, pump_waist) * spectral_overlap


def free_space_backout(measured_cavity_power: float, finesse: float,
                       spectral_overlap: float,
                       outcoupling_fraction: float = 0.5) -> float:
    """Free-space power implied by a measured cavity signal.

    Inverts the detectable-power chain: division by the spectral overlap
    (absent without a cavity) and by the single-mirror enhancement
    4 * fraction * F / pi, where fraction = T2/(T1+T2) is 1/2 for symmetric
    mirrors.
    """
    if measured_cavity_power < 0.0:
        raise ValueError("measured power must be nonnegative")
    if finesse <= 0.0:
        raise ValueError(f"finesse must be positive, got {finesse}")
    if not 0.0 < spectral_overlap <= 1.0:
        raise ValueError(f"overlap must be in (0, 1], got {spectral_overlap}")
    if not 0.0 < outcoupling_fraction <= 1.0:
        raise ValueError(
            f"outcoupling fraction must be in (0, 1], got {outcoupling_fraction}"
        )
    enhancement = 4.0 * outcoupling_fraction * finesse / math.pi
    return measured_cavity_power / (enhancement * spectral_overlap)


MirrorPairing = tuple[float, MirrorSpec, MirrorSpec]


def finesse_dependence(pairings: Sequence[MirrorPairing]) -> list[tuple[float, float]]:
    """Relative detectable signal for each (finesse, left, right) pairing.

    The signal scales as F * T2/(T1+T2); entries are normalized to the
    highest-finesse pairing. For identical mirror pairs this reduces to
    plain linearity in the finesse.
    """
    if not pairings:
        raise ValueError("at least one mirror pairing is required")
    signals = []
    for f, left, right in pairings:
        if f <= 0.0:
            raise ValueError(f"finesse must be positive, got {f}")
        share = right.transmission / (left.transmission + right.transmission)
        signals.append(f * share)
    reference = signals[max(range(len(pairings)), key=lambda i: pairings[i][0])]
    return [(f, s / reference) for (f, _, _), s in zip(pairings, signals)]


@dataclass(frozen=True)
class FinesseEntry:
    """One row of an enhancement report."""

    finesse: float
    outcoupling_share: float
    measured_power: float
    spectral_overlap: float
    at_rest_power: float
    relative_measured: float
    predicted_relative: float       # with the T2/(T1+T2) asymmetry factor
    predicted_relative_symmetric: float  # plain F/F_max normalization


@dataclass(frozen=True)
class EnhancementReport:
    """Cavity-vs-free-space comparison across mirror pairings."""

    entries: tuple[FinesseEntry, ...]
    free_space_backout: float
    free_space_measured: float | None
    enhancement_factor: float | None

    def to_json(self) -> str:
        payload = {
            "schema": ENHANCEMENT_SCHEMA,
            "entries": [
                {
                    "finesse": e.finesse,
                    "outcoupling_share": e.outcoupling_share,
                    "measured_power_W": e.measured_power,
                    "spectral_overlap": e.spectral_overlap,
                    "at_rest_power_W": e.at_rest_power,
                    "relative_measured": e.relative_measured,
                    "predicted_relative": e.predicted_relative,
                    "predicted_relative_symmetric": e.predicted_relative_symmetric,
                }
                for e in self.entries
            ],
            "free_space_backout_W": self.free_space_backout,
            "free_space_measured_W": self.free_space_measured,
            "enhancement_factor": self.enhancement_factor,
        }
        return json.dumps(payload, indent=2)

    def table(self) -> str:
        lines = [
            f"{'finesse':>9} {'share':>7} {'measured':>12} {'overlap':>9} "
            f"{'at-rest':>12} {'rel meas':>9} {'rel pred':>9}"
        ]
        for e in self.entries:
            lines.append(
                f"{e.finesse:9.4g} {e.outcoupling_share:7.3f} "
                f"{e.measured_power:12.6g} {e.spectral_overlap:9.4f} "
                f"{e.at_rest_power:12.6g} {e.relative_measured:9.4f} "
                f"{e.predicted_relative:9.4f}"
            )
        lines.append(f"free-space back-out: {self.free_space_backout:.6g} W")
        if self.free_space_measured is not None:
            lines.append(f"free-space measured: {self.free_space_measured:.6g} W")
        if self.enhancement_factor is not None:
            lines.append(f"enhancement factor:  {self.enhancement_factor:.4g}")
        return "\n".join(lines)


def build_enhancement_report(pairings: Sequence[MirrorPairing],
                             measured_powers: Sequence[float],
                             spectral_overlaps: Sequence[float],
                             free_space_measured: float | None = None,
                             comparison_power: float | None = None) -> EnhancementReport:
    """Assemble the per-finesse comparison and the free-space back-out.

    The measured normalization uses the highest-finesse entry as the
    reference. comparison_power, when the free-space comparison was taken
    with its own cavity measurement, feeds the back-out and enhancement
    factor instead of that entry's power.
    """
    if not (len(pairings) == len(measured_powers) == len(spectral_overlaps)):
        raise ValueError("pairings, powers and overlaps must have equal length")
    at_rest = [p / o for p, o in zip(measured_powers, spectral_overlaps)]
    ref_index = max(range(len(pairings)), key=lambda i: pairings[i][0])
    predicted = finesse_dependence(pairings)
    max_finesse = pairings[ref_index][0]
    entries = []
    for i, ((f, left, right), rel_pred) in enumerate(zip(pairings, predicted)):
        share = right.transmission / (left.transmission + right.transmission)
        entries.append(FinesseEntry(
            finesse=f,
            outcoupling_share=share,
            measured_power=measured_powers[i],
            spectral_overlap=spectral_overlaps[i],
            at_rest_power=at_rest[i],
            relative_measured=at_rest[i] / at_rest[ref_index],
            predicted_relative=rel_pred[1],
            predicted_relative_symmetric=f / max_finesse,
        ))
    ref = pairings[ref_index]
    share_ref = ref[2].transmission / (ref[1].transmission + ref[2].transmission)
    if comparison_power is None:
        comparison_power = measured_powers[ref_index]
    backout = free_space_backout(comparison_power, ref[0],
                                 spectral_overlaps[ref_index],
                                 outcoupling_fraction=share_ref)
    factor = None
    if free_space_measured is not None:
        if free_space_measured <= 0.0:
            raise ValueError("free-space measurement must be positive")
        factor = comparison_power / free_space_measured
    return EnhancementReport(tuple(entries), backout, free_space_measured, factor)


@dataclass(frozen=True)
class ForecastReport:
    """Projected detection rates for a trapped ultracold sample."""

    n_molecules: float
    target_finesse: float
    per_molecule_in_cavity_rate: float  # Hz
    ensemble_rate: float                # Hz, in-cavity rate of the whole sample
    per_molecule_total_rate: float      # Hz, cavity plus free-space channels
    purcell_2c: float
    cavity_free_space_ratio: float

    def to_json(self) -> str:
        payload = {
            "schema": FORECAST_SCHEMA,
            "n_molecules": self.n_molecules,
            "target_finesse": self.target_finesse,
            "per_molecule_in_cavity_rate_Hz": self.per_molecule_in_cavity_rate,
            "ensemble_rate_Hz": self.ensemble_rate,
            "per_molecule_total_rate_Hz": self.per_molecule_total_rate,
            "purcell_2c": self.purcell_2c,
            "cavity_free_space_ratio": self.cavity_free_space_ratio,
        }
        return json.dumps(payload, indent=2)

    def table(self) -> str:
        return "\n".join([
            f"molecules:                  {self.n_molecules:.4g}",
            f"target finesse:             {self.target_finesse:.4g}",
            f"in-cavity rate / molecule:  {self.per_molecule_in_cavity_rate:.4g} Hz",
            f"ensemble rate into cavity:  {self.ensemble_rate:.4g} Hz",
            f"total rate / molecule:      {self.per_molecule_total_rate:.4g} Hz",
            f"Purcell 2C at target:       {self.purcell_2c:.4g}",
            f"cavity : free space         {self.cavity_free_space_ratio:.4g}",
        ])


def ultracold_target_species(reference: GasSpecies, polarizability_factor: float = 10.0,
                             name: str = "ultracold-dimer") -> GasSpecies:
    """Target species with a scaled-up polarizability (default 10x reference)."""
    return GasSpecies(name=name, molar_mass=reference.molar_mass,
                      polarizability=polarizability_factor * reference.polarizability,
                      temperature=reference.temperature)


def ultracold_forecast(anchor: ScenarioConfig, target: GasSpecies,
                       n_molecules: float, target_finesse: float) -> ForecastReport:
    """Scale a measured thermal-gas anchor to a trapped ultracold sample.

    The anchor's detected photon rate (both mirrors) divided by its
    contributing-particle count gives a per-particle rate, which is scaled
    by the polarizability-squared cross section, linearly by the finesse,
    and freed of the Doppler overlap penalty (trapped molecules scatter
    entirely within the cavity acceptance). The total per-molecule rate
    adds the free-space channel through the Purcell power ratio.
    """
    if anchor.anchor is None:
        raise ValueError("anchor scenario has no measured power to scale from")
    if n_molecules < 0.0:
        raise ValueError(f"molecule number must be nonnegative, got {n_molecules}")
    if target_finesse <= 0.0:
        raise ValueError(f"target finesse must be positive, got {target_finesse}")
    measurement = anchor.anchor
    wavelength = anchor.pump.wavelength
    cavity_waist = anchor.effective_cavity_waist(wavelength)
    density = number_density(anchor.pressure, anchor.gas.temperature)
    n_contributing = contributing_particles(density, anchor.pump.waist, cavity_waist,
                                            measurement.spectral_overlap)
    # symmetric cavity: the same power leaves through the second mirror
    anchor_rate_both = 2.0 * photon_rate(measurement.measured_power, wavelength)
    per_particle = anchor_rate_both / n_contributing
    in_cavity = (per_particle
                 * (target.polarizability / anchor.gas.polarizability) ** 2
                 * (target_finesse / measurement.finesse)
                 / measurement.spectral_overlap)
    ratio = purcell_ratio(target_finesse, wavelength, cavity_waist)
    return ForecastReport(
        n_molecules=n_molecules,
        target_finesse=target_finesse,
        per_molecule_in_cavity_rate=in_cavity,
        ensemble_rate=in_cavity * n_molecules,
        per_molecule_total_rate=in_cavity * (1.0 + 1.0 / ratio),
        purcell_2c=ratio,
        cavity_free_space_ratio=ratio,
    )
