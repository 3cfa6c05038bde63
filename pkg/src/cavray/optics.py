"""Fabry-Perot resonator geometry and derived quantities.

Mirrors are modeled as lossless (R + T = 1); absorption in real coatings
makes measured finesse fall short of the lossless prediction, which is
documented rather than compensated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import BOLTZMANN, SPEED_OF_LIGHT


@dataclass(frozen=True)
class MirrorSpec:
    """A lossless cavity mirror described by its intensity reflectivity."""

    reflectivity: float

    def __post_init__(self):
        if not 0.0 <= self.reflectivity < 1.0:
            raise ValueError(
                f"intensity reflectivity must be in [0, 1), got {self.reflectivity}"
            )

    @property
    def transmission(self) -> float:
        """Intensity transmission T = 1 - R."""
        return 1.0 - self.reflectivity

    @property
    def amplitude_reflectivity(self) -> float:
        """Field amplitude reflection coefficient r = sqrt(R)."""
        return math.sqrt(self.reflectivity)


@dataclass(frozen=True)
class CavityGeometry:
    """Symmetric two-mirror cavity: separation, common curvature, mirror pair."""

    mirror_separation: float      # m
    radius_of_curvature: float    # m, identical for both mirrors
    left_mirror: MirrorSpec
    right_mirror: MirrorSpec

    def __post_init__(self):
        d, rc = self.mirror_separation, self.radius_of_curvature
        if d <= 0.0:
            raise ValueError(f"mirror separation must be positive, got {d}")
        if rc <= 0.0 or d >= 2.0 * rc:
            raise ValueError(
                f"unstable geometry: need 0 < d < 2*Rc, got d={d}, Rc={rc}"
            )


@dataclass(frozen=True)
class CavityParams:
    """All derived resonator quantities for one cavity at one wavelength."""

    finesse: float
    free_spectral_range: float    # Hz
    linewidth: float              # Hz, FWHM
    q_factor: float
    waist: float                  # m
    rayleigh_length: float        # m
    transverse_mode_spacing: float  # Hz
    mode_volume: float            # m^3


@dataclass(frozen=True)
class PumpBeam:
    """Side-pumping beam driving the scatterers."""

    wavelength: float             # m
    power: float                  # W
    waist: float                  # m
    polarization_angle: float = math.pi / 2  # rad from cavity axis

    def __post_init__(self):
        if self.wavelength <= 0.0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if self.power < 0.0:
            raise ValueError(f"power must be nonnegative, got {self.power}")

    @property
    def wavenumber(self) -> float:
        """k = 2*pi/lambda in rad/m."""
        return 2.0 * math.pi / self.wavelength


def finesse(left: MirrorSpec, right: MirrorSpec) -> float:
    """Cavity finesse pi*(R1*R2)^(1/4) / (1 - sqrt(R1*R2)), exact form.

    Decreases monotonically with either mirror's transmission. Raises for
    the unphysical lossless trap R1*R2 >= 1.
    """
    product = left.reflectivity * right.reflectivity
    if product >= 1.0:
        raise ValueError(f"R1*R2 must be < 1 for a physical cavity, got {product}")
    return math.pi * product ** 0.25 / (1.0 - math.sqrt(product))


def free_spectral_range(mirror_separation: float) -> float:
    """Longitudinal mode spacing c/(2d) in Hz."""
    if mirror_separation <= 0.0:
        raise ValueError(f"mirror separation must be positive, got {mirror_separation}")
    return SPEED_OF_LIGHT / (2.0 * mirror_separation)


def symmetric_waist(mirror_separation: float, radius_of_curvature: float,
                    wavelength: float) -> float:
    """Fundamental-mode waist of a symmetric two-mirror cavity.

    w0^2 = (lambda / 2 pi) * sqrt(d * (2 Rc - d))
    """
    d, rc = mirror_separation, radius_of_curvature
    if wavelength <= 0.0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    if d <= 0.0 or d >= 2.0 * rc:
        raise ValueError(f"unstable geometry: need 0 < d < 2*Rc, got d={d}, Rc={rc}")
    w0_sq = (wavelength / (2.0 * math.pi)) * math.sqrt(d * (2.0 * rc - d))
    return math.sqrt(w0_sq)


def transverse_mode_spacing(mirror_separation: float,
                            radius_of_curvature: float) -> float:
    """Frequency spacing of adjacent transverse modes, FSR*arccos(sqrt(g1 g2))/pi."""
    d, rc = mirror_separation, radius_of_curvature
    if d <= 0.0 or d >= 2.0 * rc:
        raise ValueError(f"unstable geometry: need 0 < d < 2*Rc, got d={d}, Rc={rc}")
    g = 1.0 - d / rc
    return free_spectral_range(d) * math.acos(math.sqrt(g * g)) / math.pi


def rayleigh_length(waist: float, wavelength: float) -> float:
    """z0 = pi*w0^2/lambda in m."""
    return math.pi * waist ** 2 / wavelength


def mode_volume(waist: float, mirror_separation: float) -> float:
    """Fundamental-mode volume of a Fabry-Perot cavity, pi*w0^2*d/4."""
    return math.pi * waist ** 2 * mirror_separation / 4.0


def derive_cavity_params(geometry: CavityGeometry, wavelength: float) -> CavityParams:
    """Populate every derived resonator quantity for one wavelength.

    Satisfies linewidth*finesse = FSR and Q*lambda = 2*d*finesse exactly.
    """
    f = finesse(geometry.left_mirror, geometry.right_mirror)
    if f <= 0.0:
        raise ValueError("finesse is zero: mirrors provide no resonant buildup")
    d = geometry.mirror_separation
    fsr = free_spectral_range(d)
    w0 = symmetric_waist(d, geometry.radius_of_curvature, wavelength)
    return CavityParams(
        finesse=f,
        free_spectral_range=fsr,
        linewidth=fsr / f,
        q_factor=2.0 * d * f / wavelength,
        waist=w0,
        rayleigh_length=rayleigh_length(w0, wavelength),
        transverse_mode_spacing=transverse_mode_spacing(d, geometry.radius_of_curvature),
        mode_volume=mode_volume(w0, d),
    )


def number_density(pressure: float, temperature: float) -> float:
    """Ideal-gas number density p/(kB*T) in 1/m^3."""
    if temperature <= 0.0:
        raise ValueError(f"temperature must be positive, got {temperature}")
    if pressure < 0.0:
        raise ValueError(f"pressure must be nonnegative, got {pressure}")
    return pressure / (BOLTZMANN * temperature)


# --- independent ABCD round-trip cross-checks -------------------------------
#
# The closed-form waist and mode-spacing expressions above are verified
# against the resonator eigenmode obtained from ray-transfer matrices.

def _propagation(distance: float) -> np.ndarray:
    return np.array([[1.0, distance], [0.0, 1.0]])


def _curved_mirror(radius_of_curvature: float) -> np.ndarray:
    return np.array([[1.0, 0.0], [-2.0 / radius_of_curvature, 1.0]])


def abcd_roundtrip_waist(mirror_separation: float, radius_of_curvature: float,
                         wavelength: float) -> float:
    """Waist from the self-consistent q-parameter of the round-trip matrix.

    The round trip starts at the cavity centre, where the symmetric
    eigenmode has its waist (q purely imaginary).
    """
    d, rc = mirror_separation, radius_of_curvature
    m = (_propagation(d / 2.0) @ _curved_mirror(rc) @ _propagation(d)
         @ _curved_mirror(rc) @ _propagation(d / 2.0))
    a, b = m[0, 0], m[0, 1]
    c, dd = m[1, 0], m[1, 1]
    # q solves c*q^2 + (dd - a)*q - b = 0; stable cavity gives Im(q) > 0
    disc = complex((dd - a) ** 2 + 4.0 * b * c)
    q = (-(dd - a) + np.sqrt(disc)) / (2.0 * c)
    if q.imag <= 0.0:
        q = (-(dd - a) - np.sqrt(disc)) / (2.0 * c)
    if q.imag <= 0.0:
        raise ValueError(f"no stable eigenmode for d={d}, Rc={rc}")
    return float(np.sqrt(wavelength * q.imag / np.pi))


def abcd_roundtrip_mode_spacing(mirror_separation: float,
                                radius_of_curvature: float) -> float:
    """Transverse mode spacing from the round-trip Gouy phase.

    The half-trace of the round-trip matrix equals cos(theta_rt); the
    spacing is FSR * theta_rt / (2 pi).
    """
    d, rc = mirror_separation, radius_of_curvature
    m = _curved_mirror(rc) @ _propagation(d) @ _curved_mirror(rc) @ _propagation(d)
    half_trace = (m[0, 0] + m[1, 1]) / 2.0
    if not -1.0 <= half_trace <= 1.0:
        raise ValueError(f"no stable eigenmode for d={d}, Rc={rc}")
    theta_rt = math.acos(half_trace)
    return free_spectral_range(d) * theta_rt / (2.0 * math.pi)
