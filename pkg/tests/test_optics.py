"""Resonator geometry chain against frozen independent evaluations.

Expected values were computed by direct evaluation of the stated
formulas and, for waist and mode spacing, by the ABCD round-trip
eigenmode; the paper-reported roundings (24.9 GHz, 45 um, 4.1 GHz,
F=1000) are cross-checked at looser tolerances.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavray import (CavityGeometry, MirrorSpec, abcd_roundtrip_mode_spacing,
                    abcd_roundtrip_waist, derive_cavity_params, finesse,
                    free_spectral_range, number_density, symmetric_waist,
                    transverse_mode_spacing)

WAVELENGTH = 532e-9


class TestMirrorSpec:
    def test_lossless_split(self):
        mirror = MirrorSpec(0.997)
        assert mirror.transmission == pytest.approx(0.003)
        assert mirror.amplitude_reflectivity == pytest.approx(math.sqrt(0.997))

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
    def test_rejects_unphysical_reflectivity(self, bad):
        with pytest.raises(ValueError):
            MirrorSpec(bad)


class TestFinesse:
    def test_paper_mirror_pair(self):
        # exact formula; the high-finesse approximation would give 1047.2
        value = finesse(MirrorSpec(0.997), MirrorSpec(0.997))
        assert value == pytest.approx(1045.6255750020905, rel=1e-12)

    def test_no_mirrors(self):
        assert finesse(MirrorSpec(0.0), MirrorSpec(0.0)) == 0.0

    def test_asymmetric_pair(self):
        value = finesse(MirrorSpec(0.997), MirrorSpec(0.959))
        assert value == pytest.approx(140.03195341764595, rel=1e-12)

    def test_monotone_decreasing_in_transmission(self):
        transmissions = np.linspace(1e-5, 0.999, 300)
        values = [finesse(MirrorSpec(1.0 - t), MirrorSpec(0.9)) for t in transmissions]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_taylor_consistency_below_one_percent(self):
        # F approaches 2*pi/(T1+T2) as the mirrors become ideal
        for t in np.linspace(1e-4, 0.0099, 25):
            exact = finesse(MirrorSpec(1.0 - t), MirrorSpec(1.0 - t))
            approx = 2.0 * math.pi / (2.0 * t)
            assert abs(exact - approx) / exact < 0.02


class TestFreeSpectralRange:
    def test_paper_length(self):
        assert free_spectral_range(6e-3) == pytest.approx(24.982704833e9, rel=1e-9)

    def test_halving(self):
        assert free_spectral_range(12e-3) == pytest.approx(
            free_spectral_range(6e-3) / 2.0
        )

    def test_length_implied_by_reported_fsr(self):
        assert free_spectral_range(6.02e-3) == pytest.approx(24.8997058e9, rel=1e-8)

    def test_rejects_nonpositive_length(self):
        with pytest.raises(ValueError):
            free_spectral_range(0.0)


class TestSymmetricWaist:
    def test_paper_geometry(self):
        w0 = symmetric_waist(6e-3, 45e-3, WAVELENGTH)
        assert w0 == pytest.approx(4.359869760587711e-05, rel=1e-12)
        # paper rounds this to 45 um
        assert w0 == pytest.approx(45e-6, rel=0.05)

    def test_short_cavity_limit(self):
        assert symmetric_waist(1e-9, 45e-3, WAVELENGTH) < 1e-6

    def test_confocal_matches_textbook_form(self):
        w0 = symmetric_waist(45e-3, 45e-3, WAVELENGTH)
        assert w0 == pytest.approx(math.sqrt(WAVELENGTH * 45e-3 / (2.0 * math.pi)),
                                   rel=1e-12)
        assert w0 == pytest.approx(61.72656913858064e-6, rel=1e-9)

    def test_rejects_unstable_geometry(self):
        with pytest.raises(ValueError):
            symmetric_waist(90e-3, 45e-3, WAVELENGTH)

    @given(st.floats(0.05, 1.95), st.floats(5e-3, 0.5), st.floats(300e-9, 1600e-9))
    @settings(max_examples=200, deadline=None)
    def test_agrees_with_abcd_eigenmode(self, fraction, rc, wavelength):
        d = fraction * rc
        closed = symmetric_waist(d, rc, wavelength)
        oracle = abcd_roundtrip_waist(d, rc, wavelength)
        assert abs(closed - oracle) / closed < 1e-9


class TestTransverseModeSpacing:
    def test_paper_geometry(self):
        spacing = transverse_mode_spacing(6e-3, 45e-3)
        assert spacing == pytest.approx(4.1535738277e9, rel=1e-9)
        # paper rounds this to 4.1 GHz
        assert spacing == pytest.approx(4.1e9, rel=0.03)

    def test_confocal_half_fsr(self):
        assert transverse_mode_spacing(45e-3, 45e-3) == pytest.approx(
            free_spectral_range(45e-3) / 2.0
        )

    def test_planar_limit_vanishes(self):
        # spacing/FSR -> 0 as d -> 0
        assert (transverse_mode_spacing(1e-7, 45e-3)
                / free_spectral_range(1e-7)) < 1e-3

    @given(st.floats(0.05, 1.95), st.floats(5e-3, 0.5))
    @settings(max_examples=200, deadline=None)
    def test_agrees_with_abcd_gouy_phase(self, fraction, rc):
        d = fraction * rc
        closed = transverse_mode_spacing(d, rc)
        oracle = abcd_roundtrip_mode_spacing(d, rc)
        assert abs(closed - oracle) / closed < 1e-9


class TestDeriveCavityParams:
    def test_paper_cavity_values(self, reference_params):
        assert reference_params.q_factor == pytest.approx(2.3585539286e7, rel=1e-9)
        assert reference_params.mode_volume == pytest.approx(8.957527784e-12, rel=1e-9)
        assert reference_params.linewidth == pytest.approx(23.892591603e6, rel=1e-9)

    def test_internal_identities_exact(self, reference_geometry, reference_params):
        p = reference_params
        assert p.linewidth * p.finesse == pytest.approx(p.free_spectral_range,
                                                        rel=1e-14)
        assert p.q_factor * WAVELENGTH == pytest.approx(
            2.0 * reference_geometry.mirror_separation * p.finesse, rel=1e-14
        )
        assert p.rayleigh_length == pytest.approx(
            math.pi * p.waist ** 2 / WAVELENGTH, rel=1e-14
        )

    def test_all_positive(self, reference_params):
        for name in ("finesse", "free_spectral_range", "linewidth", "q_factor",
                     "waist", "rayleigh_length", "transverse_mode_spacing",
                     "mode_volume"):
            assert getattr(reference_params, name) > 0.0

    def test_degenerate_mirrors_rejected(self):
        geometry = CavityGeometry(6e-3, 45e-3, MirrorSpec(0.0), MirrorSpec(0.0))
        with pytest.raises(ValueError):
            derive_cavity_params(geometry, WAVELENGTH)


class TestNumberDensity:
    def test_hundred_millibar(self):
        value = number_density(1e4, 295.0)
        assert value == pytest.approx(2.4552442427e24, rel=1e-9)
        # paper quotes 2e18 cm^-3 for the operating point
        assert value / 1e6 == pytest.approx(2e18, rel=0.25)

    def test_vacuum(self):
        assert number_density(0.0, 295.0) == 0.0

    def test_one_bar_scaling(self):
        assert number_density(1e5, 295.0) == pytest.approx(
            10.0 * number_density(1e4, 295.0)
        )

    def test_rejects_nonpositive_temperature(self):
        with pytest.raises(ValueError):
            number_density(1e4, 0.0)


class TestCavityGeometry:
    def test_rejects_unstable(self):
        with pytest.raises(ValueError):
            CavityGeometry(90e-3, 45e-3, MirrorSpec(0.9), MirrorSpec(0.9))

    def test_rejects_negative_length(self):
        with pytest.raises(ValueError):
            CavityGeometry(-1e-3, 45e-3, MirrorSpec(0.9), MirrorSpec(0.9))
