import pytest

from cavray import CavityGeometry, MirrorSpec, derive_cavity_params

WAVELENGTH = 532e-9


@pytest.fixture
def reference_geometry():
    """The d=6 mm / Rc=45 mm cavity with the 99.7% mirror pair."""
    return CavityGeometry(
        mirror_separation=6e-3,
        radius_of_curvature=45e-3,
        left_mirror=MirrorSpec(0.997),
        right_mirror=MirrorSpec(0.997),
    )


@pytest.fixture
def reference_params(reference_geometry):
    return derive_cavity_params(reference_geometry, WAVELENGTH)
