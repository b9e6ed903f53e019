"""Module-level property batteries not already covered by the acceptance suite."""

import pytest

from torus_euler.verify import (
    check_orbit_distance,
    check_poincare,
    check_shortest_vector_geometry,
    check_spectral_transforms,
)


@pytest.mark.parametrize("check", [
    check_shortest_vector_geometry,
    check_spectral_transforms,
    check_poincare,
    check_orbit_distance,
], ids=lambda fn: fn.__name__)
def test_property_battery(check):
    result = check()
    assert result.ok, f"{result.name}: {result.detail}"
