import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from irscap.errors import DomainError
from irscap.radio import (
    SPEED_OF_LIGHT,
    Carrier,
    Decibel,
    Point3,
    db_to_linear,
    distance3,
    watts_to_dbm,
    wavelength,
)

finite_coord = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False)
points = st.builds(Point3, finite_coord, finite_coord, finite_coord)


class TestWavelength:
    def test_identity_frequency(self):
        assert wavelength(SPEED_OF_LIGHT) == 1.0

    def test_30_ghz(self):
        # hand division: 299792458 / 30e9
        assert math.isclose(wavelength(30e9), 9.993081933333333e-3, rel_tol=1e-12)

    @pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
    def test_rejects_nonpositive_or_nonfinite(self, bad):
        with pytest.raises(DomainError):
            wavelength(bad)

    @given(st.floats(min_value=1e3, max_value=1e15), st.floats(min_value=1.01, max_value=100.0))
    def test_strictly_decreasing_in_frequency(self, f, factor):
        assert wavelength(f * factor) < wavelength(f)


class TestCarrier:
    def test_wavelength_derivation_is_exact(self):
        c = Carrier(30e9)
        assert c.wavelength_m == SPEED_OF_LIGHT / 30e9

    def test_from_ghz(self):
        assert Carrier.from_ghz(30).frequency_hz == 30e9

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            Carrier(0.0)


class TestDistance3:
    def test_coincident_points(self):
        p = Point3(0.0, 0.0, 0.0)
        assert distance3(p, p) == 0.0

    def test_vertical_only_separation(self):
        assert distance3(Point3(0, 0, 5.0), Point3(0, 0, 1.5)) == 3.5

    def test_3_4_5_triangle(self):
        assert distance3(Point3(3, 4, 0), Point3(0, 0, 0)) == 5.0

    def test_rejects_nonfinite_coordinates(self):
        with pytest.raises(DomainError):
            Point3(float("nan"), 0.0, 0.0)
        with pytest.raises(DomainError):
            Point3(0.0, float("inf"), 0.0)

    @given(points, points)
    def test_symmetry(self, a, b):
        assert distance3(a, b) == distance3(b, a)

    @given(points, points, points)
    def test_triangle_inequality(self, a, b, c):
        direct = distance3(a, c)
        detour = distance3(a, b) + distance3(b, c)
        assert direct <= detour + 1e-9 * (1.0 + detour)


class TestDbToLinear:
    def test_zero_db_is_unity(self):
        assert db_to_linear(0.0) == 1.0

    def test_decade(self):
        assert db_to_linear(20.0) == 100.0

    def test_15_db(self):
        # 10^1.5 by hand
        assert math.isclose(db_to_linear(15.0), 31.622776601683793, rel_tol=1e-12)

    def test_accepts_decibel_wrapper(self):
        assert db_to_linear(Decibel(20.0)) == 100.0

    def test_decibel_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            Decibel(float("nan"))

    @given(st.floats(min_value=-150, max_value=150), st.floats(min_value=-150, max_value=150))
    def test_additivity(self, a, b):
        assert math.isclose(db_to_linear(a + b), db_to_linear(a) * db_to_linear(b),
                            rel_tol=1e-12)


class TestWattsToDbm:
    def test_one_milliwatt_is_zero_dbm(self):
        assert watts_to_dbm(1e-3) == 0.0

    def test_one_watt_is_30_dbm(self):
        assert math.isclose(watts_to_dbm(1.0), 30.0, rel_tol=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            watts_to_dbm(0.0)
