import math

import pytest

from irscap.errors import ConfigError, DomainError
from irscap.radio import Carrier
from irscap.scenario import (
    MACRO_DENSITY_PER_M2,
    MICRO_DENSITY_PER_M2,
    Scenario,
    SweepSpec,
    load_scenario,
    scenario_from_mapping,
    with_irs_setup,
)


def write_scenario(tmp_path, text):
    path = tmp_path / "scenario.toml"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestDefaults:
    def test_bundled_parameter_values(self):
        s = Scenario()
        assert [c.frequency_hz for c in s.carriers] == [30e9, 55e9, 90e9, 120e9]
        assert s.macro_height_m == 10.0
        assert s.micro_height_m == 5.0
        assert s.irs_height_m == 6.0
        assert s.device_height_m == 1.5
        assert s.macro_power_w == 50.0
        assert math.isclose(s.micro_gain_linear, 100.0, rel_tol=1e-12)
        assert math.isclose(s.device_gain_linear, 31.622776601683793, rel_tol=1e-12)
        assert s.irs_m_elements == 128 and s.irs_n_elements == 128
        assert s.irs_reflection_coeff == 0.9
        assert math.isclose(s.irs_theta_t_rad, math.pi / 4.0, rel_tol=1e-15)
        assert s.micro_pathloss_exponent == 2.5
        assert s.macro_pathloss_exponent == 4.5
        assert math.isclose(s.densities.lambda_mi, 1000.0 / (math.pi * 1e4), rel_tol=1e-15)
        assert math.isclose(s.densities.lambda_ma, s.densities.lambda_mi / 5.0, rel_tol=1e-15)
        assert math.isclose(s.densities.lambda_u, 500.0 * s.densities.lambda_mi, rel_tol=1e-15)
        assert math.isclose(s.micro_cell_radius_m, math.sqrt(200.0 / math.pi), rel_tol=1e-15)
        assert math.isclose(s.macro_offset_m, math.sqrt(1000.0 / math.pi), rel_tol=1e-15)

    def test_empty_document_is_the_default_scenario(self, tmp_path):
        loaded = load_scenario(write_scenario(tmp_path, ""))
        assert loaded == Scenario()

    def test_bundled_file_matches_defaults(self, bundled_scenario_path):
        assert load_scenario(str(bundled_scenario_path)) == Scenario()

    def test_density_sweep_default_tracks_micro_density(self):
        s = scenario_from_mapping({"densities": {"micro_per_m2": 0.01}})
        assert math.isclose(s.density_sweep.stop, 5.0, rel_tol=1e-12)
        assert s.density_sweep.start == 0.0


class TestOverrides:
    def test_single_carrier_override(self, tmp_path):
        s = load_scenario(write_scenario(tmp_path, "carriers_ghz = [30.0]\n"))
        assert s.carriers == (Carrier(30e9),)
        assert s.macro_power_w == 50.0  # everything else stays default

    def test_unit_conversions_at_the_boundary(self, tmp_path):
        s = load_scenario(write_scenario(tmp_path, """
[micro]
gain_db = 0.0
[irs]
theta_t_deg = 60.0
[macro]
carrier_ghz = 2.0
"""))
        assert s.micro_gain_linear == 1.0
        assert math.isclose(s.irs_theta_t_rad, math.pi / 3.0, rel_tol=1e-15)
        assert s.macro_carrier.frequency_hz == 2e9

    def test_explicit_element_dimensions_override_half_wavelength(self, tmp_path):
        s = load_scenario(write_scenario(tmp_path, """
[irs]
element_len_m = 0.004
element_wid_m = 0.003
"""))
        panel = s.panel_for(Carrier(30e9))
        assert panel.element_len_m == 0.004
        assert panel.element_wid_m == 0.003

    def test_half_wavelength_elements_track_the_carrier(self):
        s = Scenario()
        for carrier in s.carriers:
            panel = s.panel_for(carrier)
            assert panel.element_len_m == carrier.wavelength_m / 2.0
            assert panel.element_wid_m == carrier.wavelength_m / 2.0

    def test_with_irs_setup(self):
        s = with_irs_setup(Scenario(), power_w=2.0, elements=256)
        assert s.micro_power_irs_w == 2.0
        assert s.irs_m_elements == 256 and s.irs_n_elements == 256
        assert s.micro_power_conventional_w == 10.0


class TestValidation:
    def test_reflection_coefficient_out_of_range_names_the_field(self, tmp_path):
        with pytest.raises(ConfigError, match="reflection_coeff"):
            load_scenario(write_scenario(tmp_path, "[irs]\nreflection_coeff = 1.3\n"))

    def test_unknown_field_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="micro.hieght_m"):
            load_scenario(write_scenario(tmp_path, "[micro]\nhieght_m = 4.0\n"))

    def test_unknown_section_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="antenna"):
            load_scenario(write_scenario(tmp_path, "[antenna]\ngain_db = 3.0\n"))

    def test_parse_failure_reports_config_error(self, tmp_path):
        with pytest.raises(ConfigError, match="parse"):
            load_scenario(write_scenario(tmp_path, "carriers_ghz = [30.0\n"))

    def test_missing_file_reports_config_error(self):
        with pytest.raises(ConfigError):
            load_scenario("/no/such/scenario.toml")

    def test_wrong_type_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="macro.power_w"):
            load_scenario(write_scenario(tmp_path, "[macro]\npower_w = \"fifty\"\n"))

    def test_empty_carrier_list_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="carriers_ghz"):
            load_scenario(write_scenario(tmp_path, "carriers_ghz = []\n"))

    def test_bad_distance_mode_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="distance_mode"):
            load_scenario(write_scenario(tmp_path, "[cell]\ndistance_mode = \"aerial\"\n"))

    def test_grazing_panel_angle_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="theta_t_rad"):
            load_scenario(write_scenario(tmp_path, "[irs]\ntheta_t_deg = 90.0\n"))

    def test_bad_sweep_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="sweeps.distance"):
            load_scenario(write_scenario(tmp_path,
                                         "[sweeps.distance]\nstart_m = 9.0\nstop_m = 2.0\n"))


class TestSweepSpec:
    def test_values_are_inclusive_and_evenly_spaced(self):
        spec = SweepSpec("device_distance", 1.0, 5.0, 5)
        assert spec.values() == [1.0, 2.0, 3.0, 4.0, 5.0]

    def test_minimum_two_steps(self):
        with pytest.raises(DomainError):
            SweepSpec("device_distance", 1.0, 5.0, 1)

    def test_stop_must_exceed_start(self):
        with pytest.raises(DomainError):
            SweepSpec("device_density", 2.0, 2.0, 10)

    def test_unknown_variable_rejected(self):
        with pytest.raises(DomainError):
            SweepSpec("temperature", 0.0, 1.0, 10)

    def test_density_sweep_may_start_at_zero(self):
        spec = SweepSpec("device_density", 0.0, 1.0, 3)
        assert spec.values()[0] == 0.0


class TestGeometryBuilder:
    def test_micro_power_tracks_model(self):
        s = Scenario()
        assert s.micro_node("conventional").transmit_power_w == 10.0
        assert s.micro_node("irs").transmit_power_w == 0.5

    def test_collinear_layout(self):
        s = Scenario()
        geom = s.geometry("irs", Carrier(30e9))
        assert (geom.micro.position.x, geom.micro.position.y) == (0.0, 0.0)
        assert (geom.panel.position.x, geom.panel.position.y) == (5.0, 0.0)
        assert geom.macro.position.y == 0.0
        assert math.isclose(geom.macro.position.x, math.sqrt(1000.0 / math.pi), rel_tol=1e-15)

    def test_conventional_geometry_carries_no_panel(self):
        geom = Scenario().geometry("conventional", Carrier(30e9))
        assert geom.panel is None

    def test_unknown_model_rejected(self):
        with pytest.raises(DomainError):
            Scenario().micro_node("hybrid")

    def test_macro_interferer_keeps_its_own_carrier(self):
        s = Scenario()
        for carrier in s.carriers:
            geom = s.geometry("conventional", carrier)
            assert geom.macro_carrier.frequency_hz == 30e9


def test_module_density_constants():
    assert math.isclose(MICRO_DENSITY_PER_M2, 0.03183098861837907, rel_tol=1e-15)
    assert math.isclose(MACRO_DENSITY_PER_M2, MICRO_DENSITY_PER_M2 / 5.0, rel_tol=1e-15)
