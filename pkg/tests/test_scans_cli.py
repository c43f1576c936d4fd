import math

import pytest

from spinflip import ComplexConductivity, ConfigError, build_model
from spinflip.cli import main
from spinflip.config import (
    DEFAULTS,
    config_hash,
    make_config,
    parse_value,
    read_config_file,
)
from spinflip.scans import (
    COMPARE_COLUMNS,
    CONDUCTIVITY_COLUMNS,
    RATE_COLUMNS,
    preset_config,
    render_csv,
    run_compare,
    run_conductivity_table,
    run_scan,
)


class TestConfig:
    def test_defaults_are_valid(self):
        cfg = make_config()
        assert cfg == {**DEFAULTS}

    def test_unknown_key_is_hard_error(self):
        with pytest.raises(ConfigError):
            parse_value("material.modell", "dirty_bcs")
        with pytest.raises(ConfigError):
            make_config(overrides=["sweeep.count=3"])

    def test_value_coercion(self):
        assert parse_value("geometry.H_m", "inf") == math.inf
        assert parse_value("material.eliashberg", "true") is True
        assert parse_value("sweep.count", "17") == 17
        with pytest.raises(ConfigError):
            parse_value("sweep.count", "many")
        with pytest.raises(ConfigError):
            parse_value("material.model", "bcs_of_some_kind")
        with pytest.raises(ConfigError):
            parse_value("material.Tc_K", "-3")

    def test_cross_validation(self):
        with pytest.raises(ConfigError):
            make_config(overrides=["sweep.count=1"])
        with pytest.raises(ConfigError):
            make_config(overrides=["sweep.min=5", "sweep.max=2"])
        with pytest.raises(ConfigError):
            make_config(overrides=["sweep.min=0", "sweep.scale=log"])

    def test_config_file_roundtrip(self, tmp_path):
        p = tmp_path / "c.cfg"
        p.write_text("# comment\nmaterial.model = two_fluid_gc\n"
                     "geometry.H_m = 0.9e-6  # film\n")
        cfg = make_config(read_config_file(str(p)))
        assert cfg["material.model"] == "two_fluid_gc"
        assert cfg["geometry.H_m"] == pytest.approx(0.9e-6)

    def test_hash_is_deterministic(self):
        a = make_config(overrides=["material.T_K=4.0"])
        b = make_config(overrides=["material.T_K=4.0"])
        assert config_hash(a) == config_hash(b)
        c = make_config(overrides=["material.T_K=4.1"])
        assert config_hash(a) != config_hash(c)


class TestModels:
    def test_unified_normal_state_above_tc(self):
        cfg = make_config()
        omega = 2 * math.pi * cfg["transition.nu_hz"]
        from spinflip.config import build_material_model, build_settings

        for tag in ("two_fluid_gc", "ag_two_fluid", "mb_clean", "dirty_bcs"):
            model = build_material_model({**cfg, "material.model": tag},
                                         omega, build_settings(cfg))
            sig = model.conductivity(1.05 * cfg["material.Tc_K"])
            assert sig.sigma1 == cfg["material.sigma_n"]
            assert sig.sigma2 == 0.0

    def test_drude_sigma_eps_consistency(self):
        from spinflip import CODATA2018, GOLD, DrudeBG

        model = DrudeBG(params=GOLD, omega=2 * math.pi * 560e3)
        sig = model.conductivity(5.0)
        eps = model.permittivity(5.0)
        scale = CODATA2018.eps0 * model.omega
        assert sig.sigma1 == pytest.approx(eps.imag * scale, rel=1e-12)
        assert sig.sigma2 == pytest.approx((1 - eps.real) * scale, rel=1e-12)

    def test_fixed_model(self):
        m = build_model("fixed", 1e6, fixed_sigma=ComplexConductivity(1e5, 2e5))
        assert m.conductivity(3.0).sigma1 == 1e5
        assert m.Tc is None

    def test_missing_params_rejected(self):
        with pytest.raises(Exception):
            build_model("dirty_bcs", 1e6)
        with pytest.raises(Exception):
            build_model("no_such_model", 1e6, fixed_sigma=ComplexConductivity(1, 1))

    def test_eliashberg_flag_rescales(self):
        cfg = make_config(overrides=["material.eliashberg=true",
                                     "material.model=two_fluid_gc"])
        from spinflip.config import build_material_model, build_settings

        model = build_material_model(cfg, 2 * math.pi * 560e3, build_settings(cfg))
        assert model.params.sigma_n == pytest.approx(2e7 / 2.1, rel=1e-12)
        assert model.params.impurity_strength == pytest.approx(13.61 * 2.1, rel=1e-12)


class TestRunners:
    def test_two_point_sweep(self):
        cfg = make_config(overrides=["sweep.count=2", "material.model=two_fluid_gc"])
        header, rows = run_scan(cfg)
        assert len(rows) == 2
        assert all(r["status"] == "ok" for r in rows)
        assert list(rows[0].keys()) == RATE_COLUMNS

    def test_rows_echo_parameter_tuple(self):
        cfg = make_config(overrides=["sweep.count=2", "material.model=two_fluid_gc"])
        _, rows = run_scan(cfg)
        for r in rows:
            assert r["T_K"] == r["axis_value"]
            assert r["z_m"] == cfg["geometry.z_m"]
            assert r["H_m"] == cfg["geometry.H_m"]

    def test_failed_points_do_not_abort(self):
        # starve the quadrature so every point fails but is still emitted
        cfg = make_config(overrides=["sweep.count=2", "material.model=mb_clean",
                                     "quadrature.max_subdivisions=1"])
        _, rows = run_scan(cfg)
        assert len(rows) == 2
        assert all(r["status"].startswith("error:") for r in rows)
        assert all(r["tau_s"] == "" for r in rows)

    def test_conductivity_table_normalization(self):
        cfg = make_config(overrides=["material.model=mb_clean", "sweep.count=3",
                                     "sweep.min=8.30", "sweep.max=8.33",
                                     "sweep.scale=linear"])
        _, rows = run_conductivity_table(cfg)
        assert list(rows[0].keys()) == CONDUCTIVITY_COLUMNS
        at_tc = rows[-1]
        assert at_tc["sigma1_norm"] == pytest.approx(1.0, abs=1e-3)
        assert at_tc["norm_sigma1"] == 2e7

    def test_conductivity_requires_temperature_axis(self):
        cfg = make_config(overrides=["sweep.axis=thickness", "sweep.min=1e-8",
                                     "sweep.max=1e-6"])
        with pytest.raises(ConfigError):
            run_conductivity_table(cfg)

    def test_compare_vacuum_degenerates(self):
        cfg = make_config(overrides=["material.model=fixed", "material.sigma1=0",
                                     "material.sigma2=0", "sweep.count=2"])
        _, rows = run_compare(cfg)
        assert list(rows[0].keys()) == COMPARE_COLUMNS
        for r in rows:
            assert r["formula"] == "vacuum"
            assert r["ratio"] == pytest.approx(1.0, rel=1e-12)

    def test_compare_two_fluid_close(self):
        cfg = make_config(overrides=["material.model=two_fluid_gc", "sweep.count=3",
                                     "sweep.min=1.662", "sweep.max=6.648",
                                     "sweep.scale=linear"])
        _, rows = run_compare(cfg)
        for r in rows:
            assert abs(r["ratio"] - 1.0) <= 0.10
            assert r["formula"] == "superconductor"


class TestCsv:
    def test_render_is_reproducible(self):
        cfg = make_config(overrides=["sweep.count=2", "material.model=two_fluid_gc"])
        h1, r1 = run_scan(cfg)
        h2, r2 = run_scan(cfg)
        assert render_csv(h1, RATE_COLUMNS, r1) == render_csv(h2, RATE_COLUMNS, r2)

    def test_floats_round_trip(self):
        cfg = make_config(overrides=["sweep.count=2", "material.model=two_fluid_gc"])
        header, rows = run_scan(cfg)
        text = render_csv(header, RATE_COLUMNS, rows)
        data_lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
        cells = data_lines[1].split(",")
        tau_col = RATE_COLUMNS.index("tau_s")
        assert float(cells[tau_col]) == rows[0]["tau_s"]

    def test_half_space_renders_as_inf(self):
        cfg = make_config(overrides=["sweep.count=2", "material.model=two_fluid_gc"])
        header, rows = run_scan(cfg)
        text = render_csv(header, RATE_COLUMNS, rows)
        assert ",inf," in text.splitlines()[-1]


class TestCli:
    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])

    def test_config_error_exit_code(self, tmp_path, capsys):
        out = tmp_path / "x.csv"
        assert main(["scan", "--override", "bogus.key=1",
                     "--output", str(out)]) == 2

    def test_all_points_failed_exit_code(self, tmp_path):
        out = tmp_path / "x.csv"
        code = main(["scan", "--override", "material.model=mb_clean",
                     "--override", "quadrature.max_subdivisions=1",
                     "--override", "sweep.count=2", "--output", str(out)])
        assert code == 3
        assert out.exists()  # rows still written, with error statuses

    def test_scan_writes_csv_and_optional_plot(self, tmp_path):
        out = tmp_path / "s.csv"
        code = main(["scan", "--override", "material.model=two_fluid_gc",
                     "--override", "sweep.count=3", "--output", str(out), "--plot"])
        assert code == 0
        assert out.exists()
        assert (tmp_path / "s.png").exists()

    def test_gap_subcommand(self, tmp_path):
        out = tmp_path / "g.csv"
        code = main(["gap", "--override", "sweep.count=3",
                     "--override", "sweep.min=1.0", "--override", "sweep.max=8.0",
                     "--output", str(out)])
        assert code == 0
        text = out.read_text()
        assert "delta_meV" in text

    def test_preset_rejects_unknown(self):
        with pytest.raises(SystemExit):
            main(["preset", "fig9"])

    def test_preset_fig1_runs(self, tmp_path):
        out = tmp_path / "f1.csv"
        code = main(["preset", "fig1", "--output", str(out), "--no-plot",
                     "--override", "sweep.count=4"])
        assert code == 0
        lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
        assert len(lines) == 5  # header row + 4 points

    def test_preset_config_pins_parameters(self):
        cfg = preset_config("fig4")
        assert cfg["material.model"] == "dirty_bcs"
        assert cfg["material.T_K"] == pytest.approx(4.155)
        assert cfg["geometry.z_m"] == pytest.approx(50e-6)
        assert cfg["sweep.axis"] == "thickness"
