"""Config grammar round-trips, CLI exit codes, and CSV output."""

import csv

import pytest

from casimir_plates.cli import main
from casimir_plates.config import (
    ConfigError,
    RunConfig,
    SweepGrid,
    format_config,
    parse_config,
    validate_config,
)
from casimir_plates.energy import DeltaDomainError
from casimir_plates.optics import (
    ConstantConductivity,
    GenericDeltaPlate,
    PerfectElectric,
    PerfectMagnetic,
    SweepSlot,
    Transparent,
)
from casimir_plates.presets import PRESET_NAMES, list_presets, preset_configs


def read_rows(path):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh.read().splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


class TestConfigGrammar:
    def test_full_round_trip(self):
        cfg = RunConfig(
            plates=(
                ConstantConductivity(0.25),
                GenericDeltaPlate(1.5, 0.0),
                PerfectElectric(),
                PerfectMagnetic(),
                Transparent(),
            ),
            gaps=(1.0, 0.5, 2.0, 1.25),
            method="quadrature",
            rel_tol=1e-7,
            abs_tol=1e-9,
            output="out.csv",
            label="kitchen-sink",
        )
        assert parse_config(format_config(cfg)) == cfg

    def test_sweep_round_trip(self):
        cfg = RunConfig(
            plates=(SweepSlot(), PerfectMagnetic(), SweepSlot()),
            gaps=None,
            sweep_grid=SweepGrid("log", 0.01, 100.0, 7),
            sweep_shared=True,
            label="double-slot",
        )
        assert parse_config(format_config(cfg)) == cfg

    def test_comments_and_blank_lines(self):
        text = """
        # stack of two conducting sheets
        plate sigma 0.0229
        plate sigma 0.0229

        gaps 1.0
        """
        cfg = parse_config(text)
        assert len(cfg.plates) == 2
        assert cfg.gaps == (1.0,)

    def test_default_gaps_are_unit(self):
        cfg = parse_config("plate pe\nplate pm\nplate pe\n")
        assert cfg.gaps is None
        validate_config(cfg)  # fills in unit gaps at evaluation time

    @pytest.mark.parametrize(
        "text",
        [
            "plate sigma not-a-number\nplate pe\n",
            "plate unobtainium\nplate pe\n",
            "plate pe\nplate pm\ngaps 1.0 2.0\n",
            "plate pe\nplate pm\nmethod fft\n",
            "plate pe\nplate pm\nrel-tol -1\n",
            "plate pe\nplate pm\nsweep log 1 10 0\n",
            "plate pe\n",  # single plate
            "gaps 1.0\n",  # no plates at all
            "plate sigma *\nplate pe\nsweep log 10 1 5\n",  # decreasing
        ],
    )
    def test_rejects_bad_config(self, text):
        with pytest.raises(ConfigError):
            validate_config(parse_config(text))

    def test_error_carries_line_number(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("plate pe\nplate sigma\n")

    def test_slot_requires_grid(self):
        with pytest.raises(ConfigError):
            parse_config("plate sigma *\nplate pe\n")

    def test_two_slots_require_shared(self):
        text = "plate sigma *\nplate pm\nplate sigma *\nsweep linear 1 2 3\n"
        with pytest.raises(ConfigError):
            validate_config(parse_config(text))
        validate_config(parse_config(text + "sweep-shared\n"))

    def test_ideal_method_requires_ideal_stack(self):
        with pytest.raises(ConfigError):
            validate_config(parse_config("plate sigma 1\nplate pe\nmethod ideal\n"))
        validate_config(parse_config("plate pm\nplate pe\nmethod ideal\n"))

    def test_polylog_method_requires_uniform_gaps(self):
        text = "plate pe\nplate pe\nplate pe\ngaps 1.0 2.0\nmethod polylog\n"
        with pytest.raises(ConfigError):
            validate_config(parse_config(text))

    def test_grid_values(self):
        log = SweepGrid("log", 0.01, 100.0, 5).values()
        assert log[0] == pytest.approx(0.01)
        assert log[-1] == pytest.approx(100.0)
        assert log[2] == pytest.approx(1.0)
        lin = SweepGrid("linear", 0.0, 1.0, 3).values()
        assert lin == (0.0, 0.5, 1.0)


class TestExitCodes:
    def test_conflicting_sources(self, capsys, tmp_path):
        cfg = tmp_path / "a.cfg"
        cfg.write_text("plate pe\nplate pm\n")
        assert main(["--config", str(cfg), "--preset", "boyer-pair"]) == 2
        assert "exactly one" in capsys.readouterr().err.lower()

    def test_no_source(self, capsys):
        assert main([]) == 2
        capsys.readouterr()

    def test_unknown_preset(self, capsys):
        assert main(["--preset", "no-such-thing"]) == 2
        assert "no-such-thing" in capsys.readouterr().err

    def test_invalid_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("plate pe\nplate goo\n")
        assert main(["--config", str(cfg)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_invalid_method_override(self, capsys):
        assert main(["--preset", "graphene-pair", "--method", "ideal"]) == 2
        capsys.readouterr()

    def test_numerical_failure(self, monkeypatch, capsys):
        import casimir_plates.cli as cli_mod

        def boom(stack, spec=None, method="auto"):
            raise DeltaDomainError("synthetic non-positive determinant")

        monkeypatch.setattr(cli_mod, "energy_ratio", boom)
        assert cli_mod.main(["--preset", "boyer-pair"]) == 3
        assert "synthetic" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["--config", str(tmp_path / "absent.cfg")]) == 4
        capsys.readouterr()

    def test_unwritable_output(self, tmp_path, capsys):
        target = tmp_path / "no-such-dir" / "out.csv"
        assert main(["--preset", "boyer-pair", "--output", str(target)]) == 4
        capsys.readouterr()


class TestCliRuns:
    def test_header_and_boyer_row(self, capsys):
        assert main(["--preset", "boyer-pair"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "sigma,ratio,per_plate,err_estimate,method"
        fields = out[1].split(",")
        assert fields[0] == ""  # no sweep column for a fixed stack
        assert float(fields[1]) == -0.875
        assert fields[4] == "ideal"

    def test_graphene_pair_value(self, tmp_path):
        out = tmp_path / "graphene.csv"
        assert main(["--preset", "graphene-pair", "--output", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 1
        assert float(rows[0]["ratio"]) == pytest.approx(0.00538, abs=5e-5)
        assert rows[0]["method"] == "polylog"

    def test_ideal_asymptote_preset(self, tmp_path):
        out = tmp_path / "ideal.csv"
        assert main(["--preset", "ideal-asymptotes", "--output", str(out)]) == 0
        rows = read_rows(out)
        assert len(rows) == 9  # N = 2..10
        for n, row in zip(range(2, 11), rows):
            assert float(row["ratio"]) == n - 1
            assert float(row["err_estimate"]) == 0.0
            assert row["method"] == "ideal"

    def test_stack_labels_in_multi_config_output(self, tmp_path):
        out = tmp_path / "ideal.csv"
        main(["--preset", "ideal-asymptotes", "--output", str(out)])
        text = out.read_text()
        assert "# stack: ideal-N2" in text
        assert "# stack: ideal-N10" in text

    def test_method_override_reflected(self, tmp_path):
        out = tmp_path / "quad.csv"
        args = ["--preset", "boyer-pair", "--method", "quadrature", "--output", str(out)]
        assert main(args) == 0
        row = read_rows(out)[0]
        assert row["method"] == "quadrature"
        assert float(row["ratio"]) == pytest.approx(-0.875, abs=1e-7)

    def test_rel_tol_override(self, tmp_path):
        loose = tmp_path / "loose.csv"
        args = ["--preset", "boyer-pair", "--method", "quadrature",
                "--rel-tol", "1e-4", "--output", str(loose)]
        assert main(args) == 0
        row = read_rows(loose)[0]
        assert float(row["ratio"]) == pytest.approx(-0.875, abs=1e-3)

    def test_output_is_deterministic(self, tmp_path):
        paths = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            assert main(["--preset", "pe-graphene", "--output", str(out)]) == 0
            paths.append(out.read_bytes())
        assert paths[0] == paths[1]

    def test_config_file_run(self, tmp_path, capsys):
        cfg = tmp_path / "stack.cfg"
        cfg.write_text(
            "label twin-sheets\n"
            "plate sigma 0.0229\n"
            "plate sigma 0.0229\n"
            "gaps 1.0\n"
        )
        assert main(["--config", str(cfg)]) == 0
        captured = capsys.readouterr()
        rows = captured.out.splitlines()
        assert rows[0] == "sigma,ratio,per_plate,err_estimate,method"
        assert float(rows[1].split(",")[1]) == pytest.approx(0.00538, abs=5e-5)
        assert "twin-sheets" in captured.err

    def test_config_output_directive(self, tmp_path):
        target = tmp_path / "directed.csv"
        cfg = tmp_path / "stack.cfg"
        cfg.write_text(
            f"plate pe\nplate pm\noutput {target}\n"
        )
        assert main(["--config", str(cfg)]) == 0
        assert read_rows(target)[0]["method"] == "ideal"

    def test_sweep_output_has_sigma_column(self, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(
            "plate sigma *\nplate pe\nsweep log 0.1 10 3\n"
        )
        out = tmp_path / "sweep.csv"
        assert main(["--config", str(cfg), "--output", str(out)]) == 0
        rows = read_rows(out)
        assert [float(r["sigma"]) for r in rows] == pytest.approx([0.1, 1.0, 10.0])
        assert all(float(r["ratio"]) > 0 for r in rows)


class TestPresets:
    def test_listing(self, capsys):
        assert main(["--list-presets"]) == 0
        out = capsys.readouterr().out
        for name in ("graphene-pair", "boyer-pair", "fig2"):
            assert name in out

    def test_catalog_complete(self):
        assert len(PRESET_NAMES) >= 12
        text = list_presets()
        for name in PRESET_NAMES:
            assert name in text

    def test_all_presets_validate(self):
        for name in PRESET_NAMES:
            for cfg in preset_configs(name):
                validate_config(cfg)

    def test_unknown_name_lists_alternatives(self):
        with pytest.raises(KeyError, match="graphene-pair"):
            preset_configs("bogus")

    def test_fig2_is_shared_sweep_family(self):
        configs = preset_configs("fig2")
        assert len(configs) == 5
        for n, cfg in zip(range(2, 7), configs):
            assert len(cfg.plates) == n
            assert all(isinstance(p, SweepSlot) for p in cfg.plates)
            assert cfg.sweep_shared
