import json

import pytest

from frechetlab.cli import main


def run(tmp_path, *argv):
    return main(list(argv))


class TestDecompose:
    def test_spec_example_output(self, capsys):
        assert main(["decompose", "--poly", "x*y", "--m", "1"]) == 0
        out = capsys.readouterr().out
        assert "A_0 = 0" in out
        assert "A_1 = t" in out
        assert "A_2 = -1" in out
        assert "N = 2" in out

    def test_csv_and_manifest(self, tmp_path, capsys):
        out = tmp_path / "d.csv"
        assert main(["decompose", "--poly", "x^2*y^2", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "i,a_i"
        assert lines[3] == "2,t^2"
        manifest = json.loads((tmp_path / "d.csv.manifest.json").read_text())
        assert manifest["leading_index"] == 4
        assert manifest["subcommand"] == "decompose"

    def test_degree_overflow_is_usage_error(self, capsys):
        assert main(["decompose", "--poly", "x^2*y", "--m", "1"]) == 2


class TestCheckFrechet:
    def test_surd_passes(self, tmp_path):
        out = tmp_path / "c.csv"
        code = main(["check-frechet", "--model", "(surd 1)", "--order", "1",
                     "--samples", "100", "--seed", "7", "--out", str(out)])
        assert code == 0
        manifest = json.loads((tmp_path / "c.csv.manifest.json").read_text())
        assert manifest["ok"] is True
        assert manifest["output_rows"] == 100
        # every delta is exactly zero
        rows = out.read_text().splitlines()[1:]
        assert all(row.endswith(",0") for row in rows)

    def test_wrong_order_fails_with_exit_1(self, tmp_path):
        out = tmp_path / "c.csv"
        code = main(["check-frechet", "--model", "(prod (surd 1) (surd 1))",
                     "--order", "0", "--samples", "50", "--seed", "3",
                     "--out", str(out)])
        assert code == 1
        manifest = json.loads((tmp_path / "c.csv.manifest.json").read_text())
        assert manifest["ok"] is False

    def test_variable_steps_mode(self, tmp_path):
        out = tmp_path / "v.csv"
        code = main(["check-frechet", "--model", "(surd 1)",
                     "--variable-steps", "--samples", "25", "--seed", "11",
                     "--out", str(out)])
        assert code == 0
        header = out.read_text().splitlines()[0]
        assert header == "index,x1,h1_1,h2_1,delta"

    def test_default_order_is_declared(self, tmp_path):
        code = main(["check-frechet", "--model", "(pow (surd 1) 2)",
                     "--samples", "25", "--seed", "5",
                     "--out", str(tmp_path / "o.csv")])
        assert code == 0


class TestGrowth:
    def test_nondecreasing_sup_column(self, tmp_path, capsys):
        code = main(["growth", "--model", "(surd 1)", "--window", "0,1",
                     "--heights", "10,50,100"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "height,sup_abs,count"
        sups = [float(line.split(",")[1]) for line in lines[1:]]
        assert sups == sorted(sups)

    def test_manifest_records_sup_values(self, tmp_path):
        out = tmp_path / "g.csv"
        assert main(["growth", "--model", "(surd 1)", "--window", "0,1",
                     "--heights", "5,10", "--out", str(out)]) == 0
        manifest = json.loads((tmp_path / "g.csv.manifest.json").read_text())
        assert manifest["sup_values"] == ["4", "7"]
        assert manifest["model"] == "(surd 1)"
        assert set(manifest) >= {"model", "subcommand", "parameters",
                                 "output_rows", "version", "csv_sha256"}


class TestExploreAndImage:
    def test_explore_with_coverage_and_plot(self, tmp_path):
        out = tmp_path / "e.csv"
        png = tmp_path / "e.png"
        code = main(["explore", "--model", "(surd 1)", "--window", "0,1",
                     "--height", "8", "--rect", "0,1,-5,5",
                     "--resolution", "5", "--out", str(out),
                     "--plot", str(png)])
        assert code == 0
        manifest = json.loads((tmp_path / "e.csv.manifest.json").read_text())
        assert 0 < float(manifest["coverage"]) <= 1
        assert png.exists() and png.stat().st_size > 0
        assert (tmp_path / "e.coverage.png").exists()

    def test_image_subcommand(self, tmp_path):
        out = tmp_path / "i.csv"
        code = main(["image", "--model", "(surd 1)", "--m", "1",
                     "--a", "0", "--h", "sqrt(2),1", "--gamma", "1;1",
                     "--axis", "1", "--t-height", "1",
                     "--t-window=-1,1", "--out", str(out)])
        assert code == 0
        manifest = json.loads((tmp_path / "i.csv.manifest.json").read_text())
        assert manifest["skipped_on_variety"] == 0
        assert manifest["total_samples"] == 25

    def test_interpolate_with_checks(self, tmp_path):
        out = tmp_path / "p.csv"
        code = main(["interpolate", "--model", "(surd 1)", "--m", "1",
                     "--a", "0", "--h", "sqrt(2),1", "--gamma", "1;1",
                     "--check-box", "4", "--denominators", "2,3",
                     "--out", str(out)])
        assert code == 0
        manifest = json.loads((tmp_path / "p.csv.manifest.json").read_text())
        assert manifest["poly_text"] == "1/2*sqrt(2)*t1"
        assert manifest["checks"]["integer_extension"]["ok"] is True
        assert manifest["checks"]["rational_refinement"]["ok"] is True

    def test_interpolate_failure_exits_1(self, tmp_path):
        code = main(["interpolate", "--model", '(poly 1 "t1^2")', "--m", "1",
                     "--a", "0", "--h", "1,1", "--gamma", "1;1",
                     "--check-box", "2", "--out", str(tmp_path / "b.csv")])
        assert code == 1


class TestUsageErrors:
    def test_bad_window(self, capsys):
        assert main(["growth", "--model", "(surd 1)", "--window", "1,0",
                     "--heights", "5"]) == 2
        assert "--window" in capsys.readouterr().err

    def test_bad_model(self, capsys):
        assert main(["explore", "--model", "(nope)", "--window", "0,1",
                     "--height", "3"]) == 2
        err = capsys.readouterr().err
        assert "--model" in err

    def test_missing_required(self, capsys):
        assert main(["growth", "--window", "0,1", "--heights", "5"]) == 2

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["growth", "--bogus"])
        assert exc.value.code == 2

    def test_no_subcommand_prints_help(self, capsys):
        assert main([]) == 2


class TestConfigFile:
    def test_config_supplies_defaults_and_flags_override(self, tmp_path,
                                                         capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("model=(surd 1)\nwindow=0,1\nheights=5,10\n")
        assert main(["growth", "--config", str(cfg)]) == 0
        out1 = capsys.readouterr().out
        assert out1.splitlines()[1].startswith("5,")

        assert main(["growth", "--config", str(cfg), "--heights", "7"]) == 0
        out2 = capsys.readouterr().out
        assert out2.splitlines()[1].startswith("7,")

    def test_config_comments_and_errors(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# a comment\nmodel=(surd 1)\n")
        assert main(["growth", "--config", str(cfg), "--window", "0,1",
                     "--heights", "3"]) == 0
        bad = tmp_path / "bad.cfg"
        bad.write_text("not a kv line\n")
        assert main(["growth", "--config", str(bad), "--window", "0,1",
                     "--heights", "3", "--model", "(surd 1)"]) == 2


class TestDeterminism:
    def test_byte_identical_csv_and_manifest(self, tmp_path):
        for sub, extra in [
            ("growth", ["--window", "0,1", "--heights", "5,10"]),
            ("check-frechet", ["--samples", "40", "--seed", "9"]),
            ("explore", ["--window", "0,1", "--height", "6"]),
        ]:
            a, b = tmp_path / "a.csv", tmp_path / "b.csv"
            argv = [sub, "--model", "(surd 1)"] + extra
            assert main(argv + ["--out", str(a)]) == 0
            assert main(argv + ["--out", str(b)]) == 0
            assert a.read_bytes() == b.read_bytes()
            ma = (tmp_path / "a.csv.manifest.json").read_bytes()
            mb = (tmp_path / "b.csv.manifest.json").read_bytes()
            assert ma == mb
