import json

import pytest

from shearlab.cli import list_experiments, main, run
from shearlab.config import EXPERIMENTS, load_config, parse_config
from shearlab.errors import ConfigInvalid


def _write(tmp_path, text, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestConfig:
    def test_yaml_and_json(self, tmp_path):
        a = load_config(_write(tmp_path, "experiment: kh2d\nseed: 3\n"))
        b = load_config(_write(tmp_path, json.dumps({"experiment": "kh2d", "seed": 3}), "cfg.json"))
        assert a == b

    @pytest.mark.parametrize(
        "data",
        [
            {"experiment": "nope"},
            {"experiment": "kh2d", "bogus": 1},
            {"experiment": "energy", "u1": {"kind": "cusp", "alpha": 2.0}},
            {"experiment": "example1", "example1": {"gamma": 1.0}},
            {"experiment": "kh2d", "n": -1},
            [1, 2],
        ],
    )
    def test_invalid(self, data):
        with pytest.raises(ConfigInvalid):
            parse_config(data)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigInvalid):
            load_config(tmp_path / "absent.yaml")

    def test_unknown_tolerance(self, tmp_path):
        cfg = parse_config({"experiment": "kh2d", "tolerances": {"nope": 1.0}})
        with pytest.raises(ConfigInvalid):
            run(cfg, tmp_path / "out")


class TestCommands:
    def test_list(self, capsys):
        assert main(["list"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == len(EXPERIMENTS) == 12
        assert all(line.split()[0] in EXPERIMENTS for line in lines)
        assert all("[" in line for line in list_experiments())

    def test_pass(self, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["run", "--config", _write(tmp_path, "experiment: kh2d\n"), "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["passed"] and report["experiment"] == "kh2d"
        assert (out / "results-growth.csv").exists() and (out / "plot-growth.svg").exists()
        assert "wall_clock_seconds" in json.loads((out / "timing.json").read_text())

    def test_failed_check(self, tmp_path, capsys):
        cfg = _write(tmp_path, "experiment: example2\ntolerances:\n  normalization: -1.0\n")
        assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == 1
        assert "normalization" in capsys.readouterr().err

    def test_invalid_config_writes_nothing(self, tmp_path):
        out = tmp_path / "o"
        assert main(["run", "--config", _write(tmp_path, "experiment: kh2d\nextra: 1\n"), "--out", str(out)]) == 2
        assert not out.exists()

    def test_invalid_parameters_write_nothing(self, tmp_path):
        out = tmp_path / "o"
        cfg = _write(tmp_path, "experiment: example1\nexample1:\n  alpha1: 0.0\n  beta1: 1.0\n")
        assert main(["run", "--config", cfg, "--out", str(out)]) == 2
        assert not out.exists()

    def test_bad_threads(self, tmp_path):
        assert main(["run", "--config", _write(tmp_path, "experiment: kh2d\n"), "--threads", "0"]) == 2

    def test_seed_override(self, tmp_path):
        out = tmp_path / "o"
        main(["run", "--config", _write(tmp_path, "experiment: kh3d\ncount: 3\n"), "--out", str(out), "--seed", "9"])
        assert json.loads((out / "report.json").read_text())["config"]["seed"] == 9


class TestDeterminism:
    @pytest.mark.parametrize("name", ["kh3d", "sheet", "example1", "besov"])
    def test_byte_identical_reruns(self, tmp_path, name):
        cfg = _write(tmp_path, f"experiment: {name}\ncount: 10\n" if name == "kh3d" else f"experiment: {name}\n")
        dirs = [tmp_path / "a", tmp_path / "b"]
        main(["run", "--config", cfg, "--out", str(dirs[0])])
        main(["run", "--config", cfg, "--out", str(dirs[1]), "--threads", "3"])
        names = sorted(p.name for p in dirs[0].iterdir() if p.name != "timing.json")
        assert names == sorted(p.name for p in dirs[1].iterdir() if p.name != "timing.json")
        for n in names:
            assert (dirs[0] / n).read_bytes() == (dirs[1] / n).read_bytes(), n
