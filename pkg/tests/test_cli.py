import csv
import io
import json
import math

import pytest

from fisherdist.cli import (
    COEFF_HEADER,
    CRAMER_RAO_HEADER,
    DISTANCE_HEADER,
    UsageError,
    main,
    parse_config,
)
from fisherdist.divergences import WeightPair
from fisherdist.expansion import MEASURES, LadderSpec
from fisherdist.families import FamilySpec
from fisherdist.grid import Grid


def read_csv(path):
    lines = path.read_text().splitlines()
    meta = dict(line[2:].split("=", 1) for line in lines if line.startswith("# "))
    body = [line for line in lines if not line.startswith("# ")]
    return meta, body[0], list(csv.DictReader(io.StringIO("\n".join(body))))


def test_defaults_are_filled():
    cfg = parse_config(["coeffs", "--family", "gaussian-location", "--sigma", "1", "--alpha", "0"])
    assert cfg.command == "coeffs"
    assert cfg.family == FamilySpec.gaussian_location(1.0)
    assert cfg.alpha == 0.0
    assert cfg.ladder == LadderSpec()
    assert cfg.grid == Grid(-12.0, 12.0, 4801)
    assert cfg.weights == WeightPair(0.5, 0.5)
    assert cfg.format == "csv" and cfg.output == "-"


def test_scale_family_defaults_to_alpha_one():
    assert parse_config(["entropy", "--family", "gaussian-scale"]).alpha == 1.0
    assert parse_config(["cramer-rao"]).format == "json"


def test_negative_sigma_names_the_field(capsys):
    with pytest.raises(UsageError) as info:
        parse_config(["coeffs", "--sigma", "-1"])
    assert info.value.field == "sigma"
    assert main(["coeffs", "--sigma", "-1"]) == 2
    assert "sigma" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv, field",
    [
        (["coeffs", "--mix-weight", "1.5"], "mix_weight"),
        (["coeffs", "--family", "gaussian-scale", "--alpha", "-1"], "alpha"),
        (["coeffs", "--n-points", "100"], "grid"),
        (["coeffs", "--delta-min", "1"], "ladder"),
        (["coeffs", "--weights", "0.5,0.6"], "weights"),
        (["cramer-rao", "--trials", "10"], "cramer-rao"),
        (["cramer-rao", "--shrink", "2"], "shrink"),
    ],
)
def test_invalid_values_are_usage_errors(argv, field):
    with pytest.raises(UsageError) as info:
        parse_config(argv)
    assert info.value.field == field


def test_config_file_and_precedence(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# sweep settings\nweights = 0.3/0.7\nsigma = 2\ndelta-max = 0.05\n")
    cfg = parse_config(["coeffs", "--config", str(conf)])
    assert cfg.weights == WeightPair(0.3, 0.7)
    assert cfg.family.sigma == 2.0
    assert cfg.ladder.delta_max == 0.05
    cfg = parse_config(["coeffs", "--config", str(conf), "--sigma", "3"])
    assert cfg.family.sigma == 3.0


@pytest.mark.parametrize("text", ["bogus = 1\n", "sigma 2\n", "sigma = abc\n"])
def test_bad_config_files(tmp_path, text):
    conf = tmp_path / "bad.conf"
    conf.write_text(text)
    assert main(["coeffs", "--config", str(conf)]) == 2


def test_unknown_command_and_flag():
    assert main(["fit"]) == 2
    assert main(["coeffs", "--no-such-flag"]) == 2
    assert main([]) == 2


def test_coeffs_default_run(tmp_path):
    out = tmp_path / "coeffs.csv"
    assert main(["coeffs", "-o", str(out)]) == 0
    meta, header, rows = read_csv(out)
    assert header == ",".join(COEFF_HEADER)
    assert [r["measure"] for r in rows] == list(MEASURES)
    assert all(float(r["residual"]) < 0.01 for r in rows)
    # the resolved configuration travels with the data
    assert meta["command"] == "coeffs" and meta["n_points"] == "4801"
    assert json.loads(meta["weights"]) == [0.5, 0.5]


def test_distances_zero_offset(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["distances", "--delta-alpha", "0", "-o", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header == ",".join(DISTANCE_HEADER)
    assert len(rows) == 7
    assert all(abs(float(r["value"])) < 1e-10 for r in rows)
    jsd = [r for r in rows if r["measure"] == "JSD_weighted"]
    assert jsd[0]["weights_pi1"] == "0.5"
    assert all(r["weights_pi1"] == "" for r in rows if r["measure"] != "JSD_weighted")


def test_distances_ladder_rows(tmp_path):
    out = tmp_path / "d.json"
    assert main(["distances", "--include-negatives", "--format", "json", "-o", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["rows"]) == 18 * 7
    assert set(payload["rows"][0]) == set(DISTANCE_HEADER)
    assert payload["config"]["include_negatives"] is True


def test_csv_numbers_round_trip(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["coeffs", "-o", str(out)]) == 0
    _, _, rows = read_csv(out)
    c = rows[0]["c_hat"]
    assert format(float(c), ".17g") == c


def test_cramer_rao_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["cramer-rao", "--seed", "42", "--trials", "1000", "--samples", "100"]
    assert main(argv + ["-o", str(a)]) == 0
    assert main(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    payload = json.loads(a.read_text())
    assert list(payload["rows"][0]) == list(CRAMER_RAO_HEADER)
    assert payload["config"]["seed"] == 42


def test_cramer_rao_with_shrink_csv(tmp_path):
    out = tmp_path / "cr.csv"
    argv = ["cramer-rao", "--trials", "500", "--samples", "10", "--shrink", "0.9", "--format", "csv"]
    assert main(argv + ["-o", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert header == ",".join(CRAMER_RAO_HEADER)
    assert [r["estimator"] for r in rows] == ["sample_mean", "shrunk_mean"]


def test_entropy(tmp_path):
    out = tmp_path / "h.json"
    assert main(["entropy", "-o", str(out)]) == 0
    row = json.loads(out.read_text())["rows"][0]
    assert row["entropy"] == pytest.approx(0.5 * math.log(2 * math.pi * math.e), abs=1e-8)


def test_domain_error_exit_status(tmp_path, capsys):
    out = tmp_path / "never.json"
    # a sigma = 3 scale density is not contained in [-4, 4]
    argv = ["entropy", "--family", "gaussian-scale", "--alpha", "3", "--x-min", "-4", "--x-max", "4",
            "--n-points", "401", "-o", str(out)]
    assert main(argv) == 3
    assert "error" in capsys.readouterr().err
    assert not out.exists()


def test_writes_only_to_output_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out = tmp_path / "only.csv"
    assert main(["distances", "--delta-alpha", "0.1,0.01", "-o", str(out)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["only.csv"]


def test_stdout_output(capsys):
    assert main(["distances", "--delta-alpha", "0.01"]) == 0
    text = capsys.readouterr().out
    assert ",".join(DISTANCE_HEADER) in text.splitlines()
