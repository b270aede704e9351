import csv
import io
import json
import math
import subprocess
import sys

from zeroexp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "0 failed" in out


def test_verify_json_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--output", str(path))
    report = json.loads(path.read_text())
    assert code == 0
    assert all(set(r) == {"suite", "case", "status", "expected", "actual"} for r in report)


def test_verify_fault(capsys):
    code, out, _ = run(capsys, "verify", "--fault")
    assert code == 1
    assert "failed invariant measure/nu formula" in out


def test_verify_rejects_non_power_of_two(capsys):
    code, out, err = run(capsys, "verify", "--b", "2,3")
    assert code == 2
    assert "power of two" in err and out == ""


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "measure")[0] == 2
    assert run(capsys, "measure", "--word", "13")[0] == 2
    assert run(capsys, "sample", "--prefix-length", "64", "--preset", "tiny")[0] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert run(capsys, "verify", "--config", str(bad))[0] == 2


def test_measure_examples(capsys):
    code, out, _ = run(capsys, "measure", "--word", "11", "--b", "2", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert (rec["theta"], rec["g"], rec["mu"]) == ("1/2^2", 2, "1/2^4")
    assert rec["mu_decimal"] == "0.0625"
    code, out, _ = run(capsys, "measure", "--word", "1101", "--b", "2", "--format", "json")
    rec = json.loads(out)
    assert rec["mu"] == "0/2^0" and rec["reason"] == "class inconsistency"
    code, out, _ = run(capsys, "measure", "--word", "00", "--format", "json")
    assert json.loads(out)["mu"] == "1/2^2"


def test_measure_text_has_bounds(capsys):
    code, out, _ = run(capsys, "measure", "--word", "1202", "--preset", "fast")
    assert code == 0
    assert "combined: 5/2^3 = 0.625" in out and "horizon:" in out


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# measure a word\nword = 11\nb = 2,4\nformat = json\n")
    _, out, _ = run(capsys, "measure", "--config", str(cfg))
    assert json.loads(out)["params"] == "b=(2,4)"
    _, out, _ = run(capsys, "measure", "--config", str(cfg), "--b", "2")
    assert json.loads(out)["params"] == "b=(2)"


def test_config_values_may_be_quoted(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text('preset = "tiny"\nword = \'12\'\nformat = json\n')
    code, out, _ = run(capsys, "measure", "--config", str(cfg))
    assert code == 0 and json.loads(out)["mu"] == "1/2^4"


def _return_stats(capsys, *extra):
    code, out, _ = run(
        capsys, "return-stats", "--seed", "5", "--prefix-length", "200000", "--n-texts", "4", "--min-gaps", "200", *extra
    )
    assert code == 0
    return out


def test_return_stats_csv(capsys):
    out = _return_stats(capsys)
    assert "\r" not in out
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and list(rows[0]) == [
        "n", "word", "g", "k", "mu", "mu_exact", "t", "F", "F_tilde", "exp1", "ks_F", "ks_Ftilde",
        "bound_combined", "bound_combined_exact", "horizon_ok", "n_gaps",
    ]
    from zeroexp.measure import cylinder_measure
    from zeroexp.params import ProcessParams

    pp = ProcessParams.preset("fast")
    by_n = {}
    for r in rows:
        for key in ("mu", "t", "F", "F_tilde", "exp1", "ks_F", "ks_Ftilde", "bound_combined", "horizon_ok", "n_gaps"):
            assert math.isfinite(float(r[key])) and "e" not in r[key].lower()
        by_n.setdefault(int(r["n"]), []).append(r)
        assert 0 <= float(r["F"]) <= 1 and 0 <= float(r["F_tilde"]) <= 1
    for n, rs in by_n.items():
        f = [float(r["F"]) for r in rs]
        assert f == sorted(f)
        cm = cylinder_measure(rs[0]["word"], pp)
        assert rs[0]["mu_exact"] == str(cm.mu)
        log2g = cm.g.bit_length() - 1
        from zeroexp.dyadic import DyadicRational

        assert rs[0]["bound_combined_exact"] == str(cm.theta * 3 + DyadicRational.pow2(-log2g))


def test_return_stats_is_deterministic(capsys):
    assert _return_stats(capsys) == _return_stats(capsys)


def test_complexity_command(capsys):
    code, out, _ = run(capsys, "complexity", "--lengths", "1-3,7")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["complexity"]) for r in rows] == [3, 9, 17, 141]


def test_mixing_command(capsys):
    code, out, _ = run(capsys, "mixing", "--prefix-length", "100000", "--lags", "10,100", "--pairs", "1:1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2 and float(rows[0]["alpha"]) > 0


def test_sample_command(capsys):
    code, out, _ = run(capsys, "sample", "--seed", "4", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and len(rec["prefix"]) == 63 and rec["level"] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zeroexp", "measure", "--word", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "mu: 1/2^2" in proc.stdout
