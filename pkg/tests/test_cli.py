import csv
import io
import math
import subprocess
import sys

import pytest

from coding_limits import awgn_bpsk, bounds
from coding_limits.bounds import OperatingPoint
from coding_limits.cli import curve_rows, format_csv, log_k_grid, main
from coding_limits.endchan import SimulationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["abscissa", "measure", "k", "rate", "value"]
    return rows[1:]


# -- bound and rate -----------------------------------------------------------


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--c", "0.5", "--r", "1", "--measure", "ber"], 0.110028),
        (["--c", "0.45", "--r", "0.5", "--measure", "fer"], 0.1),
        (["--c", "0.5", "--r", "1", "--measure", "ber-prime"], 0.25),
        (["--c", "0.5", "--r", "1", "--measure", "fer-prime"], 1.0),
        (["--c", "0.5", "--r", "1", "--measure", "mi-per-bit"], 0.5),
    ],
)
def test_bound_examples(argv, expected):
    code, out = run("bound", *argv)
    assert code == 0
    assert float(out) == pytest.approx(expected, abs=1e-6)


def test_bound_prints_twelve_significant_digits():
    assert run("bound", "--c", "0.5", "--r", "1", "--measure", "ber")[1] == "0.110027864438\n"


def test_bound_finite_k():
    code, out = run("bound", "--c", "0.9", "--r", "1", "--measure", "fer", "--k", "100")
    assert code == 0
    assert float(out) == pytest.approx(bounds.fer_lower_bound(OperatingPoint(0.9, 1.0), 100), rel=1e-11)


def test_bound_domain_error_exits_2(capsys):
    assert run("bound", "--c", "0.5", "--r", "0", "--measure", "ber")[0] == 2
    assert "rate" in capsys.readouterr().err
    assert run("bound", "--c", "-1", "--r", "1", "--measure", "ber")[0] == 2


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--c", "0.5", "--fer-t", "0.2"], 0.625),
        (["--c", "0.3", "--ber-t", "0.110028"], 0.6),
        (["--c", "0.5", "--ber-t", "0"], 0.5),
    ],
)
def test_rate_examples(argv, expected):
    code, out = run("rate", *argv)
    assert code == 0
    assert float(out) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("argv", [["--ber-t", "0.5"], ["--fer-t", "1"], ["--fer-t", "1.5"]])
def test_rate_out_of_domain_exits_2(argv):
    assert run("rate", "--c", "0.5", *argv)[0] == 2


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run("rate", "--c", "0.5", "--ber-t", "0.1", "--fer-t", "0.1")
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run("bound", "--c", "0.5", "--r", "1", "--measure", "snr")
    assert exc.value.code == 2


# -- curves -------------------------------------------------------------------------


def test_log_k_grid():
    assert log_k_grid(100) == [1, 2, 5, 10, 20, 50, 100]
    assert log_k_grid(10_000)[-1] == 10_000
    assert log_k_grid(7) == [1, 2, 5]


def test_fer_vs_k_structure():
    rows = curve_rows("fer_vs_k")
    ks = log_k_grid(10_000)
    assert len(rows) == 9 * len(ks)
    by_ratio = {}
    for abscissa, measure, k, rate, value in rows:
        assert measure == "fer" and abscissa == k
        by_ratio.setdefault(round(1 / rate, 12), []).append(value)
    ratios = sorted(by_ratio)
    assert ratios == pytest.approx([0.1 * i for i in range(1, 10)], abs=1e-12)
    for vals in by_ratio.values():
        assert all(a <= b for a, b in zip(vals, vals[1:]))
    # smaller C/R means a higher floor at every k
    for lo, hi in zip(ratios, ratios[1:]):
        assert all(a > b for a, b in zip(by_ratio[lo], by_ratio[hi]))


def test_ber_vs_gap_structure():
    rows = curve_rows("ber_vs_gap")
    ber = {r[0]: r[4] for r in rows if r[1] == "ber"}
    prime = {r[0]: r[4] for r in rows if r[1] == "ber-prime"}
    assert len(ber) == len(prime) == 101
    for gap, v in prime.items():
        assert v == pytest.approx(0.5 * gap, abs=1e-15)
        assert ber[gap] <= v
        if 0 < gap < 1:
            assert ber[gap] < v


def test_snr_curves_structure():
    rows = curve_rows("snr_curves", ebn0_step=0.25)
    measures = {"ber", "ber-prime", "fer", "fer-prime"}
    assert {r[1] for r in rows} == measures
    assert sorted({r[3] for r in rows}) == [0.25, 0.5, 0.75]
    for rate in (0.25, 0.5, 0.75):
        t = awgn_bpsk.shannon_threshold(rate)
        for m in measures:
            curve = [(r[0], r[4]) for r in rows if r[3] == rate and r[1] == m]
            xs = [x for x, _ in curve]
            assert xs == sorted(xs)
            vals = [v for _, v in curve]
            assert all(a >= b for a, b in zip(vals, vals[1:]))
            assert all(v == 0.0 for x, v in curve if x > t)
        ber = [r[4] for r in rows if r[3] == rate and r[1] == "ber"]
        prime = [r[4] for r in rows if r[3] == rate and r[1] == "ber-prime"]
        assert all(a <= b for a, b in zip(ber, prime))


def test_curve_rejects_bad_specs():
    assert run("curve", "--figure", "ber_vs_gap", "--measures", "fer")[0] == 2
    assert run("curve", "--figure", "fer_vs_k", "--ratios", "0")[0] == 2
    assert run("curve", "--figure", "snr_curves", "--ebn0-step", "0")[0] == 2


@pytest.mark.parametrize("figure", ["fer_vs_k", "ber_vs_gap", "snr_curves"])
def test_curve_files_are_byte_identical(tmp_path, figure):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("curve", "--figure", figure, "-o", str(a))[0] == 0
    assert run("curve", "--figure", figure, "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().startswith(b"abscissa,measure,k,rate,value\n")


def test_curve_to_stdout_matches_file(tmp_path):
    path = tmp_path / "c.csv"
    run("curve", "--figure", "ber_vs_gap", "-o", str(path))
    assert run("curve", "--figure", "ber_vs_gap")[1] == path.read_text()


def test_curve_unwritable_path_exits_3(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert run("curve", "--figure", "ber_vs_gap", "-o", str(target))[0] == 3
    assert "cannot write" in capsys.readouterr().err


def test_csv_roundtrip_capacity_normalized_figures():
    text = format_csv(curve_rows("fer_vs_k") + curve_rows("ber_vs_gap"))
    for abscissa, measure, k, rate, value in parse_csv(text):
        ratio = 0.0 if rate == "inf" else 1.0 / float(rate)
        op = OperatingPoint.from_ratio(ratio)
        expected = bounds.evaluate(measure, op, int(k) if k else None)
        assert abs(float(value) - expected) <= 1e-9


def test_csv_roundtrip_snr_curves():
    text = format_csv(curve_rows("snr_curves", ebn0_step=0.5))
    for abscissa, measure, k, rate, value in parse_csv(text):
        r = float(rate)
        c = awgn_bpsk.bpsk_awgn_capacity(awgn_bpsk.ebn0_to_esn0(float(abscissa), r))
        expected = bounds.evaluate(measure, OperatingPoint(c, r))
        assert abs(float(value) - expected) <= 1e-9


def test_snr_curves_finite_k_and_hard_decision():
    soft = curve_rows("snr_curves", rates=[0.5], measures=[bounds.Measure.FER], k=16, ebn0_step=0.5)
    assert all(r[2] == 16 for r in soft)
    hard = curve_rows("snr_curves", rates=[0.5], measures=[bounds.Measure.FER], hard_decision=True,
                      ebn0_step=0.5)
    soft_inf = curve_rows("snr_curves", rates=[0.5], measures=[bounds.Measure.FER], ebn0_step=0.5)
    assert all(h[4] >= s[4] for h, s in zip(hard, soft_inf))


# -- capacity -------------------------------------------------------------------------


def write(tmp_path, text):
    path = tmp_path / "channel.txt"
    path.write_text(text)
    return str(path)


def capacity_of(out):
    fields = dict(line.split("=", 1) for line in out.splitlines())
    return float(fields["capacity"]), fields


def test_capacity_bsc_file(tmp_path):
    code, out = run("capacity", write(tmp_path, "2 2\n0.89 0.11\n0.11 0.89\n"))
    assert code == 0
    cap, fields = capacity_of(out)
    assert cap == pytest.approx(0.50009, abs=1e-5)
    assert set(fields) == {"capacity", "iterations", "residual", "input"}
    assert [float(x) for x in fields["input"].split()] == pytest.approx([0.5, 0.5])


def test_capacity_identity_and_useless_channel(tmp_path):
    assert capacity_of(run("capacity", write(tmp_path, "2 2\n1 0\n0 1\n"))[1])[0] == pytest.approx(1.0)
    cap = capacity_of(run("capacity", write(tmp_path, "3 2\n0.3 0.7\n0.3 0.7\n0.3 0.7\n"))[1])[0]
    assert cap == pytest.approx(0.0, abs=1e-12)


def test_capacity_parse_error_names_line(tmp_path, capsys):
    assert run("capacity", write(tmp_path, "2 2\n0.5 0.5\n0.5 0.4\n"))[0] == 2
    assert "line 3" in capsys.readouterr().err


def test_capacity_missing_file_exits_3(tmp_path):
    assert run("capacity", str(tmp_path / "nope.txt"))[0] == 3


# -- simulate ---------------------------------------------------------------------------


def test_simulate_msc_example():
    code, out = run("simulate", "--model", "msc", "--k", "16", "--fer", "0.2", "--frames", "100000",
                    "--seed", "7")
    assert code == 0
    r = SimulationReport.from_record(out)
    assert abs(r.empirical_fer - 0.2) <= 3 * math.sqrt(0.16 / 1e5)
    assert r.k == 16 and r.frames == 100_000 and r.seed == 7


def test_simulate_noiseless_bsc_example():
    code, out = run("simulate", "--model", "bsc", "--p", "0", "--k", "8", "--frames", "1000", "--seed", "1")
    assert code == 0
    r = SimulationReport.from_record(out)
    assert r.empirical_ber == 0.0 and r.empirical_fer == 0.0
    assert list(r.per_position_ber) == [0.0] * 8


def test_simulate_fritchman_example():
    code, out = run("simulate", "--model", "fritchman", "--pgb", "0.001", "--pbg", "0.01", "--k", "100",
                    "--frames", "100000", "--seed", "3")
    assert code == 0
    r = SimulationReport.from_record(out)
    # stationary burst fraction 1/11, half of it in error
    assert r.erased_fraction == pytest.approx(1 / 11, abs=0.01)
    assert 1 - r.erased_fraction == pytest.approx(1 - 2 * r.empirical_ber, abs=0.005)


def test_simulate_csv_is_reproducible():
    argv = ("simulate", "--model", "erasure", "--k", "8", "--erasure", "0.3", "--frames", "5000",
            "--seed", "4", "--format", "csv")
    first, second = run(*argv)[1], run(*argv)[1]
    assert first == second
    header, row = first.splitlines()
    assert header.split(",")[0] == "model" and row.startswith("erasure,")


@pytest.mark.parametrize(
    "argv",
    [
        ["--model", "bsc", "--frames", "10"],
        ["--model", "bsc", "--p", "1.5", "--frames", "10"],
        ["--model", "msc", "--fer", "0.1", "--frames", "0"],
        ["--model", "fritchman", "--pgb", "0.1", "--frames", "10"],
    ],
)
def test_simulate_invalid_parameters_exit_2(argv):
    assert run("simulate", *argv)[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coding_limits", "bound", "--c", "0.5", "--r", "1", "--measure", "ber-prime"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "0.25\n"
    proc = subprocess.run(
        [sys.executable, "-m", "coding_limits", "rate", "--c", "0.5", "--ber-t", "0.5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 2 and proc.stderr.startswith("error:")
