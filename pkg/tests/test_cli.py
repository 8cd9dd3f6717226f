import csv
import io

import pytest

from sumrank_stc.cli import (
    BENCH_COLUMNS,
    SIM_COLUMNS,
    SimConfig,
    UsageError,
    cmd_codegen,
    main,
    parse_constellation,
    parse_snr,
    read_config_file,
    simulate,
)

FAST = ["--constellation", "5-gauss", "--snr", "0,10", "--trials", "40", "--seed", "3"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_helpers():
    assert parse_constellation("17-gauss").p == 17
    assert parse_constellation("271-EIS").p == 271
    assert parse_constellation("7-psk").p == 7
    for bad in ("17", "9-gauss", "7-gauss", "x-psk", "5-hex"):
        with pytest.raises(UsageError):
            parse_constellation(bad)
    assert parse_snr("0:20:5") == [0, 5, 10, 15, 20]
    assert parse_snr("1.5, 3") == [1.5, 3.0]
    with pytest.raises(UsageError):
        parse_snr("0:10:0")


def test_codegen_report(capsys):
    code, out, _ = run(capsys, "codegen", "--constellation", "5-gauss")
    assert code == 0
    assert "code: [4, 2] over F_5^2" in out
    assert "tradeoff bound = 1 (met)" in out
    assert "codebook size = 625" in out
    assert "brute-force minimum sum-rank distance 3 (= d)" in out
    assert "transmit diversity witness: brute-force 3 (= d)" in out


def test_codegen_large_code_is_certified():
    lines = cmd_codegen(SimConfig(constellation="271-eis"))
    assert any("certified by construction" in l for l in lines)
    assert "R_b = 8.082" in "\n".join(lines)


def test_codegen_uncoded():
    lines = cmd_codegen(SimConfig(constellation="5-gauss", d=1))
    assert "d = 1: uncoded signalling" in lines


def test_simulate_csv_is_deterministic(capsys):
    _, a, _ = run(capsys, "simulate", *FAST)
    _, b, _ = run(capsys, "simulate", *FAST)
    assert a == b
    got = rows(a)
    assert list(got[0]) == list(SIM_COLUMNS)
    assert [r["snr_db"] for r in got] == ["0", "10"]
    assert all(r["wall_seconds"] == "" and r["seed"] == "3" for r in got)
    assert float(got[0]["cer"]) == int(got[0]["errors"]) / int(got[0]["trials"])


def test_threads_do_not_change_output(capsys):
    _, a, _ = run(capsys, "simulate", *FAST, "--threads", "1")
    _, b, _ = run(capsys, "simulate", *FAST, "--threads", "3")
    assert a == b


def test_timing_fills_wall_seconds(capsys):
    _, out, _ = run(capsys, "simulate", *FAST, "--timing")
    assert all(float(r["wall_seconds"]) > 0 for r in rows(out))


def test_bench_decoder_columns(capsys, tmp_path):
    dest = tmp_path / "bench.csv"
    code, _, _ = run(capsys, "bench-decoder", *FAST, "-o", str(dest))
    assert code == 0
    got = rows(dest.read_text())
    assert list(got[0]) == list(BENCH_COLUMNS)


def test_stopping_rule():
    cfg = SimConfig(constellation="5-gauss", snr=[0.0], trials=500, target_errors=5, seed=1)
    (pt,) = simulate(cfg)
    assert sum(pt.errors) == 5 and pt.errors[-1]
    full = SimConfig(constellation="5-gauss", snr=[0.0], trials=pt.trials, target_errors=0, seed=1)
    (ref,) = simulate(full)
    assert ref.errors == pt.errors  # same trial stream, stopped at the same place


def test_config_file(capsys, tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# sweep\nconstellation = 5-gauss\nsnr = 0:10:10\ntrials = 40\n"
                    "seed = 3\ntiming = no\n")
    assert read_config_file(str(path))["snr"] == [0.0, 10.0]
    _, from_file, _ = run(capsys, "simulate", "--config", str(path))
    _, from_flags, _ = run(capsys, "simulate", *FAST)
    assert from_file == from_flags
    # explicit flags override the file
    _, over, _ = run(capsys, "simulate", "--config", str(path), "--seed", "4")
    assert all(r["seed"] == "4" for r in rows(over))


def test_config_file_errors(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    code, _, err = run(capsys, "simulate", "--config", str(bad))
    assert code == 2 and "unknown key" in err
    bad.write_text("trials = many\n")
    assert run(capsys, "simulate", "--config", str(bad))[0] == 2
    assert run(capsys, "simulate", "--config", str(tmp_path / "missing.cfg"))[0] == 2


@pytest.mark.parametrize("argv", [
    ["codegen", "--constellation", "9-gauss"],
    ["codegen", "--d", "9"],
    ["codegen", "--layout", "SRB", "-T", "3"],
    ["simulate", "--trials", "0"],
    ["simulate", "--n-r", "1", "--trials", "1"],
    ["simulate", "--decoder", "turbo", "--trials", "1"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["simulate", "--backend", "fortran"])
    assert e.value.code == 2


def test_decoder_failure_exits_1(capsys):
    code, _, err = run(capsys, "simulate", *FAST, "--stack-capacity", "2")
    assert code == 1 and "simulation failed" in err


def test_verify_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "msrd")
    assert code == 0 and out.startswith("PASS msrd")
    code, out, _ = run(capsys, "verify", "ml-equivalence", "--trials", "3")
    assert code == 0 and out.startswith("PASS")
