import csv
import io

import pytest

from boundedrand.bench import BENCH_COLUMNS, BenchRecord, parse_sizes, write_records
from boundedrand.cli import main, spot_bounds_16


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bench_columns_follow_record_fields():
    assert BENCH_COLUMNS == [
        "experiment", "strategy", "index_width", "array_size", "buffer_size",
        "ns_per_element", "words_per_element", "remainders_per_element", "ns_per_element_median",
    ]


def test_parse_sizes():
    assert parse_sizes("128:1024:2") == [128, 256, 512, 1024]
    assert parse_sizes("10:100:10") == [10, 100]
    for bad in ("1:2", "8:4:2", "0:8:2", "1:8:1", "a:b:c"):
        with pytest.raises(ValueError):
            parse_sizes(bad)


def test_write_records_blank_optional_field():
    buf = io.StringIO()
    write_records([BenchRecord("shuffle", "lemire", 64, 8, None, 1.5, 1.0, 0.0, 1.25)], buf)
    assert buf.getvalue().splitlines()[1] == "shuffle,lemire,64,8,,1.5,1.0,0.0,1.25"


def test_bench_shuffle_tallies(capsys):
    code, out, _ = run(capsys, "bench-shuffle", "--bits", "64", "--sizes", "128:1024:2",
                       "--strategy", "openbsd,java,lemire")
    assert code == 0
    recs = rows(out)
    assert len(recs) == 4 * 3
    for r in recs:
        assert float(r["ns_per_element"]) > 0
        n = int(r["array_size"])
        rem = float(r["remainders_per_element"])
        if r["strategy"] == "openbsd":
            assert rem == 2 * (n - 1) / n
        elif r["strategy"] == "java":
            assert rem == float(r["words_per_element"])
        else:
            assert rem < 1e-6


def test_bench_shuffle_is_reproducible_except_timing(capsys):
    args = ("bench-shuffle", "--sizes", "64:256:4", "--strategy", "java,biased_float", "--seed", "0x1234567")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    keep = [c for c in BENCH_COLUMNS if not c.startswith("ns_")]
    assert [{k: r[k] for k in keep} for r in rows(a)] == [{k: r[k] for k in keep} for r in rows(b)]


def test_bench_shuffle_size_one(capsys):
    code, out, _ = run(capsys, "bench-shuffle", "--sizes", "1:1:2", "--strategy", "lemire")
    (r,) = rows(out)
    assert code == 0 and r["words_per_element"] == "0.0"


def test_bench_shuffle_buffered_rows(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "bench-shuffle", "--sizes", "512:512:2", "--strategy", "openbsd",
                       "--buffer", "--csv", str(path))
    assert code == 0 and out == ""
    recs = rows(path.read_text())
    assert [(r["experiment"], r["buffer_size"]) for r in recs] == [("shuffle", ""), ("buffered", "256")]
    # same seed, same draws: identical tallies
    assert recs[0]["words_per_element"] == recs[1]["words_per_element"]


def test_bench_std_baseline(capsys):
    code, out, _ = run(capsys, "bench-shuffle", "--sizes", "100:100:2", "--strategy", "std-baseline,lemire")
    assert code == 0
    assert [r["strategy"] for r in rows(out)] == ["std-baseline", "lemire"]


def test_bench_float(capsys):
    code, out, _ = run(capsys, "bench-float", "--bits", "32", "--sizes", "256:512:2")
    assert code == 0
    recs = rows(out)
    assert {r["strategy"] for r in recs} == {"lemire", "biased_float"}
    assert {r["experiment"] for r in recs} == {"float"}


def test_divcount_rows(capsys):
    code, out, _ = run(capsys, "divcount", "--bits", "32", "--s", "1", str(1 << 31))
    assert code == 0
    assert out.splitlines() == [
        "s,openbsd,java,lemire",
        f"1,2.0,1.0,{2.0 ** -32!r}",
        "2147483648,2.0,1.0,0.5",
    ]


def test_divcount_default_sweep_and_empirical(capsys):
    code, out, _ = run(capsys, "divcount", "--bits", "8", "--empirical", "20000")
    recs = rows(out)
    assert code == 0 and recs[0]["s"] == "1" and recs[-1]["s"] == "255"
    for r in recs:
        assert float(r["emp_openbsd"]) == 2.0


def test_verify_exhaustive_8(capsys):
    code, out, _ = run(capsys, "verify", "--bits", "8", "--mode", "exhaustive")
    assert code == 0
    assert "summary: 765/765 unbiased tables flat (255 bounds x 3 strategies)" in out
    assert "strategy=biased_modulo s=6 biased min=42 max=43" in out
    assert out.rstrip().endswith("PASS")


def test_verify_exhaustive_16_spot(capsys):
    code, out, _ = run(capsys, "verify", "--bits", "16")
    assert code == 0
    assert "strategy=lemire s=32749 " in out


def test_spot_bounds_include_required_values():
    b = spot_bounds_16()
    assert {1, 2, 3, 255, 256, 257, 32749, 65535} <= set(b)
    assert len(b) >= 100


def test_verify_refuses_wide_exhaustive(capsys):
    code, _, err = run(capsys, "verify", "--bits", "32", "--mode", "exhaustive")
    assert code == 2
    assert "cost guard" in err


def test_verify_statistical(capsys):
    code, out, _ = run(capsys, "verify", "--bits", "32", "--mode", "statistical")
    assert code == 0
    assert "FAIL" not in out


def test_verify_reports_failures(capsys, monkeypatch):
    from boundedrand import oracle
    from boundedrand.oracle import DistributionTable

    real = oracle.exhaustive_distribution

    def broken(strategy, bound, **kw):
        t = real(strategy, bound, **kw)
        if strategy.value == "java" and bound.s == 6:
            return DistributionTable(t.strategy, t.bound, (43,) + t.counts[1:], t.rejected)
        return t

    monkeypatch.setattr(oracle, "exhaustive_distribution", broken)
    code, out, _ = run(capsys, "verify", "--bits", "8")
    assert code == 1
    assert "FAIL exhaustive bits=8 strategy=java s=6" in out


@pytest.mark.parametrize("argv", [
    ["bench-shuffle", "--repeats", "4"],
    ["bench-shuffle", "--bits", "16"],
    ["bench-shuffle", "--strategy", "bogus"],
    ["bench-shuffle", "--seed", "nope"],
    ["bench-shuffle", "--buffer", "0"],
    ["verify", "--bits", "12"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_float_bench_guard(capsys):
    code, _, err = run(capsys, "bench-float", "--bits", "32", "--sizes", f"{(1 << 24) + 1}:{(1 << 24) + 1}:2")
    assert code == 2
    assert "single-precision limit" in err


def test_verify_refuses_zero_seed(capsys):
    assert main(["verify", "--mode", "statistical", "--seed", "0"]) == 2
    assert "fixed point" in capsys.readouterr().err
