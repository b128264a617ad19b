import csv
import io
import json
import subprocess
import sys

import pytest

from selector_sieve import cli, oracle
from selector_sieve.sieve_engine import build_s2_spectrum, build_s6_spectrum

K_FIRST_17 = [0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text, delimiter=","):
    return list(csv.DictReader(io.StringIO(text), delimiter=delimiter))


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "selector_sieve", "spectrum", "1:17"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    rows = rows_of(proc.stdout)
    assert [int(r["K"]) for r in rows] == K_FIRST_17


def test_spectrum_first_17(capsys):
    code, out, _ = run(capsys, "spectrum", "1:17")
    assert code == 0
    rows = rows_of(out)
    assert out.splitlines()[0] == "k,K,m,class"
    assert [int(r["k"]) for r in rows] == list(range(1, 18))
    assert [int(r["K"]) for r in rows] == K_FIRST_17
    assert [r["class"] == "PRIME" for r in rows] == [k == 0 for k in K_FIRST_17]


def test_spectrum_unit_row(capsys):
    _, out, _ = run(capsys, "spectrum", "0:3")
    rows = rows_of(out)
    assert rows[0] == {"k": "0", "K": "0", "m": "1", "class": "UNIT"}
    assert len(rows) == 4


def test_spectrum_m_range(capsys):
    _, out, _ = run(capsys, "spectrum", "--m-range", "901:1000")
    rows = rows_of(out)
    assert int(rows[0]["k"]) == 450 and int(rows[-1]["k"]) == 499
    primes = {int(r["m"]) for r in rows if r["class"] == "PRIME"}
    assert primes == {p for p in range(901, 1001) if oracle.trial_is_prime(p)}


def test_spectrum_full_mode(capsys):
    _, out, _ = run(capsys, "spectrum", "1:100", "--mode", "full")
    full = [int(r["K"]) for r in rows_of(out)]
    restricted = build_s2_spectrum(1, 100).counts.tolist()
    assert [f == 0 for f in full] == [r == 0 for r in restricted]
    assert full[22 - 1] == 4


def test_csv_round_trip(capsys):
    _, out, _ = run(capsys, "spectrum", "1:2000", "--workers", "3")
    got = [int(r["K"]) for r in rows_of(out)]
    assert got == build_s2_spectrum(1, 2000).counts.tolist()


def test_formats_agree(capsys):
    _, c, _ = run(capsys, "s6", "1:40")
    _, t, _ = run(capsys, "s6", "1:40", "--format", "tsv")
    _, j, _ = run(capsys, "s6", "1:40", "--format", "json")
    doc = json.loads(j)
    assert doc["meta"]["command"] == "s6"
    assert doc["meta"]["parameters"]["range"] == [1, 40]
    from_csv = [{k: v for k, v in r.items()} for r in rows_of(c)]
    from_tsv = rows_of(t, "\t")
    from_json = [{k: "" if v is None else str(v) for k, v in r.items()} for r in doc["rows"]]
    assert from_csv == from_tsv == from_json


def test_s6_first_30(capsys):
    _, out, _ = run(capsys, "s6", "1:30")
    rows = rows_of(out)
    spec = build_s6_spectrum(1, 30)
    for r in rows:
        n = int(r["n"])
        assert int(r["K_minus"]) == spec.K_minus(n) and int(r["K_plus"]) == spec.K_plus(n)
        assert int(r["6n-1"]) == 6 * n - 1 and int(r["6n+1"]) == 6 * n + 1
        twin = oracle.is_prime(6 * n - 1) and oracle.is_prime(6 * n + 1)
        assert (r["twin"] == "TWIN") == twin
    assert rows[28]["K_plus"] == "2"


def test_s6_only_filters(capsys):
    _, out, _ = run(capsys, "s6", "1:9", "--only", "plus")
    assert [int(r["n"]) for r in rows_of(out)] == [1, 2, 3, 5, 6, 7]
    _, out, _ = run(capsys, "s6", "1:30", "--only", "twin")
    assert [int(r["n"]) for r in rows_of(out)] == [1, 2, 3, 5, 7, 10, 12, 17, 18, 23, 25, 30]
    _, out, _ = run(capsys, "s6", "1:1")
    assert rows_of(out) == [{"n": "1", "K_minus": "0", "6n-1": "5", "K_plus": "0", "6n+1": "7",
                             "K_sum": "0", "twin": "TWIN"}]


@pytest.mark.parametrize("limit, method, count", [("50", "s6", 15), ("500", "s2", 95), ("1e3", "s4", 168),
                                                  ("10**3", "oracle", 168)])
def test_primes(capsys, limit, method, count):
    code, out, _ = run(capsys, "primes", limit, "--method", method)
    rows = rows_of(out)
    assert code == 0 and len(rows) == count
    assert [int(r["p"]) for r in rows] == oracle.primes_upto(cli.parse_int(limit))


def test_twins(capsys):
    _, out, _ = run(capsys, "twins", "200")
    pairs = [(int(r["lower"]), int(r["upper"])) for r in rows_of(out)]
    assert pairs[:4] == [(5, 7), (11, 13), (17, 19), (29, 31)]
    assert pairs[-1] == (197, 199) and len(pairs) == 14


def test_order(capsys):
    _, out, _ = run(capsys, "order", "45")
    assert rows_of(out) == [{"m": "45", "order": "3", "factors": "3*3*5"}]
    _, out, _ = run(capsys, "order", "--generate", "2", "30")
    assert [int(r["m"]) for r in rows_of(out)] == [9, 15, 21, 25, 27]


def test_fermat_json(capsys):
    code, out, _ = run(capsys, "fermat", "5", "--format", "json")
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert row["verdict"] == "COMPOSITE" and row["F"] == 4294967297
    assert (row["a"], row["b"]) == (320, 3350208)
    assert (row["factor_1"], row["factor_2"]) == (641, 6700417)
    code, out, _ = run(capsys, "fermat", "4", "--format", "json")
    row = json.loads(out)["rows"][0]
    assert row["verdict"] == "PRIME" and row["a"] is None


def test_coords(capsys):
    _, out, _ = run(capsys, "coords", "63")
    assert rows_of(out) == [{"prime": "3", "index": "2", "exponent": "2"},
                            {"prime": "7", "index": "4", "exponent": "1"}]


def test_coords_index_blank_beyond_budget(capsys, monkeypatch):
    monkeypatch.setenv("SELECTOR_SIEVE_MEM_CAP", "1000")
    code, out, _ = run(capsys, "coords", "20014")  # 2 * 10007
    assert code == 0
    assert rows_of(out)[1] == {"prime": "10007", "index": "", "exponent": "1"}


def test_stats(capsys):
    _, out, _ = run(capsys, "stats", "1", "500")
    row = rows_of(out)[0]
    assert row["prime_count"] == "95" and row["max_gap"] == "14"
    assert (row["max_gap_lo"], row["max_gap_hi"]) == ("113", "127")


def test_bench(capsys):
    _, out, _ = run(capsys, "bench", "10000")
    rows = rows_of(out)
    assert [r["method"] for r in rows] == ["s2", "s6", "s4", "oracle"]
    assert {r["count"] for r in rows} == {"1229"}
    assert {r["identical"] for r in rows} == {"true"}


def test_out_file(capsys, tmp_path):
    target = tmp_path / "spec.csv"
    code, out, _ = run(capsys, "spectrum", "1:17", "--out", str(target))
    assert code == 0 and out == ""
    assert [int(r["K"]) for r in rows_of(target.read_text())] == K_FIRST_17


@pytest.mark.parametrize("argv", [
    ["spectrum", "5:1"],
    ["spectrum"],
    ["fermat", "6"],
    ["order", "10"],
    ["primes", "1"],
    ["stats", "10", "5"],
    ["spectrum", "18446744073709551616:18446744073709551617"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE
    assert out == "" and err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["primes", "lots"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["spectrum", "1-17"])
    assert exc.value.code == 2


def test_capacity_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("SELECTOR_SIEVE_MEM_CAP", "1000")
    code, _, err = run(capsys, "spectrum", "1:5000")
    assert code == cli.EXIT_CAPACITY and err
    code, _, _ = run(capsys, "stats", "1", "20000000")
    assert code == cli.EXIT_CAPACITY


def test_invariant_exit_1(capsys, monkeypatch):
    # a lying primality oracle must be caught by the fermat cross-check
    monkeypatch.setattr(cli.oracle, "is_prime", lambda n: False)
    code, _, _ = run(capsys, "fermat", "3")
    assert code == cli.EXIT_INVARIANT


def test_invariant_exception_exit_1(capsys, monkeypatch):
    from selector_sieve.errors import InvariantViolation

    def boom(*_a, **_k):
        raise InvariantViolation("prime sets differ")

    monkeypatch.setattr(cli.sieve_engine, "bench_selector_sieves", boom)
    code, _, err = run(capsys, "bench", "1000")
    assert code == cli.EXIT_INVARIANT and "prime sets differ" in err


@pytest.mark.parametrize("text, value", [("1e6", 10**6), ("10**6", 10**6), ("1_000", 1000),
                                         ("2.5e3", 2500), ("17", 17)])
def test_parse_int(text, value):
    assert cli.parse_int(text) == value
