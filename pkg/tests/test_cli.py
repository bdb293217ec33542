import csv
import io

import pytest

from main import build_parser, main
from modules.cli import RunConfigParser, RunMode, parse_grid
from modules.design import builtin
from modules.errors import ConfigError, ParameterError
from modules.sim import SweepAxis

BASE_CONFIG = """\
seed = 42
sessions = 20
session_packets = 50
payload_len = 4
threads = 1

[scheme]
kind = "snc"
design = "table3"

[channel]
model = "fixed"
epsilon = 0.2
"""


def write_config(tmp_path, text: str, name: str = "run.toml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def read_csv(text: str):
    return list(csv.DictReader(io.StringIO(text)))


# --- config parser ---

def test_parse_base_config():
    cfg = RunConfigParser.parse_text(BASE_CONFIG)
    assert cfg.sim.scheme.design == builtin("table3")
    assert cfg.sim.channel.epsilon == 0.2
    assert cfg.sim.master_seed == 42
    assert cfg.mode is RunMode.ERROR_RATE and cfg.sweep is None


def test_parse_custom_design_and_fbl_channel():
    text = """\
sessions = 10
session_packets = 20
mode = "histogram"

[scheme]
kind = "snc"

[design]
name = "mine"
K = 3
D = 2
q = 2
C = [[1, 0], [0, 1]]

[channel]
model = "fbl"
snr_db = 0.0
n = 100
nbit = 50
"""
    cfg = RunConfigParser.parse_text(text)
    assert cfg.sim.scheme.design.C == ((1, 0), (0, 1))
    assert cfg.sim.channel.epsilon == pytest.approx(3.1418e-5, rel=1e-3)
    assert cfg.mode is RunMode.HISTOGRAM


def test_parse_sweep_section():
    cfg = RunConfigParser.parse_text(BASE_CONFIG + '\n[sweep]\naxis = "epsilon"\nvalues = [0.1, 0.2]\n')
    assert cfg.sweep.axis is SweepAxis.EPSILON
    assert cfg.sweep.values == (0.1, 0.2)
    assert cfg.sweep.schemes == ()


def test_parse_sweep_schemes():
    text = BASE_CONFIG + '\n[sweep]\naxis = "epsilon"\nvalues = [0.1]\nschemes = ["krep:3", "block_nc:2:4", "snc:simple:3"]\n'
    schemes = RunConfigParser.parse_text(text).sweep.schemes
    assert [s.label for s in schemes] == ["krep", "block_nc", "snc:simple:3"]
    assert (schemes[0].K, schemes[1].K, schemes[1].q) == (3, 2, 4)
    assert schemes[2].design == builtin("simple:3")


@pytest.mark.parametrize("entry", ["krep", "krep:x", "krep:0", "block_nc:2:3", "snc:table9", "rlnc:3"])
def test_parse_sweep_schemes_rejects_bad_entry(entry):
    text = BASE_CONFIG + f'\n[sweep]\naxis = "epsilon"\nvalues = [0.1]\nschemes = ["{entry}"]\n'
    with pytest.raises(ConfigError) as info:
        RunConfigParser.parse_text(text)
    assert info.value.field == "sweep.schemes"
    assert info.value.line == 18


@pytest.mark.parametrize("text, field, line", [
    ("foo = 1\n" + BASE_CONFIG, "foo", 1),
    (BASE_CONFIG.replace('epsilon = 0.2', 'epsilon = 0.2\nlam = 1.0'), "channel.lam", 14),
    (BASE_CONFIG.replace('epsilon = 0.2', 'epsilon = 1.5'), "channel.epsilon", 13),
    (BASE_CONFIG.replace('sessions = 20', 'sessions = 0'), "sessions", 2),
    (BASE_CONFIG.replace('design = "table3"', 'design = "table9"'), "scheme.design", 9),
])
def test_config_errors_name_field_and_line(text, field, line):
    with pytest.raises(ConfigError) as info:
        RunConfigParser.parse_text(text)
    assert info.value.field == field
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: {field}:")


def test_config_syntax_error():
    with pytest.raises(ConfigError) as info:
        RunConfigParser.parse_text("seed = = 1\n")
    assert info.value.line == 1


def test_parse_grid():
    assert parse_grid("") == []
    assert parse_grid("0.1, 0.2") == [0.1, 0.2]
    assert parse_grid("2,3", int) == [2, 3]
    grid = parse_grid("log:1e-3:1e-1:3")
    assert grid == pytest.approx([1e-3, 1e-2, 1e-1])
    with pytest.raises(ParameterError):
        parse_grid("log:0:1:3")
    with pytest.raises(ParameterError):
        parse_grid("a,b")


# --- simulate ---

def test_simulate_writes_csv(tmp_path, capsys):
    path = write_config(tmp_path, BASE_CONFIG)
    assert main(["simulate", path]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "scheme,K,D,q,epsilon,deadlines,failures,error_rate,ci_low,ci_high,seed"
    rows = read_csv(out)
    assert len(rows) == 1
    assert rows[0]["scheme"] == "snc:table3"
    assert rows[0]["deadlines"] == "1000"
    assert rows[0]["seed"] == "42"


def test_simulate_is_byte_identical(tmp_path):
    path = write_config(tmp_path, BASE_CONFIG)
    outputs = []
    for name, threads in (("a.csv", "1"), ("b.csv", "1"), ("c.csv", "2")):
        target = tmp_path / name
        assert main(["simulate", path, "--threads", threads, "--out", str(target)]) == 0
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    assert outputs[0].endswith(b"\r\n")


def test_simulate_seed_override(tmp_path, capsys):
    path = write_config(tmp_path, BASE_CONFIG)
    main(["simulate", path, "--seed", "7", "--sessions", "5"])
    row = read_csv(capsys.readouterr().out)[0]
    assert row["seed"] == "7"
    assert row["deadlines"] == "250"


def test_simulate_histogram(tmp_path, capsys):
    path = write_config(tmp_path, 'mode = "histogram"\n' + BASE_CONFIG)
    assert main(["simulate", path]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert sum(int(r["count"]) for r in rows) == 20
    assert sum(float(r["probability"]) for r in rows) == pytest.approx(1.0)


def test_simulate_sweep_with_gnuplot_hints(tmp_path, capsys):
    text = BASE_CONFIG + '\n[sweep]\naxis = "epsilon"\nvalues = [0.0, 0.3]\n'
    path = write_config(tmp_path, text)
    assert main(["simulate", path, "--gnuplot"]) == 0
    captured = capsys.readouterr()
    rows = read_csv(captured.out)
    assert [r["epsilon"] for r in rows] == ["0", "0.3"]
    assert rows[0]["error_rate"] == "0"
    assert rows[1]["is_upper_bound"] == "true"
    assert "plot" in captured.err


def test_simulate_sweep_over_several_schemes(tmp_path, capsys):
    text = BASE_CONFIG + '\n[sweep]\naxis = "epsilon"\nvalues = [0.1, 0.2]\nschemes = ["krep:2", "snc:table3"]\n'
    path = write_config(tmp_path, text)
    assert main(["simulate", path]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert [(r["scheme"], r["epsilon"]) for r in rows] == [
        ("krep", "0.1"), ("krep", "0.2"), ("snc:table3", "0.1"), ("snc:table3", "0.2"),
    ]
    assert rows[0]["K"] == "2"


def test_simulate_rejects_bad_design(tmp_path, capsys):
    text = BASE_CONFIG.replace('design = "table3"\n', '') + "\n[design]\nK = 1\nD = 1\nq = 2\nC = []\n"
    path = write_config(tmp_path, text)
    assert main(["simulate", path]) == 2
    assert "design.K" in capsys.readouterr().err


def test_simulate_unknown_key_reports_line(tmp_path, capsys):
    path = write_config(tmp_path, BASE_CONFIG.replace("threads = 1", "threads = 1\nbogus = true"))
    assert main(["simulate", path]) == 2
    assert "line 6: bogus: unknown key" in capsys.readouterr().err


def test_simulate_missing_config(tmp_path, capsys):
    assert main(["simulate", str(tmp_path / "absent.toml")]) == 2
    assert "not found" in capsys.readouterr().err


def test_simulate_unwritable_output(tmp_path, capsys):
    path = write_config(tmp_path, BASE_CONFIG)
    assert main(["simulate", path, "--out", str(tmp_path / "missing" / "out.csv")]) == 3
    assert capsys.readouterr().err.startswith("error:")


# --- analyze ---

def test_analyze_krep(capsys):
    assert main(["analyze", "--formula", "krep", "--eps", "0.1", "--K", "3"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert rows == [{"formula": "krep", "inputs": "eps=0.1;K=3", "value": "0.001", "is_upper_bound": "false"}]


def test_analyze_lemma3(capsys):
    assert main(["analyze", "--formula", "lemma3", "--eps", "0.2", "--design", "table3"]) == 0
    row = read_csv(capsys.readouterr().out)[0]
    assert row["value"] == "0.000256"
    assert row["is_upper_bound"] == "true"


def test_analyze_empty_grid_prints_header_only(capsys):
    assert main(["analyze", "--formula", "snc_simple", "--eps", "", "--K", "3"]) == 0
    assert capsys.readouterr().out == "formula,inputs,value,is_upper_bound\r\n"


def test_analyze_log_grid(capsys):
    assert main(["analyze", "--formula", "snc_simple", "--eps", "log:1e-2:1e-1:4", "--K", "2,3"]) == 0
    assert len(read_csv(capsys.readouterr().out)) == 8


def test_analyze_delay_and_min_k(capsys):
    main(["analyze", "--formula", "delay", "--scheme", "block_nc", "--K", "3,4", "--M", "6"])
    assert [r["value"] for r in read_csv(capsys.readouterr().out)] == ["36", "48"]
    main(["analyze", "--formula", "min_k", "--scheme", "snc", "--eps", "0.1", "--target", "1e-6"])
    assert read_csv(capsys.readouterr().out)[0]["value"] == "4"


def test_analyze_rejects_bad_epsilon(capsys):
    assert main(["analyze", "--formula", "krep", "--eps", "1.5", "--K", "3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_analyze_lemma3_not_applicable(capsys):
    assert main(["analyze", "--formula", "lemma3", "--eps", "0.1", "--design", "table2"]) == 2


# --- channel ---

def test_channel_at_capacity(capsys):
    assert main(["channel", "--fbl", "--snr-linear", "1", "--n", "100", "--nbit", "100"]) == 0
    assert capsys.readouterr().out.strip() == "0.5"


def test_channel_random_access(capsys):
    assert main(["channel", "--ra", "--lam", "1", "--L", "100"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(5.7989e-3, rel=1e-4)


def test_channel_needs_exactly_one_model():
    parser = build_parser()
    with pytest.raises(SystemExit) as info:
        parser.parse_args(["channel", "--fbl", "--ra", "--lam", "1", "--L", "10"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        parser.parse_args(["channel", "--lam", "1", "--L", "10"])
    assert info.value.code == 2


def test_channel_fbl_missing_arguments(capsys):
    assert main(["channel", "--fbl", "--n", "100", "--nbit", "50"]) == 2
    assert "snr" in capsys.readouterr().err


# --- designs ---

def test_designs_catalog(capsys):
    assert main(["designs"]) == 0
    rows = read_csv(capsys.readouterr().out)
    by_name = {r["name"]: r for r in rows}
    assert by_name["table1"]["mu"] == "2"
    assert by_name["table3"]["lemma_exponent"] == "6"
    assert by_name["table2"]["diag_condition"] == "false"
    assert by_name["table2"]["lemma_exponent"] == ""


def test_designs_table3_expansion(capsys):
    assert main(["designs", "table3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "table3: (4,2,2)-SNC, mu=4, diag_condition=yes, exponent=6"
    assert lines[1:5] == [
        "V_{1,m} = X_m",
        "V_{2,m} = X_{m-2} ⊕ X_m",
        "V_{3,m} = X_{m-2} ⊕ X_{m-1}",
        "V_{4,m} = X_{m-2} ⊕ X_{m-1} ⊕ X_m",
    ]


def test_designs_simple3_header(capsys):
    main(["designs", "simple:3"])
    header = capsys.readouterr().out.splitlines()[0]
    assert "mu=3" in header and "exponent=5" in header


def test_designs_unknown_name(capsys):
    assert main(["designs", "nope"]) == 2
    assert "unknown design" in capsys.readouterr().err


@pytest.mark.parametrize("name", ["table1", "table3", "simple:4", "mindelay:4:4"])
def test_design_snippet_round_trips(name, capsys):
    main(["designs", name])
    snippet = capsys.readouterr().out.split("\n\n", 1)[1]
    text = 'sessions = 1\nsession_packets = 1\n\n[scheme]\nkind = "snc"\n\n' + snippet + \
        '\n[channel]\nmodel = "fixed"\nepsilon = 0.1\n'
    assert RunConfigParser.parse_text(text).sim.scheme.design == builtin(name)


def test_designs_from_config(tmp_path, capsys):
    path = write_config(tmp_path, BASE_CONFIG)
    assert main(["designs", "--config", path]) == 0
    assert capsys.readouterr().out.startswith("table3: (4,2,2)-SNC")
