import json
import subprocess
import sys

import pytest

from unirational.cli import COMMANDS, RunConfig, build_parser, main, run

FLAGS = ["--seed", "--prec", "--prime", "--max-degree", "--threads", "--point", "--count", "--out"]


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_identities(capsys):
    code, out, _ = _run(capsys, "verify-identities")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    ids = {d["id"] for d in lines}
    for want in ("I[i=1]", "II[u1]", "VI", "VIII", "IX", "X[j=2]", "XI[j=3]", "**[j=2]", "XII",
                 "H-equivalence", "XIII", "XIV", "not-square", "ord(g)=4"):
        assert want in ids
    assert all(d["ok"] and d["witness"] == "0" for d in lines)
    viii = next(d for d in lines if d["id"] == "VIII")
    assert list(viii)[:3] == ["id", "ok", "witness"]


def test_parametrize_byte_identical(capsys):
    code1, out1, _ = _run(capsys, "parametrize")
    code2, out2, _ = _run(capsys, "parametrize", "--threads", "4")
    assert code1 == code2 == 0
    assert out1 == out2
    d = json.loads(out1)
    assert d["vars"] == ["s", "t", "v"] and set(d) >= {"a", "alpha", "b", "beta"}


def test_sample_byte_identical_across_threads(capsys):
    _, one, _ = _run(capsys, "sample", "--count", "4", "--seed", "3", "--prec", "64")
    _, again, _ = _run(capsys, "sample", "--count", "4", "--seed", "3", "--prec", "64")
    code, four, _ = _run(capsys, "sample", "--count", "4", "--seed", "3", "--prec", "64", "--threads", "4")
    assert code == 0
    assert one == again == four
    assert len(one.splitlines()) == 4


def test_search_byte_identical_across_threads(capsys):
    _, one, _ = _run(capsys, "no-rational-point", "--prime", "5", "--max-degree", "1")
    code, four, _ = _run(capsys, "no-rational-point", "--prime", "5", "--max-degree", "1", "--threads", "4")
    assert code == 0 and one == four
    assert json.loads(one)["solutions"] == []


def test_jacobian_rank(capsys):
    code, out, _ = _run(capsys, "jacobian-rank", "--point", "2,3,1")
    assert code == 0 and json.loads(out)["rank"] == 3
    code, _, err = _run(capsys, "jacobian-rank", "--point", "2,2,1")
    assert code == 1 and "bad sample" in err
    code, _, _ = _run(capsys, "jacobian-rank", "--point", "2,3")
    assert code == 2
    code, _, _ = _run(capsys, "jacobian-rank", "--point", "2,x,1")
    assert code == 2


def test_conic_info(capsys):
    code, out, _ = _run(capsys, "conic-info")
    d = json.loads(out)
    assert code == 0
    assert d["Q_has_point_(s,t)"] and not d["H_has_point_(1,1)"] and d["parity_forcing_deg_le_4"]


@pytest.mark.parametrize("argv", [
    ["no-rational-point", "--prime", "7"],
    ["no-rational-point", "--prime", "12"],
    ["no-rational-point", "--max-degree", "-1"],
    ["sample", "--count", "0"],
    ["sample", "--prec", "8"],
    ["sample", "--threads", "0"],
    ["parametrize", "--bogus"],
    ["frobnicate"],
    [],
    ["sample", "--count", "many"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_budget_refusal(capsys):
    assert main(["no-rational-point", "--prime", "13", "--max-degree", "3"]) == 2
    assert "refusing" in capsys.readouterr().err


def test_help_documents_every_flag(capsys):
    assert main(["--help"]) == 0
    top = capsys.readouterr().out
    for name in COMMANDS:
        assert name in top
        assert main([name, "--help"]) == 0
        sub = capsys.readouterr().out
        for flag in FLAGS:
            assert flag in sub
    for flag in FLAGS:
        assert flag in top


def test_out_file(tmp_path, capsys):
    target = tmp_path / "phi.json"
    assert main(["parametrize", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    _, direct, _ = _run(capsys, "parametrize")
    assert target.read_text() == direct


def test_run_config_directly(capsys):
    assert run(RunConfig(command="conic-info")) == 0
    assert run(RunConfig(command="nope")) == 2
    capsys.readouterr()


def test_parser_defaults():
    ns = build_parser().parse_args(["sample"])
    assert (ns.seed, ns.prec, ns.threads, ns.count) == (0, 128, 1, 5)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unirational", "jacobian-rank", "--point", "2,3,1"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rank"] == 3
