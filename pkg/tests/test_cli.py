import json
import subprocess
import sys

import pytest

from cyclehom.cli import (
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    complex_from_doc,
    complex_to_doc,
    main,
)
from cyclehom.complexes import build
from cyclehom.graphs import cycle, path
from cyclehom.verify import (
    check_codec_cells,
    check_components,
    check_matchings,
    check_path_family,
    failures,
    run_verification,
)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_command(capsys):
    code, out, _ = run_cli(["census", "-m", "9", "-n", "3"], capsys)
    assert code == EXIT_OK
    assert "D_3" in out and "D_6" in out
    assert "6 points" in out
    assert "euler characteristic: 6" in out
    assert "405" in out


def test_homology_command(capsys):
    code, out, _ = run_cli(["homology", "-m", "4", "-n", "5"], capsys)
    assert code == EXIT_OK
    assert "betti=(1, 1)" in out
    assert "circle" in out


def test_homology_json_and_filters(capsys):
    code, out, _ = run_cli(
        ["homology", "-m", "8", "-n", "6", "--format", "json", "-r", "1", "--parity", "1"],
        capsys,
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc) == 1
    assert doc[0]["key"] == {"r": 1, "parity": 1, "base": None}
    assert doc[0]["betti"] == [1, 1]


def test_homology_mod2_smoke(capsys):
    code, out, _ = run_cli(["homology", "-m", "4", "-n", "5", "--ring", "mod2"], capsys)
    assert code == EXIT_OK
    assert "smoke" in out


def test_morse_command(capsys):
    code, out, _ = run_cli(["morse", "-m", "6", "-n", "9", "-r", "3"], capsys)
    assert code == EXIT_OK
    assert "(1; 4, 5, 6)" in out


def test_morse_rejects_c4(capsys):
    code, _, err = run_cli(["morse", "-m", "6", "-n", "4"], capsys)
    assert code == EXIT_USAGE
    assert "C_4" in err or "error" in err


def test_build_json_roundtrip(capsys):
    code, out, _ = run_cli(
        ["build", "-m", "4", "-n", "5", "--format", "json"], capsys
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["m"] == 4 and doc["n"] == 5 and doc["family"] == "cycle"
    assert len(doc["cells"]) == 80
    assert len(doc["codes"]) == 80
    cx = complex_from_doc(doc)
    assert complex_to_doc(cx, "cycle") == doc


def test_export_writes_file(tmp_path, capsys):
    target = tmp_path / "c4c5.json"
    code, _, _ = run_cli(["export", "-m", "4", "-n", "5", "-o", str(target)], capsys)
    assert code == EXIT_OK
    doc = json.loads(target.read_text())
    assert complex_from_doc(doc).f_vector == (30, 40, 10)


def test_export_requires_output():
    with pytest.raises(SystemExit) as exc:
        main(["export", "-m", "4", "-n", "5"])
    assert exc.value.code == EXIT_USAGE


def test_json_schema_shape(capsys):
    code, out, _ = run_cli(
        ["build", "-m", "6", "-n", "4", "--format", "json"], capsys
    )
    doc = json.loads(out)
    assert "codes" not in doc  # no code form for C_4 targets
    for cell in doc["cells"]:
        assert all(entry == sorted(entry) for entry in cell)


def test_budget_exit_code(capsys):
    code, _, err = run_cli(
        ["build", "-m", "8", "-n", "3", "--budget", "5"], capsys
    )
    assert code == EXIT_USAGE
    assert "budget" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["census"])  # missing -m/-n
    assert exc.value.code == EXIT_USAGE


def test_verify_desk_scale_grid_passes(capsys):
    code, out, _ = run_cli(["verify", "--max-m", "8", "--max-n", "8"], capsys)
    assert code == EXIT_OK
    assert "FAIL" not in out
    assert "checks passed" in out


def test_verify_deterministic_output(capsys):
    _, first, _ = run_cli(["verify", "--max-m", "4", "--max-n", "5"], capsys)
    _, second, _ = run_cli(["verify", "--max-m", "4", "--max-n", "5"], capsys)
    assert first == second


def test_verify_reports_mismatch_exit(monkeypatch, capsys):
    import cyclehom.cli as cli_mod
    from cyclehom.verify import CheckResult

    monkeypatch.setattr(
        cli_mod,
        "run_verification",
        lambda *a, **k: [CheckResult("forced", False, 1, 2)],
    )
    code, out, _ = run_cli(["verify", "--max-m", "3", "--max-n", "3"], capsys)
    assert code == EXIT_MISMATCH
    assert "FAIL forced: expected 1, computed 2" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclehom.cli", "census", "-m", "5", "-n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_OK
    assert "D_1" in proc.stdout


def test_runner_functions_directly():
    assert failures(run_verification(3, 3, include_path=False)) == []
    assert not failures(check_codec_cells(5, 3))
    assert not failures(check_components(4, 6))
    assert not failures(check_matchings(5, 3))
    assert not failures(check_path_family(4, 5))
