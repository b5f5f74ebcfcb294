import json
import subprocess
import sys

import jsonschema
import pytest

from hamop.cli import main
from hamop.report import REPORT_SCHEMA


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "hamop", *argv], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    return code, data


@pytest.mark.parametrize("argv,code,result", [
    (["verify-theorem1", "--n", "2"], 0, "pass"),
    (["verify-theorem1", "--n", "0", "--target", "D"], 1, "fail"),
    (["verify-darboux", "--n", "1"], 0, "pass"),
    (["verify-darboux", "--n", "0", "--constant", "1"], 1, "fail"),
    (["derive-darboux-constant", "--n", "2"], 0, "value"),
    (["verify-potential-form", "--n", "1"], 0, "pass"),
    (["verify-example"], 0, "pass"),
    (["transform-op", "--op", "D^3", "--subst", "composite", "--target", "-D"], 0, "pass"),
    (["transform-op", "--op", "D", "--subst", "potentiation"], 0, "value"),
    (["transform-eq", "--rhs", "D^3(u^-2)", "--subst", "potentiation"], 0, "value"),
    (["transform-eq", "--rhs", "u_1^2", "--subst", "potentiation"], 3, "unsupported"),
    (["transform-op", "--op", "D", "--subst", "custom", "--phi", "1", "--psi", "v",
      "--target-vars", "y,v"], 3, "unsupported"),
    (["euler", "--density", "-1/u"], 0, "value"),
    (["frechet", "--expr", "-2*v_3", "--vars", "y,v"], 0, "value"),
    (["bracket", "--op", "D", "--F", "u^3", "--G", "u^2"], 0, "value"),
    (["jacobi", "--op", "D^3"], 0, "pass"),
    (["jacobi", "--op", "(2*u_1) o D + (u_2)"], 1, "fail"),
    (["compat", "--op1", "D", "--op2", "D^3"], 0, "pass"),
    (["verify-recursion", "--rhs", "-2*v_3", "--op", "D^2", "--vars", "y,v"], 0, "pass"),
    (["verify-recursion", "--rhs", "-2*v_3", "--op", "v", "--vars", "y,v"], 1, "fail"),
    (["verify-factorization", "--op", "-D^3", "--B", "D"], 0, "pass"),
    (["verify-factorization", "--op", "-D^3", "--B", "1"], 1, "fail"),
    (["verify-hamiltonian", "--rhs", "D^3(u^-2)", "--op", "D^3", "--density", "-1/u"], 0, "pass"),
    (["verify-theorem1", "--n", "99"], 2, "error"),
    (["euler", "--density", "q + u"], 2, "error"),
    (["euler", "--density", "u", "--vars", "x,x"], 2, "error"),
])
def test_exit_codes_and_schema(capsys, argv, code, result):
    got_code, data = run_json(capsys, *argv)
    assert (got_code, data["result"]) == (code, result)
    assert data["command"] == argv[0]
    if result not in ("error", "unsupported"):
        assert data["cites"]
    else:
        assert data["message"]
    assert ("witness" in data) == (result == "fail")


def test_usage_error_exit_code(capsys):
    assert main(["verify-theorem1", "--n"]) == 2
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_subprocess_text_output():
    code, out, _ = run_cli("verify-theorem1", "--n", "0", "--target", "D")
    assert code == 1
    assert "FAIL" in out and "witness:" in out


def test_verify_example_byte_stable():
    first = run_cli("verify-example", "--json")
    second = run_cli("verify-example", "--json")
    assert first[0] == 0
    assert first[1] == second[1]
    data = json.loads(first[1])
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["timing_ms"] == 0
    assert len(data["details"]) == 13


def test_timing_opt_in(capsys):
    main(["verify-theorem1", "--n", "1", "--json", "--timing"])
    data = json.loads(capsys.readouterr().out)
    assert isinstance(data["timing_ms"], int)


def test_densities_file(tmp_path, capsys):
    f = tmp_path / "dens.txt"
    f.write_text("# extra functionals\nu^2\nu_1^2\n\nx*u\n")
    code, data = run_json(capsys, "jacobi", "--op", "D^3", "--densities", str(f))
    assert code == 0
    assert sum(d["name"].startswith("jacobi") for d in data["details"]) == 1


def test_missing_densities_file(capsys):
    code, data = run_json(capsys, "jacobi", "--op", "D", "--densities", "/nonexistent/file")
    assert code == 2 and data["result"] == "error"


def test_darboux_constant_value(capsys):
    _, data = run_json(capsys, "derive-darboux-constant", "--n", "1")
    assert data["value"] == "{1, -1}"
    _, data = run_json(capsys, "derive-darboux-constant", "--n", "0")
    assert data["value"] == "{i, -i}"
