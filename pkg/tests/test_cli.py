import subprocess
import sys

from harmcalc.cli import main, parse_radial, run_command
from harmcalc.scalar import Scalar


def run(argv):
    return run_command(list(argv))


def test_volume_and_area():
    out, code = run(["volume", "--dim", "4"])
    assert code == 0 and out == "pi^2/2"
    out, code = run(["surface-area", "--dim", "3"])
    assert code == 0 and out == "4*pi"


def test_dim_harmonic_verb():
    out, code = run(["dim-harmonic", "--m", "12", "--n", "100"])
    assert code == 0 and out == "3901030682812965"


def test_dirichlet_verb_matches_library():
    out, code = run(["dirichlet", "x1^4*x2^2", "--dim", "5"])
    assert code == 0
    from conftest import E
    from harmcalc.expr import Context
    from harmcalc.parser import parse_expression

    ctx = Context(5)
    back = parse_expression(out, ctx)
    fix = E(
        "1/15015*(143 - 273*||x||^2 + 165*||x||^4 - 35*||x||^6 + 910*x1^2"
        " - 1540*||x||^2*x1^2 + 630*||x||^4*x1^2 + 1155*x1^4 - 1155*||x||^2*x1^4"
        " + 455*x2^2 - 770*||x||^2*x2^2 + 315*||x||^4*x2^2 + 6930*x1^2*x2^2"
        " - 6930*||x||^2*x1^2*x2^2 + 15015*x1^4*x2^2)",
        ctx,
    )
    assert (back - fix).is_zero()


def test_exit_code_solvability():
    payload, code = run(["neumann", "x1^2", "--dim", "3"])
    assert code == 4
    assert payload["type"] == "SolvabilityViolation"


def test_exit_code_unsupported():
    payload, code = run(["integrate-ball", "x1^2", "--dim", "3", "--weight", "r^-5"])
    assert code == 3
    assert payload["type"] == "DivergentRadialIntegral"


def test_parse_error_exit_code():
    payload, code = run(["laplacian", "x1^4*x2^2 + (1/2", "--dim", "3"])
    assert code == 2
    assert payload["type"] == "ParseError"


def test_degree_cap_exit_code():
    # an infeasible quadratic Dirichlet cannot be provoked with valid
    # ellipsoids at small degree; exercise the error class mapping directly
    from harmcalc.errors import InfeasibleSystem

    assert InfeasibleSystem("x").exit_code == 5


def test_radial_weight_parser():
    r = parse_radial("1 - r^2")
    assert r.lin_den is None
    assert r.terms == (
        (Scalar.from_fraction(1), 0, 0),
        (Scalar.from_fraction(-1), 2, 0),
    )
    r2 = parse_radial("1/(1 + r)")
    assert r2.lin_den == (1, 1)
    r3 = parse_radial("r^2*log(r)^3")
    assert r3.terms == ((Scalar.from_fraction(1), 2, 3),)
    r4 = parse_radial("1/(2 + 3*r)")
    assert r4.lin_den == (2, 3)


def test_integrate_ball_verb():
    out, code = run(["integrate-ball", "x1^2*x2^4", "--dim", "7", "--weight", "1/(1 + r)"])
    assert code == 0
    assert "log(2)" in out and "pi^3" in out


def test_formats_and_determinism():
    args = ["laplacian", "x1^2*x2", "--dim", "3", "--format", "json"]
    out1, _ = run(args)
    out2, _ = run(args)
    assert out1 == out2
    assert out1 == {"terms": [{"poly": "2*x2", "factors": []}]}
    latex, _ = run(["volume", "--dim", "3", "--format", "latex"])
    assert "\\pi" in latex


def test_render_scalar_text():
    out, _ = run(["integrate-sphere", "x1^2*x2^4*x3^6", "--dim", "3"])
    assert out == "1/3003"


def test_reflect_point_verb():
    out, code = run(["reflect", "--point", "1,-2,5,11"])
    assert code == 0
    assert out.split("\n") == ["1/151", "-2/151", "5/151", "11/151"]


def test_eval_and_approx():
    out, code = run(["eval", "norm(x)", "--dim", "2", "--at", "3,4"])
    assert code == 0 and out == "5"
    out, code = run(["approx", "norm(x)^2", "--dim", "2", "--at", "1,1", "--digits", "3"])
    assert code == 0 and out == "2.00"


def test_batch_mode(tmp_path):
    script = tmp_path / "commands.txt"
    script.write_text(
        "volume --dim 4\n"
        "# a comment line\n"
        "dim-harmonic --m 1 --n 7\n"
        "neumann x1^2 --dim 3\n"
    )
    results, code = run(["batch", str(script)])
    assert code == 0
    assert [r["exit"] for r in results] == [0, 0, 4]
    assert results[0]["result"] == "pi^2/2"
    assert results[1]["result"] == "7"


def test_main_entrypoint(capsys):
    code = main(["volume", "--dim", "4"])
    out = capsys.readouterr().out.strip()
    assert code == 0 and out == "pi^2/2"


def test_main_error_path(capsys):
    code = main(["neumann", "x1^2", "--dim", "3"])
    err = capsys.readouterr().err
    assert code == 4
    assert "SolvabilityViolation" in err


def test_main_out_file(tmp_path, capsys):
    target = tmp_path / "result.txt"
    code = main(["volume", "--dim", "4", "--out", str(target)])
    assert code == 0
    assert target.read_text().strip() == "pi^2/2"


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "harmcalc.cli", "dim-harmonic", "--m", "2", "--n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "5"


def test_infeasible_system_exit_code():
    # constants are unreachable over the harmonic surface x1^2 - x2^2 = 0,
    # so the degree schedule runs out
    payload, code = run(["dirichlet", "x1^2", "--dim", "2", "--region", "quadratic:1,-1;;0"])
    assert code == 5
    assert payload["type"] == "InfeasibleSystem"


def test_unknown_variable_exit_code():
    payload, code = run(["laplacian", "x9", "--dim", "3"])
    assert code == 3
    assert payload["type"] == "UnknownVariable"
