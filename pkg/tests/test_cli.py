import json
import os
import subprocess
import sys

import pytest

from conftest import X_MINUS, X_PLUS
from thompsonlinks.cli import SUBCOMMANDS, build_parser, main

XARGS = ["--plus", X_PLUS, "--minus", X_MINUS]


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


# one successful invocation per subcommand
INVOCATIONS = {
    "normalize": ["normalize", "((...)(...).)/((...).(...))"],
    "inverse": ["inverse", *XARGS],
    "multiply": ["multiply", f"{X_PLUS}/{X_MINUS}", f"{X_MINUS}/{X_PLUS}"],
    "iota": ["iota", "--arity", "2", "((..).)/(.(..))"],
    "plmap": ["plmap", *XARGS],
    "perm": ["perm", *XARGS],
    "components": ["components", "--check", *XARGS],
    "pdcode": ["pdcode", *XARGS],
    "gauss": ["gauss", *XARGS],
    "render": ["render", "--format", "tikz", *XARGS],
    "census": ["census", "--n", "2"],
    "verify": ["verify", "--max-n", "2"],
    "walk": ["walk", "--steps", "2", "--samples", "5"],
}


def test_every_subcommand_covered():
    parser_choices = build_parser()._subparsers._group_actions[0].choices
    assert set(SUBCOMMANDS) == set(INVOCATIONS) == set(parser_choices)


@pytest.mark.parametrize("name", sorted(INVOCATIONS))
def test_subcommand_runs(capsys, name):
    status, out, err = run(capsys, *INVOCATIONS[name])
    assert status == 0, err
    assert out and not err
    # byte-identical on repetition
    assert run(capsys, *INVOCATIONS[name])[1] == out


@pytest.mark.parametrize("name", sorted(set(INVOCATIONS) - {"render"}))
def test_json_output(capsys, name):
    status, out, _ = run(capsys, *INVOCATIONS[name], "--json")
    assert status == 0
    json.loads(out)


def test_perm_example(capsys):
    status, out, _ = run(capsys, "perm", *XARGS)
    assert status == 0
    assert "pi(T+) = (0,3)(1,5)(2,4)" in out
    assert "pi(T-) = (0,2)(1,4)(3,5)" in out
    assert "traversal cycles = [1,4,2,0,3,5]" in out
    assert out.rstrip().endswith("components = 1")


def test_perm_json(capsys):
    _, out, _ = run(capsys, "perm", "--json", *XARGS)
    data = json.loads(out)
    assert data["pi_plus"] == [[0, 3], [1, 5], [2, 4]]
    assert data["pi_minus"] == [[0, 2], [1, 4], [3, 5]]
    assert data["composition_cycles"] == [[0, 4, 5], [1, 2, 3]]
    assert data["traversal_cycles"] == [[1, 4, 2, 0, 3, 5]]
    assert data["component_count"] == 1


def test_components_trivial(capsys):
    assert run(capsys, "components", "--plus", ".", "--minus", ".") == (0, "1\n", "")


def test_matching_input(capsys):
    status, out, _ = run(capsys, "normalize", "--plus", "[[0,3],[1,5],[2,4]]",
                         "--minus", "[[0,2],[1,4],[3,5]]")
    assert status == 0 and out.split() == [X_PLUS, X_MINUS]


def test_json_file_input(capsys, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps({"arity": 3, "plus": X_PLUS, "minus": X_MINUS}))
    assert run(capsys, "components", str(f))[1] == "1\n"
    assert run(capsys, "components", "--input", str(f))[1] == "1\n"


def test_normalize_output(capsys):
    assert run(capsys, *INVOCATIONS["normalize"])[1].split() == [X_PLUS, X_MINUS]


def test_multiply_inverse_gives_identity(capsys):
    assert run(capsys, *INVOCATIONS["multiply"])[1] == ". .\n"


def test_iota_output(capsys):
    assert run(capsys, *INVOCATIONS["iota"])[1].split() == ["((...)..)", "(..(...))"]


def test_census_formats(capsys):
    _, csv_out, _ = run(capsys, "census", "--max-n", "2", "--format", "csv")
    assert csv_out.splitlines()[-1] == "2,3,9,6,0,3,7,9"
    _, js, _ = run(capsys, "census", "--n", "2", "--format", "json")
    assert json.loads(js)[0]["histogram"] == {"1": 6, "3": 3}
    assert run(capsys, "census", "--n", "3", "--workers", "2")[1] == run(capsys, "census", "--n", "3")[1]


def test_census_bound_is_domain_error(capsys):
    status, out, err = run(capsys, "census", "--n", "6")
    assert status == 1 and out == "" and "exceeds" in err


def test_walk_generators_file(capsys, tmp_path):
    f = tmp_path / "gens.json"
    f.write_text(json.dumps([{"arity": 2, "plus": "((..).)", "minus": "(.(..))"}]))
    status, out, _ = run(capsys, "walk", "--generators", str(f), "--steps", "1",
                         "--samples", "4", "--json")
    assert status == 0 and json.loads(out)["histogram"] == {"1": 4}


@pytest.mark.parametrize("argv", [
    ["normalize", "(..)/(...)"],                        # syntax error
    ["components", "--plus", "(...)", "--minus", "."],  # leaf counts differ
    ["perm", "--plus", "[[0,1],[2,3]]", "--minus", "(...)"],  # not tangled
    ["components", "--arity", "2", "(..)/(..)"],         # binary element
    ["iota", "(...)/(...)"],                             # ternary element
    ["components", "nonsense"],
    ["components", "--plus", "(...)"],
    ["walk", "--generators", "/nonexistent/file.json"],
])
def test_domain_errors(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 1
    assert out == "" and err.startswith("error:")


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["render", "--format", "png", *XARGS],
                                  ["census", "--n", "two"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_render_to_file(capsys, tmp_path):
    out = tmp_path / "x.svg"
    assert run(capsys, "render", *XARGS, "-o", str(out))[0] == 0
    text = out.read_text()
    assert text.count('class="gap"') == 4
    assert os.listdir(tmp_path) == ["x.svg"]


def test_render_failure_leaves_no_file(capsys, tmp_path):
    out = tmp_path / "bad.svg"
    status, _, _ = run(capsys, "render", "--plus", "(..", "--minus", ".", "-o", str(out))
    assert status == 1
    assert os.listdir(tmp_path) == []


def test_render_keeps_old_file_on_failure(capsys, tmp_path):
    out = tmp_path / "x.svg"
    out.write_text("old")
    run(capsys, "render", "--plus", "(...)", "--minus", ".", "-o", str(out))
    assert out.read_text() == "old"
    assert os.listdir(tmp_path) == ["x.svg"]


def test_verify_reports(capsys):
    status, out, _ = run(capsys, "verify", "--max-n", "3", "--random-pairs", "20")
    assert status == 0
    assert all(line.startswith(("PASS", "      ")) for line in out.splitlines())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thompsonlinks", "perm", *XARGS],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "components = 1" in proc.stdout


def test_verify_fails_when_characterization_breaks(capsys):
    status, out, _ = run(capsys, "verify", "--max-n", "5", "--theorem-max-n", "1")
    assert status == 1
    assert "FAIL  characterization n=5" in out
    assert "PASS  characterization n=4" in out
