import json

import pytest

from qgr.cli import main
from qgr.grassmannian import cc_character
from qgr.laurent import LaurentPoly
from qgr.quiver import quiver_from_alias
from qgr.reps import build_band_module


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_delta_json(capsys):
    code, out, _ = run(capsys, "delta", "--quiver", "a21", "--json")
    assert code == 0 and json.loads(out)["delta"] == [1, 1, 1]


def test_char_round_trips(capsys):
    code, out, _ = run(capsys, "char", "--quiver", "a21", "--module", "band:l=1:lambda=1", "--json")
    assert code == 0
    poly = LaurentPoly.from_json_obj(json.loads(out))
    assert len(poly) == 4
    assert poly == cc_character(build_band_module(quiver_from_alias("a21"), 1, 1, 2))


def test_direct_sum_and_shift(capsys):
    code, out, _ = run(capsys, "char", "--module", "shift:i=1", "--module", "shift:i=2", "--json")
    assert code == 0
    assert LaurentPoly.from_json_obj(json.loads(out)) == LaurentPoly.monomial((1, 1))


def test_rep_file(capsys, tmp_path):
    q = quiver_from_alias("kronecker")
    path = tmp_path / "m.json"
    path.write_text(build_band_module(q, 2, 1, 3).to_json())
    code, out, _ = run(capsys, "char", "--module", f"rep:{path}")
    assert code == 0 and "u1^-1 u2^-1" in out


def test_table_figure_one(capsys):
    code, out, _ = run(capsys, "table", "--figure", "1", "--json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["e"] for r in rows] == [[0, 0], [0, 1], [0, 2], [1, 1], [1, 2], [2, 2]]
    assert [r["gr"][0] for r in rows] == [1, 2, 1, 1, 2, 1]
    assert [r["tr"][0] for r in rows] == [1, 2, 1, 0, 2, 1]


def test_verify_diff(capsys):
    code, out, _ = run(capsys, "verify", "diff", "--quiver", "a21", "--l", "3")
    assert code == 0 and "FAIL" not in out and out.count("PASS") == 9


def test_verify_mult_explicit(capsys):
    code, out, _ = run(capsys, "verify", "mult", "--quiver", "a21", "--tube", "A",
                       "--m", "2", "--n", "2", "--j", "0", "--k", "1")
    assert code == 0 and out.startswith("PASS")


def test_mutate_and_variables(capsys):
    code, out, _ = run(capsys, "mutate", "--sequence", "1,2")
    assert code == 0 and "den=[2, 1]" in out
    code, out, _ = run(capsys, "variables", "--depth", "3", "--json")
    assert code == 0 and len(json.loads(out)) == 8


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "G", "--bound", "1,1", "--json")
    dens = [tuple(x["den"]) for x in json.loads(out)]
    assert code == 0 and len(dens) == len(set(dens)) == 9


@pytest.mark.parametrize("argv", [
    ["euler-form", "--e", "1,x", "--f", "0,1"],
    ["euler-form", "--e", "1", "--f", "0,1"],
    ["char", "--module", "cube:l=1"],
    ["char"],
    ["mutate", "--sequence", "3"],
    ["table", "--figure", "7"],
    ["delta", "--quiver", "e9"],
    ["verify", "mult", "--m", "1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("qgr ")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_deterministic(capsys):
    a = run(capsys, "table", "--figure", "2")
    b = run(capsys, "table", "--figure", "2")
    assert a == b
