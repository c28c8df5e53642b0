from fractions import Fraction

import pytest

from multicutlab.cli import main
from multicutlab.generators import gen_cactus_gap, gen_star_gap
from multicutlab.instancefmt import ParseError, emit_instance, parse_instance

F = Fraction

MINIMAL = """mcg 1
graph 2 1
edge 0 1 1 1
pairs 1
pair 0 1
"""


def test_minimal_roundtrip():
    inst = parse_instance(MINIMAL)
    assert inst.pairs == ((0, 1),)
    assert emit_instance(inst) == MINIMAL


def test_comments_and_canonicalization():
    text = "# hi\nmcg 1\ngraph 3 2\nedge 0 1 1 1/2\nedge 1 2 2 3\npairs 2\npair 2 0\npair 0 1\nmark b 1\nmark a 0\n"
    inst = parse_instance(text)
    out = emit_instance(inst)
    assert "pair 0 1\npair 0 2" in out
    assert out.index("mark a 0") < out.index("mark b 1")
    assert parse_instance(out).costs == (F(1, 2), F(3))
    assert emit_instance(parse_instance(out)) == out


def test_implicit_pairs_roundtrip():
    text = "mcg 1\ngraph 3 2\nedge 0 1 1 1\nedge 1 2 1 1\npairs dist>= 2\n"
    inst = parse_instance(text)
    assert list(inst.iter_pairs()) == [(0, 2)]
    assert emit_instance(inst) == text


def test_generated_roundtrip():
    for inst in (gen_cactus_gap(2).instance, gen_star_gap(4)):
        text = emit_instance(inst)
        again = parse_instance(text)
        assert emit_instance(again) == text
        assert again.costs == inst.costs


@pytest.mark.parametrize(
    "text,line,frag",
    [
        ("mcg 2\n", 1, "version"),
        ("mcg 1\ngraph 2 x\n", 2, "integer"),
        ("mcg 1\ngraph 2 1\nedge 0 1 1 z\npairs 0\n", 3, "rational"),
        ("mcg 1\ngraph 2 1\nedge 0 0 1 1\npairs 0\n", 3, "self-loop"),
        ("mcg 1\ngraph 2 2\nedge 0 1 1 1\nedge 1 0 1 1\npairs 0\n", 4, "duplicate"),
        ("mcg 1\ngraph 2 1\nedge 0 1 1 1\npairs 1\npair 1 1\n", 5, "identical"),
        ("mcg 1\ngraph 2 1\nedge 0 1 1 1\npairs 0\nbogus 1 2\n", 5, "expected 'mark'"),
        ("mcg 1\ngraph 2 1\n", 2, "end of file"),
    ],
)
def test_parse_errors_located(text, line, frag):
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert err.value.line == line
    assert frag in str(err.value)


# -- CLI ----------------------------------------------------------------------


def test_cli_pipeline(tmp_path, capsys):
    inst = tmp_path / "star.mcg"
    assert main(["gen", "star", "--leaves", "3", "-o", str(inst)]) == 0
    assert main(["solve-lp", str(inst)]) == 0
    assert "objective 3/2" in capsys.readouterr().out
    assert main(["solve-ip", str(inst)]) == 0
    assert "cost 2" in capsys.readouterr().out
    assert main(["gap", str(inst), "--format", "csv"]) == 0
    assert ",3/2,2,4/3," in capsys.readouterr().out
    assert main(["flow", str(inst)]) == 0
    assert "total 3/2" in capsys.readouterr().out
    assert main(["carr-vempala", str(inst), "--min-alpha"]) == 0
    assert "alpha 4/3" in capsys.readouterr().out


def test_cli_decomposition_commands(tmp_path, capsys):
    gadget = tmp_path / "gadget.mcg"
    assert main(["gen", "cycle-gadget", "--w", "2", "-o", str(gadget)]) == 0
    assert main(["pload", str(gadget), "--w", "2", "--rooted", "r", "--radius", "1"]) == 0
    out = capsys.readouterr().out
    assert "p 5/9" in out and "w_times_p 10/9" in out
    assert main(["decomp-enum", str(gadget), "--t", "4", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("member_id,bitmask")

    tree = tmp_path / "tree.mcg"
    assert main(["gen", "tree", "--n", "6", "--seed", "1", "-o", str(tree)]) == 0
    assert main(["tree-decomp", str(tree), "--root", "r", "--w", "2"]) == 0
    assert "verified true" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.mcg"
    bad.write_text("mcg 9\n")
    assert main(["solve-lp", str(bad)]) == 2
    capsys.readouterr()
    assert main(["solve-lp", str(tmp_path / "missing.mcg")]) == 1
    capsys.readouterr()
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 1
    capsys.readouterr()
    # usage error from inconsistent flags
    star = tmp_path / "s.mcg"
    main(["gen", "star", "-o", str(star)])
    assert main(["pload", str(star), "--w", "2", "--radius", "1"]) == 1
