import pathlib

import pytest

import fracseq as fs

RULES = pathlib.Path(__file__).resolve().parents[2] / "rules"


def test_catalog():
    ids = fs.ids()
    assert len(ids) == 15
    assert ids[0] == "dekking-flowsnake"
    assert fs.gen("gray", 8) == [1, 2, -1, 3, 1, -2, -1, 4]
    assert fs.gen("hilbert-original", 4) == [1, 2, -1, 2]
    assert fs.gen_lengths("v1-dragon", 4) == ["1", "1", "sqrt2", "sqrt2"]


def test_unknown_id():
    with pytest.raises(IndexError):
        fs.gen("nothing", 3)


def test_perm():
    a = fs.Perm([-2, 4, -1, 3])
    b = fs.Perm([3, -1, 4, -2])
    assert (a * b).images == [-1, 2, 3, -4]
    assert a.parity() == -1
    assert fs.Perm.parse("[1,3,4,-2]").inverse().images == [1, -4, 2, 3]
    assert len(fs.group([fs.Perm.named("mu", 2), fs.Perm.named("tau_y", 2)])) == 8


def test_sequence_algebra():
    s = [1, -2, 2, 1]
    assert fs.inverse(fs.inverse(s)) == s
    assert fs.inverse(s) == fs.negate(fs.reverse(s))
    assert fs.normalize([-1, 2]) == [1, 2]
    assert fs.compare([-1], [-2]) == 1
    assert fs.compare([1], [1, 2]) == -1
    assert fs.fold([1, 2, 3]) == fs.gray(3)
    assert fs.parse("<1,-2>") == [1, -2]
    assert fs.format([1, -2]) == "<1,-2>"


def test_gray_ruler():
    g = fs.gray(10)
    for n in range(1, len(g) + 1):
        assert abs(g[n - 1]) == (n & -n).bit_length()
    assert fs.is_hyper_orthogonal(g, 9)


def test_verify_and_render():
    ok, checks = fs.verify("hilbert-original")
    assert ok and all(c[1] for c in checks)
    pts = fs.trace("hilbert-original", 3)
    assert len(pts) == 64
    assert len({tuple(p) for p in pts}) == 64
    assert fs.svg("beta-omega", 2).startswith("<?xml")
    with pytest.raises(ValueError):
        fs.svg("gray", 3)  # a 4D walk
    assert fs.bfile("gray", 3) == "1 1\n2 2\n3 -1\n"


def test_rules():
    assert fs.rule_gen(RULES / "box4.rule", 1) == fs.level("box4", 1)
    assert fs.rule_text_gen("digiset 2\nkind edgewise\nstart <1>\nterm id\nterm -mu\n", 1) == [1, -2]
    with pytest.raises(fs.RuleError):
        fs.rule_text_gen("digiset 2\nkind sideways\n", 1)
