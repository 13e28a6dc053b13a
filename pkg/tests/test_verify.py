import itertools
import shutil

import pytest

from monomial_crystal.cartan import build_cartan, finite_cartan
from monomial_crystal.crystal import generate_component
from monomial_crystal.monomial import detect_parity_flip, parse
from monomial_crystal.verify import (
    FixtureFormatError, check_fixture, closure_failures, dominant_monomial,
    list_fixtures, load_fixture, oracle_bijection, weyl_dim,
)


@pytest.mark.parametrize("n", range(1, 8))
def test_weyl_dim_vector(n):
    assert weyl_dim("A", n, {1: 1}) == n + 1


def test_weyl_dim_examples():
    assert weyl_dim("D", 4, {2: 1}) == 28
    assert weyl_dim("E", 6, {5: 1}) == 27
    assert weyl_dim("E", 6, {1: 1}) == 27
    assert weyl_dim("E", 6, {6: 1}) == 78
    # node 2 is the short node
    assert weyl_dim("G", 2, {2: 1}) == 7
    assert weyl_dim("G", 2, {1: 1}) == 14
    assert weyl_dim("F", 4, {4: 1}) == 26
    assert weyl_dim("F", 4, {1: 1}) == 52
    assert weyl_dim("E", 7, {6: 1}) == 56
    assert weyl_dim("E", 7, {1: 1}) == 133
    assert weyl_dim("B", 3, [0, 0, 1]) == 8
    assert weyl_dim("C", 3, {}) == 1


SMALL = [(k, n) for k, n in (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3),
                              ("G", 2), ("D", 4))]


@pytest.mark.parametrize("kind,n", SMALL)
def test_weyl_dim_matches_bfs(kind, n):
    C = finite_cartan(kind, n)
    for coeffs in itertools.product(range(3), repeat=n):
        weight = {i + 1: c for i, c in enumerate(coeffs) if c}
        d = weyl_dim(kind, n, weight)
        if d > 600:
            continue
        m = dominant_monomial(C, weight)
        assert len(generate_component(m, C.nodes, cartan=C)) == d, weight


def test_fixture_corpus_present():
    names = list_fixtures()
    assert {"G2-w1", "G2-w2", "F4-w1", "D43-w2", "E6-w5"} <= set(names)


@pytest.mark.parametrize("name", list_fixtures())
def test_fixture_passes(name):
    report = check_fixture(name)
    assert report.passed, [l for l in report.lines() if l.startswith("FAIL")]


@pytest.mark.parametrize("name", list_fixtures())
def test_fixture_monomials_parity_admissible(name):
    fx = load_fixture(name)
    C = build_cartan(fx.type)
    flips = {detect_parity_flip(parse(m, C)) for b in fx.blocks for m in b.monomials}
    assert None not in flips
    assert len({detect_parity_flip(parse(fx.seed, C))} | flips) == 1


def test_g2_w2_edges():
    fx = load_fixture("G2-w2")
    assert [i for _, i, _ in fx.edges if i] == [2, 1, 2, 2, 1, 2]
    assert sum(1 for _, i, _ in fx.edges if i == 0) == 2
    assert check_fixture(fx).passed


def test_f4_w1_components():
    fx = load_fixture("F4-w1")
    assert sorted(b.size for b in fx.components) == [1, 52]
    assert fx.relation == (4, -1)


def test_d43_w2_components():
    fx = load_fixture("D43-w2")
    assert sorted(b.size for b in fx.components) == [1, 7, 7, 14]


def _typo_cases():
    for name in list_fixtures():
        fx = load_fixture(name)
        for b in fx.blocks:
            for k, note in enumerate(b.notes):
                if note.startswith("as printed:"):
                    printed = note[len("as printed:"):].split(";")[0].strip()
                    yield pytest.param(name, b.label, k, printed, id=f"{name}-{b.label}-{k}")


@pytest.mark.parametrize("name,label,k,printed", list(_typo_cases()))
def test_printed_forms_are_inconsistent(name, label, k, printed):
    # each corrected line is justified: the printed form breaks parity or closure
    fx = load_fixture(name)
    C = build_cartan(fx.type)
    block = fx.block(label)
    good = [parse(m, C) for m in block.monomials]
    bad = parse(printed, C)
    assert bad != good[k]
    parity_broken = detect_parity_flip(bad) != detect_parity_flip(good[k])
    swapped = good[:k] + [bad] + good[k + 1:]
    assert parity_broken or closure_failures(swapped, C.I0)
    assert not closure_failures(good, C.I0) or block.kind == "list"


def test_typo_count():
    assert len(list(_typo_cases())) == 19


def test_closure_failures_reports_escape():
    C = build_cartan("G1~2")
    ms = [parse("2_0 0_2^-1", C)]
    bad = closure_failures(ms, C.I0)
    assert bad and bad[0][1] == 2


def test_load_fixture_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_fixture("no-such-fixture")
    p = tmp_path / "broken.txt"
    p.write_text("type=G1~2\nperiod=4\ncomponent 1\n2_0 0_2^-1\n")
    with pytest.raises(FixtureFormatError):
        load_fixture(p)
    p.write_text("type=G1~2\nseed=2_0 0_2^-1\nperiod=4\ncomponent 2\n2_0 0_2^-1\n")
    with pytest.raises(FixtureFormatError):
        load_fixture(p)


def test_fixture_dir_override(tmp_path, monkeypatch):
    src = load_fixture("G2-w2")
    from monomial_crystal.verify import fixture_dir
    shutil.copy(fixture_dir() / "G2-w2.txt", tmp_path / "only.txt")
    monkeypatch.setenv("CRYSTAL_FIXTURE_DIR", str(tmp_path))
    assert list_fixtures() == ["only"]
    assert load_fixture("only").blocks[0].monomials == src.blocks[0].monomials


@pytest.mark.parametrize("args,size", [(("D", 4, 1, 0, 0), 8), (("D", 5, 2, 1, 1), None),
                                       (("C", 3, 2, 1, 1), None), (("B", 3, 2, 1, 1), None)])
def test_oracle_bijection(args, size):
    report = oracle_bijection(*args)
    assert report.passed, report.lines()
    if size is not None:
        assert f"{size} tableaux" in report.lines()[0]
