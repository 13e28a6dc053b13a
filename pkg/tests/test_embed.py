import pytest

from monomial_crystal.cartan import build_cartan, canonical_shift, fundamental_seed
from monomial_crystal.embed import (
    NEG_INF, ElemFactor, TensorWord, WindowTooSmall, auto_window, phi_embed,
    seed_shift, solve_z, tensor_eps_phi, tensor_op, verify_strict,
)
from monomial_crystal.embed import _ball
from monomial_crystal.monomial import eps_i, lower, parse, phi_i
from monomial_crystal.verify import list_fixtures, load_fixture

D4 = build_cartan("D1~4")


def test_single_factor():
    w = TensorWord((ElemFactor.Bi(2, 0),), D4)
    assert tensor_eps_phi(w, 2) == (0, 0)
    assert tensor_eps_phi(w, 1) == (NEG_INF, NEG_INF)
    assert tensor_op(w, 2, "lower") is None
    w = TensorWord((ElemFactor.Bi(2, 1),), D4)
    assert tensor_op(w, 2, "lower").factors == (ElemFactor.Bi(2, 0),)
    assert tensor_op(w, 2, "raise") is None


def test_cunit_word():
    w = TensorWord((ElemFactor.Cunit(),) * 3, D4)
    assert all(tensor_eps_phi(w, i) == (0, 0) for i in D4.nodes)
    assert tensor_op(w, 1, "raise") is None
    assert tensor_op(w, 1, "lower") is None


def test_t_lambda_is_inert():
    t = ElemFactor.Tlambda({1: 2})
    assert t.eps(1) == NEG_INF and t.phi(1) == NEG_INF
    assert t.weight(1, D4) == 2 and t.weight(2, D4) == 0


def test_bi_weight_pairs_with_cartan_column():
    b = ElemFactor.Bi(2, 3)
    assert b.weight(2, D4) == 6
    assert b.weight(1, D4) == -3
    assert b.weight(0, D4) == -3


def test_tensor_rule_two_factors():
    # each b_1(-1) has weight -2 on node 1; the right factor wins both scans
    w = TensorWord((ElemFactor.Bi(1, -1), ElemFactor.Bi(1, -1)), D4)
    eps, phi = tensor_eps_phi(w, 1)
    assert (eps, phi) == (3, -1)
    assert phi - eps == w.weight(1)
    up = tensor_op(w, 1, "raise")
    assert up.factors == (ElemFactor.Bi(1, -1), ElemFactor.Bi(1, 0))


def test_embed_seed_is_all_zero():
    C = build_cartan("A1~3")
    s = canonical_shift(C)
    m = fundamental_seed(C, 1, s)
    w = phi_embed(m, m, s)
    assert all(l == 0 for _, l in w.z_values())
    for i in C.nodes:
        assert tensor_eps_phi(w, i) == (eps_i(m, i), phi_i(m, i))


def test_embed_one_step_changes_one_factor():
    C = build_cartan("D1~4")
    s = canonical_shift(C)
    m = fundamental_seed(C, 2, s)
    window = (-3, 3)
    w0 = phi_embed(m, m, s, window)
    w1 = phi_embed(lower(m, 2), m, s, window)
    diff = [(a, b) for a, b in zip(w0.factors, w1.factors) if a != b]
    assert len(diff) == 1
    assert diff[0][1].l - diff[0][0].l == -1


def test_embed_weight_matches_monomial():
    C = build_cartan("D1~4")
    s = canonical_shift(C)
    m = fundamental_seed(C, 2, s)
    for mp in _ball(m, 4):
        w = phi_embed(mp, m, s, (-6, 6))
        for i in C.nodes:
            assert w.weight(i) == sum(e for (j, _), e in mp.u.items() if j == i)


def test_solve_z_round_trip():
    C = build_cartan("A1~3")
    s = canonical_shift(C)
    m = fundamental_seed(C, 1, s)
    mp = lower(lower(m, 1), 2)
    z = solve_z(mp, m, s, (-4, 4))
    assert sorted(z.values()) == [-1, -1]


def test_window_too_small():
    C = build_cartan("A1~3")
    s = canonical_shift(C)
    m = fundamental_seed(C, 1, s)
    mp = m
    for i in (1, 2, 3, 0, 1, 2):
        mp = lower(mp, i)
    with pytest.raises(WindowTooSmall):
        phi_embed(mp, m, s, (0, 0))


def test_auto_window_covers():
    C = build_cartan("A1~3")
    s = canonical_shift(C)
    assert auto_window([], s) == (-1, 1)
    lo, hi = auto_window([parse("1_5 0_-4", C)], s)
    assert lo <= -2 and hi >= 2


def test_seed_shift_matches_parity():
    C = build_cartan("G1~2")
    s = seed_shift(parse("1_1 0_0^-1", C))
    assert (s[1] - 1) % 2 == 0
    assert seed_shift(parse("2_0 0_2^-1", C)) == canonical_shift(C)
    with pytest.raises(ValueError):
        seed_shift(parse("2_0 2_1", C))


@pytest.mark.parametrize("t,ell", [("A1~3", 1), ("D1~4", 2), ("G1~2", 2), ("D1~5", 2),
                                   ("C1~3", 3), ("A2~4", 1)])
def test_strict_on_fundamental_seeds(t, ell):
    C = build_cartan(t)
    s = canonical_shift(C)
    report = verify_strict(fundamental_seed(C, ell, s), s, 4)
    assert report.ok, report.violations[:3]
    assert report.checks == report.nodes * len(C.nodes)


@pytest.mark.parametrize("name", list_fixtures())
def test_strict_on_fixture_seeds(name):
    fx = load_fixture(name)
    C = build_cartan(fx.type)
    seed = parse(fx.seed, C)
    report = verify_strict(seed, seed_shift(seed), 4)
    assert report.ok, report.violations[:3]


def test_depth_zero_passes():
    C = build_cartan("A1~3")
    s = canonical_shift(C)
    report = verify_strict(fundamental_seed(C, 1, s), s, 0)
    assert report.ok and report.nodes == 1 and report.checks == 0


def test_corrupted_embedding_is_caught():
    def reversed_embed(mp, seed, shift, window):
        w = phi_embed(mp, seed, shift, window)
        return TensorWord(tuple(reversed(w.factors)), w.cartan)

    def constant_embed(mp, seed, shift, window):
        return phi_embed(seed, seed, shift, window)

    C = build_cartan("D1~4")
    s = canonical_shift(C)
    m = fundamental_seed(C, 2, s)
    assert not verify_strict(m, s, 3, embed=reversed_embed).ok
    report = verify_strict(m, s, 3, embed=constant_embed)
    assert not report.injective and report.violations
