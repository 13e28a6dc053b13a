import json

import pytest
from hypothesis import given, settings, strategies as st

from monomial_crystal.cartan import build_cartan, canonical_shift, fundamental_seed, make_shift
from monomial_crystal.crystal import (BoundExceeded, NotPeriodic, decompose_I0,
                                      detect_z_period, export_graph, generate_component,
                                      generate_quotient, is_highest, load_graph_json)
from monomial_crystal.monomial import Monomial, lower, parse, tau_shift
from monomial_crystal.tableaux import IndexedTableau, affine_family
from monomial_crystal.verify import load_fixture


def a_seed(n):
    C = build_cartan(f"A1~{n}", allow_odd_cycle=n % 2 == 0)
    return parse("1_0 0_1^-1", C)


def test_a3_vector_path():
    seed = a_seed(3)
    g = generate_component(seed, seed.cartan.I0)
    assert len(g) == 4
    labels = []
    k = 0
    for _ in range(3):
        nxt = [(lab, d) for s, lab, d in g.edges if s == k]
        assert len(nxt) == 1
        lab, k = nxt[0]
        labels.append(lab)
    assert labels == [1, 2, 3]


def test_d4_vector_and_empty_ops():
    C = build_cartan("D1~4")
    assert len(generate_component(Monomial({(1, C.s(1)): 1}, cartan=C), C.I0)) == 8
    g = generate_component(fundamental_seed(C, 1), ())
    assert len(g) == 1 and g.edges == []


def test_bound_exceeded_keeps_partial_graph():
    C = build_cartan("D1~4")
    with pytest.raises(BoundExceeded) as info:
        generate_component(fundamental_seed(C, 1), bound=10)
    assert len(info.value.graph) == 10
    assert not info.value.graph.complete


def test_quotients():
    seed = a_seed(3)
    assert len(generate_quotient(seed, 8)) == 8
    assert len(generate_quotient(seed, 4)) == 4
    g = generate_quotient(parse("2_0 0_2^-1", build_cartan("G1~2")), 4)
    assert len(g) == 7
    assert len(g.edges_with_label(0)) == 2
    fx = load_fixture("D43-w1")
    g = generate_quotient(parse(fx.seed, build_cartan(fx.type)), 2)
    assert sorted(c.size for c in decompose_I0(g)) == [1, 7]


def test_not_periodic():
    # the A^(1)_3 vector component is stable under tau_4 but not tau_2
    with pytest.raises(NotPeriodic):
        generate_quotient(a_seed(3), 2)


@pytest.mark.parametrize("name,sizes", [("F4-w1", [1, 52]), ("E62-w1", [1, 26])])
def test_decompose_fixture_seeds(name, sizes):
    fx = load_fixture(name)
    g = generate_quotient(parse(fx.seed, build_cartan(fx.type)), fx.period)
    comps = decompose_I0(g)
    assert sorted(c.size for c in comps) == sizes
    for c in comps:
        assert is_highest(c.highest, g.cartan.I0)


def test_decompose_single_node():
    C = build_cartan("D1~4")
    g = generate_component(fundamental_seed(C, 1), ())
    assert len(decompose_I0(g, ())) == 1


def test_is_highest_examples():
    C = build_cartan("D1~5")
    assert is_highest(Monomial({(1, C.s(1)): 1, (2, C.s(2)): 2}, cartan=C), C.I0)
    assert not is_highest(parse("1_2^-1", C), (1,))
    n, ell = 6, 3
    fam = affine_family(f"D1~{n}", ell)
    for j in range(ell):
        for k in fam.k_values():
            if fam.tableaux(j, k):
                top = IndexedTableau(tuple(range(1, ell - 2 * k + 1)), j, k)
                assert is_highest(fam.monomial(top), fam.cartan.I0)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_z_period_type_a(n):
    z = detect_z_period(a_seed(n))
    assert (z.shift, z.power) == (n + 1, -1)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_z_period_type_d(n):
    # tau_{2n-4} = z^{-ell}; the detector may report a smaller stabilizing shift
    C = build_cartan(f"D1~{n}")
    for ell in range(1, n - 1):
        text = "1_0 0_2^-1" if ell == 1 else f"{ell}_0 0_{ell - 1}^-1 0_{ell + 1}^-1"
        z = detect_z_period(parse(text, C))
        assert (2 * n - 4) % z.shift == 0
        assert z.power * (2 * n - 4) // z.shift == -ell


def test_export_formats():
    C = build_cartan("D1~4")
    g = generate_component(fundamental_seed(C, 1), ())
    dot = export_graph(g, "dot").decode()
    assert dot.count("[label=") == 1 and "->" not in dot
    g = generate_quotient(parse("2_0 0_2^-1", build_cartan("G1~2")), 4)
    data = export_graph(g, "json")
    assert data == export_graph(generate_quotient(g.seed, 4), "json")
    doc = json.loads(data)
    assert len(doc["nodes"]) == 7
    assert sum(1 for e in doc["edges"] if e[1] != 0) == 6
    back = load_graph_json(data, g.cartan)
    assert back.nodes == g.nodes and back.edges == g.edges
    with pytest.raises(ValueError):
        export_graph(g, "xml")


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["D1~4", "B1~3", "C1~3", "G1~2", "A1~3"]), st.integers(-3, 3), st.data())
def test_decomposition_is_tau_invariant(name, half, data):
    C = build_cartan(name)
    ell = data.draw(st.sampled_from(C.I0))
    seed = fundamental_seed(C, ell)
    try:
        z = detect_z_period(seed, max_steps=20_000)
    except NotPeriodic:
        return
    if z is None:
        return
    a = generate_quotient(seed, z.shift)
    b = generate_quotient(tau_shift(seed, 2 * half), z.shift)
    assert sorted(c.size for c in decompose_I0(a)) == sorted(c.size for c in decompose_I0(b))


def test_edges_are_lowering_arrows():
    fx = load_fixture("G2-w1")
    g = generate_quotient(parse(fx.seed, build_cartan(fx.type)), fx.period)
    seen = set()
    for s, lab, d in g.edges:
        assert (s, lab) not in seen
        seen.add((s, lab))
        img = lower(g.nodes[s], lab)
        assert img is not None
        assert any(tau_shift(img, fx.period * k) == g.nodes[d] for k in range(-4, 5))
