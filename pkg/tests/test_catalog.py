import pytest

from linkconc import catalog
from linkconc.catalog import (DELTA_946, KNOT_NAMES, CatalogEntry, CatalogError, LmJ, Pin, chain,
                              chain_neighbours, component_delta, family_delta, fig1, knot,
                              lift_quotient, lifts_generate, resolve, verify_all)
from linkconc.diagram import (DiagramError, connected_sum, linking_matrix, mirror, parse_pd,
                              reverse, sublink)
from linkconc.laurent import ONE, canonicalize, fox_milnor_check, parse_poly
from linkconc.modules import seifert_alexander
from linkconc.obstruction import exterior

P = parse_poly
TREFOIL_DELTA = P("t^2-t+1")


# -- knots --------------------------------------------------------------------------------------


@pytest.mark.parametrize("name, want", [
    ("unknot", "1"),
    ("trefoil", "t^2-t+1"),
    ("figure8", "t^2-3t+1"),
    ("k9_46", "2t^2-5t+2"),
    ("trefoil#trefoil", "t^4-2t^3+3t^2-2t+1"),
])
def test_knot_deltas(name, want):
    e = knot(name)
    assert component_delta(e.diagram, 1) == P(want)
    assert all(ok for _, ok in e.verify())


@pytest.mark.parametrize("name", KNOT_NAMES)
def test_seifert_matrices_agree(name):
    e = knot(name)
    assert seifert_alexander(e.seifert) == component_delta(e.diagram, 1)


def test_946_alias_and_module():
    assert knot("9_46") is knot("k9_46")
    M = exterior(knot("9_46").diagram, 1).M
    assert M.is_cyclic()
    assert knot("9_46").slice_ids() == [1]


def test_unknown_knot():
    with pytest.raises(CatalogError, match="unknown knot"):
        knot("10_124")


# -- Figure 1 link ----------------------------------------------------------------------------------


def test_fig1_pins():
    e = fig1()
    results = e.verify()
    assert results and all(ok for _, ok in results)
    L = e.diagram
    assert L.num_components() == 2
    assert linking_matrix(L) == [[0, 0], [0, 0]]
    assert component_delta(L, 1) == component_delta(L, 2) == DELTA_946
    assert lifts_generate(L, 1, [2]) and lifts_generate(L, 2, [1])
    assert e.slice_ids() == [1, 2]


def test_fig1_slice_witness():
    r = fox_milnor_check(component_delta(fig1().diagram, 1))
    assert r.status == "passes"
    assert canonicalize(r.witness) == P("2t-1")


# -- chains ------------------------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chain_pins(n):
    e = chain(n)
    assert all(ok for _, ok in e.verify())
    L = e.diagram
    assert L.num_components() == n
    assert all(v == 0 for row in linking_matrix(L) for v in row)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chain_rotation_invariance(n):
    L = chain(n).diagram
    rows = []
    for k in range(1, n + 1):
        left, right = chain_neighbours(n, k)
        rows.append((component_delta(L, k), lifts_generate(L, k, [left, right]),
                     lift_quotient(L, k, [left]), lift_quotient(L, k, [right])))
    assert all(r == rows[0] for r in rows)
    assert rows[0] == (DELTA_946, True, P("t-2"), P("2t-1"))


def test_chain_neighbours():
    assert chain_neighbours(3, 1) == (3, 2)
    assert chain_neighbours(5, 5) == (4, 1)


def test_chain_far_lift_word_empty():
    W = exterior(chain(5).diagram, 1).W
    assert len(W.peripheral_words[3]) == 0


def test_chain_sublinks():
    L = chain(4).diagram
    for pair in ([1, 2], [2, 3], [3, 4], [4, 1], [1, 3], [2, 4]):
        S = sublink(L, pair)
        assert linking_matrix(S) == [[0, 0], [0, 0]]
        split = all(S.under_component(x) == S.over_component(x) for x in range(len(S.pd)))
        assert split == (abs(pair[0] - pair[1]) == 2)
        assert component_delta(S, 1) == component_delta(S, 2) == DELTA_946


def test_chain_too_short():
    with pytest.raises(CatalogError):
        chain(2)


# -- twisted family -------------------------------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lmj_unknot(m):
    e = LmJ(m)
    L = e.diagram
    d1, d2 = component_delta(L, 1), component_delta(L, 2)
    assert d1 == d2 == family_delta(m)
    assert abs(d1(1)) == 1
    assert lifts_generate(L, 1, [2])
    assert e.slice_ids() == [1, 2]


def test_family_delta_values():
    assert family_delta(1) == P("6t^2-13t+6")
    assert family_delta(2) == P("12t^2-25t+12")
    assert family_delta(0) == DELTA_946


@pytest.mark.parametrize("m", [1, 2])
def test_lmj_trefoil(m):
    L = LmJ(m, "trefoil").diagram
    want = canonicalize(TREFOIL_DELTA * family_delta(m))
    assert component_delta(L, 1) == component_delta(L, 2) == want
    assert LmJ(m, "trefoil").slice_ids() == []


def test_lmj_with_j_and_minus_j():
    J = knot("trefoil").diagram
    minus = reverse(mirror(J), [1])
    K = connected_sum(J, minus)
    e = LmJ(1, K)
    dj = component_delta(J, 1) * component_delta(minus, 1)
    assert component_delta(e.diagram, 1) == canonicalize(family_delta(1) * dj)
    assert all(ok for _, ok in e.verify())


def test_lmj_errors():
    with pytest.raises(CatalogError):
        LmJ(0)
    with pytest.raises(CatalogError):
        LmJ(1, parse_pd("X(1,3,2,4) X(3,1,4,2)"))
    with pytest.raises(CatalogError):
        LmJ(1, 42)


# -- names and verification -----------------------------------------------------------------------------


@pytest.mark.parametrize("name, key", [
    ("fig1", "fig1"), ("chain:4", "chain:4"), ("LmJ:3:trefoil", "LmJ:3:trefoil"),
    ("lmj:2", "LmJ:2:unknot"), ("9_46", "k9_46"), (" trefoil ", "trefoil"),
])
def test_resolve(name, key):
    assert resolve(name).name == key


@pytest.mark.parametrize("bad", ["chain:x", "fig2", "LmJ:1:2:3", "chain:4:1", "LmJ:0"])
def test_resolve_errors(bad):
    with pytest.raises(CatalogError):
        resolve(bad)


def test_verify_all():
    results = verify_all()
    assert "fig1" in results and "chain:5" in results
    assert all(ok for pins in results.values() for _, ok in pins)
    bad = verify_all(["nope"])
    assert bad["nope"][0][1] is False


def test_failing_pin_is_a_build_error():
    e = CatalogEntry("broken", parse_pd("O(1)"), (Pin("delta is 2", lambda L: False),))
    with pytest.raises(CatalogError, match="fails its pins: delta is 2"):
        catalog._load(e)


def test_unknot_ok():
    assert component_delta(knot("unknot").diagram, 1) == ONE
    with pytest.raises(DiagramError):
        component_delta(knot("unknot").diagram, 2)
