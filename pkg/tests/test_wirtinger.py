import random

import pytest
from hypothesis import given, settings, strategies as st

from linkconc.catalog import chain, fig1, knot, LmJ
from linkconc.diagram import linking_number, parse_pd
from linkconc.laurent import ONE, T, ZERO, LaurentPoly, parse_poly
from linkconc.wirtinger import (FreeWord, GroupRingElement, abelian_fox_row, abelianize,
                                fox_derivative, permute_generators, wirtinger)

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
X, Y = 0, 1
ALL_ONE = {g: 1 for g in range(8)}


def word(*letters):
    return FreeWord(letters)


def ring(*pairs):
    return GroupRingElement(dict(pairs))


def _seeded_word(seed):
    rng = random.Random(seed)
    return FreeWord([(rng.randrange(5), rng.choice((1, -1))) for _ in range(rng.randint(0, 40))])


words = st.integers(0, 2 ** 32).map(_seeded_word)


# -- free words -------------------------------------------------------------------------


def test_reduce():
    w = word((0, 1), (1, 1), (1, -1), (0, -1), (2, 1))
    assert w.reduce() == word((2, 1))
    assert len(w) == 5


def test_inverse_and_exponent_sum():
    w = word((0, 1), (1, -1), (1, -1))
    assert (w * w.inverse()).reduce() == FreeWord()
    assert w.exponent_sum() == -1
    assert str(w) == "x1 x2^-1 x2^-1"
    assert str(FreeWord()) == "1"


def test_bad_letter():
    with pytest.raises(ValueError):
        FreeWord([(0, 2)])


# -- Fox derivatives ----------------------------------------------------------------------------


def test_fox_axioms():
    x = FreeWord.gen(X)
    assert fox_derivative(x, X) == ring((FreeWord(), 1))
    assert fox_derivative(x, Y) == GroupRingElement()
    assert fox_derivative(x.inverse(), X) == ring((word((X, -1)), -1))


def test_fox_conjugate():
    w = word((X, 1), (Y, 1), (X, -1))
    assert fox_derivative(w, X) == ring((FreeWord(), 1), (w, -1))


@given(words, words, st.integers(0, 4))
def test_product_rule(u, v, g):
    lhs = fox_derivative(u * v, g)
    rhs = fox_derivative(u, g) + fox_derivative(v, g).left_mul(u)
    assert lhs == rhs


@given(words, st.integers(0, 4))
def test_reduction_does_not_change_derivative(w, g):
    assert fox_derivative(w, g) == fox_derivative(w.reduce(), g)


# -- abelianisation --------------------------------------------------------------------------------


def test_abelianize_examples():
    w = word((X, 1), (Y, 1), (X, -1))
    e = ring((FreeWord(), 1), (w, -1))
    assert abelianize(e, ALL_ONE) == ONE - T
    assert abelianize(GroupRingElement(), ALL_ONE) == ZERO
    e = ring((FreeWord.gen(X), 1), (FreeWord.gen(Y, -1), 1))
    assert abelianize(e, ALL_ONE) == T + T ** -1


def test_abelianize_missing_weight():
    with pytest.raises(KeyError):
        abelianize(ring((FreeWord.gen(3), 1)), {0: 1})


@settings(max_examples=1000)
@given(words)
def test_fundamental_identity(w):
    total = ZERO
    for g in range(5):
        total = total + abelianize(fox_derivative(w, g), ALL_ONE)
    assert total * (T - 1) == T ** w.exponent_sum() - 1


@given(words)
def test_fast_row_matches_fox(w):
    row = abelian_fox_row(w, 5)
    for g in range(5):
        assert row[g] == abelianize(fox_derivative(w, g), ALL_ONE)


# -- Wirtinger presentations -------------------------------------------------------------------------


def test_unknot_presentation():
    W = wirtinger(parse_pd("O(1)"), 1)
    assert W.num_generators == 1
    assert W.relations == ()


def test_trefoil_presentation():
    W = wirtinger(parse_pd(TREFOIL), 1)
    assert W.num_generators == 3
    assert len(W.relations) == 3
    assert all(W.is_wirtinger_relation(r) for r in W.relations)
    assert W.to_text() == ("gens: x1..x3; rel: x1 = x2^-1 x3 x2; rel: x2 = x3^-1 x1 x3; "
                           "rel: x3 = x1^-1 x2 x1")


def test_relations_are_conjugations():
    for name in ("figure8", "9_46", "trefoil#trefoil"):
        W = wirtinger(knot(name).diagram, 1)
        assert len(W.relations) == W.num_generators
        for r in W.relations:
            assert W.is_wirtinger_relation(r)
            assert r.exponent_sum() == 0


def test_other_components_do_not_break_arcs():
    L = parse_pd("X(1,3,2,4) X(3,1,4,2)")
    W = wirtinger(L, 1)
    assert W.num_generators == 1
    assert W.relations == ()
    assert W.peripheral_words[2].exponent_sum() == linking_number(L, 2, 1)


def test_hopf_debug_text():
    W = wirtinger(parse_pd("X(1,3,2,4) X(3,1,4,2)"), 1)
    assert W.to_text().startswith("gens: x1; periph L2: x1")


def test_fig1_peripheral_exponent_sum_zero():
    W = wirtinger(fig1().diagram, 1)
    assert W.peripheral_words[2].exponent_sum() == 0
    assert len(W.peripheral_words[2]) > 0


@pytest.mark.parametrize("L", [
    parse_pd("X(1,3,2,4) X(3,1,4,2)"),
    parse_pd(TREFOIL + " O(7)"),
], ids=["hopf", "split"])
def test_exponent_sums_match_linking(L):
    for i in L.component_ids:
        W = wirtinger(L, i)
        for j, w in W.peripheral_words.items():
            assert w.exponent_sum() == linking_number(L, j, i)


def test_exponent_sums_on_catalog_links():
    for entry in (fig1(), chain(3), chain(4), LmJ(2), LmJ(1, "trefoil")):
        L = entry.diagram
        for i in L.component_ids:
            for j, w in wirtinger(L, i).peripheral_words.items():
                assert w.exponent_sum() == linking_number(L, j, i) == 0


def test_chain_far_words_empty():
    L = chain(5).diagram
    W = wirtinger(L, 1)
    assert len(W.peripheral_words[3]) == 0
    assert len(W.peripheral_words[4]) == 0
    assert len(W.peripheral_words[2]) > 0 and len(W.peripheral_words[5]) > 0


def test_permute_generators():
    W = wirtinger(parse_pd(TREFOIL), 1)
    V = permute_generators(W, [2, 0, 1])
    assert [r.generators() for r in V.relations] == [
        {(g + 2) % 3 for g in r.generators()} for r in W.relations]
    with pytest.raises(ValueError):
        permute_generators(W, [0, 0, 1])
