import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from brunnian.treealg import (
    LabeledTree, SymSquareVector, TreeVector, all_trees, comb_basis_tree, expansion_coordinates,
    integer_rank, parse_perm, parse_tree, perm_text, perms, reduce_to_basis, sym_square,
    sym_square_rank,
)


def test_perm_order_and_text():
    assert perms(4) == [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    assert perms(1) == [()]
    assert parse_perm("21", 3) == (2, 1)
    assert parse_perm("2,1", 3) == (2, 1)
    assert parse_perm("id", 1) == ()
    assert perm_text((3, 1, 2)) == "312"
    with pytest.raises(ValueError):
        parse_perm("11", 3)


def test_parse_tree_tripod():
    t = parse_tree("( 1 ( 2 3 ) )")
    assert t == LabeledTree(2, (1, 2))
    assert t == comb_basis_tree(2, (1,))
    assert str(t) == "(3 (1 2))"


def test_parse_tree_errors():
    for bad in ("(1 (2 2))", "(1 (2 4))", "(1 2 3 4)", "((1 2 3) 4)", "(1 (2 3)"):
        with pytest.raises(ValueError):
            parse_tree(bad)


def test_parse_roundtrip_of_comb():
    for n in (2, 3, 4):
        for s in perms(n):
            comb = comb_basis_tree(n, s)
            assert parse_tree(str(comb)) == comb


def test_parse_vertex_form_matches_edge_form():
    # a top-level triple is the vertex with that cyclic order
    assert parse_tree("(1 2 3)") == parse_tree("(3 (1 2))")
    # rotating the triple is the same cyclic order
    assert parse_tree("(2 3 1)") == parse_tree("(1 2 3)")


def test_reduce_examples():
    for n in (2, 3, 4):
        for s in perms(n):
            comb = comb_basis_tree(n, s)
            assert reduce_to_basis(comb) == TreeVector.unit(n, s)
            assert reduce_to_basis(comb.flip("")) == -TreeVector.unit(n, s)
            if n > 2:
                assert reduce_to_basis(comb.flip("R")) == -TreeVector.unit(n, s)
    with pytest.raises(ValueError):
        comb_basis_tree(2, (1,)).flip("R")


def test_h_tree():
    h = parse_tree("((1 3) (2 4))")
    v = reduce_to_basis(h)
    assert v == expansion_coordinates(h)
    assert v.coords == (0, -1)


def test_ihx_relation():
    # [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 inside any tree, the Jacobi form of IHX
    n = 4
    a, b, c = 1, 2, 3
    terms = [(1, LabeledTree(n, ((a, (b, c)), 4))),
             (1, LabeledTree(n, ((b, (c, a)), 4))),
             (1, LabeledTree(n, ((c, (a, b)), 4)))]
    assert reduce_to_basis(terms) == TreeVector.zero(n)


def test_combination_input_and_errors():
    t = comb_basis_tree(3, (1, 2))
    assert reduce_to_basis([(2, t), (-1, t)]) == TreeVector.unit(3, (1, 2))
    assert reduce_to_basis({t: 3}) == 3 * TreeVector.unit(3, (1, 2))
    with pytest.raises(ValueError):
        reduce_to_basis([])
    with pytest.raises(KeyError):
        reduce_to_basis(t, strategy="sideways")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tree_count(n):
    catalan = math.comb(2 * (n - 1), n - 1) // n
    assert len(all_trees(n)) == math.factorial(n) * catalan


@pytest.mark.parametrize("n", [2, 3, 4])
def test_strategies_agree_with_oracle(n):
    for t in all_trees(n):
        v = reduce_to_basis(t, "outer")
        assert v == reduce_to_basis(t, "inner") == expansion_coordinates(t)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rank_is_factorial(n):
    rows = [reduce_to_basis(t).coords for t in all_trees(n)]
    assert integer_rank(rows) == math.factorial(n - 1)


def test_sym_square_examples():
    k = perms(3)
    z = sym_square(TreeVector.zero(3))
    assert z.flat() == (0, 0, 0)
    assert sym_square(TreeVector.unit(3, k[0])).flat() == (1, 0, 0)
    x = 2 * TreeVector.unit(3, k[0]) + TreeVector.unit(3, k[1])
    assert sym_square(x).flat() == (4, 1, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sym_square_rank(n):
    units = [TreeVector.unit(n, s) for s in perms(n)]
    vecs = units + [a + b for a, b in itertools.combinations(units, 2)]
    assert integer_rank(sym_square(v).flat() for v in vecs) == sym_square_rank(n)
    assert sym_square_rank(n) == math.factorial(n - 1) * (math.factorial(n - 1) + 1) // 2


coords = st.lists(st.integers(-5, 5), min_size=6, max_size=6).map(lambda c: TreeVector(4, tuple(c)))


@given(coords, coords)
def test_sym_square_polarization(x, y):
    # q(x+y) - q(x) - q(y) has zero ½t² part and is even on the diagonal scale
    d = sym_square(x + y) - sym_square(x) - sym_square(y)
    assert all(v % 2 == 0 for v in d.diag)
    assert sym_square(-x) == sym_square(x)


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_as_flip_negates(seed):
    import random
    rng = random.Random(seed)
    t = rng.choice(all_trees(4))
    path = ""
    node = t.bracket
    while not isinstance(node, int) and rng.random() < 0.6:
        step = rng.choice("LR")
        nxt = node[0] if step == "L" else node[1]
        if isinstance(nxt, int):
            break
        path += step
        node = nxt
    assert reduce_to_basis(t.flip(path)) == -reduce_to_basis(t)
