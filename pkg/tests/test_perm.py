import random

import pytest
from hypothesis import given, strategies as st

from modvertex._oracles import closure_order
from modvertex.constructions import named_subgroups, sylow_alt, sylow_sym, w_gen
from modvertex.errors import BudgetError, ParseError
from modvertex.perm import (CosetTable, Perm, alternating_group, conj, conjugacy_witness,
                            derived_subgroup, elements, fixed_points, frattini_2group,
                            group_from_gens, maximal_subgroups_containing, orbit_partition,
                            perm_mul, perm_parse, right_transversal, symmetric_group, trivial_group)


def P(text, n):
    return perm_parse(text, n)


def test_parse_and_print():
    g = P("(1,3,2,4)", 4)
    assert str(g) == "(1,3,2,4)"
    assert perm_parse("[2,1,4,3]") == P("(1,2)(3,4)", 4)
    assert P("()", 3).is_identity()
    for bad in ("(1,2", "(a,b)", "[1,1,2]"):
        with pytest.raises(ParseError):
            perm_parse(bad)
    with pytest.raises(ParseError):
        perm_parse("(1,5)", 4)


def test_multiplication_examples():
    t = P("(1,2)", 4)
    assert perm_mul(t, t).is_identity()
    w4, w2 = P("(1,3)(2,4)", 4), P("(1,2)", 4)
    assert perm_mul(w4, w2) == P("(1,3,2,4)", 4)
    w8 = w_gen(3, 0, 8)
    w2 = w_gen(1, 0, 8)
    assert conj(w2, w8) == P("(5,6)", 8)
    assert w2 * conj(w2, w8) == P("(1,2)(5,6)", 8)


def test_left_to_right_composition():
    g, h = P("(1,2)", 3), P("(2,3)", 3)
    # 1 -g-> 2 -h-> 3
    assert (g * h).image(0) == 2


def test_group_orders():
    assert group_from_gens(sylow_alt(8), 8).order() == 64
    assert group_from_gens(sylow_sym(14), 14).order() == 2 ** 11
    assert group_from_gens([P("(1,2,3)", 3), P("(1,2)", 3)], 3).order() == 6


def test_elements_examples():
    Q4 = group_from_gens(sylow_alt(4), 4)
    got = {str(g) for g in elements(Q4, 100)}
    assert got == {"()", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"}
    assert [str(g) for g in elements(trivial_group(5), 1)] == ["()"]
    X8 = group_from_gens([P("(1,3,2,4)(5,7,6,8)", 8)], 8)
    assert len(list(elements(X8, 10))) == 4
    with pytest.raises(BudgetError):
        list(elements(symmetric_group(6), 100))


def test_derived_subgroup_examples():
    P4 = group_from_gens([P("(1,2)", 4), P("(1,3)(2,4)", 4)], 4)
    D = derived_subgroup(P4)
    assert D.order() == 2 and D.contains(P("(1,2)(3,4)", 4))
    ns = named_subgroups(14)
    assert derived_subgroup(ns.Y_alt).order() == 1
    ns8 = named_subgroups(8)
    assert derived_subgroup(ns8.P).order() == 2 * derived_subgroup(ns8.Q).order()


def test_frattini_examples():
    P4 = group_from_gens([P("(1,2)", 4), P("(1,3)(2,4)", 4)], 4)
    F = frattini_2group(P4)
    assert F.order() == 2 and F.contains(P("(1,2)(3,4)", 4))
    ns = named_subgroups(14)
    assert ns.frattini_Q().equals(ns.frattini_P())
    assert frattini_2group(group_from_gens([P("(1,2)", 2)], 2)).order() == 1


def test_maximal_subgroups_examples():
    ns = named_subgroups(8)
    S = ns.embedded_Q(4)
    from modvertex.perm import closure_with
    over = closure_with(S, ns.frattini_Q().generators)
    found = maximal_subgroups_containing(ns.Q, over)
    assert len(found) == 3
    assert any(R.equals(ns.B_alt) for R in found)
    P4 = group_from_gens([P("(1,2)", 4), P("(1,3)(2,4)", 4)], 4)
    assert len(maximal_subgroups_containing(P4)) == 3
    assert maximal_subgroups_containing(P4, P4) == []
    for R in found:
        assert R.order() * 2 == ns.Q.order()


def test_right_transversal_examples():
    A4 = alternating_group(4)
    V4 = group_from_gens(sylow_alt(4), 4)
    assert len(right_transversal(A4, V4, 100)) == 3
    ns = named_subgroups(8)
    assert len(right_transversal(ns.Q, ns.B_alt, 100)) == 2
    A6 = alternating_group(6)
    K = group_from_gens([P("(1,2)(3,4)", 6), P("(3,4)(5,6)", 6)], 6)
    reps = right_transversal(A6, K, 1000)
    assert len(reps) == 90 and reps[0].is_identity()
    table = CosetTable(A6, K, 1000)
    assert len({table.coset_of(r) for r in reps}) == 90
    with pytest.raises(BudgetError):
        right_transversal(A6, K, 10)


def test_orbits_examples():
    G = group_from_gens([P("(1,2)(3,4)", 6)], 6)
    assert fixed_points(G) == {5, 6}
    Q8 = group_from_gens(sylow_alt(8), 8)
    assert orbit_partition(Q8) == [list(range(1, 9))]
    gens = [g for g in sylow_alt(8) if str(g) != "(1,3)(2,4)"]
    parts = orbit_partition(group_from_gens(gens, 8))
    assert not any(1 in o and 3 in o for o in parts)


def test_conjugacy_examples():
    A6 = alternating_group(6)
    K = group_from_gens([P("(1,2)(3,4)", 6), P("(3,4)(5,6)", 6)], 6)
    same = conjugacy_witness(A6, K, K, 1000)
    assert same.conjugate and same.witness.is_identity()
    g = P("(1,5,3)", 6)
    K2 = group_from_gens([conj(h, g) for h in K.generators], 6)
    res = conjugacy_witness(A6, K2, K, 1000)
    assert res.conjugate and res.mode == "witness"
    assert all(K.contains(conj(h, res.witness)) for h in K2.generators)
    A9 = alternating_group(9)
    Q6 = group_from_gens(sylow_alt(6, 9), 9)
    moved = group_from_gens([conj(h, P("(1,9,8)", 9)) for h in Q6.generators], 9)
    res = conjugacy_witness(A9, moved, Q6, 1 << 20)
    assert res.conjugate and res.mode == "witness"


def test_cycle_type_parity():
    g = P("(1,2,3)(4,5)", 6)
    assert g.cycle_type() == (3, 2)
    assert not g.is_even() and g.order() == 6


perms = st.integers(2, 9).flatmap(lambda n: st.permutations(range(n)).map(Perm))


@given(perms, st.data())
def test_group_axioms(g, data):
    n = g.n
    h = data.draw(st.permutations(range(n)).map(Perm))
    k = data.draw(st.permutations(range(n)).map(Perm))
    assert (g * h) * k == g * (h * k)
    assert (g * g.inverse()).is_identity()
    assert (g * h).is_even() == (g.is_even() == h.is_even())
    assert perm_parse(str(g), n) == g


@given(st.integers(0, 10**6))
def test_order_matches_closure(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    gens = []
    for _ in range(rng.randint(1, 3)):
        imgs = list(range(n))
        rng.shuffle(imgs)
        gens.append(Perm(imgs))
    G = group_from_gens(gens, n)
    assert G.order() == closure_order([g.images for g in gens], n)
    h = G.random_element(rng)
    assert G.contains(h)
