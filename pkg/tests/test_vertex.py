import numpy as np
import pytest

from modvertex.config import Config
from modvertex.constructions import named_subgroups, natural_modules, six_point_data
from modvertex.errors import BudgetError, DomainError
from modvertex.gmod import endomorphisms, extend_module, regular_module, restrict
from modvertex.linalg import Matrix
from modvertex.perm import (alternating_group, group_from_gens, perm_parse, right_transversal,
                            trivial_group)
from modvertex.vertex import (is_rel_projective, rel_trace, vertex_candidate,
                              vertex_of_natural_simple, vertex_source_pgroup)


def order2_subgroups_of_Q():
    gens = ["(1,2)(3,4)", "(3,4)(5,6)", "(1,2)(5,6)"]
    return [group_from_gens([perm_parse(g, 6)], 6) for g in gens]


def test_rel_trace_examples():
    V = restrict(natural_modules(8).E, named_subgroups(8).Q)
    phi = Matrix.from_entries(endomorphisms(V)[0])
    assert rel_trace(V, V.group, phi, [V.group.identity()]) == phi
    ns = named_subgroups(8)
    reps = right_transversal(ns.Q, ns.B_alt, 10)
    ident = Matrix.identity(V.dim)
    assert rel_trace(V, ns.B_alt, ident, reps).is_zero()
    G = V.group
    tr = rel_trace(V, ns.B_alt, Matrix.from_entries(endomorphisms(restrict(V, ns.B_alt))[1]), reps)
    for g in G.generators:
        A = V.action(g)
        assert A @ tr == tr @ A


def test_rel_trace_rejects_non_endomorphism():
    V = restrict(natural_modules(8).E, named_subgroups(8).Q)
    bad = np.zeros((V.dim, V.dim), dtype=np.uint8)
    bad[0, 1] = 1
    with pytest.raises(DomainError):
        rel_trace(V, V.group, bad, [V.group.identity()])


def test_not_projective_relative_to_base_group():
    ns = named_subgroups(8)
    V = restrict(natural_modules(8).E, ns.Q)
    ok, rec = is_rel_projective(V, ns.B_alt)
    assert not ok and rec.index == 2


def test_rel_projective_examples():
    E10 = natural_modules(10).E
    ok, rec = is_rel_projective(E10, named_subgroups(10).Q)
    assert ok and rec.index % 2 == 1 and "odd index" in rec.method
    data = six_point_data()
    E6 = natural_modules(6).E
    ok, rec = is_rel_projective(E6, data.Q)
    assert ok and rec.index == 90
    assert rec.trace_preimage is not None
    for C in order2_subgroups_of_Q():
        assert not is_rel_projective(E6, C)[0]


def test_rel_projective_budget_and_domain():
    E6 = natural_modules(6).E
    with pytest.raises(BudgetError):
        is_rel_projective(E6, six_point_data().Q, budget=10)
    with pytest.raises(DomainError):
        is_rel_projective(E6, group_from_gens([perm_parse("(1,2)", 6)], 6))


def test_descent_examples():
    data = six_point_data()
    V = restrict(extend_module(natural_modules(6).E, data.field), data.Q6)
    res = vertex_source_pgroup(V)
    assert res.vertex_order == 4 and res.source.dim == 2
    ns = named_subgroups(8)
    V8 = restrict(natural_modules(8).E, ns.Q)
    res = vertex_source_pgroup(V8)
    assert res.vertex.equals(ns.Q) and res.source.dim == 6
    assert len(res.steps) == 1 and res.steps[0].accepted is None
    C2 = group_from_gens([perm_parse("(1,2)", 2)], 2)
    res = vertex_source_pgroup(regular_module(C2))
    assert res.vertex_order == 1 and res.source.dim == 1


def test_descent_needs_2group():
    with pytest.raises(DomainError):
        vertex_source_pgroup(natural_modules(5).E)


def test_vertex_n9():
    rep = vertex_of_natural_simple(9)
    assert rep.ok
    assert rep.vertex_order == 8 and rep.trivial_source and rep.source_dim == 1
    assert rep.conjugacy.conjugate


def test_vertex_n10():
    rep = vertex_of_natural_simple(10)
    assert rep.ok
    assert rep.vertex_order == 128 and rep.source_dim == 8 and not rep.trivial_source
    assert rep.vertex.equals(named_subgroups(10).Q)
    assert rep.restriction_indecomposable


def test_vertex_n6():
    rep = vertex_of_natural_simple(6)
    assert rep.ok
    assert rep.vertex_order == 4 and rep.source_dim == 2 and rep.field_degree == 2
    C, label = vertex_candidate(6)
    assert C.order() == 4 and "(1,2)(3,4)" in label


def test_vertex_budget_gives_incomplete_report():
    rep = vertex_of_natural_simple(8, Config(budget_cosets=1))
    assert rep.incomplete is not None and not rep.ok


def test_vertex_bad_n():
    with pytest.raises(DomainError):
        vertex_of_natural_simple(2)


def test_odd_index_shortcut_for_trivial_subgroup_is_budgeted():
    E5 = natural_modules(5).E
    with pytest.raises(BudgetError):
        is_rel_projective(E5, trivial_group(5), budget=59)
    assert is_rel_projective(E5, group_from_gens([perm_parse("(1,2)(3,4)", 5),
                                                   perm_parse("(1,3)(2,4)", 5)], 5))[0]
    assert alternating_group(5).order() == 60
