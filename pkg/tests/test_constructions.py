import numpy as np
import pytest

from modvertex.constructions import (case_tag, distinguished_vectors, three_block_summand_bases, named_subgroups,
                                     natural_modules, two_block_endo_basis, six_point_data, sylow_alt,
                                     sylow_sym, three_maximal_over_base, top_quotient_image,
                                     two_adic_profile, young_alt_sym_groups)
from modvertex.errors import DomainError
from modvertex.gmod import is_intertwiner, restrict
from modvertex.linalg import Subspace
from modvertex.perm import derived_subgroup, group_from_gens, perm_parse


def strs(gens):
    return [str(g) for g in gens]


@pytest.mark.parametrize("n,parts", [(14, (8, 4, 2)), (8, (8,)), (12, (8, 4)), (30, (16, 8, 4, 2))])
def test_two_adic_profile(n, parts):
    assert two_adic_profile(n).parts == parts


def test_case_tags():
    tags = {n: case_tag(n) for n in range(3, 31)}
    assert tags[3] == "n3" and tags[4] == "n4" and tags[6] == "n6"
    assert all(tags[n] == "odd" for n in range(5, 31, 2))
    assert tags[8] == tags[16] == "two_power"
    assert tags[10] == tags[18] == "nl2_l2"
    assert tags[12] == tags[20] == "nl_gt2"
    assert tags[14] == tags[22] == "nl2_l3"
    assert tags[30] == "nl2_lge4"


def test_sylow_sym_generators():
    assert strs(sylow_sym(8)) == ["(1,2)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"]
    g14 = strs(sylow_sym(14))
    assert len(g14) == 6 and "(9,10)" in g14 and "(13,14)" in g14
    assert strs(sylow_sym(2)) == ["(1,2)"]


def test_sylow_alt_generators():
    assert strs(sylow_alt(8)) == ["(1,2)(5,6)", "(1,3)(2,4)", "(1,5)(2,6)(3,7)(4,8)"]
    g14 = strs(sylow_alt(14))
    assert len(g14) == 5 and "(9,10)(13,14)" in g14
    assert group_from_gens(sylow_alt(4), 4).order() == 4


@pytest.mark.parametrize("n", range(4, 21, 2))
def test_sylow_orders(n):
    v = sum(n // 2 ** i for i in range(1, 6))
    P = group_from_gens(sylow_sym(n), n)
    Q = group_from_gens(sylow_alt(n), n)
    assert P.order() == 2 ** v
    assert Q.order() * 2 == P.order()
    assert all(g.is_even() for g in sylow_alt(n))


def test_named_subgroups_examples():
    ns = named_subgroups(8)
    assert ns.y[0].cycle_type() == (8,)
    assert ns.x[0] == perm_parse("(1,3,2,4)(5,7,6,8)", 8)
    ns14 = named_subgroups(14)
    assert ns14.Y_alt.order() == 32 and ns14.Y.order() == 64
    assert derived_subgroup(ns14.Y).order() == 1
    assert ns14.X.is_subgroup_of(ns14.frattini_Q())
    for yj, nj in zip(ns14.y, ns14.profile.parts):
        assert yj.cycle_type() == (nj,)


def test_two_power_identity_n8():
    ns = named_subgroups(8)
    from modvertex.perm import closure_with
    lhs = closure_with(ns.embedded_Q(6), ns.frattini_Q().generators)
    B_cap_Q = group_from_gens([g for g in ns.B.generators if g.is_even()] +
                              [a * b for a in ns.B.generators for b in ns.B.generators
                               if not a.is_even() and not b.is_even()], 8)
    assert lhs.equals(B_cap_Q)
    assert lhs.equals(ns.B_alt)


def test_natural_modules_dims():
    nm = natural_modules(10)
    assert (nm.M.dim, nm.M1.dim, nm.D.dim) == (10, 9, 8)
    nm7 = natural_modules(7)
    assert nm7.D.dim == nm7.M1.dim == 6
    M1 = Subspace.span(nm7.M1_basis)
    assert (M1 + Subspace.span(nm7.M2_row)).dim == 7


def test_six_point_matrix_matches_D_action():
    nm = natural_modules(6)
    data = six_point_data()
    g = perm_parse("(3,4)(5,6)", 6)
    assert np.array_equal(nm.D.action_array(g), data.action_D["(3,4)(5,6)"].entries)


def test_distinguished_vectors():
    dv = distinguished_vectors(6)
    assert dv["1'"].tolist() == [1, 1, 0, 0, 0, 0]
    assert dv["1''"].tolist() == [0, 0, 1, 1, 0, 0]
    for n in (10, 12, 14, 30):
        dv = distinguished_vectors(n)
        l = two_adic_profile(n).l
        total = np.zeros(n, dtype=np.uint8)
        for j in range(1, l + 1):
            total ^= dv[str(j)]
        assert np.array_equal(total, dv["+"])
    nm = natural_modules(10)
    assert not Subspace.span(nm.M1_basis).contains_vector(distinguished_vectors(10)["0"])


def test_top_quotient_image():
    ns = named_subgroups(14)
    assert top_quotient_image(ns.Q, 0, ns.profile) == 2
    for j in range(2):
        assert top_quotient_image(ns.B, j, ns.profile) == 1
    ns10 = named_subgroups(10)
    R1p = three_maximal_over_base(10)["R1'"]
    assert top_quotient_image(R1p, 0, ns10.profile) == 2
    with pytest.raises(DomainError):
        top_quotient_image(ns.Q, 2, ns.profile)


def test_three_block_summand_bases():
    nm = natural_modules(14)
    b1, b2 = three_block_summand_bases(14)
    assert len(b1) == 8 and len(b2) == 4
    S1, S2 = Subspace.span(b1), Subspace.span(b2)
    assert S1.dim == 8 and S2.dim == 4
    assert S1 + S2 + Subspace.span(nm.M2_row) == Subspace.span(nm.M1_basis)
    c1, c2 = three_block_summand_bases(22)
    assert len(c1) == 16 and len(c2) == 4
    with pytest.raises(DomainError):
        three_block_summand_bases(12)


def test_two_block_endo_basis():
    phi = two_block_endo_basis(10)
    assert (phi[0] + phi[1]).is_identity()
    assert (phi[2] @ phi[4]).is_zero()
    assert phi[0] @ phi[2] == phi[2]
    E = natural_modules(10).E
    AA = young_alt_sym_groups(10)["AA"]
    res = restrict(E, AA)
    for p in phi:
        assert is_intertwiner(res, res, p.entries)


def test_six_point_data():
    data = six_point_data()
    assert data.Q6.order() == 8
    assert not all(a * b == b * a for a in data.Q6.generators for b in data.Q6.generators)
    assert data.U_basis.shape == data.V_basis.shape == (2, 4)
    U = Subspace.span(data.U_basis, data.field)
    V = Subspace.span(data.V_basis, data.field)
    assert (U + V).dim == 4


def test_sylow_alt_needs_four_points():
    with pytest.raises(DomainError):
        sylow_alt(2)
