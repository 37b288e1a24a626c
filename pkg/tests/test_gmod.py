import numpy as np
import pytest

from modvertex.constructions import (distinguished_vectors, named_subgroups, natural_modules,
                                     six_point_data, sylow_alt_group, young_alt_sym_groups)
from modvertex.decomp import decompose
from modvertex.errors import DomainError
from modvertex.field import GF2
from modvertex.gmod import (direct_sum, endo_algebra, endomorphisms, extend_module, hom_dim,
                            induce, is_intertwiner, iso_test, module_from_matrices, norm_operator,
                            permutation_module, quotient, radical_pgroup, regular_module, restrict,
                            socle_pgroup, submodule, trivial_module, trivial_summand_test)
from modvertex.linalg import Matrix, Subspace, kernel
from modvertex.perm import group_from_gens, perm_parse, trivial_group


def D_span(nm, keys, dv):
    return Subspace.span([nm.gamma_to_D(dv[k]) for k in keys])


def test_module_homomorphism_property():
    for n in (5, 6, 8):
        nm = natural_modules(n)
        for V in (nm.M, nm.D, nm.E):
            assert V.check_homomorphism(words=4, length=5, seed=n)


def test_module_from_matrices_validates():
    G = group_from_gens([perm_parse("(1,2)", 2)], 2)
    with pytest.raises(DomainError):
        module_from_matrices(G, [Matrix.identity(2), Matrix.identity(2)])


def test_restrict_examples():
    E = natural_modules(10).E
    X = named_subgroups(10).X
    dec = decompose(restrict(E, X), 1)
    assert dec.dims == [4, 4]
    R = regular_module(X)
    assert all(iso_test(W, R).status == "isomorphic" for W in dec.summands)
    T = restrict(E, trivial_group(10))
    assert T.dim == E.dim and T.gen_actions == ()
    E14 = natural_modules(14).E
    assert socle_pgroup(restrict(E14, named_subgroups(14).Y_alt)).dim == 2


def test_induce_examples():
    data = six_point_data()
    E6 = extend_module(natural_modules(6).E, data.field)
    U = submodule(restrict(E6, data.Q), data.U_basis)
    ind = induce(U, data.Q6, 100)
    assert ind.dim == 4
    res = iso_test(ind, restrict(E6, data.Q6))
    assert res.status == "isomorphic"
    assert is_intertwiner(ind, restrict(E6, data.Q6), res.matrix.entries)
    X = named_subgroups(8).X
    Q = named_subgroups(8).Q
    assert induce(regular_module(X), Q, 100).dim == Q.order()
    C2 = group_from_gens([perm_parse("(1,2)", 4)], 4)
    K4 = group_from_gens([perm_parse("(1,2)", 4), perm_parse("(3,4)", 4)], 4)
    assert iso_test(induce(regular_module(C2), K4, 10), regular_module(K4)).status == "isomorphic"


def test_norm_operator_examples():
    nm = natural_modules(14)
    ns = named_subgroups(14)
    dv = distinguished_vectors(14)
    N = norm_operator(nm.D, ns.y_alt[0])
    assert kernel(N).dim == nm.D.dim - 1
    assert Subspace.span(N) == D_span(nm, ["1"], dv)
    one = norm_operator(nm.D, ns.y_alt[-1])
    assert one.is_identity() and kernel(one).dim == 0
    nm12 = natural_modules(12)
    x4 = named_subgroups(12).x[1]
    assert kernel(norm_operator(nm12.D, x4)).dim == nm12.D.dim - 2


def test_socle_examples():
    nm14, dv14 = natural_modules(14), distinguished_vectors(14)
    soc = socle_pgroup(restrict(nm14.E, named_subgroups(14).Y_alt))
    assert soc == D_span(nm14, ["1", "2"], dv14)
    nm12, dv12 = natural_modules(12), distinguished_vectors(12)
    soc = socle_pgroup(restrict(nm12.E, named_subgroups(12).Y_alt))
    assert soc == D_span(nm12, ["0", "1"], dv12)
    nm10, dv10 = natural_modules(10), distinguished_vectors(10)
    Y = named_subgroups(10).Y_alt
    res = restrict(nm10.E, Y)
    assert socle_pgroup(res) == D_span(nm10, ["1"], dv10)
    assert iso_test(res, regular_module(Y)).status == "isomorphic"


def test_radical_of_regular_module():
    X = named_subgroups(8).X
    R = regular_module(X)
    assert radical_pgroup(R).dim == R.dim - 1
    with pytest.raises(DomainError):
        socle_pgroup(natural_modules(5).E)


def test_hom_space_examples():
    nm = natural_modules(10)
    H_alt = young_alt_sym_groups(10)["H_alt"]
    assert endomorphisms(restrict(nm.E, H_alt)).shape[0] == 5
    assert endomorphisms(nm.E).shape[0] == 1
    for n in (6, 8):
        M = natural_modules(n).M
        assert hom_dim(trivial_module(M.group), M) == 1


def test_endo_algebra_examples():
    nm = natural_modules(10)
    alg = endo_algebra(restrict(nm.E, young_alt_sym_groups(10)["H_alt"]))
    assert alg.is_commutative()
    C2 = group_from_gens([perm_parse("(1,2)", 2)], 2)
    assert endo_algebra(regular_module(C2)).dim == 2


def test_iso_test_examples():
    E = natural_modules(8).E
    assert iso_test(E, E).status == "isomorphic"
    Q = named_subgroups(8).Q
    M = permutation_module(Q)
    T = direct_sum(trivial_module(Q), quotient(M, np.ones((1, 8), dtype=np.uint8)))
    res = iso_test(M, T)
    assert res.status == "non-isomorphic"


def test_trivial_summand_examples():
    E7 = natural_modules(7).E
    assert trivial_summand_test(restrict(E7, sylow_alt_group(4, 7)))
    # the group algebra of a nontrivial 2-group is indecomposable: no trivial summand
    Q4 = sylow_alt_group(4, 4)
    assert not trivial_summand_test(regular_module(Q4))
    assert trivial_summand_test(direct_sum(regular_module(Q4), trivial_module(Q4)))
    E8 = natural_modules(8).E
    assert not trivial_summand_test(restrict(E8, named_subgroups(8).Q))


def test_extend_module_keeps_action():
    E = natural_modules(6).E
    E4 = extend_module(E, six_point_data().field)
    g = perm_parse("(1,2,3)", 6)
    assert np.array_equal(E4.action_array(g), E.action_array(g))
    assert E4.field.k == 2 and E.field == GF2
