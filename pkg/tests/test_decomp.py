
from modvertex._oracles import idempotent_summand_dims
from modvertex.constructions import named_subgroups, natural_modules, six_point_data, three_block_summand_bases
from modvertex.decomp import composition_factor_dims, decompose, is_indecomposable, is_simple
from modvertex.field import GF2
from modvertex.gmod import direct_sum, extend_module, regular_module, restrict, trivial_module
from modvertex.linalg import Subspace
from modvertex.verify import small_test_modules


def test_locality_examples():
    E10 = natural_modules(10).E
    cert = is_indecomposable(restrict(E10, named_subgroups(10).Q))
    assert cert.verdict == "local"
    data = six_point_data()
    cert = is_indecomposable(restrict(natural_modules(6).E, data.Q))
    assert cert.verdict == "local" and cert.residue_degree == 2


def test_split_witness_and_uniserial():
    nm = natural_modules(8)
    assert is_indecomposable(nm.M).verdict == "local"
    V = direct_sum(nm.M1, trivial_module(nm.M.group))
    cert = is_indecomposable(V)
    assert cert.verdict == "splits" and cert.check()


def test_decompose_examples():
    nm14 = natural_modules(14)
    dec = decompose(restrict(nm14.E, named_subgroups(14).Y_alt))
    assert sorted(dec.dims) == [4, 8]
    assert dec.verify()
    E10 = natural_modules(10).E
    dec = decompose(restrict(E10, named_subgroups(10).X))
    assert dec.dims == [4, 4]


def test_three_block_summands_span():
    nm = natural_modules(14)
    dec = decompose(restrict(nm.E, named_subgroups(14).Y_alt))
    b1, b2 = three_block_summand_bases(14)
    imgs = [Subspace.span([nm.gamma_to_D(v) for v in b]) for b in (b1, b2)]
    got = sorted(Subspace.span(i.entries).dim for i in dec.inclusions)
    assert got == sorted(s.dim for s in imgs)


def test_six_point_escalation():
    data = six_point_data()
    res = restrict(natural_modules(6).E, data.Q)
    dec2 = decompose(res, 1)
    assert dec2.dims == [4] and not dec2.absolutely_indecomposable
    dec4 = decompose(res, 2)
    assert dec4.escalated and dec4.field_used == data.field
    assert sorted(dec4.dims) == [2, 2]
    U = Subspace.span(data.U_basis, data.field)
    V = Subspace.span(data.V_basis, data.field)
    pieces = [Subspace.span(i.entries, data.field) for i in dec4.inclusions]
    assert sorted(p.dim for p in pieces) == [2, 2]
    assert (pieces[0] + pieces[1]).dim == 4
    assert all(p.intersect(U + V).dim == 2 for p in pieces)


def test_simplicity_examples():
    assert is_simple(natural_modules(10).E)
    assert not is_simple(natural_modules(10).M)
    data = six_point_data()
    E4 = extend_module(natural_modules(4).D, data.field)
    from modvertex.constructions import alt_group
    assert not is_simple(restrict(E4, alt_group(4)))


def test_composition_factors():
    assert composition_factor_dims(natural_modules(10).M) == [1, 1, 8]
    assert composition_factor_dims(natural_modules(7).M) == [1, 6]
    assert composition_factor_dims(natural_modules(9).E) == [8]


def test_regular_module_is_local():
    X = named_subgroups(8).X
    cert = is_indecomposable(regular_module(X))
    assert cert.verdict == "local" and cert.residue_degree == 1


def test_decomp_matches_idempotent_oracle():
    bad = []
    for i, V in enumerate(small_test_modules(seed=99, count=50)):
        got = sorted(decompose(V, 1).dims)
        want = idempotent_summand_dims([a.tolist() for a in V.gen_arrays], GF2)
        if got != want:
            bad.append((i, got, want))
    assert bad == []


def test_small_modules_cover_group_orders():
    orders = {V.group.order() for V in small_test_modules(seed=1, count=60)}
    assert max(orders) <= 16 and len(orders) >= 3
