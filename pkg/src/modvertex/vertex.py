"""Relative projectivity, vertices and sources.

Relative projectivity is decided by Higman's criterion: V is relatively
H-projective iff the identity lies in the image of the relative trace on
H-endomorphisms.  Over 2-groups, vertices are found by descending through
maximal subgroups (Green's indecomposability theorem makes each accepted step
halve the dimension).  For the natural simple module of an alternating group
the vertex is pinned down by a lower bound (vertices of the summands of the
restriction to a Sylow 2-subgroup) and a matching upper bound (a single
Higman test).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field

import numpy as np

from .config import Config
from .constructions import natural_modules, sylow_alt_group, sylow_sym_group
from .decomp import decompose, is_indecomposable
from .errors import BudgetError, DomainError, InconclusiveError
from .gmod import (GModule, endomorphisms, extend_module, induce, intertwiners, iso_test, restrict,
                   trivial_summand_test)
from .linalg import Matrix, inverse_arr, left_kernel_arr, mm
from .perm import (ConjugacyResult, CosetTable, Perm, PermGroup, alternating_group,
                   conjugacy_witness, frattini_data, group_from_gens, maximal_subgroups_containing,
                   symmetric_group)

TRACE_CHUNK = 4096


def _fmt_gens(G: PermGroup) -> list[str]:
    return [str(g) for g in G.generators]


def _check_endo(V: GModule, H: PermGroup, phis: np.ndarray):
    f = V.field
    for h in H.generators:
        A = V.action_array(h)
        if not np.array_equal(mm(A[None], phis, f), mm(phis, A[None], f)):
            raise DomainError("phi is not an endomorphism of the restriction")


def _conjugate_sum(V: GModule, reps, phis: np.ndarray, chunk: int = TRACE_CHUNK):
    """Sum over t in reps of A(t)^-1 phi A(t), for a stack of phis, plus a slice checksum."""
    f = V.field
    total = np.zeros_like(phis)
    digest = hashlib.sha256()
    for start in range(0, len(reps), chunk):
        part = np.zeros_like(phis)
        block = reps[start:start + chunk]
        digest.update(repr(block[0].images).encode())
        for t in block:
            A = V.action_array(t)
            Ai = inverse_arr(A, f)
            part ^= mm(mm(Ai[None], phis, f), A[None], f)
        total ^= part
    return total, digest.hexdigest()[:16]


def rel_trace(V: GModule, H: PermGroup, phi, transversal) -> Matrix:
    """Relative trace of an H-endomorphism over the given right transversal of H in V.group."""
    arr = phi.entries if isinstance(phi, Matrix) else np.asarray(phi, dtype=np.uint8)
    _check_endo(V, H, arr[None])
    total, _ = _conjugate_sum(V, list(transversal), arr[None])
    return Matrix.from_entries(total[0], V.field)


def _point_step_reps(typ: str, T: list[int], x: int, degree: int) -> list[Perm]:
    """Right transversal of the stabilizer of x in Sym/Alt(T): element i maps x to T[i]."""
    reps = []
    for y in T:
        img = list(range(degree))
        if y == x:
            reps.append(Perm(img))
            continue
        if typ == "sym":
            img[x], img[y] = y, x
        else:
            z = next(p for p in T if p not in (x, y))
            img[x], img[y], img[z] = y, z, x
        reps.append(Perm(img))
    return reps


def _group_on(typ: str, pts: list[int], degree: int) -> PermGroup:
    if typ == "alt":
        return alternating_group(len(pts), degree, points=pts)
    return symmetric_group(len(pts), degree, points=pts)


def _trace_stack(V: GModule, H: PermGroup, phis: np.ndarray, budget: int):
    """Tr_H^G applied to each phi, through point stabilizers when G is a full Sym/Alt."""
    G = V.group
    notes = []
    if G.kind is None:
        table = CosetTable(G, H, budget)
        total, ck = _conjugate_sum(V, table.reps, phis)
        return total, [f"direct transversal of {table.index} cosets"], [ck]
    typ, support = G.kind
    support = sorted(support)
    fixed = [p for p in support if all(h.images[p] == p for h in H.generators)]
    rest = [p for p in support if p not in set(fixed)]
    K = _group_on(typ, rest, G.degree)
    table = CosetTable(K, H, budget)
    total, ck = _conjugate_sum(V, table.reps, phis)
    notes.append(f"{table.index} cosets of H in {typ}({len(rest)})")
    checks = [ck]
    T = list(rest)
    for x in reversed(fixed):
        T = sorted(T + [x])
        if typ == "alt" and len(T) < 3:
            continue
        reps = _point_step_reps(typ, T, x, G.degree)
        total, ck = _conjugate_sum(V, reps, total)
        notes.append(f"{len(reps)} cosets of a point stabilizer in {typ}({len(T)})")
        checks.append(ck)
    return total, notes, checks


@dataclass
class HigmanRecord:
    """Evidence for (or against) relative H-projectivity of a module."""

    group: str
    subgroup: list
    subgroup_order: int
    index: int
    projective: bool
    method: str
    combination: list | None = None
    trace_preimage: Matrix | None = None
    checksums: list = dc_field(default_factory=list)

    def as_dict(self) -> dict:
        return {"group": self.group, "subgroup": self.subgroup,
                "subgroup_order": self.subgroup_order, "index": self.index,
                "projective": self.projective, "method": self.method,
                "combination": self.combination, "checksums": self.checksums}


def _identity_combination(traces: np.ndarray, d: int, field) -> list | None:
    """Coefficients c with sum c_i traces[i] = identity, or None."""
    s = traces.shape[0]
    if s == 0:
        return None
    flat = traces.reshape(s, -1)
    target = np.eye(d, dtype=np.uint8).reshape(1, -1)
    # a left-kernel vector of [flat; target] with last coordinate 1 gives c
    K = left_kernel_arr(np.concatenate([flat, target]), field)
    for row in K:
        if row[-1]:
            inv = field.inv(int(row[-1]))
            return [int(field.mul(inv, int(v))) for v in row[:-1]]
    return None


def is_rel_projective(V: GModule, H: PermGroup, budget: int = 50_000_000):
    """Higman's criterion for V relative to H <= V.group; returns (bool, HigmanRecord)."""
    G = V.group
    if G.order() % H.order():
        raise DomainError("H is not a subgroup of G (order does not divide)")
    if not H.is_subgroup_of(G):
        raise DomainError("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > budget:
        raise BudgetError("coset index", index, budget)
    f, d = V.field, V.dim
    rec = dict(group=G.name or repr(G), subgroup=_fmt_gens(H), subgroup_order=H.order(),
               index=index)
    if index % 2 == 1:
        eye = Matrix.identity(d, f)
        return True, HigmanRecord(**rec, projective=True, method="odd index: Tr(id) = [G:H] id",
                                  combination=[1], trace_preimage=eye)
    basis = endomorphisms(restrict(V, H))
    traces, notes, checks = _trace_stack(V, H, basis, budget)
    comb = _identity_combination(traces, d, f)
    method = "; ".join(notes)
    if comb is None:
        return False, HigmanRecord(**rec, projective=False, method=method, checksums=checks)
    pre = np.zeros((d, d), dtype=np.uint8)
    for c, b in zip(comb, basis):
        if c:
            pre ^= f.mul_table[c][b]
    return True, HigmanRecord(**rec, projective=True, method=method, combination=comb,
                              trace_preimage=Matrix.from_entries(pre, f), checksums=checks)


def index2_rel_projective(V: GModule, R: PermGroup, t: Perm, start: np.ndarray | None = None):
    """Higman's test for a subgroup R of index 2 with outside element t.

    ``start`` may hold a basis of a space known to contain End_R(V) (for
    instance the Frattini-subgroup endomorphisms), in which case only R's
    generators not already imposed need to be supplied through it.
    Returns (bool, combination or None).
    """
    f, d = V.field, V.dim
    if start is None:
        basis = endomorphisms(restrict(V, R))
    else:
        gens = R._cache.get("lifts", list(R.generators))
        arrs = [V.action_array(g) for g in gens]
        basis = intertwiners(arrs, arrs, f, d, d, start)
    A = V.action_array(t)
    Ai = inverse_arr(A, f)
    traces = basis ^ mm(mm(Ai[None], basis, f), A[None], f)
    comb = _identity_combination(traces, d, f)
    return comb is not None, comb


# ---------------------------------------------------------------------------
# descent over 2-groups


@dataclass
class DescentStep:
    group: list
    group_order: int
    tested: list                  # per maximal subgroup: (hyperplane, accepted)
    accepted: list | None = None  # generators of the accepted maximal subgroup
    summand_dim: int | None = None
    iso_details: str = ""

    @property
    def tested_count(self) -> int:
        return len(self.tested)

    def as_dict(self) -> dict:
        return {"group": self.group, "group_order": self.group_order,
                "tested": [{"hyperplane": h, "accepted": a} for h, a in self.tested],
                "accepted": self.accepted, "summand_dim": self.summand_dim,
                "iso": self.iso_details}


@dataclass
class DescentResult:
    vertex: PermGroup
    source: GModule
    steps: list
    module: GModule          # the input module, after any scalar extension

    @property
    def vertex_order(self) -> int:
        return self.vertex.order()


def vertex_source_pgroup(V: GModule, max_field_degree: int = 2, seed: int = 0,
                         budget: int = 50_000_000, check_input: bool = True) -> DescentResult:
    """Vertex and source of an indecomposable module over a 2-group by maximal-subgroup descent."""
    P = V.group
    if not P.is_2group():
        raise DomainError("descent needs a 2-group")
    if check_input:
        cert = is_indecomposable(V, seed)
        if cert.verdict == "unknown":
            raise InconclusiveError("indecomposability of the input is undecided")
        if cert.verdict == "splits":
            raise DomainError("descent needs an indecomposable module")
    cur = V
    root = V
    steps: list[DescentStep] = []
    while True:
        P = cur.group
        if P.order() == 1:
            steps.append(DescentStep(_fmt_gens(P), 1, []))
            break
        phi = frattini_data(P).phi
        start = endomorphisms(restrict(cur, phi))
        step = DescentStep(_fmt_gens(P), P.order(), [])
        steps.append(step)
        accepted = None
        for R in maximal_subgroups_containing(P):
            ok, _ = index2_rel_projective(cur, R, R._cache["outside"], start)
            step.tested.append((R._cache["hyperplane"], ok))
            if ok:
                accepted = R
                break
        if accepted is None:
            break
        R = accepted
        step.accepted = _fmt_gens(R)
        dec = decompose(restrict(cur, R), max_field_degree, seed)
        if dec.escalated:
            cur = extend_module(cur, dec.field_used)
            if len(steps) == 1:
                root = cur
        half = cur.dim // 2
        table = CosetTable(P, R, budget)
        chosen = None
        for W in dec.summands:
            if W.dim != half:
                continue
            res = iso_test(induce(W, P, budget, table), cur, seed)
            if res.status == "isomorphic":
                chosen, step.iso_details = W, res.details
                break
        if chosen is None:
            raise InconclusiveError("no summand of half dimension induces back to the module")
        step.summand_dim = chosen.dim
        cur = chosen
    return DescentResult(cur.group, cur, steps, root)


# ---------------------------------------------------------------------------
# the natural simple module of A_n


@dataclass
class Check:
    name: str
    status: str     # "pass" or "fail"
    details: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


def check(name: str, ok: bool, details: str = "") -> Check:
    return Check(name, "pass" if ok else "fail", details)


@dataclass
class VertexReport:
    label: str
    vertex: PermGroup | None
    vertex_order: int | None
    source: GModule | None
    source_dim: int | None
    trivial_source: bool | None
    conjugacy: ConjugacyResult | None
    upper_bound_proof: HigmanRecord | None
    lower_bound_proof: list
    checks: list
    expected: str = ""
    lower_order: int | None = None
    dim: int = 0
    restriction_indecomposable: bool | None = None
    field_degree: int = 1
    incomplete: str | None = None

    @property
    def ok(self) -> bool:
        return self.incomplete is None and all(c.status == "pass" for c in self.checks)


def natural_simple_module(n: int, max_field_degree: int = 2, seed: int = 0) -> GModule:
    """E over A_n; for n = 3, 4 one of the two one-dimensional pieces over GF(4)."""
    E = natural_modules(n).E
    if n >= 5:
        return E
    dec = decompose(E, max(max_field_degree, 2), seed)
    if dec.dims != [1, 1]:
        raise AssertionError(f"E for n={n} should split into two lines, got {dec.dims}")
    return dec.summands[0]


def sylow_of_alt(n: int) -> PermGroup:
    """Q_n for even n, Q_{n-1} on the first n-1 points for odd n."""
    return sylow_alt_group(n - (n % 2), n)


def vertex_candidate(n: int) -> tuple[PermGroup, str]:
    """The subgroup the vertex is expected to equal, with a description."""
    if n == 6:
        Q = group_from_gens([Perm.from_cycles([(1, 2), (3, 4)], 6),
                             Perm.from_cycles([(3, 4), (5, 6)], 6)], 6, name="Q")
        return Q, "<(1,2)(3,4),(3,4)(5,6)>"
    if n % 2:
        m = n - 3
        C = sylow_alt_group(m, n)
        return C, f"Sylow-2(A_{m})" if m >= 4 else "trivial group"
    return sylow_alt_group(n, n), ("Sylow-2(A_4)" if n == 4 else f"Q_{n}")


def _lower_bound(V: GModule, S: PermGroup, cap: int, seed: int, budget: int):
    res = restrict(V, S)
    dec = decompose(res, cap, seed)
    results = [vertex_source_pgroup(W, cap, seed, budget, check_input=False)
               for W in dec.summands]
    return dec, results


def vertex_of_module(V: GModule, S: PermGroup, C: PermGroup, config: Config | None = None,
                     expected: str = "") -> VertexReport:
    """Sandwich for an indecomposable G-module V: S a Sylow 2-subgroup, C the candidate vertex."""
    config = config or Config()
    cap, seed = config.field_degree, config.seed
    G = V.group
    checks: list[Check] = []
    rep = VertexReport(V.label, None, None, None, None, None, None, None, [], checks, expected,
                       dim=V.dim, field_degree=V.field.k)
    try:
        index = G.order() // C.order()
        if index > config.budget_cosets:
            raise BudgetError("coset index", index, config.budget_cosets)
        dec_s, lowers = _lower_bound(V, S, cap, seed, config.budget_cosets)
        rep.restriction_indecomposable = len(dec_s.summands) == 1
        rep.lower_bound_proof = [[s.as_dict() for s in r.steps] for r in lowers]
        best = max(lowers, key=lambda r: r.vertex_order)
        rep.lower_order = best.vertex_order
        checks.append(check("lower bound: summand vertices",
                            True, f"summand dims {dec_s.dims}, vertex orders "
                                  f"{[r.vertex_order for r in lowers]}"))
        ok, rec = is_rel_projective(V, C, config.budget_cosets)
        rep.upper_bound_proof = rec
        checks.append(check("upper bound: Higman criterion", ok,
                            f"index {rec.index}; {rec.method}"))
        checks.append(check("sandwich orders agree", best.vertex_order == C.order(),
                            f"lower {best.vertex_order}, candidate {C.order()}"))
        rep.vertex, rep.vertex_order = C, C.order()
        conj = conjugacy_witness(G, best.vertex, C, config.budget_elements)
        rep.conjugacy = conj
        checks.append(check("lower-bound vertex conjugate to candidate", conj.conjugate,
                            f"{conj.mode}: {conj.details}"))
        resC = restrict(V, C)
        dec_c = decompose(resC, cap, seed)
        source = None
        for W in dec_c.summands:
            r = vertex_source_pgroup(W, cap, seed, config.budget_cosets, check_input=False)
            if r.vertex_order == C.order():
                source = W
                break
        checks.append(check("source found among summands of res_C", source is not None,
                            f"summand dims {dec_c.dims}"))
        if source is not None:
            rep.source, rep.source_dim = source, source.dim
            triv = source.dim == 1 and all(np.array_equal(a, np.eye(1, dtype=np.uint8))
                                            for a in source.gen_arrays)
            rep.trivial_source = triv
            if C.order() > 1:
                tst = trivial_summand_test(extend_module(resC, dec_c.field_used))
                checks.append(check("trivial source agrees with trivial-summand test",
                                    tst == triv, f"trivial summand: {tst}"))
        rep.field_degree = max(dec_s.field_used.k, dec_c.field_used.k, V.field.k)
    except (BudgetError, InconclusiveError) as exc:
        rep.incomplete = f"{type(exc).__name__}: {exc}"
        checks.append(Check("vertex sandwich", "fail", rep.incomplete))
    return rep


def vertex_of_natural_simple(n: int, config: Config | None = None) -> VertexReport:
    """Vertex, source and certificates for the natural simple module of A_n."""
    if n < 3:
        raise DomainError("n must be at least 3")
    config = config or Config()
    E = natural_simple_module(n, config.field_degree, config.seed)
    C, expected = vertex_candidate(n)
    rep = vertex_of_module(E, sylow_of_alt(n), C, config, expected)
    rep.label = f"E, n={n}"
    return rep


def vertex_of_natural_simple_sym(n: int, config: Config | None = None) -> VertexReport:
    """The symmetric-group variant: D over S_n for even n, with candidate P_n."""
    if n < 4 or n % 2:
        raise DomainError("the symmetric-group battery needs even n >= 4")
    config = config or Config()
    D = natural_modules(n).D
    P = sylow_sym_group(n, n)
    rep = vertex_of_module(D, P, P, config, f"P_{n}")
    rep.label = f"D, n={n}"
    return rep

