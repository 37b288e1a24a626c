"""Per-n verification batteries, the vertex table, reports and self-tests.

Each n gets a case tag from its 2-adic profile; the tag selects which
structural facts are checked before the vertex sandwich runs.  Every check
lands in the row's ledger as pass/fail; budget overflows and undecided
certificates mark the row incomplete instead of aborting the run.
"""

from __future__ import annotations

import json
import math
import os
import re
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from . import __version__
from ._oracles import (closure_order, idempotent_summand_dims, naive_left_kernel_dim, naive_matmul,
                       naive_rref)
from .config import Config
from .constructions import (NamedSubgroups, base_group_gens, block_cycles, case_tag,
                            distinguished_vectors, three_block_summand_bases, named_subgroups, natural_modules,
                            orbit_split_witness, two_block_endo_basis, six_point_data, sylow_alt,
                            sylow_alt_group, sylow_sym, sylow_sym_group, three_maximal_over_base,
                            top_quotient_image, two_adic_profile, w_gen, young_alt_sym_groups)
from .decomp import composition_factor_dims, decompose, is_indecomposable, is_simple
from .errors import BudgetError, DomainError, InconclusiveError, ParseError
from .field import GF2, field_make
from .gmod import (direct_sum, endomorphisms, extend_module, hom_space, induce,
                   invariant_subspace, is_intertwiner, iso_test, module_from_arrays, norm_operator,
                   permutation_module, quotient, regular_module, restrict, socle_pgroup, submodule,
                   trivial_module, trivial_summand_test)
from .linalg import Matrix, Subspace, mm, rank_arr, rref_arr
from .perm import (Perm, PermGroup, closure_with, derived_subgroup, elements, even_part,
                   frattini_2group, frattini_data, group_from_gens, maximal_subgroups_containing,
                   orbit_partition, perm_parse)
from .vertex import (Check, VertexReport, check, is_rel_projective, vertex_candidate,
                     vertex_of_natural_simple, vertex_of_natural_simple_sym,
                     vertex_source_pgroup)

SCHEMA_VERSION = 1
IDENTITY_SUITE_NS = (8, 12, 14, 16)
ELEMENTWISE_LIMIT = 1 << 15


def _two_valuation(x: int) -> int:
    return (x & -x).bit_length() - 1


def expected_row(n: int) -> dict:
    """Vertex order, identification, source dim and trivial-source flag predicted for E over A_n.

    Orders follow from the 2-adic valuation of factorials: a Sylow 2-subgroup
    of A_m has order 2^(v(m!) - 1) for m >= 2.
    """
    if n < 3:
        raise DomainError("n must be at least 3")
    _, label = vertex_candidate(n)
    if n == 6:
        return {"order": 4, "label": label, "source_dim": 2, "trivial": False}
    if n % 2:
        m = n - 3
        order = 2 ** (_two_valuation(math.factorial(m)) - 1) if m >= 2 else 1
        return {"order": order, "label": label, "source_dim": 1, "trivial": True}
    order = 2 ** (_two_valuation(math.factorial(n)) - 1)
    if n == 4:
        return {"order": order, "label": label, "source_dim": 1, "trivial": True}
    return {"order": order, "label": label, "source_dim": n - 2, "trivial": False}


# ---------------------------------------------------------------------------
# report rows


@dataclass
class ReportRow:
    n: int
    parts: list
    case: str
    dim_E: int
    restriction_indecomposable: bool | None
    vertex: VertexReport | None
    checks: list
    timings: dict
    seed: int
    budgets: dict
    version: str = __version__
    sym: VertexReport | None = None
    incomplete: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.incomplete and all(c.status == "pass" for c in self.checks)

    def as_dict(self, normalize_timings: bool = False) -> dict:
        v = self.vertex
        conj = v.conjugacy if v is not None else None
        out = {
            "n": self.n,
            "parts": self.parts,
            "case": self.case,
            "dim_E": self.dim_E,
            "restriction_indecomposable": self.restriction_indecomposable,
            "vertex": {
                "order": v.vertex_order if v else None,
                "generators": [str(g) for g in v.vertex.generators] if v and v.vertex else None,
                "expected": v.expected if v else None,
                "conjugacy_mode": conj.mode if conj else None,
                "witness": str(conj.witness) if conj and conj.witness is not None else None,
            },
            "source": {
                "dim": v.source_dim if v else None,
                "trivial": v.trivial_source if v else None,
            },
            "checks": [c.as_dict() for c in self.checks],
            "seed": self.seed,
            "budgets": self.budgets,
            "version": self.version,
            "schema": SCHEMA_VERSION,
            "incomplete": self.incomplete,
            "timings": ({k: 0.0 for k in self.timings} if normalize_timings
                        else {k: round(t, 3) for k, t in self.timings.items()}),
        }
        if self.sym is not None:
            s = self.sym
            out["sym"] = {"vertex_order": s.vertex_order, "source_dim": s.source_dim,
                          "expected": s.expected, "ok": s.ok}
        return out


def _guarded(checks: list, incomplete: list, stage: str, fn):
    """Run a battery; budget overflows and undecided certificates become failed checks."""
    try:
        checks.extend(fn())
    except (BudgetError, InconclusiveError) as exc:
        msg = f"{stage}: {type(exc).__name__}: {exc}"
        incomplete.append(msg)
        checks.append(Check(stage, "fail", msg))


# ---------------------------------------------------------------------------
# Sylow subgroup identities


def _split_halves(x: Perm, h: int, n: int) -> tuple[Perm, Perm]:
    """Components of a base-group element on points [0, h) and [h, 2h)."""
    img = list(x.images)
    a = img[:h] + list(range(h, n))
    b = list(range(h)) + img[h:2 * h] + list(range(2 * h, n))
    return Perm(a), Perm(b)


def sylow_identities(n: int, budget: int = 1 << 20) -> list[Check]:
    """Generating sets, Frattini subgroups and base-group identities of P_n and Q_n."""
    ns = named_subgroups(n)
    p = ns.profile
    P, Q = ns.P, ns.Q
    out: list[Check] = []
    wq = sylow_alt(n)
    out.append(check("alternating Sylow generators are even",
                     all(g.is_even() for g in wq), f"{len(wq)} generators"))
    out.append(check("[P_n : Q_n] = 2", P.order() == 2 * Q.order() and Q.is_subgroup_of(P),
                     f"|P| = {P.order()}, |Q| = {Q.order()}"))
    shrink = [group_from_gens(wq[:i] + wq[i + 1:], n).order() < Q.order() for i in range(len(wq))]
    out.append(check("dropping any generator of Q_n drops the order", all(shrink),
                     f"{sum(shrink)}/{len(wq)} drops"))
    ws = sylow_sym(n)
    shrink_p = [group_from_gens(ws[:i] + ws[i + 1:], n).order() < P.order() for i in range(len(ws))]
    out.append(check("dropping any generator of P_n drops the order", all(shrink_p),
                     f"{sum(shrink_p)}/{len(ws)} drops"))
    if p.l == 1:
        split = []
        for j, pt in orbit_split_witness(n):
            H = group_from_gens(wq[:j - 1] + wq[j:], n)
            orb = next(o for o in orbit_partition(H) if 1 in o)
            split.append(pt not in orb)
        out.append(check("dropping a generator of Q_n splits a pair of points into two orbits",
                         all(split), f"{sum(split)}/{len(split)} pairs separated"))
    phiP, phiQ = frattini_2group(P), frattini_2group(Q)
    out.append(check("Frattini subgroup of P_n is its derived subgroup",
                     phiP.equals(derived_subgroup(P)), f"|Phi(P)| = {phiP.order()}"))
    out.append(check("Frattini subgroup of Q_n is its derived subgroup",
                     phiQ.equals(derived_subgroup(Q)), f"|Phi(Q)| = {phiQ.order()}"))
    if p.l == 1 and n >= 4:
        ok = phiQ.is_subgroup_of(phiP) and phiP.order() == 2 * phiQ.order()
        out.append(check("Phi(Q_n) has index 2 in Phi(P_n) for a 2-power", ok,
                         f"{phiP.order()} / {phiQ.order()}"))
    else:
        out.append(check("Phi(Q_n) = Phi(P_n) when n is not a 2-power", phiP.equals(phiQ),
                         f"{phiP.order()} vs {phiQ.order()}"))
    if p.l == 1 and n >= 4:
        out.extend(_two_power_base_identities(ns, budget))
    out.extend(_cycle_identities(ns))
    return out


def _two_power_base_identities(ns: NamedSubgroups, budget: int) -> list[Check]:
    n = ns.n
    m = ns.profile.exponents[0]
    h = n // 2
    out: list[Check] = []
    P, Q, B, Balt = ns.P, ns.Q, ns.B, ns.B_alt
    phiP, phiQ = frattini_2group(P), frattini_2group(Q)
    top = w_gen(m, 0, n)
    Ph, Qh = sylow_sym_group(h, n), sylow_alt_group(h, n)
    phiPh = frattini_2group(Ph)
    if B.order() <= min(budget, ELEMENTWISE_LIMIT):
        mismatch_p = mismatch_q = 0
        count_p = count_q = 0
        for x in elements(B, budget):
            x1, x2s = _split_halves(x, h, n)
            x2 = top * x2s * top
            prod_in = phiPh.contains(x1 * x2)
            in_p = prod_in
            in_q = prod_in and Qh.contains(x1) and Qh.contains(x2)
            count_p += in_p
            count_q += in_q
            mismatch_p += in_p != phiP.contains(x)
            mismatch_q += in_q != phiQ.contains(x)
        ok_p = mismatch_p == 0 and count_p == phiP.order()
        ok_q = mismatch_q == 0 and count_q == phiQ.order()
        out.append(check("Phi(P_n) = {(x1, x2) : x1 x2 in Phi(P_n/2)} element-wise", ok_p,
                         f"{B.order()} base elements, {mismatch_p} mismatches"))
        out.append(check("Phi(Q_n) = {(x1, x2) : x_i in Q_n/2, x1 x2 in Phi(P_n/2)} element-wise",
                         ok_q, f"{B.order()} base elements, {mismatch_q} mismatches"))
    else:
        ok = phiP.is_subgroup_of(B) and phiQ.is_subgroup_of(Balt)
        out.append(check("Frattini subgroups lie in the base group", ok,
                         f"|B| = {B.order()} above the element-wise limit"))
    out.append(check("base group generated by the half-block generators and their swaps",
                     B.equals(PermGroup(base_group_gens(ns.profile, n), n))
                     and B.order() == 2 ** (n - 2), f"|B| = {B.order()}"))
    if m >= 2:
        w2 = w_gen(1, 0, n)
        gens = [w2 * (top * w2 * top)]
        for s in range(2, m):
            g = w_gen(s, 0, n)
            gens += [g, top * g * top]
        listed = group_from_gens(gens, n)
        out.append(check("base group of Q_n generated by the listed even elements",
                         listed.equals(Balt) and Balt.equals(even_part(B)),
                         f"|B'| = {Balt.order()}"))
    left = closure_with(phiP, list(Ph.generators))
    out.append(check("P_n/2 Phi(P_n) = B_n", left.equals(B), f"{left.order()} vs {B.order()}"))
    left = closure_with(phiP, list(Qh.generators))
    out.append(check("Q_n/2 Phi(P_n) = B_n meet Q_n", left.equals(Balt),
                     f"{left.order()} vs {Balt.order()}"))
    if m >= 3:
        Qh2 = sylow_alt_group(h + 2, n)
        left = closure_with(phiQ, list(Qh2.generators))
        out.append(check("Q_(n/2+2) Phi(Q_n) = B_n meet Q_n", left.equals(Balt),
                         f"{left.order()} vs {Balt.order()}"))
    return out


def _cycle_identities(ns: NamedSubgroups) -> list[Check]:
    p = ns.profile
    out = []
    ok_y = all(ns.y[j].cycle_type() == (p.parts[j],) for j in range(p.l))
    out.append(check("y_(n_j) is an n_j-cycle on its block", ok_y,
                     str([ns.y[j].cycle_type() for j in range(p.l)])))
    ok_x = all(ns.x[j].cycle_type() == ((p.parts[j] // 2,) * 2 if p.parts[j] > 2 else ())
               for j in range(p.l))
    out.append(check("x_(n_j) has two cycles of length n_j/2", ok_x,
                     str([ns.x[j].cycle_type() for j in range(p.l)])))
    out.append(check("[Y_n : Y_n'] = 2 and Y_n' is even",
                     ns.Y.order() == 2 * ns.Y_alt.order()
                     and all(g.is_even() for g in ns.Y_alt.generators),
                     f"|Y| = {ns.Y.order()}, |Y'| = {ns.Y_alt.order()}"))
    out.append(check("squares of the y_(n_j) lie in B_n'",
                     all(ns.B_alt.contains(x) for x in ns.x), ""))
    if p.l >= 2:
        out.append(check("X_n lies in Phi(Q_n)", ns.X.is_subgroup_of(ns.frattini_Q()),
                         f"|X| = {ns.X.order()}"))
    return out


# ---------------------------------------------------------------------------
# natural module structure


def module_structure(n: int) -> list[Check]:
    """Submodule structure of the permutation module and simplicity of E."""
    nm = natural_modules(n)
    S = nm.M.group
    out = []
    if n % 2 == 0:
        dims = (nm.M.dim, nm.M1.dim, nm.D.dim)
        out.append(check("dims of M, M', D are n, n-1, n-2", dims == (n, n - 1, n - 2), str(dims)))
        T = trivial_module(S, GF2)
        h1 = hom_space(T, nm.M).dim
        h2 = hom_space(nm.D, nm.M).dim
        h3 = hom_space(T, quotient(nm.M, nm.M2_row[None], "M/M''")).dim
        out.append(check("M is uniserial: socle of M and of M/M'' are simple",
                         (h1, h2, h3) == (1, 0, 0), f"hom dims {(h1, h2, h3)}"))
        want = [1, 1, n - 2]
    else:
        dims = (nm.M.dim, nm.M1.dim, nm.D.dim)
        split = rank_arr(np.concatenate([nm.M1_basis, nm.M2_row[None]]), GF2) == n
        out.append(check("M = M' + M'' is a direct sum and D = M'", split and dims[2] == n - 1,
                         str(dims)))
        want = [1, n - 1]
    cf = composition_factor_dims(nm.M)
    out.append(check("composition factor dims of M", cf == sorted(want), str(cf)))
    if n >= 5:
        out.append(check("E is simple", is_simple(nm.E), f"dim {nm.E.dim}"))
    else:
        dec = decompose(nm.E, 2)
        iso = iso_test(dec.summands[0], dec.summands[1]) if len(dec.summands) == 2 else None
        ok = dec.dims == [1, 1] and iso is not None and iso.status == "non-isomorphic"
        out.append(check("E splits over GF(4) into two non-isomorphic lines", ok,
                         f"dims {dec.dims}; {iso.details if iso else ''}"))
    return out


# ---------------------------------------------------------------------------
# restrictions to abelian subgroups


def _d_span(nm, vectors) -> Subspace:
    rows = np.array([nm.gamma_to_D(v) for v in vectors], dtype=np.uint8)
    return Subspace(GF2, nm.D.dim, rows)


def abelian_restrictions(n: int) -> list[Check]:
    """Socle of res_{Y_n'} E, kernels and images of norm elements on D."""
    p = two_adic_profile(n)
    ns = named_subgroups(n)
    nm = natural_modules(n)
    dv = distinguished_vectors(n)
    E = nm.E
    d = E.dim
    out = []
    halves_ok = all(
        np.array_equal(dv[f"{j + 1}'"], np.isin(np.arange(n), p.halves(j)[0]).astype(np.uint8))
        and np.array_equal(dv[f"{j + 1}''"], np.isin(np.arange(n), p.halves(j)[1]).astype(np.uint8))
        for j in range(p.l))
    out.append(check("alternate delta half-sums equal the block half-sums", halves_ok, ""))
    total = np.zeros(n, dtype=np.uint8)
    for j in range(p.l):
        total ^= dv[f"{j + 1}"]
    out.append(check("block sums add up to the all-ones vector",
                     np.array_equal(total, dv["+"]), ""))
    resY = restrict(E, ns.Y_alt)
    soc = socle_pgroup(resY)
    if p.l > 2:
        want = _d_span(nm, [dv[f"{j + 1}"] for j in range(p.l - 1)])
        out.append(check("socle of res_{Y'} E spanned by the first l-1 block sums",
                         soc == want and soc.dim == p.l - 1, f"socle dim {soc.dim}"))
    elif p.nl > 2:
        want = _d_span(nm, [dv["0"], dv["1"]])
        out.append(check("socle of res_{Y'} E spanned by the second-half sum and the first block sum",
                         soc == want and soc.dim == 2, f"socle dim {soc.dim}"))
    else:
        reg = regular_module(ns.Y_alt)
        iso = iso_test(reg, resY)
        ok = iso.status == "isomorphic" and is_intertwiner(reg, resY, iso.matrix.entries)
        out.append(check("res_{Y'} E is the regular module of Y'", ok, iso.details))
        want = _d_span(nm, [dv["1"]])
        out.append(check("socle of res_{Y'} E spanned by the first block sum",
                         soc == want and soc.dim == 1, f"socle dim {soc.dim}"))
        out.append(check("second-half sum is outside M'", dv["0"].sum() % 2 == 1, ""))
    for j in range(p.l):
        N = norm_operator(E, ns.y_alt[j])
        kdim = d - N.rank()
        img = Subspace(GF2, d, N.entries)
        if j < p.l - 1:
            ok = kdim == d - 1 and img == _d_span(nm, [dv[f"{j + 1}"]])
            out.append(check(f"norm of y'_{p.parts[j]} (block {j + 1}): kernel dim D - 1", ok,
                             f"kernel dim {kdim}"))
        elif p.parts[j] > 2:
            ok = kdim == d - 2 and img == _d_span(nm, [dv[f"{j + 1}'"], dv[f"{j + 1}''"]])
            out.append(check(f"norm of y'_{p.parts[j]} (last block): kernel dim D - 2", ok,
                             f"kernel dim {kdim}"))
        else:
            ok = kdim == 0 and ns.y_alt[j].is_identity()
            out.append(check("norm of y' for a last block of size 2 is the identity", ok,
                             f"kernel dim {kdim}"))
    for j in range(p.l):
        if p.parts[j] <= 2:
            continue
        N = norm_operator(E, ns.x[j])
        kdim = d - N.rank()
        img = Subspace(GF2, d, N.entries)
        ok = kdim == d - 2 and img == _d_span(nm, [dv[f"{j + 1}'"], dv[f"{j + 1}''"]])
        out.append(check(f"norm of x_{p.parts[j]} (block {j + 1}): kernel dim D - 2", ok,
                         f"kernel dim {kdim}"))
    return out


# ---------------------------------------------------------------------------
# case batteries


def two_power_battery(n: int, config: Config) -> list[Check]:
    """Maximal subgroups of Q_n over <Phi(Q_n), Q_(n-4)> and res_{X_n} E."""
    ns = named_subgroups(n)
    m = ns.profile.exponents[0]
    Q = ns.Q
    over = closure_with(ns.frattini_Q(), list(ns.embedded_Q(n - 4).generators))
    maxes = maximal_subgroups_containing(Q, over)
    out = []
    if m == 3:
        out.append(check("three maximal subgroups of Q_8 contain <Phi, Q_4>", len(maxes) == 3,
                         f"{len(maxes)} found"))
        out.append(check("B_8' is one of them", any(R.equals(ns.B_alt) for R in maxes), ""))
    else:
        ok = len(maxes) == 1 and maxes[0].equals(ns.B_alt)
        out.append(check("B_n' is the only maximal subgroup of Q_n over <Phi, Q_(n-4)>", ok,
                         f"{len(maxes)} found"))
    E = natural_modules(n).E
    dec = decompose(restrict(E, ns.X), config.field_degree, config.seed)
    h = (n - 2) // 2
    out.append(check("res_{X_n} E is two uniserial summands of dim (n-2)/2",
                     dec.dims == [h, h], f"dims {dec.dims}"))
    return out


def three_block_battery(n: int, config: Config) -> list[Check]:
    """Two summands of res_{Y'} E, each with vertex Y', for blocks (n_1, n_2, 2)."""
    p = two_adic_profile(n)
    ns = named_subgroups(n)
    nm = natural_modules(n)
    E = nm.E
    Y = ns.Y_alt
    resY = restrict(E, Y)
    dec = decompose(resY, config.field_degree, config.seed)
    want = sorted(p.parts[:2], reverse=True)
    out = [check("res_{Y'} E has summands of dims n_1, n_2", dec.dims == want, f"dims {dec.dims}")]
    for W in dec.summands:
        r = vertex_source_pgroup(W, config.field_degree, config.seed, config.budget_cosets,
                                 check_input=False)
        tested = r.steps[0].tested_count
        out.append(check(f"summand of dim {W.dim} has vertex Y' (order {Y.order()})",
                         r.vertex_order == Y.order(), f"vertex order {r.vertex_order}"))
        out.append(check(f"summand of dim {W.dim}: three maximal subgroups of Y' tested",
                         tested == 3 and not any(a for _, a in r.steps[0].tested),
                         f"{tested} tested"))
    b1, b2 = three_block_summand_bases(n)
    s1 = _d_span(nm, b1)
    s2 = _d_span(nm, b2)
    inv = all(invariant_subspace(resY, s.rows) for s in (s1, s2))
    ok = inv and s1.dim == p.parts[0] and s2.dim == p.parts[1] and (s1 + s2).dim == E.dim
    out.append(check("explicit bases span complementary Y'-submodules of D", ok,
                     f"dims {s1.dim}, {s2.dim}"))
    return out


def many_block_battery(n: int, config: Config) -> list[Check]:
    """res_{Y'} E is indecomposable for at least four blocks with last block of size 2."""
    ns = named_subgroups(n)
    E = natural_modules(n).E
    cert = is_indecomposable(restrict(E, ns.Y_alt), config.seed, endo_budget=config.budget_endo)
    return [check("res_{Y'} E is indecomposable", cert.is_local,
                  f"{cert.method}, End dim {cert.endo_dim}")]


def two_block_small_battery(n: int, config: Config) -> list[Check]:
    """Endomorphism algebras over the Young subgroups and the three maximal subgroups over B_n'."""
    nm = natural_modules(n)
    D, E = nm.D, nm.E
    ns = named_subgroups(n)
    ys = young_alt_sym_groups(n)
    out = []
    phis = two_block_endo_basis(n)
    flat = np.array([f.entries.reshape(-1) for f in phis], dtype=np.uint8)
    end_ss = endomorphisms(restrict(D, ys["SS"]))
    end_aa = endomorphisms(restrict(E, ys["AA"]))
    span_ss = Subspace(GF2, D.dim ** 2, end_ss.reshape(end_ss.shape[0], -1))
    span_aa = Subspace(GF2, D.dim ** 2, end_aa.reshape(end_aa.shape[0], -1))
    span_phi = Subspace(GF2, D.dim ** 2, flat)
    out.append(check("End over S x S equals End over A x A, dim 6",
                     span_ss == span_aa and span_ss.dim == 6, f"dims {span_ss.dim}, {span_aa.dim}"))
    out.append(check("the six explicit maps span End over S x S",
                     span_phi == span_ss and span_phi.dim == 6, ""))
    table = {(1, 1): 1, (1, 3): 3, (3, 1): 3, (6, 1): 6, (2, 6): 6,
             (2, 2): 2, (2, 4): 4, (4, 2): 4, (5, 2): 5, (1, 5): 5}
    bad = []
    for i in range(1, 7):
        for j in range(1, 7):
            prod = phis[i - 1] @ phis[j - 1]
            want = phis[table[(i, j)] - 1] if (i, j) in table else Matrix.zeros(D.dim, D.dim)
            if prod != want:
                bad.append((i, j))
    out.append(check("multiplication table of the six maps", not bad, f"mismatches {bad}"))
    end_h = endomorphisms(restrict(E, ys["H_alt"]))
    end_hs = endomorphisms(restrict(D, ys["H"]))
    sum12 = phis[0] + phis[1]
    want = Subspace(GF2, D.dim ** 2, np.array([sum12.entries.reshape(-1)]
                                              + [phis[k].entries.reshape(-1) for k in range(2, 6)]))
    got = Subspace(GF2, D.dim ** 2, end_h.reshape(end_h.shape[0], -1))
    got_s = Subspace(GF2, D.dim ** 2, end_hs.reshape(end_hs.shape[0], -1))
    out.append(check("End over H' has dim 5 and equals End over H", got == want and got == got_s,
                     f"dim {got.dim}"))
    cert = is_indecomposable(restrict(E, ys["H_alt"]), config.seed, endo_budget=config.budget_endo)
    out.append(check("End over H' is local with radical of dim 4",
                     cert.is_local and cert.radical_dim == 4 and cert.residue_degree == 1,
                     f"{cert.method}, radical dim {cert.radical_dim}"))
    R = three_maximal_over_base(n)
    maxes = maximal_subgroups_containing(ns.Q, ns.B_alt)
    named = [R["R1'"], R["R2'"], R["R3'"]]
    match = len(maxes) == 3 and all(any(M.equals(X) for X in named) for M in maxes)
    out.append(check("exactly three maximal subgroups of Q_n contain B_n'", match,
                     f"{len(maxes)} found"))
    for key in ("R1'", "R2'"):
        cert = is_indecomposable(restrict(E, R[key]), config.seed, endo_budget=config.budget_endo)
        img = top_quotient_image(R[key], 0, ns.profile)
        out.append(check(f"E restricts indecomposably to {key}", cert.is_local and img == 2,
                         f"{cert.method}; half-swap image order {img}"))
    return out


def six_point_battery(n: int, config: Config) -> list[Check]:
    """Klein four vertex, GF(2) versus GF(4), induction and cyclic exclusion."""
    data = six_point_data()
    F4 = data.field
    nm = natural_modules(6)
    E = nm.E
    out = []
    Q6 = data.Q6
    abelian = all(a * b == b * a for a in Q6.generators for b in Q6.generators)
    out.append(check("Q_6 is dihedral of order 8", Q6.order() == 8 and not abelian, ""))
    mats_ok = all(
        np.array_equal(E.action_array(perm_parse(k, 6)), m.entries.astype(np.uint8) & 1)
        for k, m in data.action_D.items())
    out.append(check("action matrices of Q_6 on E", mats_ok, ""))
    E4 = extend_module(E, F4)
    basis = np.concatenate([data.U_basis, data.V_basis])
    change = Matrix.from_entries(basis, F4)
    inv = change.inverse()
    uv_ok = True
    for k, want in data.action_UV.items():
        A = Matrix.from_entries(E4.action_array(perm_parse(k, 6)), F4)
        uv_ok &= (change @ A @ inv) == want
    out.append(check("the U + V basis block-diagonalises the action", uv_ok, ""))
    resQ = restrict(E, data.Q)
    cert = is_indecomposable(resQ, config.seed, endo_budget=config.budget_endo)
    out.append(check("res_Q E over GF(2) is indecomposable with residue degree 2",
                     cert.is_local and cert.residue_degree == 2, cert.method))
    dec = decompose(resQ, max(config.field_degree, 2), config.seed)
    out.append(check("over GF(4) res_Q E splits into two 2-dim summands",
                     dec.escalated and dec.dims == [2, 2], "; ".join(dec.notes)))
    resQ4 = restrict(E4, data.Q)
    U = submodule(resQ4, data.U_basis, "U")
    V = submodule(resQ4, data.V_basis, "V")
    ind = induce(U, Q6, config.budget_cosets)
    target = restrict(E4, Q6)
    iso = iso_test(ind, target, config.seed)
    ok = iso.status == "isomorphic" and is_intertwiner(ind, target, iso.matrix.entries)
    out.append(check("ind_Q^Q6 U is isomorphic to res_Q6 E", ok, iso.details))
    out.append(check("U and V are Q-submodules", U.dim == 2 and V.dim == 2, ""))
    yes, rec = is_rel_projective(E, data.Q, config.budget_cosets)
    out.append(check("E is relatively Q-projective", yes, f"index {rec.index}"))
    verdicts = []
    for g in elements(data.Q, 8):
        if g.is_identity():
            continue
        C = PermGroup([g], 6)
        verdicts.append(is_rel_projective(E, C, config.budget_cosets)[0])
    out.append(check("E is not relatively projective for any order-2 subgroup of Q",
                     len(verdicts) == 3 and not any(verdicts), str(verdicts)))
    return out


def odd_battery(n: int, config: Config) -> list[Check]:
    """The restriction of E to Sylow-2(A_(n-3)) has a trivial summand."""
    m = n - 3
    E = natural_modules(n).E
    if m < 4:
        return [check("Sylow-2(A_(n-3)) is trivial", True, f"n - 3 = {m}")]
    C = sylow_alt_group(m, n)
    ok = trivial_summand_test(restrict(E, C))
    return [check("trivial module is a summand of res to Sylow-2(A_(n-3))", ok,
                  f"|C| = {C.order()}")]


def sylow_restriction_battery(n: int, config: Config) -> list[Check]:
    """res_{Q_n} E is indecomposable and no maximal subgroup of Q_n admits relative projectivity."""
    Q = sylow_alt_group(n, n)
    V = restrict(natural_modules(n).E, Q)
    cert = is_indecomposable(V, config.seed, endo_budget=config.budget_endo)
    out = [check("res_{Q_n} E is indecomposable", cert.is_local,
                 f"{cert.method}, End dim {cert.endo_dim}, residue degree {cert.residue_degree}")]
    if not cert.is_local:
        return out
    r = vertex_source_pgroup(V, config.field_degree, config.seed, config.budget_cosets,
                             check_input=False)
    step = r.steps[0]
    rank = len(frattini_data(Q).basis)
    rejected = step.tested_count == 2 ** rank - 1 and step.accepted is None
    out.append(check("no maximal subgroup of Q_n passes the relative trace test", rejected,
                     f"{step.tested_count} maximal subgroups tested"))
    out.append(check("2-group vertex of res_{Q_n} E is Q_n", r.vertex_order == Q.order()
                     and r.source.dim == n - 2, f"vertex order {r.vertex_order}"))
    return out


BATTERIES = {
    "n3": [],
    "n4": [],
    "n6": [six_point_battery],
    "odd": [odd_battery],
    "two_power": [two_power_battery],
    "nl_gt2": [],
    "nl2_l2": [two_block_small_battery],
    "nl2_l3": [three_block_battery],
    "nl2_lge4": [many_block_battery],
}


def sym_battery(n: int, config: Config) -> tuple[VertexReport, list[Check]]:
    """Symmetric-group variant: D has vertex P_n and source res_{P_n} D."""
    rep = vertex_of_natural_simple_sym(n, config)
    P = sylow_sym_group(n, n)
    out = [check(f"S_n: {c.name}", c.status == "pass", c.details) for c in rep.checks]
    out.append(check("S_n: vertex is P_n with source res_{P_n} D",
                     rep.ok and rep.vertex_order == P.order() and rep.source_dim == n - 2
                     and rep.restriction_indecomposable is True,
                     f"vertex order {rep.vertex_order}, source dim {rep.source_dim}"))
    p = two_adic_profile(n)
    if n > 6 and p.l == 2 and p.nl == 2:
        out.extend(_sym_maximal_battery(n, config))
    return rep, out


def _sym_maximal_battery(n: int, config: Config) -> list[Check]:
    nm = natural_modules(n)
    D = nm.D
    ns = named_subgroups(n)
    R = three_maximal_over_base(n)
    maxes = maximal_subgroups_containing(ns.P, ns.B)
    named = [R["R1"], R["R2"], R["R3"]]
    out = [check("S_n: exactly three maximal subgroups of P_n contain B_n",
                 len(maxes) == 3 and all(any(M.equals(X) for X in named) for M in maxes),
                 f"{len(maxes)} found")]
    for i in (1, 2, 3):
        ok = even_part(R[f"R{i}"]).equals(R[f"R{i}'"])
        out.append(check(f"S_n: R{i} meet A_n = R{i}'", ok, ""))
    for i in (1, 2):
        cert = is_indecomposable(restrict(D, R[f"R{i}"]), config.seed,
                                 endo_budget=config.budget_endo)
        out.append(check(f"S_n: D restricts indecomposably to R{i}", cert.is_local, cert.method))
    H = young_alt_sym_groups(n)["H"]
    cert = is_indecomposable(restrict(D, H), config.seed, endo_budget=config.budget_endo)
    out.append(check("S_n: End over S x S x S_2 is local, excluding R3", cert.is_local
                     and cert.radical_dim == 4, f"radical dim {cert.radical_dim}"))
    return out


# ---------------------------------------------------------------------------
# rows and ranges


def _vertex_checks(n: int, rep: VertexReport) -> list[Check]:
    exp = expected_row(n)
    out = []
    out.append(check("vertex order matches the table", rep.vertex_order == exp["order"],
                     f"got {rep.vertex_order}, expected {exp['order']}"))
    out.append(check("vertex identified with the named subgroup",
                     rep.expected == exp["label"] and rep.conjugacy is not None
                     and rep.conjugacy.conjugate, f"{rep.expected}"))
    out.append(check("source dim matches the table", rep.source_dim == exp["source_dim"],
                     f"got {rep.source_dim}, expected {exp['source_dim']}"))
    out.append(check("trivial-source flag matches the table",
                     rep.trivial_source == exp["trivial"],
                     f"got {rep.trivial_source}, expected {exp['trivial']}"))
    if rep.vertex_order:
        sylow = 2 ** max(_two_valuation(math.factorial(n)) - 1, 0)
        out.append(check("vertex order divides the Sylow order", sylow % rep.vertex_order == 0,
                         f"{rep.vertex_order} | {sylow}"))
    return out


def verify_n(n: int, config: Config | None = None) -> ReportRow:
    """Run the structural batteries and the vertex sandwich for one n."""
    config = config or Config()
    if n < 3 or n > config.max_n:
        raise DomainError(f"n must lie in 3..{config.max_n}")
    tag = case_tag(n)
    parts = list(two_adic_profile(n).parts) if n >= 2 else []
    checks: list[Check] = []
    incomplete: list[str] = []
    timings: dict[str, float] = {}

    def timed(stage, fn):
        t0 = time.perf_counter()
        _guarded(checks, incomplete, stage, fn)
        timings[stage] = time.perf_counter() - t0

    timed("module structure", lambda: module_structure(n))
    if n % 2 == 0 and n >= 4:
        timed("sylow identities", lambda: sylow_identities(n, config.budget_elements))
    if n % 2 == 0 and two_adic_profile(n).l >= 2 and n != 6:
        timed("abelian restrictions", lambda: abelian_restrictions(n))
    if n % 2 == 0 and n >= 8:
        timed("sylow restriction", lambda: sylow_restriction_battery(n, config))
    for battery in BATTERIES[tag]:
        timed(battery.__name__.replace("_", " "), lambda b=battery: b(n, config))
    t0 = time.perf_counter()
    rep = vertex_of_natural_simple(n, config)
    timings["vertex sandwich"] = time.perf_counter() - t0
    checks.extend(rep.checks)
    if rep.incomplete:
        incomplete.append(f"vertex sandwich: {rep.incomplete}")
    else:
        checks.extend(_vertex_checks(n, rep))
    if tag == "n6":
        checks.append(check("GF(4) escalation recorded", rep.field_degree == 2,
                            f"field GF(2^{rep.field_degree})"))
    sym = None
    if config.include_sn and n % 2 == 0 and n >= 6 and two_adic_profile(n).l >= 2:
        t0 = time.perf_counter()
        try:
            sym, sym_checks = sym_battery(n, config)
            checks.extend(sym_checks)
            if sym.incomplete:
                incomplete.append(f"S_n sandwich: {sym.incomplete}")
        except (BudgetError, InconclusiveError) as exc:
            incomplete.append(f"S_n battery: {exc}")
            checks.append(Check("S_n battery", "fail", str(exc)))
        timings["S_n battery"] = time.perf_counter() - t0
    return ReportRow(n, parts, tag, rep.dim, rep.restriction_indecomposable, rep, checks, timings,
                     config.seed, config.budgets(), __version__, sym, incomplete)


def verify_range(n_from: int, n_to: int, config: Config | None = None) -> tuple[list, int]:
    """One row per n; exit code 0 iff every row is complete and all its checks pass."""
    config = config or Config()
    if n_from < 3 or n_from > n_to:
        raise DomainError(f"bad range {n_from}..{n_to}")
    rows = [verify_n(n, config) for n in range(n_from, n_to + 1)]
    return rows, 0 if all(r.ok for r in rows) else 1


def report_json(rows: list, config: Config) -> str:
    data = {"version": __version__, "schema": SCHEMA_VERSION, "seed": config.seed,
            "rows": [r.as_dict(config.normalize_timings) for r in rows]}
    return json.dumps(data, indent=2)


TEXT_COLUMNS = [("n", 4), ("case", 10), ("dim_E", 6), ("indec", 6), ("order", 6),
                ("expected", 24), ("conj", 15), ("src", 5), ("triv", 6), ("checks", 8),
                ("status", 10)]


def report_text(rows: list) -> str:
    head = "".join(name.ljust(w) for name, w in TEXT_COLUMNS).rstrip()
    lines = [head, "-" * len(head)]
    for r in rows:
        v = r.vertex
        passed = sum(c.status == "pass" for c in r.checks)
        vals = [r.n, r.case, r.dim_E, r.restriction_indecomposable,
                v.vertex_order if v else None, v.expected if v else "",
                v.conjugacy.mode if v and v.conjugacy else None,
                v.source_dim if v else None, v.trivial_source if v else None,
                f"{passed}/{len(r.checks)}",
                "ok" if r.ok else ("incomplete" if r.incomplete else "FAIL")]
        lines.append("".join(str(x).ljust(w) for x, (_, w) in zip(vals, TEXT_COLUMNS)).rstrip())
    for r in rows:
        for c in r.checks:
            if c.status != "pass":
                lines.append(f"n={r.n}: FAIL {c.name}: {c.details}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fixtures


def _perm_lines(name: str, gens) -> str:
    return "".join(f"{name} {g}\n" for g in gens)


def _module_text(V) -> str:
    out = ["group " + " ".join(str(g) for g in V.group.generators)]
    for a in V.gen_arrays:
        out.append(Matrix.from_entries(a, V.field).to_text().rstrip("\n"))
    return "\n".join(out) + "\n"


def fixture_texts(n: int) -> dict[str, str]:
    """Text fixtures (perm cycle notation, matrix blocks) for the constructions at n."""
    if n < 3 or n > 16:
        raise DomainError("fixtures are produced for 3 <= n <= 16")
    nm = natural_modules(n)
    out = {"natural_E.txt": _module_text(nm.E), "natural_D.txt": _module_text(nm.D)}
    if n % 2 == 0 and n >= 4:
        ns = named_subgroups(n)
        gens = (_perm_lines("P", sylow_sym(n)) + _perm_lines("Q", sylow_alt(n))
                + _perm_lines("y", ns.y) + _perm_lines("y'", ns.y_alt) + _perm_lines("x", ns.x)
                + _perm_lines("B", ns.B.generators))
        out["generators.txt"] = gens
        dv = distinguished_vectors(n)
        keys = sorted(dv)
        mat = Matrix.from_entries(np.array([dv[k] for k in keys], dtype=np.uint8), GF2)
        out["distinguished.txt"] = "# rows: " + " ".join(keys) + "\n" + mat.to_text()
        p = two_adic_profile(n)
        if p.l == 3 and p.nl == 2:
            b1, b2 = three_block_summand_bases(n)
            out["summand_basis_1.txt"] = Matrix.from_entries(b1, GF2).to_text()
            out["summand_basis_2.txt"] = Matrix.from_entries(b2, GF2).to_text()
        if p.l == 2 and p.nl == 2 and n > 6:
            for i, phi in enumerate(two_block_endo_basis(n), 1):
                out[f"endo_phi{i}.txt"] = phi.to_text()
    if n == 6:
        data = six_point_data()
        for i, (k, m) in enumerate(data.action_UV.items(), 1):
            out[f"six_point_uv_{i}.txt"] = f"# {k}\n" + m.to_text()
    return out


def _fixture_n(path: Path) -> int | None:
    m = re.fullmatch(r"n?(\d+)", path.name)
    return int(m.group(1)) if m else None


def fixture_sets(root) -> list[tuple[int, Path]]:
    """(n, directory) pairs: ``root`` itself if named n<N> or <N>, else such subdirectories."""
    root = Path(root)
    if not root.is_dir():
        return []
    n = _fixture_n(root)
    if n is not None:
        return [(n, root)]
    subs = [(_fixture_n(p), p) for p in sorted(root.iterdir()) if p.is_dir()]
    return sorted((n, p) for n, p in subs if n is not None)


def dump_fixtures(n: int, outdir) -> list[Path]:
    d = Path(outdir)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in fixture_texts(n).items():
        path = d / name
        path.write_text(text)
        paths.append(path)
    return paths


def _parse_matrix_blocks(text: str) -> list[Matrix]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")
             and not ln.startswith("group ")]
    mats = []
    i = 0
    while i < len(lines):
        rows = int(lines[i].split()[0])
        mats.append(Matrix.from_text("\n".join(lines[i:i + rows + 1])))
        i += rows + 1
    return mats


def compare_fixtures(n: int, indir) -> list[str]:
    """Names of fixtures that are missing, unparsable or differ from a fresh construction."""
    d = Path(indir)
    diffs = []
    for name, text in fixture_texts(n).items():
        path = d / name
        if not path.exists():
            diffs.append(f"{name}: missing")
            continue
        got = path.read_text()
        try:
            if name == "generators.txt":
                parsed = [(ln.split(" ", 1)[0], perm_parse(ln.split(" ", 1)[1], n))
                          for ln in got.splitlines() if ln.strip()]
                want = [(ln.split(" ", 1)[0], perm_parse(ln.split(" ", 1)[1], n))
                        for ln in text.splitlines() if ln.strip()]
                same = parsed == want
            else:
                same = _parse_matrix_blocks(got) == _parse_matrix_blocks(text)
                same = same and got.splitlines()[:1] == text.splitlines()[:1]
        except (ParseError, ValueError, IndexError) as exc:
            diffs.append(f"{name}: unparsable ({exc})")
            continue
        if not same:
            diffs.append(f"{name}: differs")
    return diffs


# ---------------------------------------------------------------------------
# self-test


def _linalg_oracle_suite(cases: int, seed: int, max_dim: int = 64) -> Check:
    """rref, products and kernel dims against the naive oracle.

    Dimensions are geometric (mean about 12) and capped at ``max_dim``, so
    most cases are small while the cap is still reached.
    """
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(cases):
        k = int(rng.choice([1, 2, 3, 4]))
        f = field_make(k)
        r, c, p = (int(min(max_dim, x)) for x in rng.geometric(1 / 12, size=3))
        a = rng.integers(0, f.order, size=(r, c)).astype(np.uint8)
        if r > 1 and rng.random() < 0.2:
            a[-1] = a[0]
        b = rng.integers(0, f.order, size=(c, p)).astype(np.uint8)
        red, piv = rref_arr(a, f)
        n_red, n_piv = naive_rref(a.tolist(), f)
        if piv != n_piv or red[: len(piv)].tolist() != n_red:
            bad += 1
        if mm(a, b, f).tolist() != naive_matmul(a.tolist(), b.tolist(), f):
            bad += 1
        if r - len(piv) != naive_left_kernel_dim(a.tolist(), f):
            bad += 1
    return check("linear algebra agrees with the naive oracle", bad == 0,
                 f"{cases} cases up to {max_dim}x{max_dim}, {bad} mismatches")


def small_test_modules(seed: int, count: int) -> list:
    """Seeded small modules: random subquotients and sums of permutation modules of tiny groups."""
    rng = np.random.default_rng(seed)
    groups = [
        group_from_gens([Perm.from_cycles([(1, 2)], 4), Perm.from_cycles([(3, 4)], 4)], 4),
        group_from_gens([Perm.from_cycles([(1, 2, 3, 4)], 4)], 4),
        group_from_gens([Perm.from_cycles([(1, 2, 3, 4)], 4), Perm.from_cycles([(1, 3)], 4)], 4),
        group_from_gens([Perm.from_cycles([(1, 2)], 6), Perm.from_cycles([(3, 4)], 6),
                         Perm.from_cycles([(5, 6)], 6)], 6),
        group_from_gens([Perm.from_cycles([(1, 2, 3)], 3)], 3),
        group_from_gens([Perm.from_cycles([(1, 2, 3)], 4), Perm.from_cycles([(1, 2), (3, 4)], 4)], 4),
    ]
    mods = []
    while len(mods) < count:
        G = groups[int(rng.integers(len(groups)))]
        M = permutation_module(G, GF2)
        choice = int(rng.integers(3))
        if choice == 0 and G.degree <= 6:
            V = M
        elif choice == 1:
            ones = np.ones((1, M.dim), dtype=np.uint8)
            V = quotient(M, ones)
        else:
            T = trivial_module(G, GF2)
            V = direct_sum(quotient(M, np.ones((1, M.dim), dtype=np.uint8)), T)
        if V.dim > 6:
            continue
        X = rng.integers(0, 2, size=(V.dim, V.dim)).astype(np.uint8)
        if rank_arr(X, GF2) < V.dim:
            continue
        Xm = Matrix.from_entries(X, GF2)
        Xi = Xm.inverse()
        arrs = [(Xm @ Matrix.from_entries(a, GF2) @ Xi).entries for a in V.gen_arrays]
        mods.append(module_from_arrays(G, arrs, GF2, "conjugated"))
    return mods


def _decomp_oracle_suite(cases: int, seed: int) -> Check:
    bad = 0
    for V in small_test_modules(seed, cases):
        got = sorted(decompose(V, 1, seed).dims)
        want = idempotent_summand_dims([a.tolist() for a in V.gen_arrays], GF2)
        bad += got != want
    return check("decomposition agrees with exhaustive idempotent search", bad == 0,
                 f"{cases} modules, {bad} mismatches")


def _group_order_suite() -> Check:
    bad = 0
    for n in range(4, 11, 2):
        for gens in (sylow_sym(n), sylow_alt(n)):
            fast = group_from_gens(gens, n).order()
            slow = closure_order([g.images for g in gens], n)
            bad += fast != slow
    return check("stabilizer-chain orders agree with closure orders", bad == 0, f"{bad} mismatches")


def convention_canary() -> Check:
    """Composition-convention canary: y_4 = w_4 w_2 and x_8 = y_8^2 against known values.

    A cycle type alone cannot detect a flipped product (gh and hg are
    conjugate), so the exact permutations are compared as well.
    """
    y4 = block_cycles(4)[0]
    y8 = block_cycles(8)[0]
    x8 = y8 * y8
    ok = (y4.cycle_type() == (4,) and str(y4) == "(1,3,2,4)"
          and str(x8) == "(1,3,2,4)(5,7,6,8)")
    return check("y_4 is the 4-cycle (1,3,2,4) and x_8 = (1,3,2,4)(5,7,6,8)", ok,
                 f"y_4 = {y4}, x_8 = {x8}")


def selftest(config: Config | None = None, fixture_dir=None, linalg_cases: int = 200,
             decomp_cases: int = 40) -> list[Check]:
    """Oracle suites, identity suite, canary and fixture round-trip."""
    import tempfile
    config = config or Config()
    out = [_linalg_oracle_suite(linalg_cases, config.seed),
           _decomp_oracle_suite(decomp_cases, config.seed),
           _group_order_suite(),
           convention_canary()]
    for n in IDENTITY_SUITE_NS:
        cs = sylow_identities(n, config.budget_elements)
        bad = [c.name for c in cs if c.status != "pass"]
        out.append(check(f"subgroup identities n={n}", not bad, f"failed: {bad}" if bad else
                         f"{len(cs)} identities"))
    if fixture_dir is None:
        with tempfile.TemporaryDirectory() as tmp:
            for n in (6, 8, 10, 14):
                dump_fixtures(n, os.path.join(tmp, str(n)))
                diffs = compare_fixtures(n, os.path.join(tmp, str(n)))
                out.append(check(f"fixture round-trip n={n}", not diffs, "; ".join(diffs)))
    else:
        sets = fixture_sets(fixture_dir)
        out.append(check("fixture sets found", bool(sets),
                         f"{len(sets)} under {fixture_dir}; directories must be named n<N> or <N>"))
        for n, sub in sets:
            diffs = compare_fixtures(n, sub)
            out.append(check(f"fixture round-trip n={n}", not diffs, "; ".join(diffs)))
    return out
