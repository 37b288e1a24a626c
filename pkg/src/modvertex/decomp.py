"""Direct-sum decomposition, locality certificates and simplicity testing.

Splitting is driven by minimal polynomials: an endomorphism whose minimal
polynomial has two coprime factors yields a nontrivial idempotent by the
Chinese remainder theorem.  When no such element turns up, locality is
certified by passing to the quotient by the ideal generated by commutators
(asserted nilpotent), which is commutative, so Frobenius is linear there and
its fixed space counts the field factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import BudgetError, DomainError, InconclusiveError
from .field import Field, field_make
from .gmod import EndoAlgebra, GModule, extend_module, quotient, submodule, summand_module
from .linalg import (Coordinatizer, Matrix, Poly, Subspace, factor_poly, left_kernel_arr, min_poly,
                     mm, poly_xgcd, rref_arr, spin)

DEFAULT_ENDO_BUDGET = 1 << 20


@dataclass
class LocalityCertificate:
    """Outcome of an indecomposability test.

    ``verdict`` is "local", "splits" or "unknown".  A split carries an
    idempotent ``witness``; a local verdict carries the degree of the residue
    field End/Rad over the base field.
    """

    verdict: str
    witness: Matrix | None = None
    residue_degree: int | None = None
    method: str = ""
    endo_dim: int = 0
    radical_dim: int | None = None

    @property
    def is_local(self) -> bool:
        return self.verdict == "local"

    def check(self) -> bool:
        if self.witness is None:
            return self.verdict != "splits"
        e = self.witness
        return e @ e == e and not e.is_zero() and not e.is_identity()


def _flat(arrs: np.ndarray) -> np.ndarray:
    return arrs.reshape(arrs.shape[0], -1)


def crt_idempotent(a: np.ndarray, field: Field) -> np.ndarray | None:
    """Nontrivial idempotent polynomial in ``a``, or None if its minimal polynomial is primary."""
    A = Matrix.from_entries(a, field)
    mp = min_poly(A)
    factors = factor_poly(mp)
    if len(factors) < 2:
        return None
    g1 = Poly.one(field)
    for _ in range(factors[0][1]):
        g1 = g1 * factors[0][0]
    g2 = mp // g1
    _, _, t = poly_xgcd(g1, g2)
    return (t * g2)(A).entries


def _ideal_closure(gens: np.ndarray, basis: np.ndarray, field: Field) -> np.ndarray:
    """Basis (as flattened matrices) of the two-sided ideal generated by ``gens``."""
    d = basis.shape[1]
    cur, piv = rref_arr(_flat(gens), field) if gens.shape[0] else (gens.reshape(0, d * d), [])
    while cur.shape[0]:
        mats = cur.reshape(-1, d, d)
        left = mm(basis[:, None], mats[None], field).reshape(-1, d * d)
        right = mm(mats[None], basis[:, None], field).reshape(-1, d * d)
        nxt, npiv = rref_arr(np.concatenate([cur, left, right]), field)
        if len(npiv) == len(piv):
            break
        cur, piv = nxt, npiv
    return cur[: len(piv)]


def _is_nilpotent_ideal(ideal: np.ndarray, d: int, field: Field) -> bool:
    if ideal.shape[0] == 0:
        return True
    mats = ideal.reshape(-1, d, d)
    power = mats
    last = ideal.shape[0]
    while True:
        prods = mm(power[:, None], mats[None], field).reshape(-1, d * d)
        red, piv = rref_arr(prods, field)
        if not piv:
            return True
        if len(piv) >= last:
            return False
        last = len(piv)
        power = red[: len(piv)].reshape(-1, d, d)


def _commutative_quotient_certificate(alg: EndoAlgebra) -> LocalityCertificate | None:
    """Locality or a split via the commutative quotient E / [E, E]E."""
    f, d, s = alg.field, alg.d, alg.dim
    B = alg.basis
    comm = []
    for i in range(s):
        for j in range(i + 1, s):
            c = mm(B[i], B[j], f) ^ mm(B[j], B[i], f)
            if c.any():
                comm.append(c)
    comm_arr = np.array(comm, dtype=np.uint8).reshape(-1, d, d)
    N = _ideal_closure(comm_arr, B, f)
    if not _is_nilpotent_ideal(N, d, f):
        return None
    Nc = alg._coord.coords_many(N) if N.shape[0] else np.zeros((0, s), dtype=np.uint8)
    nsub = Subspace(f, s, Nc)
    comp = Subspace.whole(s, f).quotient_basis(nsub)
    t = comp.shape[0]
    red = Coordinatizer(np.concatenate([comp, nsub.rows]), f)

    def reduce(v: np.ndarray) -> np.ndarray:
        c = red.coords_many(np.atleast_2d(v))
        return c[:, :t]

    frob = np.zeros((t, t), dtype=np.uint8)
    for i in range(t):
        X = Matrix.from_entries(alg.element(comp[i]), f) ** f.order
        frob[i] = reduce(alg.coords(X.entries))[0]
    m = 1
    while f.order ** m < t + 1:
        m += 1
    Fm = Matrix.from_entries(frob, f) ** m
    rad = left_kernel_arr(Fm.entries, f)
    r = rad.shape[0]
    rad_comp = Subspace.whole(t, f).quotient_basis(Subspace(f, t, rad))
    P = Coordinatizer(np.concatenate([rad, rad_comp]), f).coords_many(
        np.eye(t, dtype=np.uint8))[:, r:]
    fixed = left_kernel_arr(mm(frob ^ np.eye(t, dtype=np.uint8), P, f), f)
    factors = fixed.shape[0] - r
    if factors == 1:
        return LocalityCertificate("local", None, t - r, "commutative quotient", s,
                                   N.shape[0] + r)
    one = reduce(alg.identity_coords)[0]
    known = Subspace(f, t, np.concatenate([rad, one[None]]))
    for x in fixed:
        if known.contains_vector(x):
            continue
        lift = alg.element(mm(x[None], comp, f)[0])
        e = crt_idempotent(lift, f)
        if e is not None:
            return LocalityCertificate("splits", Matrix.from_entries(e, f), None,
                                       "commutative quotient", s)
    return None


def _exhaustive_certificate(alg: EndoAlgebra, budget: int) -> LocalityCertificate:
    f, d, s = alg.field, alg.d, alg.dim
    total = f.order ** s
    if total > budget:
        raise BudgetError("endomorphism enumeration", total, budget)
    flat = _flat(alg.basis)
    eye = np.eye(d, dtype=np.uint8)
    nil = 0
    steps = max(1, math.ceil(math.log2(max(d, 2))))
    chunk = 1 << 12
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        digits = np.stack([(idx // f.order ** i) % f.order for i in range(s)], axis=1)
        X = mm(digits.astype(np.uint8), flat, f).reshape(-1, d, d)
        sq = mm(X, X, f)
        idem = np.all(sq == X, axis=(1, 2))
        for i in np.flatnonzero(idem):
            if X[i].any() and not np.array_equal(X[i], eye):
                return LocalityCertificate("splits", Matrix.from_entries(X[i], f), None,
                                           "exhaustive enumeration", s)
        P = X
        for _ in range(steps):
            P = mm(P, P, f)
        nil += int(np.sum(~P.reshape(P.shape[0], -1).any(axis=1)))
    rdim = round(math.log(nil, f.order))
    return LocalityCertificate("local", None, s - rdim, "exhaustive enumeration", s, rdim)


def is_indecomposable(V: GModule, seed: int = 0, random_tries: int = 8,
                      endo_budget: int = DEFAULT_ENDO_BUDGET) -> LocalityCertificate:
    """Certify V as indecomposable (local End) or exhibit a splitting idempotent."""
    if V.dim == 0:
        raise DomainError("the zero module has no locality certificate")
    alg = EndoAlgebra(V)
    f, s = alg.field, alg.dim
    if s == 1:
        return LocalityCertificate("local", None, 1, "one-dimensional End", 1, 0)
    rng = np.random.default_rng(seed)
    candidates = list(alg.basis) + [alg.random_element(rng) for _ in range(random_tries)]
    for a in candidates:
        e = crt_idempotent(a, f)
        if e is not None:
            return LocalityCertificate("splits", Matrix.from_entries(e, f), None,
                                       "minimal polynomial", s)
    cert = _commutative_quotient_certificate(alg)
    if cert is not None:
        return cert
    try:
        return _exhaustive_certificate(alg, endo_budget)
    except BudgetError:
        return LocalityCertificate("unknown", None, None, "pipeline exhausted", s)


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class DecompositionResult:
    """Summands W_i with inclusions iota_i (dim W_i x dim V) and projections pi_i."""

    module: GModule
    summands: list
    inclusions: list
    projections: list
    certificates: list
    field_used: Field
    escalated: bool = False
    absolutely_indecomposable: bool = True
    notes: list = dc_field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [W.dim for W in self.summands]

    def verify(self) -> bool:
        """Replay the certificate: sum of pi_i iota_i is the identity, iota_i pi_j = delta_ij."""
        f = self.field_used
        N = self.module.dim
        total = np.zeros((N, N), dtype=np.uint8)
        for i, (io, pi) in enumerate(zip(self.inclusions, self.projections)):
            total ^= mm(pi.entries, io.entries, f)
            for j, pj in enumerate(self.projections):
                prod = mm(io.entries, pj.entries, f)
                want = np.eye(io.rows, dtype=np.uint8) if i == j else 0
                if not np.array_equal(prod, np.broadcast_to(want, prod.shape)):
                    return False
            for a, b in zip(self.summands[i].gen_arrays, self.module.gen_arrays):
                if not np.array_equal(mm(a, io.entries, f), mm(io.entries, b, f)):
                    return False
        return bool(np.array_equal(total, np.eye(N, dtype=np.uint8)))


def _image_rows(e: np.ndarray, f: Field) -> np.ndarray:
    r, piv = rref_arr(e, f)
    return r[: len(piv)]


def _split_fixed(V: GModule, seed: int, endo_budget: int):
    f, N = V.field, V.dim
    stack = [(np.eye(N, dtype=np.uint8), np.eye(N, dtype=np.uint8))]
    done = []
    while stack:
        iota, pi = stack.pop()
        W = summand_module(V, iota, pi) if iota.shape[0] != N else V
        cert = is_indecomposable(W, seed, endo_budget=endo_budget)
        if cert.verdict == "unknown":
            raise InconclusiveError(f"locality of a {W.dim}-dimensional summand undecided")
        if cert.verdict == "local":
            done.append((iota, pi, cert))
            continue
        e = cert.witness.entries
        halves = []
        for p in (e, e ^ np.eye(W.dim, dtype=np.uint8)):
            S = _image_rows(p, f)
            P = Coordinatizer(S, f).coords_many(p)
            halves.append((mm(S, iota, f), mm(pi, P, f)))
        stack.extend(reversed(halves))
    done.sort(key=lambda t: -t[0].shape[0])
    return done


def decompose(V: GModule, max_field_degree: int = 2, seed: int = 0,
              endo_budget: int = DEFAULT_ENDO_BUDGET) -> DecompositionResult:
    """Split V into indecomposables, extending scalars when a summand is not absolutely indecomposable.

    ``max_field_degree`` caps the field GF(2^k) that escalation may reach.
    """
    if V.dim == 0:
        return DecompositionResult(V, [], [], [], [], V.field)
    parts = _split_fixed(V, seed, endo_budget)
    module, escalated, notes = V, False, []
    degrees = [c.residue_degree for _, _, c in parts]
    need = math.lcm(*degrees)
    if need > 1:
        k_new = V.field.k * need
        if k_new <= min(max_field_degree, 4):
            module = extend_module(V, field_make(k_new))
            parts = _split_fixed(module, seed, endo_budget)
            escalated = True
            notes.append(f"escalated GF(2^{V.field.k}) -> GF(2^{k_new})")
        else:
            notes.append(f"residue degree {need} needs GF(2^{k_new}), beyond the cap")
    f = module.field
    absolute = all(c.residue_degree == 1 for _, _, c in parts)
    summands, incs, projs, certs = [], [], [], []
    for idx, (iota, pi, cert) in enumerate(parts):
        W = (module if iota.shape[0] == module.dim and len(parts) == 1
             else summand_module(module, iota, pi, f"{module.label}[{idx}]"))
        summands.append(W)
        incs.append(Matrix.from_entries(iota, f))
        projs.append(Matrix.from_entries(pi, f))
        certs.append(cert)
    res = DecompositionResult(module, summands, incs, projs, certs, f, escalated, absolute, notes)
    if not res.verify():
        raise AssertionError("decomposition certificate failed replay")
    return res


# ---------------------------------------------------------------------------
# simplicity


@dataclass
class SimplicityResult:
    """``verdict`` is "simple", "not-simple" or "unknown"; ``submodule`` spans a proper submodule."""

    verdict: str
    submodule: np.ndarray | None = None
    details: str = ""


def simplicity_test(V: GModule, seed: int = 0, tries: int = 64) -> SimplicityResult:
    """Norton's irreducibility test on seeded random elements of the acting algebra."""
    f, d = V.field, V.dim
    if d == 0:
        return SimplicityResult("not-simple", None, "zero module")
    if d == 1:
        return SimplicityResult("simple", None, "one-dimensional")
    gens = list(V.gen_actions)
    if not gens:
        return SimplicityResult("not-simple", np.eye(d, dtype=np.uint8)[:1], "trivial action")
    gensT = [g.T for g in gens]
    rng = np.random.default_rng(seed)
    pool = [g.entries for g in gens]
    for _ in range(tries):
        i, j = rng.integers(len(pool), size=2)
        pool.append(mm(pool[i], pool[j], f))
        coeffs = rng.integers(0, f.order, size=len(pool))
        a = np.zeros((d, d), dtype=np.uint8)
        for c, p in zip(coeffs, pool):
            if c:
                a ^= f.mul_table[c][p]
        A = Matrix.from_entries(a, f)
        for fac, _ in factor_poly(min_poly(A)):
            ker = left_kernel_arr(fac(A).entries, f)
            U = spin(ker[:1], gens, f)
            if U.dim < d:
                return SimplicityResult("not-simple", U.rows, "spin of a null vector")
            kerT = left_kernel_arr(fac(A).entries.T.copy(), f)
            UT = spin(kerT[:1], gensT, f)
            if UT.dim < d:
                ann = left_kernel_arr(UT.rows.T.copy(), f)
                return SimplicityResult("not-simple", ann, "annihilator of a dual submodule")
            if ker.shape[0] == fac.degree:
                return SimplicityResult("simple", None, "Norton criterion")
    return SimplicityResult("unknown", None, f"no decisive element in {tries} tries")


def is_simple(V: GModule, seed: int = 0, tries: int = 64) -> bool:
    res = simplicity_test(V, seed, tries)
    if res.verdict == "unknown":
        raise InconclusiveError(res.details)
    return res.verdict == "simple"


def composition_factor_dims(V: GModule, seed: int = 0) -> list[int]:
    """Sorted dimensions of the factors of a composition series."""
    if V.dim == 0:
        return []
    res = simplicity_test(V, seed)
    if res.verdict == "unknown":
        raise InconclusiveError(res.details)
    if res.verdict == "simple":
        return [V.dim]
    S = res.submodule
    return sorted(composition_factor_dims(submodule(V, S), seed)
                  + composition_factor_dims(quotient(V, S), seed))
