"""Modules over group algebras in characteristic 2.

A :class:`GModule` is a permutation group plus one invertible matrix per
generator (row vectors, right action).  Modules built from permutation
actions also carry an exact action callable, so the matrix of any group
element is available without word problems; other modules evaluate elements
through the straight-line programs stored in the group's stabilizer chain.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetError, DomainError
from .field import GF2, Field, embedding_table
from .linalg import (Coordinatizer, Matrix, Subspace, inverse_arr, left_kernel_arr, mm,
                     rank_arr, spin)
from .perm import CosetTable, Perm, PermGroup, elements

ActFn = Callable[[Perm], np.ndarray]


@dataclass(frozen=True, eq=False)
class GModule:
    """A right module: ``gen_actions[i]`` is the matrix of ``group.generators[i]``."""

    group: PermGroup
    field: Field
    dim: int
    gen_actions: tuple
    label: str = ""
    act: ActFn | None = dc_field(default=None, repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.gen_actions) != len(self.group.generators):
            raise DomainError("one action matrix per generator required")
        for m in self.gen_actions:
            if m.shape != (self.dim, self.dim) or m.field != self.field:
                raise DomainError("action matrix has wrong shape or field")

    @property
    def gen_arrays(self) -> list[np.ndarray]:
        if "gen_arrays" not in self._cache:
            self._cache["gen_arrays"] = [m.entries for m in self.gen_actions]
        return self._cache["gen_arrays"]

    def identity_array(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.uint8)

    def action_array(self, g: Perm) -> np.ndarray:
        """Entries of the matrix by which ``g`` acts."""
        if self.act is not None:
            return self.act(g)
        ch = self.group.chain
        used = ch.factor(g)
        if used is None:
            raise DomainError(f"{g} is not in {self.group!r}")
        out = self.identity_array()
        for u in reversed(used):
            out = mm(out, self._node_array(u), self.field)
        return out

    def action(self, g: Perm) -> Matrix:
        return Matrix.from_entries(self.action_array(g), self.field)

    def _node_array(self, node: int) -> np.ndarray:
        memo = self._cache.setdefault("slp", {})
        if node in memo:
            return memo[node]
        defs = self.group.chain.defs
        stack = [node]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            d = defs[x]
            deps = [y for y in d[1:] if d[0] in ("m", "i") and y not in memo]
            if deps:
                stack.extend(deps)
                continue
            stack.pop()
            if d[0] == "e":
                memo[x] = self.identity_array()
            elif d[0] == "g":
                memo[x] = self.gen_arrays[d[1]]
            elif d[0] == "m":
                memo[x] = mm(memo[d[1]], memo[d[2]], self.field)
            else:
                memo[x] = inverse_arr(memo[d[1]], self.field)
        return memo[node]

    def check_homomorphism(self, words: int = 5, length: int = 6, seed: int = 0) -> bool:
        """Spot-check that random words act as the product of their letters."""
        if self.act is None or not self.group.generators:
            return True
        rng = random.Random(seed)
        gens = self.group.generators
        for _ in range(words):
            g = self.group.identity()
            m = self.identity_array()
            for _ in range(length):
                i = rng.randrange(len(gens))
                g = g * gens[i]
                m = mm(m, self.gen_arrays[i], self.field)
            if not np.array_equal(m, self.act(g)):
                return False
        return True


def module_from_arrays(group: PermGroup, arrays: Sequence[np.ndarray], field: Field,
                       label: str = "", act: ActFn | None = None) -> GModule:
    arrays = [np.asarray(a, dtype=np.uint8) for a in arrays]
    if arrays:
        dim = arrays[0].shape[0]
    elif act is not None:
        dim = act(group.identity()).shape[0]
    else:
        raise DomainError("dimension unknown for a module without generators")
    mats = tuple(Matrix.from_entries(a, field) for a in arrays)
    for m in mats:
        if not m.is_invertible():
            raise DomainError("generator action is not invertible")
    return GModule(group, field, dim, mats, label, act)


def module_from_matrices(group: PermGroup, mats: Sequence[Matrix], label: str = "",
                         dim: int | None = None, field: Field | None = None) -> GModule:
    """Module given only by generator matrices."""
    if mats:
        field = mats[0].field
        dim = mats[0].rows
    if dim is None or field is None:
        raise DomainError("dim and field required for a module without generators")
    return module_from_arrays(group, [m.entries for m in mats], field, label)


# ---------------------------------------------------------------------------
# constructors


def perm_matrix_array(g: Perm) -> np.ndarray:
    n = g.n
    a = np.zeros((n, n), dtype=np.uint8)
    a[np.arange(n), np.array(g.images)] = 1
    return a


def permutation_module(G: PermGroup, field: Field = GF2, label: str = "") -> GModule:
    """Natural permutation module: basis vector i is sent to basis vector i^g."""
    return module_from_arrays(G, [perm_matrix_array(g) for g in G.generators], field,
                              label or f"perm({G.name})", act=perm_matrix_array)


def trivial_module(G: PermGroup, field: Field = GF2, dim: int = 1) -> GModule:
    one = np.eye(dim, dtype=np.uint8)
    return module_from_arrays(G, [one] * len(G.generators), field, "trivial",
                              act=lambda g: one)


def regular_module(G: PermGroup, field: Field = GF2, budget: int = 4096) -> GModule:
    """Right regular module with basis the elements of G."""
    els = list(elements(G, budget))
    index = {e.images: i for i, e in enumerate(els)}

    def act(g: Perm) -> np.ndarray:
        a = np.zeros((len(els), len(els)), dtype=np.uint8)
        for i, e in enumerate(els):
            a[i, index[(e * g).images]] = 1
        return a

    return module_from_arrays(G, [act(g) for g in G.generators], field,
                              f"regular({G.name})", act=act)


def subquotient(V: GModule, sub_rows: np.ndarray, mod_rows: np.ndarray | None = None,
                label: str = "") -> GModule:
    """Module on span(sub_rows + mod_rows) / span(mod_rows), with basis the images of sub_rows.

    ``mod_rows`` must span a submodule and ``sub_rows + mod_rows`` an invariant
    subspace; both are checked on the generators.
    """
    S = np.atleast_2d(np.asarray(sub_rows, dtype=np.uint8))
    T = (np.zeros((0, V.dim), dtype=np.uint8) if mod_rows is None
         else np.atleast_2d(np.asarray(mod_rows, dtype=np.uint8)).reshape(-1, V.dim))
    s = S.shape[0]
    coord = Coordinatizer(np.concatenate([S, T], axis=0), V.field)
    if coord.rank != s + T.shape[0]:
        raise DomainError("subquotient basis is not independent")
    if T.shape[0]:
        tc = Coordinatizer(T, V.field)
        for a in V.gen_arrays:
            if tc.coords_many(mm(T, a, V.field)) is None:
                raise DomainError("modded-out subspace is not invariant")

    def act_arr(a: np.ndarray) -> np.ndarray:
        c = coord.coords_many(mm(S, a, V.field))
        if c is None:
            raise DomainError("subspace is not invariant")
        return c[:, :s].copy()

    arrays = [act_arr(a) for a in V.gen_arrays]
    act = None if V.act is None else (lambda g: act_arr(V.act(g)))
    return module_from_arrays(V.group, arrays, V.field, label or f"subquotient({V.label})", act)


def submodule(V: GModule, rows: np.ndarray, label: str = "") -> GModule:
    return subquotient(V, rows, None, label)


def quotient(V: GModule, sub_rows: np.ndarray, label: str = "") -> GModule:
    """V / span(sub_rows) with basis completing sub_rows to V."""
    U = Subspace.span(sub_rows, V.field, V.dim)
    comp = Subspace.whole(V.dim, V.field).quotient_basis(U)
    return subquotient(V, comp, U.rows, label or f"{V.label}/sub")


def restrict(V: GModule, H: PermGroup, label: str = "") -> GModule:
    """Restriction to a subgroup H of V.group (membership verified)."""
    if H.degree != V.group.degree:
        raise DomainError("subgroup of a different degree")
    for h in H.generators:
        if not V.group.contains(h):
            raise DomainError(f"{h} is not in {V.group!r}")
    arrays = [V.action_array(h) for h in H.generators]
    act = V.act
    if act is None:
        act = V.action_array
    mats = tuple(Matrix.from_entries(a, V.field) for a in arrays)
    return GModule(H, V.field, V.dim, mats, label or f"res({V.label})", act)


def summand_module(V: GModule, iota: np.ndarray, pi: np.ndarray, label: str = "") -> GModule:
    """The summand with inclusion rows ``iota`` (d x N) and projection ``pi`` (N x d)."""
    f = V.field

    def act_arr(a):
        return mm(mm(iota, a, f), pi, f)

    arrays = [act_arr(a) for a in V.gen_arrays]
    act = None if V.act is None else (lambda g: act_arr(V.act(g)))
    return module_from_arrays(V.group, arrays, f, label or f"summand({V.label})", act)


def extend_module(V: GModule, dst: Field) -> GModule:
    """Extension of scalars to a larger field."""
    if V.field == dst:
        return V
    table = np.array(embedding_table(V.field.k, dst.k), dtype=np.uint8)

    def ext(a):
        return table[a]

    arrays = [ext(a) for a in V.gen_arrays]
    act = None if V.act is None else (lambda g: ext(V.act(g)))
    return module_from_arrays(V.group, arrays, dst, V.label, act)


def direct_sum(V: GModule, W: GModule) -> GModule:
    if V.group is not W.group and V.group.generators != W.group.generators:
        raise DomainError("direct sum of modules for different groups")
    f = V.field

    def bd(a, b):
        out = np.zeros((V.dim + W.dim,) * 2, dtype=np.uint8)
        out[: V.dim, : V.dim] = a
        out[V.dim:, V.dim:] = b
        return out

    arrays = [bd(a, b) for a, b in zip(V.gen_arrays, W.gen_arrays)]
    act = None
    if V.act is not None and W.act is not None:
        act = lambda g: bd(V.act(g), W.act(g))  # noqa: E731
    return module_from_arrays(V.group, arrays, f, f"{V.label}+{W.label}", act)


def induce(W: GModule, G: PermGroup, budget: int, table: CosetTable | None = None) -> GModule:
    """Induced module W (x)_H FG with block basis indexed by right cosets H t_i."""
    H = W.group
    table = table or CosetTable(G, H, budget)
    m, d, f = table.index, W.dim, W.field

    def act(g: Perm) -> np.ndarray:
        out = np.zeros((m * d, m * d), dtype=np.uint8)
        for i in range(m):
            h, j = table.split(i, g)
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = W.action_array(h)
        return out

    return module_from_arrays(G, [act(g) for g in G.generators], f,
                              f"ind({W.label})", act)


# ---------------------------------------------------------------------------
# homomorphisms


def intertwiners(As: Sequence[np.ndarray], Bs: Sequence[np.ndarray], field: Field,
                 dV: int, dW: int, start: np.ndarray | None = None) -> np.ndarray:
    """Basis (s, dV, dW) of {X : A_i X = X B_i for all i}, inside span(start) if given."""
    N = dV * dW
    if start is None:
        C = np.eye(N, dtype=np.uint8).reshape(N, dV, dW)
    else:
        C = np.asarray(start, dtype=np.uint8).reshape(-1, dV, dW)
    for A, B in zip(As, Bs):
        if C.shape[0] == 0:
            break
        img = mm(A[None], C, field) ^ mm(C, B[None], field)
        K = left_kernel_arr(img.reshape(C.shape[0], N), field)
        C = mm(K, C.reshape(C.shape[0], N), field).reshape(-1, dV, dW)
    return C


@dataclass
class HomSpace:
    domain: GModule
    codomain: GModule
    basis_arrays: np.ndarray  # (s, dV, dW)

    @property
    def dim(self) -> int:
        return self.basis_arrays.shape[0]

    @property
    def basis(self) -> list[Matrix]:
        return [Matrix.from_entries(b, self.domain.field) for b in self.basis_arrays]

    def combine(self, coeffs: Sequence[int]) -> np.ndarray:
        f = self.domain.field
        out = np.zeros(self.basis_arrays.shape[1:], dtype=np.uint8)
        for c, b in zip(coeffs, self.basis_arrays):
            if c:
                out ^= f.mul_table[c][b]
        return out


def _same_group(V: GModule, W: GModule):
    if V.field != W.field:
        raise DomainError("modules over different fields")
    if V.group is not W.group and V.group.generators != W.group.generators:
        raise DomainError("modules for different groups (or generator lists)")


def hom_space(V: GModule, W: GModule, start: np.ndarray | None = None) -> HomSpace:
    """All module homomorphisms V -> W, as dim V x dim W matrices."""
    _same_group(V, W)
    B = intertwiners(V.gen_arrays, W.gen_arrays, V.field, V.dim, W.dim, start)
    return HomSpace(V, W, B)


def endomorphisms(V: GModule, start: np.ndarray | None = None) -> np.ndarray:
    """Cached endomorphism basis (s, d, d)."""
    if start is None and "end" in V._cache:
        return V._cache["end"]
    B = intertwiners(V.gen_arrays, V.gen_arrays, V.field, V.dim, V.dim, start)
    if start is None:
        V._cache["end"] = B
    return B


class EndoAlgebra:
    """End(V) with coordinates, products and identity coordinates."""

    def __init__(self, V: GModule, basis: np.ndarray | None = None):
        self.module = V
        self.field = V.field
        self.d = V.dim
        self.basis = endomorphisms(V) if basis is None else basis
        self.dim = self.basis.shape[0]
        self._coord = Coordinatizer(self.basis.reshape(self.dim, -1), self.field)
        idc = self.coords(np.eye(self.d, dtype=np.uint8))
        if idc is None:
            raise DomainError("identity is not in the endomorphism basis")
        self.identity_coords = idc

    def coords(self, X: np.ndarray) -> np.ndarray | None:
        return self._coord.coords(np.asarray(X, dtype=np.uint8).reshape(-1))

    def element(self, c: Sequence[int]) -> np.ndarray:
        c = np.asarray(c, dtype=np.uint8).reshape(1, -1)
        return mm(c, self.basis.reshape(self.dim, -1), self.field).reshape(self.d, self.d)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return mm(a, b, self.field)

    def structure_constants(self) -> np.ndarray:
        """T[i, j] = coordinates of basis[i] @ basis[j]."""
        prods = mm(self.basis[:, None], self.basis[None, :], self.field)
        flat = prods.reshape(self.dim * self.dim, -1)
        c = self._coord.coords_many(flat)
        if c is None:
            raise DomainError("basis is not closed under composition")
        return c.reshape(self.dim, self.dim, self.dim)

    def is_commutative(self) -> bool:
        b = self.basis
        return bool(np.array_equal(mm(b[:, None], b[None, :], self.field),
                                   mm(b[None, :], b[:, None], self.field)))

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        c = rng.integers(0, self.field.order, size=self.dim, dtype=np.uint8)
        return self.element(c)


def endo_algebra(V: GModule) -> EndoAlgebra:
    return EndoAlgebra(V)


# ---------------------------------------------------------------------------
# 2-group structure


def _require_2group(V: GModule):
    if not V.group.is_2group():
        raise DomainError("socle/radical only implemented over 2-groups")


def fixed_space(V: GModule) -> Subspace:
    """Common fixed space of all generators."""
    if not V.gen_arrays:
        return Subspace.whole(V.dim, V.field)
    eye = V.identity_array()
    stacked = np.concatenate([a ^ eye for a in V.gen_arrays], axis=1)
    return Subspace(V.field, V.dim, left_kernel_arr(stacked, V.field))


def socle_pgroup(V: GModule) -> Subspace:
    _require_2group(V)
    return fixed_space(V)


def radical_pgroup(V: GModule) -> Subspace:
    _require_2group(V)
    if not V.gen_arrays:
        return Subspace(V.field, V.dim, np.zeros((0, V.dim), dtype=np.uint8))
    eye = V.identity_array()
    seeds = np.concatenate([a ^ eye for a in V.gen_arrays], axis=0)
    return spin(seeds, list(V.gen_actions), V.field)


def trivial_summand_test(V: GModule) -> bool:
    """True iff the trivial module is a direct summand (socle not inside radical)."""
    return not radical_pgroup(V).contains(socle_pgroup(V))


def norm_operator(V: GModule, g: Perm) -> Matrix:
    """Matrix of the sum of all elements of the cyclic group generated by g."""
    if not V.group.contains(g):
        raise DomainError(f"{g} is not in {V.group!r}")
    A = V.action_array(g)
    total = V.identity_array()
    power = V.identity_array()
    for _ in range(g.order() - 1):
        power = mm(power, A, V.field)
        total = total ^ power
    return Matrix.from_entries(total, V.field)


# ---------------------------------------------------------------------------
# isomorphism


@dataclass
class IsoResult:
    status: str              # "isomorphic", "non-isomorphic", "not-found"
    matrix: Matrix | None = None
    details: str = ""

    def __bool__(self) -> bool:
        return self.status == "isomorphic"


def iso_test(V: GModule, W: GModule, seed: int = 0, tries: int = 200,
             sweep_limit: int = 1 << 16) -> IsoResult:
    """Search for an invertible intertwiner V -> W.

    Small hom spaces are swept exhaustively (so failure proves
    non-isomorphism); larger ones are sampled with a seeded generator.
    """
    _same_group(V, W)
    if V.dim != W.dim:
        return IsoResult("non-isomorphic", None, "dimensions differ")
    f = V.field
    if V.dim == 0:
        return IsoResult("isomorphic", Matrix.zeros(0, 0, f), "zero modules")
    H = hom_space(V, W)
    if H.dim == 0:
        return IsoResult("non-isomorphic", None, "no nonzero homomorphisms")
    if H.dim != endomorphisms(V).shape[0]:
        return IsoResult("non-isomorphic", None, "dim Hom(V,W) differs from dim End(V)")
    for b in H.basis_arrays:
        if rank_arr(b, f) == V.dim:
            return IsoResult("isomorphic", Matrix.from_entries(b, f), "basis element")
    if f.order ** H.dim <= sweep_limit:
        for idx in range(1, f.order ** H.dim):
            c = [(idx // f.order ** i) % f.order for i in range(H.dim)]
            X = H.combine(c)
            if rank_arr(X, f) == V.dim:
                return IsoResult("isomorphic", Matrix.from_entries(X, f), "exhaustive sweep")
        return IsoResult("non-isomorphic", None, "exhaustive sweep found no invertible map")
    rng = random.Random(seed)
    for _ in range(tries):
        c = [rng.randrange(f.order) for _ in range(H.dim)]
        X = H.combine(c)
        if rank_arr(X, f) == V.dim:
            return IsoResult("isomorphic", Matrix.from_entries(X, f), "seeded random search")
    return IsoResult("not-found", None, f"no invertible map in {tries} samples")


def is_intertwiner(V: GModule, W: GModule, X: np.ndarray) -> bool:
    f = V.field
    return all(np.array_equal(mm(a, X, f), mm(X, b, f))
               for a, b in zip(V.gen_arrays, W.gen_arrays))


def hom_dim(V: GModule, W: GModule) -> int:
    return hom_space(V, W).dim


def invariant_subspace(V: GModule, rows: np.ndarray) -> bool:
    """Whether span(rows) is invariant under every generator."""
    S = np.atleast_2d(np.asarray(rows, dtype=np.uint8))
    if S.shape[0] == 0:
        return True
    c = Coordinatizer(S, V.field)
    return all(c.coords_many(mm(S, a, V.field)) is not None for a in V.gen_arrays)


def module_budget_check(index: int, budget: int, what: str = "coset index"):
    if index > budget:
        raise BudgetError(what, index, budget)
