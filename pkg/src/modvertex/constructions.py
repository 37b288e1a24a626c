"""Sylow 2-subgroups of symmetric and alternating groups and the natural modules.

Points are 1-based in the public helpers' text and 0-based inside Perm
image tuples.  Blocks of the 2-adic expansion are realised by offsets: block
j occupies the consecutive points ``offsets[j] + 1 .. offsets[j] + parts[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DomainError
from .field import GF2, Field, field_make
from .gmod import GModule, permutation_module, restrict, subquotient
from .linalg import Matrix
from .perm import (Perm, PermGroup, alternating_group, closure_with, commutator, even_part,
                   frattini_2group, group_from_gens, symmetric_group, trivial_group)


# ---------------------------------------------------------------------------
# 2-adic profile


@dataclass(frozen=True)
class TwoAdicProfile:
    """Binary expansion of the even part of n, largest block first."""

    n: int
    parts: tuple[int, ...]
    exponents: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def l(self) -> int:  # noqa: E743 - number of blocks
        return len(self.parts)

    @property
    def nl(self) -> int:
        return self.parts[-1]

    def block(self, j: int) -> list[int]:
        """0-based points of block j (0-based block index)."""
        return list(range(self.offsets[j], self.offsets[j] + self.parts[j]))

    def halves(self, j: int) -> tuple[list[int], list[int]]:
        b = self.block(j)
        h = len(b) // 2
        return b[:h], b[h:]


def two_adic_profile(n: int) -> TwoAdicProfile:
    """Expansion of n (of n - 1 when n is odd) into decreasing powers of 2."""
    if n < 2:
        raise DomainError("n must be at least 2")
    m = n - (n % 2)
    exps = [i for i in range(m.bit_length() - 1, 0, -1) if (m >> i) & 1]
    parts = [1 << i for i in exps]
    offs = [sum(parts[:j]) for j in range(len(parts))]
    return TwoAdicProfile(n, tuple(parts), tuple(exps), tuple(offs))


def case_tag(n: int) -> str:
    """Which argument applies to n: the small cases, odd, or a 2-adic shape."""
    if n < 3:
        raise DomainError("n must be at least 3")
    if n in (3, 4, 6):
        return f"n{n}"
    if n % 2:
        return "odd"
    p = two_adic_profile(n)
    if p.l == 1:
        return "two_power"
    if p.nl > 2:
        return "nl_gt2"
    return {2: "nl2_l2", 3: "nl2_l3"}.get(p.l, "nl2_lge4")


# ---------------------------------------------------------------------------
# generators


def _cycles(cycles, degree: int) -> Perm:
    return Perm.from_cycles(cycles, degree)


def w_gen(s: int, offset: int, degree: int) -> Perm:
    """The involution prod_{k=1}^{2^(s-1)} (k, k + 2^(s-1)), shifted by ``offset``."""
    h = 1 << (s - 1)
    return _cycles([(offset + k, offset + k + h) for k in range(1, h + 1)], degree)


def sylow_sym_blocks(n: int, degree: int | None = None) -> list[list[Perm]]:
    """Per-block generator lists w_{2,j}, w_{4,j}, ... of the Sylow 2-subgroup of S_n."""
    degree = degree or n
    p = two_adic_profile(n)
    return [[w_gen(s, p.offsets[j], degree) for s in range(1, p.exponents[j] + 1)]
            for j in range(p.l)]


def block_cycles(n: int, degree: int | None = None) -> list[Perm]:
    """y_{n_j} = w_{n_j,j} ... w_{2,j} for each block, an n_j-cycle."""
    out = []
    for blk in sylow_sym_blocks(n, degree):
        g = Perm.identity(degree or n)
        for h in reversed(blk):
            g = g * h
        out.append(g)
    return out


def sylow_sym(n: int, degree: int | None = None) -> list[Perm]:
    """Minimal generating set of the Sylow 2-subgroup P_n of S_n."""
    return [g for blk in sylow_sym_blocks(n, degree) for g in blk]


def sylow_alt(n: int, degree: int | None = None) -> list[Perm]:
    """Minimal generating set of Q_n = P_n intersected with A_n."""
    if n < 4:
        raise DomainError("the Sylow 2-subgroup of A_n has no generators for n < 4")
    degree = degree or n
    p = two_adic_profile(n)
    blocks = sylow_sym_blocks(n, degree)
    if p.l == 1:
        m = p.exponents[0]
        h = 1 << (m - 1)
        first = _cycles([(1, 2), (h + 1, h + 2)], degree)
        return [first] + blocks[0][1:]
    last = blocks[-1][0]
    out = []
    for j in range(p.l):
        if j < p.l - 1:
            out.append(blocks[j][0] * last)
        out.extend(blocks[j][1:])
    return out


def alt_generators(n: int, degree: int | None = None) -> list[Perm]:
    """(1,2,3) and the long cycle (1..n) for odd n, (2..n) for even n."""
    degree = degree or n
    gens = [_cycles([(1, 2, 3)], degree)]
    if n >= 4:
        cyc = tuple(range(1, n + 1)) if n % 2 else tuple(range(2, n + 1))
        gens.append(_cycles([cyc], degree))
    return gens


def sym_generators(n: int, degree: int | None = None) -> list[Perm]:
    degree = degree or n
    return [_cycles([(1, 2)], degree), _cycles([tuple(range(1, n + 1))], degree)]


def alt_group(n: int) -> PermGroup:
    G = alternating_group(n)
    G.name = f"A{n}"
    return G


def sym_group(n: int) -> PermGroup:
    G = symmetric_group(n)
    G.name = f"S{n}"
    return G


def sylow_alt_group(m: int, degree: int) -> PermGroup:
    """Q_m on the points 1..m inside degree ``degree`` (trivial for m < 4)."""
    if m < 4:
        return PermGroup([], degree, name=f"Q{m}")
    return PermGroup(sylow_alt(m - (m % 2), degree), degree, name=f"Q{m}")


def sylow_sym_group(m: int, degree: int) -> PermGroup:
    if m < 2:
        return PermGroup([], degree, name=f"P{m}")
    return PermGroup(sylow_sym(m - (m % 2), degree), degree, name=f"P{m}")


# ---------------------------------------------------------------------------
# named subgroups


@dataclass
class NamedSubgroups:
    n: int
    profile: TwoAdicProfile
    w: list[list[Perm]]           # per block: w_{2,j}, ..., w_{n_j,j}
    y: list[Perm]                 # y_{n_j}
    y_alt: list[Perm]             # y'_{n_j} = y_{n_j} y_{n_l}
    x: list[Perm]                 # x_{n_j} = y_{n_j}^2
    P: PermGroup
    Q: PermGroup
    B: PermGroup
    B_alt: PermGroup
    Y: PermGroup
    Y_alt: PermGroup
    X: PermGroup
    _extra: dict = dc_field(default_factory=dict, repr=False)

    def frattini_P(self) -> PermGroup:
        return frattini_2group(self.P)

    def frattini_Q(self) -> PermGroup:
        return frattini_2group(self.Q)

    def embedded_Q(self, m: int) -> PermGroup:
        """Q_m on the first m points."""
        key = ("Q", m)
        if key not in self._extra:
            self._extra[key] = sylow_alt_group(m, self.n)
        return self._extra[key]

    def embedded_P(self, m: int) -> PermGroup:
        key = ("P", m)
        if key not in self._extra:
            self._extra[key] = sylow_sym_group(m, self.n)
        return self._extra[key]


def base_group_gens(p: TwoAdicProfile, degree: int) -> list[Perm]:
    """Generators of B_n: each block's two half copies of P_{n_j/2}."""
    gens = []
    for j in range(p.l):
        if p.parts[j] < 4:
            continue
        top = w_gen(p.exponents[j], p.offsets[j], degree)
        for s in range(1, p.exponents[j]):
            g = w_gen(s, p.offsets[j], degree)
            gens.append(g)
            gens.append(top * g * top)
    return gens


def named_subgroups(n: int) -> NamedSubgroups:
    """P_n, Q_n, B_n, B_n', Y_n, Y_n', X_n for even n >= 4."""
    if n < 4 or n % 2:
        raise DomainError("named subgroups need even n >= 4")
    p = two_adic_profile(n)
    w = sylow_sym_blocks(n)
    y = block_cycles(n)
    y_alt = [yj * y[-1] for yj in y]
    x = [yj * yj for yj in y]
    P = group_from_gens(sylow_sym(n), name=f"P{n}")
    Q = group_from_gens(sylow_alt(n), name=f"Q{n}")
    B = PermGroup(base_group_gens(p, n), n, name=f"B{n}")
    B_alt = even_part(B, name=f"B{n}'")
    Y = PermGroup(y, n, name=f"Y{n}")
    Y_alt = closure_with(trivial_group(n), y_alt, name=f"Y{n}'")
    X = closure_with(trivial_group(n), x, name=f"X{n}")
    return NamedSubgroups(n, p, w, y, y_alt, x, P, Q, B, B_alt, Y, Y_alt, X)


def top_quotient_image(H: PermGroup, j: int, profile: TwoAdicProfile) -> int:
    """Order (1 or 2) of the image of H in the half-swap quotient of block j (0-based)."""
    if profile.parts[j] == 2:
        raise DomainError("a block of size 2 has no half-swap quotient")
    first, second = profile.halves(j)
    sfirst = set(first)
    block = set(first) | set(second)
    swaps = False
    for g in H.generators:
        if any(g.images[i] not in block for i in block):
            raise DomainError("generator does not preserve the block")
        if g.images[first[0]] not in sfirst:
            swaps = True
    return 2 if swaps else 1


# ---------------------------------------------------------------------------
# natural modules


@dataclass
class NaturalModules:
    n: int
    field: Field
    M: GModule                 # over S_n
    M1: GModule                # sum-zero submodule, basis gamma_i + gamma_n
    M2_row: np.ndarray         # the all-ones vector spanning the trivial submodule
    D: GModule                 # over S_n
    E: GModule                 # D restricted to A_n
    M1_basis: np.ndarray       # rows (n-1) x n
    D_basis: np.ndarray        # rows of M1 representing the D basis (in M coordinates)
    delta: list[int]           # delta[i] = 0-based gamma index of the (i+1)-th delta vector

    def gamma_to_D(self, v: np.ndarray) -> np.ndarray:
        """Coordinates in D of the image of v (a vector of M lying in M1)."""
        v = np.asarray(v, dtype=np.uint8)
        n = self.n
        if np.bitwise_xor.reduce(v) != 0:
            raise DomainError("vector is not in the sum-zero submodule")
        if n % 2:
            return v[: n - 1].copy()
        c = v[: n - 2].copy()
        c ^= v[n - 2]
        return c

    def delta_vector(self, indices) -> np.ndarray:
        """Vector of M (gamma coordinates) equal to the sum of delta_i, i 1-based."""
        v = np.zeros(self.n, dtype=np.uint8)
        for i in indices:
            v[self.delta[i - 1]] ^= 1
        return v


def natural_modules(n: int, field: Field = GF2) -> NaturalModules:
    if n < 3:
        raise DomainError("natural modules need n >= 3")
    S = sym_group(n)
    A = alt_group(n)
    M = permutation_module(S, field, f"M, n={n}")
    M1_basis = np.zeros((n - 1, n), dtype=np.uint8)
    M1_basis[np.arange(n - 1), np.arange(n - 1)] = 1
    M1_basis[:, n - 1] = 1
    ones = np.ones((1, n), dtype=np.uint8)
    M1 = subquotient(M, M1_basis, None, f"M', n={n}")
    if n % 2:
        D = subquotient(M, M1_basis, None, f"D, n={n}")
        D_basis = M1_basis
    else:
        D_basis = M1_basis[: n - 2]
        D = subquotient(M, D_basis, ones, f"D, n={n}")
    E = restrict(D, A, f"E, n={n}")
    return NaturalModules(n, field, M, M1, ones[0], D, E, M1_basis, D_basis, delta_indices(n))


def delta_indices(n: int) -> list[int]:
    """The re-indexing of the permutation basis along the cycles y_{n_j}."""
    out = list(range(n))
    if n < 2:
        return out
    p = two_adic_profile(n)
    for j, y in enumerate(block_cycles(n)):
        pt = p.offsets[j]
        for i in range(p.parts[j]):
            out[p.offsets[j] + i] = pt
            pt = y.images[pt]
    return out


def distinguished_vectors(n: int) -> dict[str, np.ndarray]:
    """Block half-sums and related vectors of M, in gamma coordinates.

    Keys: ``"j'"`` and ``"j''"`` (half sums of block j, 1-based), ``"j"``
    (block sums), ``"0"`` (sum of the second halves), ``"+"`` (all ones).
    """
    if n < 4 or n % 2:
        raise DomainError("distinguished vectors need even n >= 4")
    p = two_adic_profile(n)
    delta = delta_indices(n)
    out: dict[str, np.ndarray] = {}
    total0 = np.zeros(n, dtype=np.uint8)
    for j in range(p.l):
        a = np.zeros(n, dtype=np.uint8)
        b = np.zeros(n, dtype=np.uint8)
        for i in range(p.parts[j] // 2):
            a[delta[p.offsets[j] + 2 * i]] = 1
            b[delta[p.offsets[j] + 2 * i + 1]] = 1
        out[f"{j + 1}'"] = a
        out[f"{j + 1}''"] = b
        out[f"{j + 1}"] = a ^ b
        total0 ^= b
    out["0"] = total0
    out["+"] = np.ones(n, dtype=np.uint8)
    return out


def in_sum_zero(v: np.ndarray) -> bool:
    return int(np.bitwise_xor.reduce(np.asarray(v, dtype=np.uint8))) == 0


# ---------------------------------------------------------------------------
# explicit bases and endomorphisms


def three_block_summand_bases(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Two bases (gamma coordinates in M) whose spans give the two summands on Y_n'.

    Only for three blocks with last block of size 2.
    """
    p = two_adic_profile(n)
    if n % 2 or p.l != 3 or p.nl != 2:
        raise DomainError("needs a 2-adic expansion with three blocks, the last of size 2")
    n1, n2 = p.parts[0], p.parts[1]
    delta = delta_indices(n)

    def vec(idx):
        v = np.zeros(n, dtype=np.uint8)
        for i in idx:
            v[delta[i - 1]] ^= 1
        return v

    b = [vec([1, n - 1] + [n1 + 1 + 2 * i for i in range(n2 // 2)])]
    b += [vec([j, j - 1, n - 1, n]) for j in range(2, n1 + 1)]
    bt = [vec([n1 + 1, n - 1] + [1 + 2 * i for i in range(n1 // 2)])]
    bt += [vec([n1 + j, n1 + j - 1, n - 1, n]) for j in range(2, n2 + 1)]
    return np.array(b), np.array(bt)


def two_block_endo_basis(n: int, field: Field = GF2) -> list[Matrix]:
    """Six endomorphisms of D for two blocks, the last of size 2 (n > 6).

    With D's basis split into the two halves of the large block: the two
    block projections, the two maps onto each half's socle, and the two
    cross maps between the halves.
    """
    p = two_adic_profile(n)
    if n % 2 or p.l != 2 or p.nl != 2 or n <= 6:
        raise DomainError("needs two blocks, the last of size 2, and n > 6")
    h = p.parts[0] // 2
    I = np.eye(h, dtype=np.uint8)  # noqa: E741
    J = np.ones((h, h), dtype=np.uint8)
    Z = np.zeros((h, h), dtype=np.uint8)
    blocks = [
        [[I, Z], [Z, Z]], [[Z, Z], [Z, I]],
        [[J, Z], [Z, Z]], [[Z, Z], [Z, J]],
        [[Z, J], [Z, Z]], [[Z, Z], [J, Z]],
    ]
    return [Matrix.from_entries(np.block(b), field) for b in blocks]


def young_alt_sym_groups(n: int) -> dict[str, PermGroup]:
    """For two blocks with last of size 2: S_h x S_h, A_h x A_h, S_h x S_h x S_2 and its even part."""
    p = two_adic_profile(n)
    if n % 2 or p.l != 2 or p.nl != 2:
        raise DomainError("needs two blocks, the last of size 2")
    h = p.parts[0] // 2
    first, second = list(range(h)), list(range(h, 2 * h))

    def sym_on(pts):
        return list(symmetric_group(len(pts), n, pts).generators)

    def alt_on(pts):
        return list(alternating_group(len(pts), n, pts).generators)

    swap_last = _cycles([(n - 1, n)], n)
    SS = PermGroup(sym_on(first) + sym_on(second), n, name=f"S{h}xS{h}")
    AA = PermGroup(alt_on(first) + alt_on(second), n, name=f"A{h}xA{h}")
    H = PermGroup(sym_on(first) + sym_on(second) + [swap_last], n, name=f"S{h}xS{h}xS2")
    t12 = _cycles([(1, 2)], n)
    t12b = _cycles([(h + 1, h + 2)], n)
    Halt = PermGroup(alt_on(first) + alt_on(second) + [t12 * t12b, t12 * swap_last], n,
                     name=f"(S{h}xS{h}xS2)^+")
    return {"SS": SS, "AA": AA, "H": H, "H_alt": Halt}


def three_maximal_over_base(n: int) -> dict[str, PermGroup]:
    """For two blocks with last of size 2: R_1, R_2, R_3 in P_n and their even parts."""
    ns = named_subgroups(n)
    p = ns.profile
    if p.l != 2 or p.nl != 2:
        raise DomainError("needs two blocks, the last of size 2")
    B = list(ns.B.generators)
    Balt = list(ns.B_alt.generators)
    w_top = ns.w[0][-1]
    w21, w22 = ns.w[0][0], ns.w[1][0]
    out = {
        "R1": PermGroup(B + [ns.y_alt[0]], n, name="R1"),
        "R2": PermGroup(B + [ns.y[0]], n, name="R2"),
        "R3": PermGroup(B + [w22], n, name="R3"),
        "R1'": PermGroup(Balt + [ns.y_alt[0]], n, name="R1'"),
        "R2'": PermGroup(Balt + [w_top], n, name="R2'"),
        "R3'": PermGroup(Balt + [w21 * w22], n, name="R3'"),
    }
    return out


# ---------------------------------------------------------------------------
# the six-point data


@dataclass
class SixPointData:
    Q: PermGroup
    Q6: PermGroup
    U_basis: np.ndarray      # rows in the D basis of n = 6, over GF(4)
    V_basis: np.ndarray
    action_D: dict           # generator text -> 4x4 matrix in the D basis
    action_UV: dict          # generator text -> 4x4 matrix in the U+V basis
    field: Field


def six_point_data() -> SixPointData:
    """The Klein four subgroup Q < Q_6 < A_6 and the two-dimensional pieces U, V."""
    F4 = field_make(2)
    w, w2 = 2, 3  # a primitive cube root of unity and its square
    Q = group_from_gens([_cycles([(1, 2), (3, 4)], 6), _cycles([(3, 4), (5, 6)], 6)], 6, name="Q")
    Q6 = group_from_gens([_cycles([(1, 3), (2, 4)], 6), _cycles([(1, 2), (3, 4)], 6),
                          _cycles([(3, 4), (5, 6)], 6)], 6, name="Q6")
    U = np.array([[1, 0, 0, w], [0, 1, w, 0]], dtype=np.uint8)
    V = np.array([[0, w, 1, 0], [w, 0, 0, 1]], dtype=np.uint8)
    d = {
        "(1,3)(2,4)": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        "(1,2)(3,4)": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        "(3,4)(5,6)": [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]],
    }
    uv = {
        "(1,3)(2,4)": d["(1,3)(2,4)"],
        "(1,2)(3,4)": d["(1,2)(3,4)"],
        "(3,4)(5,6)": [[w, w2, 0, 0], [w2, w, 0, 0], [0, 0, w2, w], [0, 0, w, w2]],
    }
    action_D = {k: Matrix.from_entries(v, F4) for k, v in d.items()}
    action_UV = {k: Matrix.from_entries(v, F4) for k, v in uv.items()}
    return SixPointData(Q, Q6, U, V, action_D, action_UV, F4)


def orbit_split_witness(n: int) -> list[tuple[int, int]]:
    """For 2-power n: (j, 1 + 2^(j-1)) pairs whose orbits split when w'_{2^j} is dropped."""
    p = two_adic_profile(n)
    if p.l != 1:
        raise DomainError("needs a 2-power")
    return [(j, 1 + (1 << (j - 1))) for j in range(1, p.exponents[0] + 1)]


def commutator_gens(gens: list[Perm]) -> list[Perm]:
    return [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
