"""Permutations and permutation groups.

Composition is left to right: ``i^(g*h) = (i^g)^h``.  Points are 1-based in
all text and in :meth:`Perm.image`; the stored image tuple is 0-based.

Groups carry a stabilizer chain whose elements are recorded as straight-line
programs over the group's generators, so that any element can be evaluated
in a matrix representation given only the generator matrices.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

from .errors import BudgetError, DomainError, ParseError


class Perm:
    """A permutation of {1..n}; ``images[i]`` is the 0-based image of point i+1."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        """Build from 1-based cycles."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= n:
                    raise ParseError(f"point {a} outside 1..{n}")
                if a in seen:
                    raise ParseError(f"point {a} repeated in cycle notation")
                seen.add(a)
            for i, a in enumerate(cyc):
                img[a - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(img)

    @property
    def n(self) -> int:
        return len(self.images)

    def image(self, i: int) -> int:
        """1-based image of the 1-based point i."""
        return self.images[i - 1] + 1

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(map(other.images.__getitem__, self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    __invert__ = inverse

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        result = Perm.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def support(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self.images) if i != j]

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self})"


def perm_parse(text: str, n: int | None = None) -> Perm:
    """Parse cycle notation ``(1,2)(3,4)`` or an image list ``[2,1,4,3]``."""
    t = text.strip()
    if t.startswith("[") or (t and t[0].isdigit()):
        body = t.strip("[]")
        try:
            vals = [int(x) for x in re.split(r"[,\s]+", body.strip()) if x]
        except ValueError as exc:
            raise ParseError(f"bad image list {text!r}") from exc
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise ParseError(f"image list {text!r} is not a bijection")
        if n is not None and n != len(vals):
            if n < len(vals):
                raise ParseError(f"image list longer than degree {n}")
            vals = vals + list(range(len(vals) + 1, n + 1))
        return Perm(v - 1 for v in vals)
    if not re.fullmatch(r"(\(\s*(\d+\s*(,\s*\d+\s*)*)?\))+", t.replace(" ", "")) and t != "()":
        raise ParseError(f"malformed cycle notation {text!r}")
    cycles = []
    for body in re.findall(r"\(([^()]*)\)", t):
        body = body.strip()
        if body:
            cycles.append([int(x) for x in body.split(",")])
    top = max((max(c) for c in cycles), default=1)
    if n is None:
        n = top
    if top > n:
        raise ParseError(f"point {top} exceeds degree {n}")
    return Perm.from_cycles(cycles, n)


def perm_mul(g: Perm, h: Perm) -> Perm:
    return g * h


def conj(g: Perm, h: Perm) -> Perm:
    """h^-1 g h."""
    return h.inverse() * g * h


def commutator(g: Perm, h: Perm) -> Perm:
    """[g, h] = g^-1 h^-1 g h."""
    return g.inverse() * h.inverse() * g * h


# ---------------------------------------------------------------------------
# stabilizer chains with straight-line programs


@dataclass
class _Level:
    base: int
    orbit: dict = dc_field(default_factory=dict)  # point -> node index of transversal element


class StabChain:
    """Verified stabilizer chain; elements are nodes of a straight-line program.

    Node definitions: ``("g", i)`` generator i, ``("e",)`` identity,
    ``("m", a, b)`` product, ``("i", a)`` inverse.
    """

    def __init__(self, gens: Sequence[Perm], degree: int, base_prefix: Sequence[int] = (),
                 seed: int = 0):
        self.degree = degree
        self.perms: list[Perm] = []
        self.defs: list[tuple] = []
        self.ident = self._node(Perm.identity(degree), ("e",))
        self.gen_nodes = [self._node(g, ("g", i)) for i, g in enumerate(gens)]
        self.levels: list[_Level] = [_Level(b) for b in base_prefix]
        self.strong: list[int] = []
        self._rng = random.Random(seed)
        self._build()

    # -- nodes
    def _node(self, p: Perm, d: tuple) -> int:
        self.perms.append(p)
        self.defs.append(d)
        return len(self.perms) - 1

    def _mul(self, a: int, b: int) -> int:
        if a == self.ident:
            return b
        if b == self.ident:
            return a
        return self._node(self.perms[a] * self.perms[b], ("m", a, b))

    def _inv(self, a: int) -> int:
        if a == self.ident:
            return a
        return self._node(self.perms[a].inverse(), ("i", a))

    # -- structure
    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def order(self) -> int:
        r = 1
        for lv in self.levels:
            r *= len(lv.orbit)
        return r

    def level_gens(self, i: int) -> list[int]:
        bs = [lv.base for lv in self.levels[:i]]
        return [s for s in self.strong if all(self.perms[s].images[b] == b for b in bs)]

    def _recompute_orbit(self, i: int):
        lv = self.levels[i]
        gens = self.level_gens(i)
        orbit = {lv.base: self.ident}
        queue = deque([lv.base])
        while queue:
            x = queue.popleft()
            ux = orbit[x]
            for s in gens:
                y = self.perms[s].images[x]
                if y not in orbit:
                    orbit[y] = self._mul(ux, s)
                    queue.append(y)
        lv.orbit = orbit

    def sift_perm(self, g: Perm, start: int = 0) -> tuple[Perm, int, list[int]]:
        """Sift g from level ``start``; returns (residue, stop level, used transversal nodes)."""
        used = []
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            p = g.images[lv.base]
            u = lv.orbit.get(p)
            if u is None:
                return g, i, used
            if u != self.ident:
                g = g * self.perms[u].inverse()
            used.append(u)
        return g, len(self.levels), used

    def _residue_node(self, node: int, used: list[int]) -> int:
        r = node
        for u in used:
            if u != self.ident:
                r = self._mul(r, self._inv(u))
        return r

    def _add_strong(self, node: int, level: int):
        g = self.perms[node]
        if level == len(self.levels):
            moved = next(i for i in range(self.degree) if g.images[i] != i)
            self.levels.append(_Level(moved))
        self.strong.append(node)
        for i in range(level + 1):
            self._recompute_orbit(i)

    def _try_add(self, node: int, start: int = 0) -> bool:
        res, lvl, used = self.sift_perm(self.perms[node], start)
        if res.is_identity():
            return False
        rnode = self._residue_node(node, used)
        self._add_strong(rnode, lvl)
        return True

    def _build(self):
        for i in range(len(self.levels)):
            self._recompute_orbit(i)
        for g in self.gen_nodes:
            if not self.perms[g].is_identity():
                self._try_add(g)
        # randomised phase: product replacement, stop after a run of trivial sifts
        if self.gen_nodes:
            pool = list(self.gen_nodes) * max(1, 5 // max(1, len(self.gen_nodes)) + 1)
            acc = self.gen_nodes[0]
            for _ in range(20):
                acc = self._pr_step(pool, acc)
            quiet = 0
            while quiet < 25:
                acc = self._pr_step(pool, acc)
                quiet = 0 if self._try_add(acc) else quiet + 1
        self._verify()

    def _pr_step(self, pool: list[int], acc: int) -> int:
        rng = self._rng
        i = rng.randrange(len(pool))
        j = rng.randrange(len(pool) - 1) if len(pool) > 1 else 0
        if len(pool) > 1 and j >= i:
            j += 1
        if len(pool) > 1:
            pool[i] = self._mul(pool[i], pool[j]) if rng.random() < 0.5 else self._mul(pool[j], pool[i])
        return self._mul(acc, pool[i])

    def _verify(self):
        """Deterministic Schreier-generator check; adds residues until complete."""
        changed = True
        while changed:
            changed = False
            for i in range(len(self.levels) - 1, -1, -1):
                lv = self.levels[i]
                gens = self.level_gens(i)
                for x in sorted(lv.orbit):
                    ux = lv.orbit[x]
                    px = self.perms[ux]
                    for s in gens:
                        ps = self.perms[s]
                        y = ps.images[x]
                        uy = lv.orbit[y]
                        sch = px * ps * self.perms[uy].inverse()
                        res, lvl, used = self.sift_perm(sch, i + 1)
                        if not res.is_identity():
                            node = self._mul(self._mul(ux, s), self._inv(uy))
                            self._add_strong(self._residue_node(node, used), lvl)
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break

    def contains(self, g: Perm) -> bool:
        return self.sift_perm(g)[0].is_identity()

    def factor(self, g: Perm) -> list[int] | None:
        """Transversal nodes u_0, u_1, ... with g = ... u_1 u_0, or None if g is not in the group."""
        res, _, used = self.sift_perm(g)
        if not res.is_identity():
            return None
        return used


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators, with a lazily built chain.

    ``kind`` optionally records that the group is the full symmetric or
    alternating group on ``support`` (0-based points), enabling constant-time
    membership and order.
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None, *,
                 name: str = "", seed: int = 0, kind: tuple | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise DomainError("degree required for a group without generators")
            degree = gens[0].n
        for g in gens:
            if g.n != degree:
                raise DomainError("generators of different degrees")
        self.generators = tuple(gens)
        self.degree = degree
        self.name = name
        self.seed = seed
        self.kind = kind
        self._chain: StabChain | None = None
        self._cache: dict = {}

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree {self.degree}, {len(self.generators)} gens>"

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.generators, self.degree, seed=self.seed)
        return self._chain

    def order(self) -> int:
        if self.kind is not None:
            typ, support = self.kind
            f = math.factorial(len(support))
            return f // 2 if typ == "alt" and len(support) >= 2 else f
        if "order" not in self._cache:
            self._cache["order"] = self.chain.order()
        return self._cache["order"]

    def contains(self, g: Perm) -> bool:
        if g.n != self.degree:
            return False
        if self.kind is not None:
            typ, support = self.kind
            if any(g.images[i] != i for i in range(self.degree) if i not in support):
                return False
            return typ == "sym" or g.is_even()
        return self.chain.contains(g)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def is_2group(self) -> bool:
        o = self.order()
        return o & (o - 1) == 0

    def random_element(self, rng: random.Random) -> Perm:
        g = self.identity()
        for lv in reversed(self.chain.levels):
            pts = sorted(lv.orbit)
            g = g * self.chain.perms[lv.orbit[rng.choice(pts)]]
        return g

    def stabilizer_chain_with_base(self, prefix: Sequence[int]) -> StabChain:
        key = ("chain", tuple(prefix))
        if key not in self._cache:
            self._cache[key] = StabChain(self.generators, self.degree, prefix, seed=self.seed)
        return self._cache[key]

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        """Pointwise stabilizer of 0-based ``points``."""
        pts = list(points)
        if self.kind is not None:
            typ, support = self.kind
            rest = [p for p in sorted(support) if p not in set(pts)]
            if typ == "alt":
                return alternating_group(len(rest), self.degree, points=rest)
            return symmetric_group(len(rest), self.degree, points=rest)
        ch = self.stabilizer_chain_with_base(pts)
        gens = [ch.perms[s] for s in ch.level_gens(len(pts))]
        return PermGroup(_prune(gens, self.degree), self.degree, seed=self.seed)

    def transversal_of_stabilizer(self, point: int) -> list[Perm]:
        """Elements u_x (x in the orbit of ``point``, sorted) with point^u_x = x."""
        ch = self.stabilizer_chain_with_base([point])
        lv = ch.levels[0]
        return [ch.perms[lv.orbit[x]] for x in sorted(lv.orbit)]


def _prune(gens: Sequence[Perm], degree: int) -> list[Perm]:
    """Drop identities and duplicates."""
    out = []
    seen = set()
    for g in gens:
        if not g.is_identity() and g not in seen:
            seen.add(g)
            out.append(g)
    return out


def group_from_gens(gens: Sequence[Perm], degree: int | None = None, name: str = "",
                    seed: int = 0) -> PermGroup:
    """Group generated by ``gens``; the chain is built and verified immediately."""
    G = PermGroup(gens, degree, name=name, seed=seed)
    G.order()
    return G


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([], degree, name="1")


def symmetric_group(m: int, degree: int | None = None, points: Sequence[int] | None = None) -> PermGroup:
    """Symmetric group on ``points`` (0-based; default 0..m-1)."""
    degree = degree or m
    pts = list(points) if points is not None else list(range(m))
    gens = []
    if m >= 2:
        gens.append(_cycle_on(pts[:2], degree))
    if m >= 3:
        gens.append(_cycle_on(pts, degree))
    return PermGroup(gens, degree, name=f"S{m}", kind=("sym", frozenset(pts)))


def alternating_group(m: int, degree: int | None = None, points: Sequence[int] | None = None) -> PermGroup:
    degree = degree or m
    pts = list(points) if points is not None else list(range(m))
    gens = []
    if m >= 3:
        gens.append(_cycle_on(pts[:3], degree))
    if m >= 4:
        gens.append(_cycle_on(pts if m % 2 == 1 else pts[1:], degree))
    return PermGroup(gens, degree, name=f"A{m}", kind=("alt", frozenset(pts)))


def _cycle_on(points: Sequence[int], degree: int) -> Perm:
    img = list(range(degree))
    for i, p in enumerate(points):
        img[p] = points[(i + 1) % len(points)]
    return Perm(img)


# ---------------------------------------------------------------------------
# enumeration


def elements(G: PermGroup, budget: int) -> Iterator[Perm]:
    """All elements, each once, in chain-word lexicographic order."""
    o = G.order()
    if o > budget:
        raise BudgetError("group order", o, budget)
    ch = G.chain
    levels = ch.levels

    def rec(i: int) -> Iterator[Perm]:
        if i == len(levels):
            yield G.identity()
            return
        us = [ch.perms[levels[i].orbit[x]] for x in sorted(levels[i].orbit)]
        for r in rec(i + 1):
            for u in us:
                yield r * u

    return rec(0)


class CosetTable:
    """Right cosets H g of H in G with canonical representatives.

    The canonical element of H g minimises the tuple of images of H's base
    points; it is found level by level through H's chain without branching.
    """

    def __init__(self, G: PermGroup, H: PermGroup, budget: int):
        index = G.order() // H.order()
        if G.order() % H.order():
            raise DomainError("H is not a subgroup of G (order does not divide)")
        if index > budget:
            raise BudgetError("coset index", index, budget)
        if not H.is_subgroup_of(G):
            raise DomainError("H is not a subgroup of G")
        self.G, self.H, self.index = G, H, index
        ch = H.chain
        self._levels = [(lv.base, [(x, ch.perms[u]) for x, u in sorted(lv.orbit.items())])
                        for lv in ch.levels]
        self.reps: list[Perm] = []
        self.lookup: dict[tuple, int] = {}
        start = self.canonical(G.identity())
        self._add(start)
        i = 0
        while i < len(self.reps):
            t = self.reps[i]
            for s in G.generators:
                c = self.canonical(t * s)
                if c.images not in self.lookup:
                    self._add(c)
            i += 1
        if len(self.reps) != index:
            raise AssertionError(f"transversal has {len(self.reps)} cosets, expected {index}")

    def _add(self, c: Perm):
        self.lookup[c.images] = len(self.reps)
        self.reps.append(c)

    def canonical(self, g: Perm) -> Perm:
        for base, trans in self._levels:
            gi = g.images
            best = None
            bu = None
            for x, u in trans:
                v = gi[x]
                if best is None or v < best:
                    best, bu = v, u
            g = bu * g
        return g

    def coset_of(self, g: Perm) -> int:
        return self.lookup[self.canonical(g).images]

    def split(self, i: int, g: Perm) -> tuple[Perm, int]:
        """For t_i g = h t_j return (h, j)."""
        x = self.reps[i] * g
        j = self.coset_of(x)
        return x * self.reps[j].inverse(), j


def right_transversal(G: PermGroup, H: PermGroup, budget: int) -> list[Perm]:
    """One canonical representative per right coset H g (identity first)."""
    return CosetTable(G, H, budget).reps


# ---------------------------------------------------------------------------
# orbits, closures, Frattini data


def fixed_points(G: PermGroup) -> set[int]:
    """1-based points fixed by every generator."""
    return {i + 1 for i in range(G.degree) if all(g.images[i] == i for g in G.generators)}


def orbit_partition(G: PermGroup) -> list[list[int]]:
    """Orbits as sorted 1-based lists, ordered by smallest point."""
    seen = set()
    out = []
    for i in range(G.degree):
        if i in seen:
            continue
        orb = {i}
        queue = [i]
        while queue:
            x = queue.pop()
            for g in G.generators:
                y = g.images[x]
                if y not in orb:
                    orb.add(y)
                    queue.append(y)
        seen |= orb
        out.append(sorted(p + 1 for p in orb))
    return out


def subgroup(G: PermGroup, gens: Sequence[Perm], name: str = "") -> PermGroup:
    """Subgroup of G generated by ``gens`` (membership in G checked)."""
    for g in gens:
        if not G.contains(g):
            raise DomainError(f"{g} is not in {G!r}")
    return PermGroup(_prune(gens, G.degree), G.degree, name=name, seed=G.seed)


def closure_with(H: PermGroup, extra: Sequence[Perm], name: str = "") -> PermGroup:
    """<H, extra> with a pruned generating set."""
    gens = list(H.generators)
    cur = PermGroup(gens, H.degree, seed=H.seed)
    for x in extra:
        if not cur.contains(x):
            gens.append(x)
            cur = PermGroup(gens, H.degree, seed=H.seed)
    cur.name = name
    return cur


def normal_closure(G: PermGroup, S: Sequence[Perm], name: str = "") -> PermGroup:
    """Smallest normal subgroup of G containing S."""
    N = closure_with(trivial_group(G.degree), list(S))
    while True:
        new = []
        for n in N.generators:
            for g in G.generators:
                c = conj(n, g)
                if not N.contains(c) and c not in new:
                    new.append(c)
        if not new:
            break
        N = closure_with(N, new)
    N.name = name
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, comms, name=f"[{G.name},{G.name}]" if G.name else "")


def frattini_2group(G: PermGroup) -> PermGroup:
    """Phi(G) = <g^2, [g,h]> for a 2-group G."""
    if not G.is_2group():
        raise DomainError("Frattini subgroup requested for a non-2-group")
    if "frattini" not in G._cache:
        gens = G.generators
        S = [g * g for g in gens] + [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
        G._cache["frattini"] = normal_closure(G, S, name=f"Phi({G.name})" if G.name else "")
    return G._cache["frattini"]


@dataclass
class FrattiniData:
    """Burnside basis of a 2-group and coordinates in P / Phi(P)."""

    P: PermGroup
    phi: PermGroup
    basis: list[Perm]            # lifts of a basis of P / Phi(P)
    tower: list[PermGroup]       # tower[i] = <Phi, basis[:i]>

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coords(self, g: Perm) -> list[int]:
        """Vector v in F_2^r with g in Phi * prod basis[i]^v[i]."""
        v = [0] * self.rank
        for i in range(self.rank - 1, -1, -1):
            if not self.tower[i].contains(g):
                v[i] = 1
                g = g * self.basis[i].inverse()
        if not self.phi.contains(g):
            raise DomainError("element not in P")
        return v

    def lift(self, v: Sequence[int]) -> Perm:
        g = self.P.identity()
        for i, a in enumerate(v):
            if a:
                g = g * self.basis[i]
        return g


def frattini_data(P: PermGroup) -> FrattiniData:
    if "fdata" in P._cache:
        return P._cache["fdata"]
    phi = frattini_2group(P)
    target = P.order() // phi.order()
    basis: list[Perm] = []
    tower = [phi]
    cur = phi
    for g in P.generators:
        if not cur.contains(g):
            basis.append(g)
            cur = closure_with(cur, [g])
            tower.append(cur)
    if 2 ** len(basis) != target:
        raise AssertionError("P / Phi(P) is not elementary abelian of the expected rank")
    data = FrattiniData(P, phi, basis, tower[: len(basis)])
    P._cache["fdata"] = data
    return data


def maximal_subgroups_containing(P: PermGroup, S: PermGroup | None = None) -> list[PermGroup]:
    """Maximal subgroups of the 2-group P containing S, in hyperplane order.

    Hyperplanes of P/Phi(P) are listed by the functional f (as an integer,
    bit i = value on basis vector i) in increasing order.
    """
    data = frattini_data(P)
    r = data.rank
    img = []
    if S is not None:
        for g in S.generators:
            if not P.contains(g):
                raise DomainError(f"{g} is not in P")
            img.append(data.coords(g))
    out = []
    for f in range(1, 2 ** r):
        fv = [(f >> i) & 1 for i in range(r)]
        if any(sum(a * b for a, b in zip(fv, v)) % 2 for v in img):
            continue
        p = next(i for i in range(r) if fv[i])
        kvecs = []
        for i in range(r):
            if i == p:
                continue
            v = [0] * r
            v[i] = 1
            if fv[i]:
                v[p] = 1
            kvecs.append(v)
        lifts = [data.lift(v) for v in kvecs]
        R = PermGroup(list(data.phi.generators) + lifts, P.degree, seed=P.seed,
                      name=f"M{f}({P.name})" if P.name else f"M{f}")
        R._cache["hyperplane"] = fv
        R._cache["lifts"] = lifts
        R._cache["outside"] = data.basis[p]
        out.append(R)
    return out


# ---------------------------------------------------------------------------
# conjugacy


@dataclass
class ConjugacyResult:
    mode: str            # "witness", "sylow-argument", "invariant-only"
    conjugate: bool      # for invariant-only: invariants compatible
    witness: Perm | None = None
    details: str = ""


def conjugates_to(A: PermGroup, B: PermGroup, g: Perm) -> bool:
    """A^g == B."""
    return A.order() == B.order() and all(B.contains(conj(a, g)) for a in A.generators)


def _two_part(x: int) -> int:
    return x & -x


def conjugacy_witness(G: PermGroup, A: PermGroup, B: PermGroup, budget: int) -> ConjugacyResult:
    """Find g in G with A^g = B, trying the Sylow argument, search, then invariants."""
    if A.order() != B.order():
        return ConjugacyResult("invariant-only", False, None, "orders differ")
    e = G.identity()
    if conjugates_to(A, B, e):
        return ConjugacyResult("witness", True, e, "identical subgroups")
    # (1) Sylow argument for pointwise stabilizers in a full symmetric/alternating group
    if G.kind is not None:
        typ, support = G.kind
        fa = sorted(p - 1 for p in fixed_points(A))
        fb = sorted(p - 1 for p in fixed_points(B))
        outside = set(range(G.degree)) - support
        if len(fa) == len(fb) and set(fa) >= outside and set(fb) >= outside:
            stab = G.pointwise_stabilizer(fb)
            if A.order() == _two_part(stab.order()):
                g = _align(G, fa, fb)
                if g is not None:
                    Ag = PermGroup([conj(a, g) for a in A.generators], G.degree)
                    if stab.order() <= budget:
                        for h in elements(stab, budget):
                            if conjugates_to(Ag, B, h):
                                return ConjugacyResult("witness", True, g * h,
                                                       "Sylow subgroups of matching point stabilizers")
                    return ConjugacyResult("sylow-argument", True, None,
                                           f"both are Sylow 2-subgroups of stabilizers of {len(fa)} points")
    # (2) exhaustive search
    if G.order() <= budget:
        for g in elements(G, budget):
            if conjugates_to(A, B, g):
                return ConjugacyResult("witness", True, g, "exhaustive search")
        return ConjugacyResult("witness", False, None, "exhaustive search found no conjugator")
    # (3) invariants
    ok = _invariants(A, budget) == _invariants(B, budget)
    return ConjugacyResult("invariant-only", ok, None, "orbit type and element orders")


def _align(G: PermGroup, fa: list[int], fb: list[int]) -> Perm | None:
    """An element of G (full sym/alt on its support) mapping the set fa onto fb."""
    n = G.degree
    img = [None] * n
    for a, b in zip(fa, fb):
        img[a] = b
    rest_src = [i for i in range(n) if i not in set(fa)]
    rest_dst = [i for i in range(n) if i not in set(fb)]
    for a, b in zip(rest_src, rest_dst):
        img[a] = b
    g = Perm(img)
    if G.contains(g):
        return g
    for pool in (fb, rest_dst):
        if len(pool) >= 2:
            t = _cycle_on(pool[:2], n)
            if G.contains(g * t):
                return g * t
    return None


def _invariants(A: PermGroup, budget: int):
    orbit_type = sorted(len(o) for o in orbit_partition(A))
    if A.order() <= budget:
        orders = sorted(g.order() for g in elements(A, budget))
    else:
        orders = None
    return orbit_type, orders


def even_part(G: PermGroup, name: str = "") -> PermGroup:
    """G intersected with the alternating group, via Schreier generators."""
    gens = list(G.generators)
    odd = [s for s in gens if not s.is_even()]
    if not odd:
        return PermGroup(gens, G.degree, name=name, seed=G.seed)
    s0 = odd[0]
    s0i = s0.inverse()
    sch = []
    for s in gens:
        if s.is_even():
            sch += [s, s0 * s * s0i]
        else:
            sch += [s * s0i, s0 * s]
    return closure_with(trivial_group(G.degree), _prune(sch, G.degree), name=name)
