"""Dense linear algebra over GF(2^k).

Matrices store their entries bit-packed in little-endian uint64 words
(``64 // k`` entries per word, entries never straddle a word).  Row vectors
act on the right: ``v @ A``.  Elimination over GF(2) runs directly on the
packed words; products go through BLAS on bit planes.  Most internal helpers
work on plain ``uint8`` entry arrays and are wrapped by :class:`Matrix`.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParseError
from .field import GF2, Field, embedding_table, field_make

# ---------------------------------------------------------------------------
# packing


def words_per_row(cols: int, k: int) -> int:
    per = 64 // k
    return max(1, -(-cols // per))


def pack(entries: np.ndarray, k: int) -> np.ndarray:
    """Pack a 2-D uint8 entry array into uint64 words."""
    entries = np.asarray(entries, dtype=np.uint8)
    rows, cols = entries.shape
    nw = words_per_row(cols, k)
    if k == 1:
        b = np.packbits(entries, axis=1, bitorder="little")
        out = np.zeros((rows, nw * 8), dtype=np.uint8)
        out[:, : b.shape[1]] = b
        return out.view("<u8").reshape(rows, nw).astype(np.uint64)
    per = 64 // k
    pad = np.zeros((rows, nw * per), dtype=np.uint64)
    pad[:, :cols] = entries
    shifts = (np.arange(per, dtype=np.uint64) * np.uint64(k))
    return np.bitwise_or.reduce(pad.reshape(rows, nw, per) << shifts, axis=2)


def unpack(data: np.ndarray, cols: int, k: int) -> np.ndarray:
    """Inverse of :func:`pack`."""
    rows = data.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    if k == 1:
        b = np.ascontiguousarray(data, dtype="<u8").view(np.uint8).reshape(rows, -1)
        return np.unpackbits(b, axis=1, bitorder="little")[:, :cols].copy()
    per = 64 // k
    shifts = np.arange(per, dtype=np.uint64) * np.uint64(k)
    mask = np.uint64((1 << k) - 1)
    e = (data[:, :, None] >> shifts) & mask
    return e.reshape(rows, -1)[:, :cols].astype(np.uint8)


# ---------------------------------------------------------------------------
# array-level kernels (uint8 entries)


def mm(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    """Matrix product over ``field``; broadcasts like ``np.matmul``."""
    inner = a.shape[-1]
    ftype = np.float32 if inner * field.k < (1 << 23) else np.float64
    if field.k == 1:
        r = np.matmul(a.astype(ftype), b.astype(ftype))
        return (r.astype(np.int64) & 1).astype(np.uint8)
    k = field.k
    ap = [((a >> i) & 1).astype(ftype) for i in range(k)]
    bp = [((b >> i) & 1).astype(ftype) for i in range(k)]
    red = _reductions(field)
    out = None
    for d in range(2 * k - 1):
        acc = None
        for i in range(max(0, d - k + 1), min(d, k - 1) + 1):
            t = np.matmul(ap[i], bp[d - i])
            acc = t if acc is None else acc + t
        bits = (acc.astype(np.int64) & 1).astype(np.uint8)
        term = bits * np.uint8(red[d])
        out = term if out is None else out ^ term
    return out


_RED_CACHE: dict = {}


def _reductions(field: Field) -> list:
    """Field value of x^d for d < 2k-1."""
    if field.k not in _RED_CACHE:
        vals = []
        x = 1
        for _ in range(2 * field.k - 1):
            vals.append(x)
            x = field.mul(x, field.generator) if field.k > 1 else x
        _RED_CACHE[field.k] = vals
    return _RED_CACHE[field.k]


def scal(c: int, a: np.ndarray, field: Field) -> np.ndarray:
    if c == 1:
        return a.copy()
    return field.mul_table[c][a]


def _rref_packed(data: np.ndarray, ncols: int) -> tuple[np.ndarray, list[int]]:
    data = np.array(data, dtype=np.uint64, copy=True)
    nrows = data.shape[0]
    pivots: list[int] = []
    row = 0
    for c in range(ncols):
        if row == nrows:
            break
        w = c >> 6
        bit = np.uint64(1 << (c & 63))
        col = data[row:, w] & bit
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        p = row + int(nz[0])
        if p != row:
            data[[row, p]] = data[[p, row]]
        hit = np.flatnonzero(data[:, w] & bit)
        hit = hit[hit != row]
        if hit.size:
            data[hit, w:] ^= data[row, w:]
        pivots.append(c)
        row += 1
    return data, pivots


def _rref_gfq(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.uint8, copy=True)
    nrows, ncols = a.shape
    mt, inv = field.mul_table, field.inv_table
    pivots: list[int] = []
    row = 0
    for c in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(a[row:, c])
        if nz.size == 0:
            continue
        p = row + int(nz[0])
        if p != row:
            a[[row, p]] = a[[p, row]]
        pv = a[row, c]
        if pv != 1:
            a[row] = mt[inv[pv]][a[row]]
        f = a[:, c].copy()
        f[row] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] ^= mt[f[hit][:, None], a[row][None, :]]
        pivots.append(c)
        row += 1
    return a, pivots


def rref_arr(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an entry array; returns (R, pivots) with R
    truncated to its nonzero rows."""
    a = np.asarray(a, dtype=np.uint8)
    if a.ndim != 2:
        raise DomainError("rref expects a 2-D array")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.uint8), []
    if field.k == 1:
        data, piv = _rref_packed(pack(a, 1), a.shape[1])
        return unpack(data[: len(piv)], a.shape[1], 1), piv
    r, piv = _rref_gfq(a, field)
    return r[: len(piv)], piv


def rank_arr(a: np.ndarray, field: Field) -> int:
    return len(rref_arr(a, field)[1])


def nullspace_arr(a: np.ndarray, field: Field) -> np.ndarray:
    """Basis (rows) of {x : a @ x^T = 0}."""
    a = np.asarray(a, dtype=np.uint8)
    ncols = a.shape[1]
    r, piv = rref_arr(a, field)
    pset = set(piv)
    free = [c for c in range(ncols) if c not in pset]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    if free:
        fr = np.array(free)
        basis[np.arange(len(free)), fr] = 1
        if piv:
            basis[:, np.array(piv)] = r[:, fr].T
    return basis


def left_kernel_arr(a: np.ndarray, field: Field) -> np.ndarray:
    """Basis (rows) of {v : v @ a = 0}."""
    return nullspace_arr(np.asarray(a, dtype=np.uint8).T, field)


def inverse_arr(a: np.ndarray, field: Field) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise DomainError("inverse of a non-square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1)
    r, piv = rref_arr(aug, field)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise DomainError("matrix is singular")
    return r[:n, n:].copy()


class Coordinatizer:
    """Express vectors in terms of a fixed list of row vectors.

    Built from ``rows`` (m x N); ``coords(v)`` returns c with c @ rows = v, or
    None when v is outside the span.  Rows need not be independent; the
    returned coordinates use the first independent subset.
    """

    def __init__(self, rows: np.ndarray, field: Field):
        rows = np.asarray(rows, dtype=np.uint8)
        self.field = field
        self.m, self.N = rows.shape
        aug = np.concatenate([rows, np.eye(self.m, dtype=np.uint8)], axis=1)
        r, piv = rref_arr(aug, field)
        self.pivots = [p for p in piv if p < self.N]
        t = len(self.pivots)
        self.R = r[:t, : self.N]
        self.T = r[:t, self.N:]
        self.rank = t

    def coords_many(self, vs: np.ndarray) -> np.ndarray | None:
        vs = np.atleast_2d(np.asarray(vs, dtype=np.uint8))
        if self.rank == 0:
            if vs.any():
                return None
            return np.zeros((vs.shape[0], self.m), dtype=np.uint8)
        c = vs[:, self.pivots]
        if (mm(c, self.R, self.field) ^ vs).any():
            return None
        return mm(c, self.T, self.field)

    def coords(self, v: np.ndarray) -> np.ndarray | None:
        r = self.coords_many(np.asarray(v).reshape(1, -1))
        return None if r is None else r[0]

    def contains_many(self, vs: np.ndarray) -> np.ndarray:
        vs = np.atleast_2d(np.asarray(vs, dtype=np.uint8))
        if self.rank == 0:
            return ~vs.any(axis=1)
        c = vs[:, self.pivots]
        return ~(mm(c, self.R, self.field) ^ vs).any(axis=1)


# ---------------------------------------------------------------------------
# Matrix


class Matrix:
    """Immutable dense matrix over GF(2^k) with bit-packed storage."""

    __slots__ = ("field", "rows", "cols", "data", "_e")

    def __init__(self, field: Field, rows: int, cols: int, data: np.ndarray, _entries=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self.data.setflags(write=False)
        self._e = _entries
        if _entries is not None:
            _entries.setflags(write=False)

    @classmethod
    def from_entries(cls, entries, field: Field = GF2) -> "Matrix":
        e = np.array(entries, dtype=np.uint8, copy=True)
        if e.ndim == 1:
            e = e.reshape(1, -1)
        if e.ndim != 2:
            raise DomainError("matrix entries must be 2-D")
        if e.size and int(e.max()) >= field.order:
            raise DomainError(f"entry out of range for {field!r}")
        return cls(field, e.shape[0], e.shape[1], pack(e, field.k), e)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = GF2) -> "Matrix":
        return cls.from_entries(np.zeros((rows, cols), dtype=np.uint8), field)

    @classmethod
    def identity(cls, n: int, field: Field = GF2) -> "Matrix":
        return cls.from_entries(np.eye(n, dtype=np.uint8), field)

    @property
    def entries(self) -> np.ndarray:
        """Read-only uint8 array of entries."""
        if self._e is None:
            e = unpack(self.data, self.cols, self.field.k)
            e.setflags(write=False)
            self._e = e
        return self._e

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and np.array_equal(self.data, other.data))

    __hash__ = None

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise DomainError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DomainError("shape mismatch in addition")
        return Matrix(self.field, self.rows, self.cols, self.data ^ other.data)

    __sub__ = __add__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix.from_entries(mm(self.entries, other.entries, self.field), self.field)

    def scale(self, c: int) -> "Matrix":
        return Matrix.from_entries(scal(c, self.entries, self.field), self.field)

    @property
    def T(self) -> "Matrix":
        return Matrix.from_entries(self.entries.T, self.field)

    def inverse(self) -> "Matrix":
        return Matrix.from_entries(inverse_arr(self.entries, self.field), self.field)

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(self.entries, np.eye(self.rows, dtype=np.uint8))

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __pow__(self, e: int) -> "Matrix":
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.rows, self.field)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def row_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix.from_entries(self.entries[start:stop], self.field)

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.field.k}"]
        for row in self.entries:
            lines.append("".join(format(int(x), "x") for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        try:
            rows, cols, k = (int(t) for t in lines[0].split())
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad matrix header: {lines[:1]!r}") from exc
        field = field_make(k)
        body = lines[1:]
        if len(body) != rows:
            raise ParseError(f"expected {rows} rows, found {len(body)}")
        e = np.zeros((rows, cols), dtype=np.uint8)
        for i, ln in enumerate(body):
            if len(ln) != cols:
                raise ParseError(f"row {i} has {len(ln)} digits, expected {cols}")
            try:
                e[i] = [field.from_hex(ch) for ch in ln]
            except (ValueError, DomainError) as exc:
                raise ParseError(f"bad digit in row {i}: {ln!r}") from exc
        return cls.from_entries(e, field)


def stack(mats: Sequence[Matrix]) -> Matrix:
    """Vertical concatenation."""
    field = mats[0].field
    return Matrix.from_entries(np.concatenate([m.entries for m in mats], axis=0), field)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    field = mats[0].field
    n = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    e = np.zeros((n, c), dtype=np.uint8)
    r0 = c0 = 0
    for m in mats:
        e[r0:r0 + m.rows, c0:c0 + m.cols] = m.entries
        r0 += m.rows
        c0 += m.cols
    return Matrix.from_entries(e, field)


def rref(A: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form: (R with the nonzero rows, rank, pivots)."""
    if A.field.k == 1 and A.rows and A.cols:
        data, piv = _rref_packed(A.data, A.cols)
        r = len(piv)
        return Matrix(A.field, r, A.cols, data[:r].copy()), r, piv
    r, piv = rref_arr(A.entries, A.field)
    return Matrix.from_entries(r.reshape(len(piv), A.cols), A.field), len(piv), piv


def rank(A: Matrix) -> int:
    return rref(A)[1]


# ---------------------------------------------------------------------------
# Subspaces


class Subspace:
    """Row space of a matrix, stored as a reduced echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_coord")

    def __init__(self, field: Field, ambient_dim: int, rows=None, _reduced=False, _pivots=None):
        self.field = field
        self.ambient_dim = ambient_dim
        if rows is None:
            e = np.zeros((0, ambient_dim), dtype=np.uint8)
            piv: list[int] = []
        else:
            e = np.asarray(rows, dtype=np.uint8).reshape(-1, ambient_dim)
            if _reduced:
                piv = list(_pivots)
            else:
                e, piv = rref_arr(e, field) if e.shape[0] else (e, [])
        self.basis = Matrix.from_entries(e.reshape(len(piv), ambient_dim), field)
        self.pivots = piv
        self._coord = None

    @classmethod
    def span(cls, vectors, field: Field = GF2, ambient_dim: int | None = None) -> "Subspace":
        if isinstance(vectors, Matrix):
            return cls(vectors.field, vectors.cols, vectors.entries)
        arr = np.asarray(vectors, dtype=np.uint8)
        if ambient_dim is None:
            ambient_dim = arr.shape[-1]
        return cls(field, ambient_dim, arr.reshape(-1, ambient_dim))

    @classmethod
    def whole(cls, dim: int, field: Field = GF2) -> "Subspace":
        return cls(field, dim, np.eye(dim, dtype=np.uint8), True, list(range(dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def rows(self) -> np.ndarray:
        return self.basis.entries

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.ambient_dim} over {self.field!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and np.array_equal(self.rows, other.rows))

    __hash__ = None

    def _coordinatizer(self) -> Coordinatizer:
        if self._coord is None:
            self._coord = Coordinatizer(self.rows, self.field)
        return self._coord

    def contains_vector(self, v) -> bool:
        return bool(self._coordinatizer().contains_many(np.asarray(v).reshape(1, -1))[0])

    def contains(self, other: "Subspace") -> bool:
        if other.dim == 0:
            return True
        return bool(self._coordinatizer().contains_many(other.rows).all())

    def coords(self, v) -> np.ndarray | None:
        return self._coordinatizer().coords(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return Subspace(self.field, self.ambient_dim, np.concatenate([self.rows, other.rows]))

    def intersect(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.ambient_dim)
        both = np.concatenate([self.rows, other.rows])
        ker = left_kernel_arr(both, self.field)
        vecs = mm(ker[:, : self.dim], self.rows, self.field) if ker.shape[0] else ker[:, : self.ambient_dim]
        return Subspace(self.field, self.ambient_dim, vecs)

    def quotient_basis(self, sub: "Subspace") -> np.ndarray:
        """Rows of self completing a basis of ``sub`` to a basis of self."""
        _same_ambient(self, sub)
        if not self.contains(sub):
            raise DomainError("quotient by a subspace that is not contained")
        old = set(sub.pivots)
        keep = [i for i, p in enumerate(self.pivots) if p not in old]
        return self.rows[keep].copy()

    def image(self, A: Matrix) -> "Subspace":
        return Subspace(self.field, A.cols, mm(self.rows, A.entries, self.field))


def _same_ambient(U: Subspace, V: Subspace):
    if U.ambient_dim != V.ambient_dim or U.field != V.field:
        raise DomainError("subspaces live in different ambient spaces")


def kernel(A: Matrix) -> Subspace:
    """Left kernel {v : v @ A = 0}."""
    return Subspace(A.field, A.rows, left_kernel_arr(A.entries, A.field))


def image(A: Matrix) -> Subspace:
    """Row space of A (the image of v -> v @ A)."""
    return Subspace(A.field, A.cols, A.entries)


def solve_left(A: Matrix, b) -> np.ndarray | None:
    """Some x with x @ A = b, or None."""
    return Coordinatizer(A.entries, A.field).coords(np.asarray(b, dtype=np.uint8))


def subspace_ops(U: Subspace, V: Subspace, op: str):
    """Lattice operations: sum, intersect, contains (V in U), quotient_basis (U/V)."""
    if op == "sum":
        return U + V
    if op == "intersect":
        return U.intersect(V)
    if op == "contains":
        return U.contains(V)
    if op == "quotient_basis":
        return U.quotient_basis(V)
    raise DomainError(f"unknown subspace operation {op!r}")


def spin(seeds, actions: Sequence[Matrix], field: Field | None = None) -> Subspace:
    """Smallest subspace containing ``seeds`` and invariant under ``actions``."""
    if isinstance(seeds, Matrix):
        field = seeds.field
        s = seeds.entries
    else:
        s = np.atleast_2d(np.asarray(seeds, dtype=np.uint8))
        field = field or (actions[0].field if actions else GF2)
    n = s.shape[1]
    acts = [a.entries for a in actions]
    basis, piv = rref_arr(s, field) if s.shape[0] else (s, [])
    new = basis
    while new.shape[0]:
        imgs = [mm(new, a, field) for a in acts]
        if not imgs:
            break
        trial = np.concatenate([basis] + imgs)
        nb, npiv = rref_arr(trial, field)
        if len(npiv) == len(piv):
            break
        # rows of the new echelon basis with new pivots span a complement
        old = set(piv)
        new = nb[[i for i, p in enumerate(npiv) if p not in old]]
        basis, piv = nb, npiv
    return Subspace(field, n, basis, True, piv)


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Polynomial over a field; coefficients lowest degree first."""

    __slots__ = ("field", "c")

    def __init__(self, coeffs: Iterable[int], field: Field = GF2):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(int(x) for x in c)
        self.field = field

    @classmethod
    def x(cls, field: Field = GF2) -> "Poly":
        return cls([0, 1], field)

    @classmethod
    def one(cls, field: Field = GF2) -> "Poly":
        return cls([1], field)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.c == other.c and self.field == other.field

    def __hash__(self):
        return hash((self.c, self.field.k))

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if a == 1:
                terms.append(mono)
            else:
                terms.append(f"{a:x}" if i == 0 else f"{a:x}*{mono}")
        return " + ".join(terms)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return Poly([x ^ y for x, y in zip(a, b)], self.field)

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.c or not other.c:
            return Poly([], self.field)
        f = self.field
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] ^= f.mul(a, b)
        return Poly(out, f)

    def scale(self, a: int) -> "Poly":
        return Poly([self.field.mul(a, x) for x in self.c], self.field)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        f = self.field
        r = list(self.c)
        q = [0] * max(0, len(r) - len(other.c) + 1)
        inv = f.inv(other.lc)
        dg = other.degree
        for i in range(len(r) - 1, dg - 1, -1):
            a = r[i]
            if a:
                t = f.mul(a, inv)
                q[i - dg] = t
                for j, b in enumerate(other.c):
                    if b:
                        r[i - dg + j] ^= f.mul(t, b)
        return Poly(q, f), Poly(r[:dg] if dg > 0 else [], f)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly([a if i % 2 == 1 else 0 for i, a in enumerate(self.c)][1:], self.field)

    def pow_mod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.one(self.field)
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def __call__(self, A: Matrix) -> Matrix:
        """Evaluate at a square matrix (Horner)."""
        f = self.field
        if A.field != f:
            raise DomainError("field mismatch in polynomial evaluation")
        n = A.rows
        a = A.entries
        eye = np.eye(n, dtype=np.uint8)
        acc = np.zeros((n, n), dtype=np.uint8)
        for coef in reversed(self.c):
            acc = mm(acc, a, f)
            if coef:
                acc ^= eye * np.uint8(coef)
        return Matrix.from_entries(acc, f)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s a + t b = g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly([], f)
    t0, t1 = Poly([], f), Poly.one(f)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = f.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def min_poly(A: Matrix) -> Poly:
    """Minimal polynomial via the Krylov sequence of matrix powers."""
    n = A.rows
    if n != A.cols:
        raise DomainError("min_poly of a non-square matrix")
    f = A.field
    if n == 0:
        return Poly.one(f)
    a = A.entries
    powers = [np.eye(n, dtype=np.uint8)]
    for _ in range(n):
        powers.append(mm(powers[-1], a, f))
    cols = np.stack([p.reshape(-1) for p in powers], axis=1)
    r, piv = rref_arr(cols, f)
    j = next(i for i in range(n + 2) if i >= len(piv) or piv[i] != i)
    coeffs = [int(r[i, j]) for i in range(j)] + [1]
    return Poly(coeffs, f)


def _pth_root(p: Poly) -> Poly:
    f = p.field
    return Poly([f.sqrt(p.c[i]) for i in range(0, len(p.c), 2)], f)


def _squarefree(p: Poly) -> list[tuple[Poly, int]]:
    f = p.field
    one = Poly.one(f)
    out: list[tuple[Poly, int]] = []
    dp = p.derivative()
    if dp.is_zero():
        return [(g, 2 * e) for g, e in _squarefree(_pth_root(p))] if p.degree > 0 else []
    c = poly_gcd(p, dp)
    w = p // c
    i = 1
    while w != one:
        y = poly_gcd(w, c)
        fac = w // y
        if fac != one:
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if c != one:
        out.extend((g, 2 * e) for g, e in _squarefree(_pth_root(c)))
    return out


def _ddf(p: Poly) -> list[tuple[Poly, int]]:
    f = p.field
    q = f.order
    x = Poly.x(f)
    h = x
    out = []
    d = 0
    rest = p
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _edf(p: Poly, d: int, rng: random.Random) -> list[Poly]:
    if p.degree == d:
        return [p.monic()]
    f = p.field
    kd = f.k * d
    while True:
        a = Poly([rng.randrange(f.order) for _ in range(p.degree)], f)
        if a.degree <= 0:
            continue
        t = a % p
        acc = t
        for _ in range(kd - 1):
            t = (t * t) % p
            acc = acc + t
        g = poly_gcd(acc, p)
        if 0 < g.degree < p.degree:
            return _edf(g, d, rng) + _edf(p // g, d, rng)


def factor_poly(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs).

    The product of the factors times ``p.lc`` equals ``p``.
    """
    if p.is_zero():
        raise DomainError("factor_poly of the zero polynomial")
    m = p.monic()
    if m.degree == 0:
        return []
    rng = random.Random(0x5EED ^ hash(m.c))
    counts: dict[Poly, int] = {}
    for g, e in _squarefree(m):
        for h, d in _ddf(g):
            for irr in _edf(h, d, rng):
                counts[irr] = counts.get(irr, 0) + e
    out = sorted(counts.items(), key=lambda t: (t[0].degree, t[0].c))
    prod = Poly.one(p.field)
    for g, e in out:
        for _ in range(e):
            prod = prod * g
    if prod != m:
        raise AssertionError(f"factorisation of {p} failed re-multiplication")
    return out


def extend_scalars(A: Matrix, src: Field, dst: Field) -> Matrix:
    """Entrywise embedding of A from ``src`` into ``dst``."""
    if A.field != src:
        raise DomainError("matrix is not over the source field")
    table = np.array(embedding_table(src.k, dst.k), dtype=np.uint8)
    return Matrix.from_entries(table[A.entries], dst)


def random_matrix(rows: int, cols: int, field: Field, rng: np.random.Generator) -> Matrix:
    return Matrix.from_entries(rng.integers(0, field.order, size=(rows, cols), dtype=np.uint8), field)
