"""Slow, independent reference implementations used by tests and ``selftest``.

Nothing here shares code with the optimised paths: plain Python lists and
per-entry field arithmetic only.
"""

from __future__ import annotations

import itertools

from .field import Field


def naive_rref(rows: list[list[int]], field: Field) -> tuple[list[list[int]], list[int]]:
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    piv = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, x) for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x ^ field.mul(f, y) for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == nr:
            break
    return a[:r], piv


def naive_rank(rows, field: Field) -> int:
    return len(naive_rref(rows, field)[1])


def naive_matmul(a, b, field: Field):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            if a[i][k]:
                for j in range(p):
                    out[i][j] ^= field.mul(a[i][k], b[k][j])
    return out


def naive_left_kernel_dim(rows, field: Field) -> int:
    return len(rows) - naive_rank(rows, field)


def closure_order(gens: list[tuple[int, ...]], degree: int) -> int:
    """Order of a permutation group by breadth-first closure (0-based image tuples)."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[x] for x in g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def _mat_mul(a, b, field):
    return naive_matmul(a, b, field)


def commutant_elements(gen_mats, field: Field, basis):
    """All elements sum c_i basis_i of the given endomorphism basis (lists of lists)."""
    m = len(basis)
    d = len(basis[0]) if m else 0
    for coeffs in itertools.product(range(field.order), repeat=m):
        x = [[0] * d for _ in range(d)]
        for c, b in zip(coeffs, basis):
            if c:
                for i in range(d):
                    for j in range(d):
                        if b[i][j]:
                            x[i][j] ^= field.mul(c, b[i][j])
        yield x


def naive_endomorphisms(gen_mats, field: Field):
    """Basis of {X : A X = X A for all A} by per-entry linear equations."""
    d = len(gen_mats[0]) if gen_mats else 0
    n = d * d
    eqs = []
    for a in gen_mats:
        for i in range(d):
            for j in range(d):
                # (A X)_{ij} - (X A)_{ij} = sum_k A_ik X_kj - X_ik A_kj
                row = [0] * n
                for k in range(d):
                    if a[i][k]:
                        row[k * d + j] ^= a[i][k]
                    if a[k][j]:
                        row[i * d + k] ^= a[k][j]
                eqs.append(row)
    if not eqs:
        eqs = [[0] * n]
    r, piv = naive_rref(eqs, field)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, p in zip(r, piv):
            x[p] = row[f]
        basis.append([x[i * d:(i + 1) * d] for i in range(d)])
    return basis


def idempotent_summand_dims(gen_mats, field: Field) -> list[int]:
    """Dims of an indecomposable decomposition from exhaustive idempotent search.

    Repeatedly picks a nonzero idempotent of minimal rank orthogonal to the
    ones already chosen; such an idempotent is primitive.
    """
    d = len(gen_mats[0])
    basis = naive_endomorphisms(gen_mats, field)
    idem = []
    for x in commutant_elements(gen_mats, field, basis):
        if any(any(r) for r in x) and _mat_mul(x, x, field) == x:
            idem.append((naive_rank(x, field), x))
    idem.sort(key=lambda t: t[0])
    chosen = []
    total = 0
    while total < d:
        for rk, e in idem:
            if all(_mat_mul(e, f, field) == [[0] * d for _ in range(d)]
                   and _mat_mul(f, e, field) == [[0] * d for _ in range(d)] for f in chosen):
                chosen.append(e)
                total += rk
                break
        else:
            raise AssertionError("no orthogonal idempotent found")
    return sorted(naive_rank(e, field) for e in chosen)
