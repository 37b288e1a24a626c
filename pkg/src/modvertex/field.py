"""Arithmetic in GF(2^k) for k = 1..4.

Elements are plain ints in ``range(2**k)``: bit i is the coefficient of x^i in
the polynomial basis modulo the canonical modulus.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConfigError, DomainError

MODULI = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011}


class Field:
    """The field GF(2^k) with log/antilog tables.

    The class x of the indeterminate generates the multiplicative group for
    every canonical modulus used here (for k = 1 the generator is 1).
    """

    __slots__ = ("k", "modulus", "order", "exp", "log", "mul_table", "inv_table", "generator")

    def __init__(self, k: int):
        if k not in MODULI:
            raise ConfigError(f"field degree must be in 1..4, got {k}")
        self.k = k
        self.modulus = MODULI[k]
        self.order = 1 << k
        q1 = self.order - 1
        self.generator = 1 if k == 1 else 2
        exp = []
        x = 1
        for _ in range(q1):
            exp.append(x)
            x = _polymul_mod(x, self.generator, self.modulus, k)
        if x != 1 or len(set(exp)) != q1:
            raise ConfigError(f"modulus {self.modulus:#b} is not primitive")
        self.exp = tuple(exp)
        log = [0] * self.order
        for i, e in enumerate(exp):
            log[e] = i
        self.log = tuple(log)
        q = self.order
        mt = np.zeros((q, q), dtype=np.uint8)
        for a in range(1, q):
            for b in range(1, q):
                mt[a, b] = exp[(log[a] + log[b]) % q1]
        mt.setflags(write=False)
        self.mul_table = mt
        it = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            it[a] = exp[(-log[a]) % q1]
        it.setflags(write=False)
        self.inv_table = it

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("GF2k", self.k))

    def __reduce__(self):
        return (field_make, (self.k,))

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DomainError("inverse of zero")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def sqrt(self, a: int) -> int:
        """Inverse of the Frobenius map."""
        return self.pow(a, self.order // 2)

    def embed(self, x: int, dst: "Field") -> int:
        return embed(x, self, dst)

    @staticmethod
    def to_hex(x: int) -> str:
        return format(x, "x")

    def from_hex(self, ch: str) -> int:
        v = int(ch, 16)
        if v >= self.order:
            raise DomainError(f"digit {ch!r} out of range for {self!r}")
        return v


def _polymul_mod(a: int, b: int, mod: int, k: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> k & 1:
            a ^= mod
    return r


@lru_cache(maxsize=None)
def field_make(k: int) -> Field:
    """Return the canonical field GF(2^k)."""
    return Field(k)


GF2 = field_make(1)


def arith(field: Field, a: int, b: int, op: str) -> int:
    """Apply ``op`` in {add, mul, inv, pow}; unary ``inv`` ignores ``a``."""
    for x in (a, b) if op != "pow" else (a,):
        if not 0 <= x < field.order:
            raise DomainError(f"{x} is not an element of {field!r}")
    if op == "add":
        return a ^ b
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(b)
    if op == "pow":
        return field.pow(a, b)
    raise ConfigError(f"unknown field operation {op!r}")


@lru_cache(maxsize=None)
def embedding_table(src_k: int, dst_k: int) -> tuple:
    """Images of all src elements under the canonical embedding."""
    if dst_k % src_k:
        raise ConfigError(f"GF(2^{src_k}) does not embed in GF(2^{dst_k})")
    src, dst = field_make(src_k), field_make(dst_k)
    step = (dst.order - 1) // (src.order - 1)
    table = [0] * src.order
    for a in range(1, src.order):
        table[a] = dst.exp[(src.log[a] * step) % (dst.order - 1)]
    return tuple(table)


def embed(x: int, src: Field, dst: Field) -> int:
    """Canonical embedding src -> dst sending the src generator to g^((2^d-1)/(2^s-1))."""
    return embedding_table(src.k, dst.k)[x]
