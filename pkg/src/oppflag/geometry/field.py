"""Finite fields GF(p^k) with table arithmetic.

Elements are the integers 0..q-1.  For a prime field they are the residues;
for q = p^k the integer encodes the coefficient vector (base p digits) of a
polynomial modulo a fixed irreducible polynomial of degree k.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


def _factor_prime_power(q: int) -> tuple[int, int]:
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or q < 2:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    k = len(mod) - 1
    res = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] = (res[i + j] + x * y) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for i in range(k + 1):
                res[d - k + i] = (res[d - k + i] - c * mod[i]) % p
    return res[:k]


def _irreducible(p: int, k: int) -> list[int]:
    """A monic irreducible polynomial of degree k over GF(p), low degree first."""
    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        # irreducible iff no roots/factors; brute force over monic divisors of degree <= k/2
        ok = True
        for d in range(1, k // 2 + 1):
            for div_tail in product(range(p), repeat=d):
                div = list(div_tail) + [1]
                if _poly_rem(poly, div, p) == [0] * d:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return poly
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * inv % p
        if c:
            for i in range(db + 1):
                a[d - db + i] = (a[d - db + i] - c * b[i]) % p
    return a[:db]


class GF:
    """GF(q) with addition, multiplication and inverse tables."""

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        digits = [[(x // p**i) % p for i in range(k)] for x in range(q)]

        def encode(v):
            return sum(c * p**i for i, c in enumerate(v))

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        mod = _irreducible(p, k) if k > 1 else None
        for a in range(q):
            for b in range(q):
                add[a, b] = encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                if k == 1:
                    mul[a, b] = a * b % p
                else:
                    mul[a, b] = encode(_poly_mulmod(digits[a], digits[b], mod, p))
        self.add_t, self.mul_t = add, mul
        self.neg_t = np.array([int(np.where(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.where(mul[a] == 1)[0][0])
        self.inv_t = inv
        # python-level copies for scalar work
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = self.neg_t.tolist()
        self._inv = inv.tolist()

    def __repr__(self):
        return f"GF({self.q})"

    # scalar operations
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self._mul[out][a]
        return out

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # vector helpers on tuples
    def vadd(self, u, v) -> tuple:
        return tuple(self._add[a][b] for a, b in zip(u, v))

    def vscale(self, c: int, u) -> tuple:
        return tuple(self._mul[c][a] for a in u)

    def normalize(self, u) -> tuple:
        """Scale so that the first non-zero coordinate is 1."""
        for a in u:
            if a:
                return self.vscale(self._inv[a], u)
        raise ValueError("the zero vector has no projective point")

    def rref(self, rows) -> tuple:
        """Reduced row echelon form with zero rows removed."""
        m = [list(r) for r in rows]
        out = []
        ncols = len(m[0]) if m else 0
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = self._inv[m[r][c]]
            m[r] = [self._mul[inv][x] for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [self._add[x][self._neg[self._mul[f][y]]] for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
        out = [tuple(row) for row in m[:r]]
        return tuple(out)

    def rank(self, rows) -> int:
        return len(self.rref(rows)) if rows else 0

    # batched numpy operations
    def batched_nonsingular(self, mats: np.ndarray) -> np.ndarray:
        """For a stack of square matrices, True where the matrix is invertible."""
        mats = np.array(mats, dtype=np.int64, copy=True)
        count, k, _ = mats.shape
        ok = np.ones(count, dtype=bool)
        idx = np.arange(count)
        for c in range(k):
            nz = mats[:, c:, c] != 0
            has = nz.any(axis=1)
            ok &= has
            piv = nz.argmax(axis=1) + c
            row_c = mats[idx, c].copy()
            mats[idx, c] = mats[idx, piv]
            mats[idx, piv] = row_c
            pinv = self.inv_t[mats[:, c, c]]
            for r in range(c + 1, k):
                f = self.mul_t[mats[:, r, c], pinv]
                mats[:, r, :] = self.add_t[mats[:, r, :], self.neg_t[self.mul_t[f[:, None], mats[:, c, :]]]]
        return ok

    def pair_products(self, U: np.ndarray, W: np.ndarray) -> np.ndarray:
        """G[x, y, i, j] = sum_a U[x, i, a] * W[y, j, a] over the field."""
        if self.k == 1:
            return np.einsum("xia,yja->xyij", U, W) % self.p
        out = None
        for a in range(U.shape[-1]):
            term = self.mul_t[U[:, None, :, None, a], W[None, :, None, :, a]]
            out = term if out is None else self.add_t[out, term]
        return out


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
