"""Exact arithmetic in Z[zeta_m] through evaluation at primitive roots modulo primes.

For a prime P = 1 (mod m) with a primitive m-th root w, the map
Z[C_m] -> F_P^phi(m), v -> (sum_j v_j w^(jk))_k over k coprime to m, factors
through Z[zeta_m] and turns group-ring convolution into pointwise products.
Interpolating back through the inverse Vandermonde matrix gives coefficients
in the power basis 1, zeta, ..., zeta^(phi-1) modulo P; several 31-bit primes
and the Chinese remainder theorem recover them exactly when they are bounded
by half the product of the primes.  Residues stay below 2^31 so products of
two fit in int64.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np

from .field import prime_factors

PRIME_LIMIT = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def ntt_primes(m: int, count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2^31 congruent to 1 mod m."""
    out = []
    k = (PRIME_LIMIT - 2) // m
    while len(out) < count:
        cand = k * m + 1
        if _is_prime(cand):
            out.append(cand)
        k -= 1
    return tuple(out)


def _root_of_unity(m: int, P: int) -> int:
    fs = prime_factors(m) if m > 1 else []
    for h in range(2, P):
        w = pow(h, (P - 1) // m, P)
        if all(pow(w, m // f, P) != 1 for f in fs):
            return w
    raise ArithmeticError(f"no primitive {m}-th root mod {P}")  # pragma: no cover


def _inverse_mod(mat: list[list[int]], P: int) -> list[list[int]]:
    """Gauss-Jordan inverse of a square matrix over F_P."""
    n = len(mat)
    aug = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] % P)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], P - 2, P)
        aug[col] = [x * inv % P for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % P for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class PrimitiveEvaluation:
    """Evaluation of Z[C_m] at the primitive m-th roots of unity modulo ``count`` primes."""

    def __init__(self, m: int, count: int):
        self.m = m
        self.points = [k for k in range(m) if gcd(k, m) == 1]
        self.phi = len(self.points)
        self.primes = ntt_primes(m, count)
        self.P = np.array(self.primes, dtype=np.int64)
        fwd, inv = [], []
        for P in self.primes:
            w = _root_of_unity(m, P)
            pw = np.array([pow(w, e, P) for e in range(m)], dtype=np.int64)
            fwd.append(pw[np.outer(np.arange(m), self.points) % m])
            vander = [[pow(w, k * i, P) for i in range(self.phi)] for k in self.points]
            inv.append(np.array(_inverse_mod(vander, P), dtype=np.int64).T)
        self.forward = np.stack(fwd)   # (K, m, phi): w^(j k)
        self.inverse = np.stack(inv)   # (K, phi, phi): coefficients = values @ inverse
        self._inverse_cols = [[int(v) for v in col] for col in self.inverse[0].T]
        self.modulus = 1
        for P in self.primes:
            self.modulus *= P
        self._crt = [(self.modulus // P) * pow(self.modulus // P, -1, P) for P in self.primes]

    @property
    def count(self) -> int:
        return len(self.primes)

    def transform(self, vecs: np.ndarray) -> np.ndarray:
        """Evaluate non-negative integer vectors (..., m) with small entries: (K, ..., phi)."""
        vecs = np.asarray(vecs, dtype=np.int64)
        out = np.einsum("...j,kjl->k...l", vecs, self.forward)
        return out % self.P.reshape((-1,) + (1,) * (out.ndim - 1))

    def twiddle(self, shifts) -> np.ndarray:
        """Evaluations of zeta^s for each shift s: shape (K, *shape(shifts), phi)."""
        return self.forward[:, np.asarray(shifts) % self.m, :]

    def coefficients(self, values: np.ndarray) -> np.ndarray:
        """Power-basis coefficients, as signed integers, of the element with the
        given (K, phi) evaluations, as a sequence of Python or numpy integers."""
        if self.count == 1 and self.phi <= 8:
            # few coefficients: exact Python integers beat two einsum calls
            P0 = self.primes[0]
            vals = [int(v) for v in values[0]]
            out = []
            for col in self._inverse_cols:
                x = sum(v * c for v, c in zip(vals, col)) % P0
                out.append(x - P0 if x > P0 // 2 else x)
            return out
        P = self.P[:, None]
        # split into 16-bit halves so each partial sum fits in int64
        lo = np.einsum("kj,kjl->kl", values & 0xFFFF, self.inverse) % P
        hi = np.einsum("kj,kjl->kl", values >> 16, self.inverse) % P
        res = (hi * 0x10000 + lo) % P
        if self.count == 1:
            v = res[0]
            return np.where(v > self.primes[0] // 2, v - self.primes[0], v)
        M = self.modulus
        out = []
        for k in range(self.phi):
            x = sum(int(res[i, k]) * c for i, c in enumerate(self._crt)) % M
            out.append(x - M if x > M // 2 else x)
        return np.array(out, dtype=object)


def primes_needed(m: int, bound: int) -> int:
    """Number of 31-bit primes whose product exceeds 2 * bound."""
    k, prod = 0, 1
    for P in ntt_primes(m, 64):
        if prod > 2 * bound:
            break
        prod *= P
        k += 1
    return max(k, 1)
