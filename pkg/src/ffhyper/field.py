"""Finite fields F_q, q = p^r with p odd, backed by dense lookup tables.

Elements are plain integers: the index of the element in the canonical
enumeration, which lists coefficient tuples ``(c0, c1, ..., c_{r-1})``
(constant term first) in lexicographic order.  Index 0 is the zero element;
for prime fields the index is the residue itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import CapacityError, DomainError

MAX_ORDER = 1 << 16


def is_odd_prime(p: int) -> bool:
    if not isinstance(p, (int, np.integer)) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**r`` with ``p`` an odd prime, or raise DomainError."""
    if q < 3:
        raise DomainError(f"q={q} is not an odd prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise DomainError(f"q={q} is not a prime power")
    p = fs[0]
    if p == 2:
        raise DomainError(f"q={q} has characteristic 2; p must be an odd prime")
    r = 0
    while q > 1:
        q //= p
        r += 1
    return p, r


# -- polynomial helpers over F_p (coefficient lists, constant term first) --

def _poly_rem(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Remainder of f modulo the monic polynomial g."""
    rem = list(f)
    dg = len(g) - 1
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i] % p
        if c:
            for j in range(dg + 1):
                rem[i - dg + j] = (rem[i - dg + j] - c * g[j]) % p
    return [c % p for c in rem[:dg]]


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    r = len(f) - 1
    for d in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(f, list(tail) + [1], p)):
                return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r (constant term first)."""
    for low in itertools.product(range(p), repeat=r):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {r} over F_{p}")  # pragma: no cover


@dataclass(frozen=True, eq=False, repr=False)
class FieldCtx:
    """Immutable description of F_q together with its lookup tables."""

    p: int
    r: int
    modulus: tuple[int, ...]
    generator: int
    digits: np.ndarray = field(compare=False)
    exp: np.ndarray = field(compare=False)
    dlog_table: np.ndarray = field(compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def order(self) -> int:
        """Order q - 1 of the multiplicative group."""
        return self.p ** self.r - 1

    @property
    def one(self) -> int:
        return self.p ** (self.r - 1)

    @property
    def minus_one(self) -> int:
        return (self.p - 1) * self.p ** (self.r - 1)

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q}, modulus={self.modulus}, generator={self.generator})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.r, self.modulus, self.generator) == (
            other.p, other.r, other.modulus, other.generator)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus, self.generator))

    def __reduce__(self):
        # Contexts are cheap to rebuild and deterministic; ship only the key.
        return (build_field, (self.p, self.r))

    # -- element encoding --

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        self._check(a)
        return tuple(int(c) for c in self.digits[a])

    def element(self, coeffs: Sequence[int]) -> int:
        cs = list(coeffs) + [0] * (self.r - len(coeffs))
        if len(cs) != self.r:
            raise DomainError(f"too many coefficients for degree {self.r}")
        idx = 0
        for c in cs:
            idx = idx * self.p + (int(c) % self.p)
        return idx

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise DomainError(f"{a} is not an element index of F_{self.q}")

    # -- scalar arithmetic --

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return self.element([(x + y) for x, y in zip(self.digits[a], self.digits[b])])

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        return self.element([-x for x in self.digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.r == 1:
            return (a * b) % self.p
        return int(self.exp[(self.dlog_table[a] + self.dlog_table[b]) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self.exp[(-self.dlog_table[a]) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0 if e else self.one
        return int(self.exp[(self.dlog_table[a] * e) % self.order])

    def dlog(self, x: int) -> int:
        """Discrete logarithm to the canonical generator, in [0, q-2]."""
        self._check(x)
        if x == 0:
            raise DomainError("discrete log of zero is undefined")
        return int(self.dlog_table[x])

    # -- vectorised arithmetic on integer arrays of element indices --

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.r == 1:
            return (a + b) % self.p
        s = (self.digits[a] + self.digits[b]) % self.p
        return s @ self._weights()

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.r == 1:
            return (-a) % self.p
        return ((-self.digits[a]) % self.p) @ self._weights()

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.r == 1:
            return (a * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp[(self.dlog_table[a] + self.dlog_table[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.r - 1, -1, -1, dtype=np.int64)


def _mulmod_digits(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_rem(prod, modulus, p) if len(prod) >= len(modulus) else [
        c % p for c in prod] + [0] * (len(modulus) - 1 - len(prod))


def _pow_digits(a, e, modulus, p):
    r = len(modulus) - 1
    result = [1] + [0] * (r - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _mulmod_digits(result, base, modulus, p)
        base = _mulmod_digits(base, base, modulus, p)
        e >>= 1
    return result


@lru_cache(maxsize=None)
def build_field(p: int, r: int = 1) -> FieldCtx:
    """Construct F_{p^r} with its canonical modulus, generator and log tables.

    The modulus is the lexicographically smallest monic irreducible polynomial
    (constant term compared first); the generator is the first element in the
    canonical enumeration whose multiplicative order is q - 1.
    """
    if not is_odd_prime(p):
        raise DomainError(f"p={p} must be an odd prime")
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise DomainError(f"extension degree r={r} must be >= 1")
    q = p ** r
    if q > MAX_ORDER:
        raise CapacityError(f"q={q} exceeds the table limit {MAX_ORDER}")
    modulus = smallest_irreducible(p, r)
    m = q - 1
    digits = np.array(list(itertools.product(range(p), repeat=r)), dtype=np.int64).reshape(q, r)
    weights = p ** np.arange(r - 1, -1, -1, dtype=np.int64)

    def as_low_high(idx):
        return [int(c) for c in digits[idx]]

    one = [1] + [0] * (r - 1)
    cofactors = [m // f for f in prime_factors(m)]
    generator = None
    for idx in range(1, q):
        a = as_low_high(idx)
        if all(_pow_digits(a, e, modulus, p) != one for e in cofactors):
            generator = idx
            break
    if generator is None:  # pragma: no cover - F_q^x is always cyclic
        raise RuntimeError(f"no generator found for F_{q}")

    exp = np.empty(m, dtype=np.int64)
    dlog = np.full(q, -1, dtype=np.int64)
    g = as_low_high(generator)
    cur = one
    for k in range(m):
        idx = int(np.dot(cur, weights))
        exp[k] = idx
        dlog[idx] = k
        cur = _mulmod_digits(cur, g, modulus, p)
    for arr in (digits, exp, dlog):
        arr.setflags(write=False)
    return FieldCtx(p=p, r=r, modulus=modulus, generator=generator,
                    digits=digits, exp=exp, dlog_table=dlog)


def field_for_order(q: int) -> FieldCtx:
    p, r = prime_power(q)
    return build_field(p, r)


_OPS = {"add", "sub", "mul", "inv", "neg"}


def field_ops(ctx: FieldCtx, op: str, a: int, b: int | None = None) -> int:
    """Dispatch a named arithmetic operation on element indices."""
    if op not in _OPS:
        raise DomainError(f"unknown field operation {op!r}")
    ctx._check(a)
    if op == "inv":
        return ctx.inv(a)
    if op == "neg":
        return ctx.neg(a)
    if b is None:
        raise DomainError(f"operation {op!r} needs two operands")
    ctx._check(b)
    return getattr(ctx, op)(a, b)


def parse_element(ctx: FieldCtx, text: str) -> int:
    """Parse an element given as an index (``"7"``) or a polynomial in x (``"2x^2+1"``)."""
    text = text.strip().replace(" ", "")
    if text.lstrip("-").isdigit():
        v = int(text)
        if ctx.r == 1:
            return v % ctx.p
        ctx._check(v)
        return v
    coeffs = [0] * ctx.r
    for term in text.replace("-", "+-").split("+"):
        if not term:
            continue
        if "x" not in term:
            coeffs[0] += int(term)
            continue
        c, _, e = term.partition("x")
        c = 1 if c in ("", "+") else -1 if c == "-" else int(c.rstrip("*"))
        e = int(e.lstrip("^")) if e else 1
        if e >= ctx.r:
            raise DomainError(f"degree {e} too large for F_{ctx.q}")
        coeffs[e] += c
    return ctx.element(coeffs)
