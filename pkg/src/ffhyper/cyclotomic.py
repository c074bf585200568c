"""Exact arithmetic in the cyclotomic field Q(zeta_m).

A :class:`CycloNum` is a polynomial in zeta_m reduced modulo the m-th
cyclotomic polynomial, so two numbers are equal exactly when their stored
coefficients agree.  Coefficients are kept as integer numerators over one
positive common denominator; :attr:`CycloNum.coeffs` exposes them as reduced
:class:`~fractions.Fraction` objects.

Bulk character sums are accumulated in the group ring Z[C_m] (integer
vectors of length m indexed by exponents of zeta) and reduced once with
:meth:`CycloCtx.from_group_ring`.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError

MAX_M = 1 << 16


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c, rem = divmod(num[i], lead)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[i - dd] = c
        if c:
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first.

    Computed as x^m - 1 divided exactly by Phi_d for every proper divisor d.
    """
    if m < 1:
        raise DomainError(f"cyclotomic index must be positive, got {m}")
    if m > MAX_M:
        raise CapacityError(f"cyclotomic index {m} exceeds {MAX_M}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class CycloCtx:
    """The field Q(zeta_m) with precomputed reductions of every power of zeta."""

    def __init__(self, m: int):
        self.m = m
        self.phi = cyclotomic_polynomial(m)
        self.deg = len(self.phi) - 1
        # power_rows[k] = canonical coefficients of zeta^k, 0 <= k < 2m
        rows = []
        cur = [1] + [0] * (self.deg - 1)
        for _ in range(2 * m):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * f for c, f in zip(cur, self.phi)]
        self._rows = tuple(rows)
        self.reduction = np.array(rows[:m], dtype=np.int64).reshape(m, self.deg)
        self.reduction.setflags(write=False)
        self._row_bound = int(np.abs(self.reduction).max()) if m else 1

    def __repr__(self) -> str:
        return f"CycloCtx(m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloCtx) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("CycloCtx", self.m))

    def __reduce__(self):
        return (cyclo_ctx, (self.m,))

    # -- constructors --

    def zero(self) -> "CycloNum":
        return CycloNum(self, (0,) * self.deg, 1)

    def one(self) -> "CycloNum":
        return self.rational(1)

    def rational(self, value) -> "CycloNum":
        v = Fraction(value)
        return CycloNum(self, (v.numerator,) + (0,) * (self.deg - 1), v.denominator)

    def root_of_unity(self, k: int) -> "CycloNum":
        """zeta_m^k in canonical form."""
        return CycloNum(self, self._rows[k % self.m], 1, _normalized=True)

    def from_coeffs(self, coeffs: Sequence) -> "CycloNum":
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != self.deg:
            raise DomainError(f"expected {self.deg} coefficients, got {len(fr)}")
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return CycloNum(self, tuple(int(c * den) for c in fr), den)

    def from_group_ring(self, vec: Iterable[int], den: int = 1, shift: int = 0) -> "CycloNum":
        """Reduce sum_k vec[k] * zeta^(k + shift), divided by ``den``."""
        v = np.asarray(vec)
        if v.shape != (self.m,):
            raise DomainError(f"group ring vector must have length {self.m}")
        if shift % self.m:
            v = np.roll(v, shift % self.m)
        bound = int(np.abs(v).max()) if v.size else 0
        if v.dtype != object and bound * self._row_bound * self.m < (1 << 62):
            nums = v.astype(np.int64) @ self.reduction
            nums = tuple(int(x) for x in nums)
        else:
            nums = [0] * self.deg
            for k, c in enumerate(v.tolist()):
                if c:
                    for i, rc in enumerate(self._rows[k]):
                        nums[i] += c * rc
            nums = tuple(nums)
        return CycloNum(self, nums, den)

    def parse(self, items: Sequence[str]) -> "CycloNum":
        """Inverse of :meth:`CycloNum.serialize`."""
        return self.from_coeffs([Fraction(s) for s in items])


@lru_cache(maxsize=None)
def cyclo_ctx(m: int) -> CycloCtx:
    return CycloCtx(m)


class CycloNum:
    """Immutable element of Q(zeta_m) in canonical form."""

    __slots__ = ("ctx", "nums", "den", "_hash")

    def __init__(self, ctx: CycloCtx, nums: Sequence[int], den: int = 1, _normalized: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        nums = tuple(nums)
        if not _normalized:
            if den < 0:
                nums = tuple(-x for x in nums)
                den = -den
            g = den
            for x in nums:
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                nums = tuple(x // g for x in nums)
                den //= g
        self.ctx = ctx
        self.nums = nums
        self.den = den
        self._hash = None

    # -- views --

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def serialize(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.ctx.m)
        acc = 0j
        for x in reversed(self.nums):
            acc = acc * z + x
        return acc / self.den

    def to_complex(self) -> complex:
        return complex(self)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        return f"CycloNum[m={self.ctx.m}](" + (" + ".join(terms) or "0") + ")"

    # -- comparisons --

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloNum):
            return self.ctx.m == other.ctx.m and self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Rational)):
            return self == self.ctx.rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.m, self.den, self.nums))
        return self._hash

    # -- arithmetic --

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.ctx.m != self.ctx.m:
                raise DomainError(f"cannot combine Q(zeta_{self.ctx.m}) with Q(zeta_{other.ctx.m})")
            return other
        if isinstance(other, (int, Rational)):
            return self.ctx.rational(other)
        raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        den = self.den * o.den // gcd(self.den, o.den)
        a, b = den // self.den, den // o.den
        return CycloNum(self.ctx, tuple(a * x + b * y for x, y in zip(self.nums, o.nums)), den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.ctx, tuple(-x for x in self.nums), self.den, _normalized=True)

    def __sub__(self, other):
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            f = Fraction(other)
            return CycloNum(self.ctx, tuple(x * f.numerator for x in self.nums), self.den * f.denominator)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self.ctx.deg
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(self.nums):
            if x:
                for j, y in enumerate(o.nums):
                    if y:
                        prod[i + j] += x * y
        nums = list(prod[:d])
        rows = self.ctx._rows
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for i, rc in enumerate(rows[k]):
                    nums[i] += c * rc
        return CycloNum(self.ctx, nums, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / f)
        return NotImplemented

    def scale(self, r) -> "CycloNum":
        return self * Fraction(r)

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative powers are not supported")
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


_ARITH = {"add", "sub", "mul", "scale_by_rational"}


def cyclo_arith(ctx: CycloCtx, op: str, a: CycloNum, b) -> CycloNum:
    """Dispatch a named operation; ``b`` is a CycloNum, or a rational for scaling."""
    if op not in _ARITH:
        raise DomainError(f"unknown operation {op!r}")
    if a.ctx != ctx:
        raise DomainError("operand does not belong to this cyclotomic field")
    if op == "scale_by_rational":
        return a.scale(b)
    return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__}[op](b)


def root_of_unity(ctx: CycloCtx, k: int) -> CycloNum:
    return ctx.root_of_unity(k)


def embed_complex(ctx: CycloCtx, a: CycloNum) -> complex:
    """Evaluate the canonical polynomial at exp(2*pi*i/m)."""
    if a.ctx.m != ctx.m:
        raise DomainError("operand does not belong to this cyclotomic field")
    return complex(a)
