"""Jacobi sums, binomial and multinomial coefficients of characters.

Every sum here is accumulated as an integer vector in the group ring
Z[C_{q-1}] (entry k counts terms equal to zeta^k) and reduced to a
:class:`~ffhyper.cyclotomic.CycloNum` at the end.

Notation: ``binom(A, B) = B(-1)/q * J(A, conj B)`` and the multinomial
coefficient ``multinom(A, [B1..Bn]) = (B1...Bn)(-1)/q^n * J(A, conj B1, ..., conj Bn)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .characters import Character, value_field
from .cyclotomic import CycloNum
from .errors import CapacityError, DomainError, FieldMismatchError
from .field import FieldCtx

MAX_FREE_SUM = 1 << 22
MAX_TABLE_ORDER = 256


@dataclass(frozen=True, eq=False)
class _Logs:
    """Per-field arrays used by the vectorised sums."""

    dlog: np.ndarray       # dlog of each element, -1 at zero
    one_minus: np.ndarray  # index of 1 - x for each x
    log_minus_one: int


@lru_cache(maxsize=None)
def _logs(ctx: FieldCtx) -> _Logs:
    xs = np.arange(ctx.q)
    one = np.full(ctx.q, ctx.one)
    return _Logs(dlog=ctx.dlog_table, one_minus=ctx.vadd(one, ctx.vneg(xs)),
                 log_minus_one=ctx.dlog(ctx.minus_one))


def _same_field(chars: Sequence[Character]) -> FieldCtx:
    ctx = chars[0].field
    for c in chars[1:]:
        if c.field != ctx:
            raise FieldMismatchError("characters belong to different fields")
    return ctx


def sign_exponent(ctx: FieldCtx, j: int) -> int:
    """Exponent of chi_j(-1) = zeta^(j*(q-1)/2)."""
    return (j * _logs(ctx).log_minus_one) % ctx.order


def jacobi_vector(ctx: FieldCtx, a: int, b: int) -> np.ndarray:
    """Group ring vector of J(chi_a, chi_b) = sum_x chi_a(x) chi_b(1 - x)."""
    lg = _logs(ctx)
    x = np.arange(ctx.q)
    y = lg.one_minus
    ok = (x != 0) & (y != 0)
    e = (a * lg.dlog[x[ok]] + b * lg.dlog[y[ok]]) % ctx.order
    return np.bincount(e, minlength=ctx.order).astype(np.int64)


def jacobi(A: Character, B: Character) -> CycloNum:
    ctx = _same_field([A, B])
    return value_field(ctx).from_group_ring(jacobi_vector(ctx, A.j, B.j))


def multi_jacobi_vector(ctx: FieldCtx, idx: Sequence[int]) -> np.ndarray:
    """Group ring vector of J(lambda_1..lambda_k) via the free-sum form
    sum_{c_2..c_k} lambda_1(1 + c_2 + ... + c_k) lambda_2(-c_2) ... lambda_k(-c_k)."""
    m = ctx.order
    k = len(idx)
    if k == 0:
        raise DomainError("multiple Jacobi sum needs at least one character")
    if ctx.q ** (k - 1) > MAX_FREE_SUM:
        raise CapacityError(f"free sum over {ctx.q}^{k - 1} points is too large")
    lg = _logs(ctx)
    total = np.full(1, ctx.one, dtype=np.int64)
    expo = np.zeros(1, dtype=np.int64)
    ok = np.ones(1, dtype=bool)
    els = np.arange(ctx.q)
    neg = ctx.vneg(els)
    for lam in idx[1:]:
        total = ctx.vadd(total[:, None], els[None, :]).ravel()
        expo = (expo[:, None] + lam * lg.dlog[neg][None, :]).ravel()
        ok = (ok[:, None] & (neg != 0)[None, :]).ravel()
    ok &= total != 0
    e = (expo[ok] + idx[0] * lg.dlog[total[ok]]) % m
    return np.bincount(e, minlength=m).astype(np.int64)


def multi_jacobi(chars: Sequence[Character]) -> CycloNum:
    if not chars:
        raise DomainError("multiple Jacobi sum needs at least one character")
    ctx = _same_field(list(chars))
    return value_field(ctx).from_group_ring(multi_jacobi_vector(ctx, [c.j for c in chars]))


def binom_vector(ctx: FieldCtx, a: int, b: int) -> np.ndarray:
    """Group ring vector of q * binom(chi_a, chi_b)."""
    return np.roll(jacobi_vector(ctx, a, -b), sign_exponent(ctx, b))


def binom(A: Character, B: Character) -> CycloNum:
    """Binomial coefficient B(-1)/q * J(A, conj B)."""
    ctx = _same_field([A, B])
    return value_field(ctx).from_group_ring(binom_vector(ctx, A.j, B.j), ctx.q)


def multinom(A: Character, Bs: Sequence[Character]) -> CycloNum:
    """(B1...Bn)(-1)/q^n * J(A, conj B1, ..., conj Bn), evaluated directly."""
    if not Bs:
        raise DomainError("multinomial coefficient needs n >= 1 lower characters")
    ctx = _same_field([A, *Bs])
    vec = multi_jacobi_vector(ctx, [A.j] + [-b.j for b in Bs])
    shift = sign_exponent(ctx, sum(b.j for b in Bs))
    return value_field(ctx).from_group_ring(vec, ctx.q ** len(Bs), shift=shift)


def multinom_product(A: Character, Bs: Sequence[Character]) -> CycloNum:
    """Telescoped product binom(A,B1) binom(A/B1, B2) ... binom(A/(B1..B_{n-1}), Bn).

    Equals :func:`multinom` only when no partial quotient A/(B1..B_{k-1})
    with 2 <= k <= n is trivial; see :func:`multinom_recursive`.
    """
    ctx = _same_field([A, *Bs])
    out = value_field(ctx).one()
    top = A
    for B in Bs:
        out = out * binom(top, B)
        top = top / B
    return out


def multinom_product_signed(A: Character, Bs: Sequence[Character]) -> CycloNum:
    """(B1..Bn)(-1) * binom(conj(A) B1, B1) binom(conj(A) B1 B2, B2) ... binom(conj(A) B1..Bn, Bn)."""
    ctx = _same_field([A, *Bs])
    vf = value_field(ctx)
    out = vf.root_of_unity(sign_exponent(ctx, sum(b.j for b in Bs)))
    top = A.conj()
    for B in Bs:
        top = top * B
        out = out * binom(top, B)
    return out


def multinom_recursive(A: Character, Bs: Sequence[Character]) -> CycloNum:
    """Multinomial coefficient from binomials via the exact three-term recurrence

    M_k = M_{k-1} binom(A/(B1..B_{k-1}), Bk)
          + [A = B1..B_{k-1}] (q-1)/q^2 Bk(-1) M_{k-2},      M_0 = 1.
    """
    if not Bs:
        raise DomainError("multinomial coefficient needs n >= 1 lower characters")
    ctx = _same_field([A, *Bs])
    vf = value_field(ctx)
    corr = Fraction(ctx.q - 1, ctx.q ** 2)
    prev, cur = None, vf.one()
    top = A
    for k, B in enumerate(Bs, start=1):
        nxt = cur * binom(top, B)
        if k >= 2 and top.is_trivial():
            nxt = nxt + prev * vf.root_of_unity(sign_exponent(ctx, B.j)) * corr
        prev, cur = cur, nxt
        top = top / B
    return cur


class BinomialTable:
    """All (q-1)^2 binomial coefficients of a field, precomputed once.

    ``vectors[i, j]`` is the group ring vector of ``q * binom(chi_i, chi_j)``.
    """

    def __init__(self, ctx: FieldCtx):
        m = ctx.order
        if m > MAX_TABLE_ORDER:
            raise CapacityError(f"binomial table for q={ctx.q} exceeds {MAX_TABLE_ORDER}^2 entries")
        self.field = ctx
        self.values = value_field(ctx)
        lg = _logs(ctx)
        x = np.arange(ctx.q)
        y = lg.one_minus
        ok = (x != 0) & (y != 0)
        lx = lg.dlog[x[ok]]
        ly = lg.dlog[y[ok]]
        a = np.arange(m)[:, None, None]
        b = np.arange(m)[None, :, None]
        e = (a * lx + (-b) * ly + b * lg.log_minus_one) % m
        flat = ((a * m + b) * m + e).ravel()
        vec = np.bincount(flat, minlength=m ** 3).astype(np.int64).reshape(m, m, m)
        vec.setflags(write=False)
        self.vectors = vec
        self._cache: dict[tuple[int, int], CycloNum] = {}

    @property
    def size(self) -> int:
        return self.field.order

    def vector(self, i: int, j: int) -> np.ndarray:
        m = self.field.order
        return self.vectors[i % m, j % m]

    def lookup(self, i: int, j: int) -> CycloNum:
        m = self.field.order
        key = (i % m, j % m)
        val = self._cache.get(key)
        if val is None:
            val = self.values.from_group_ring(self.vectors[key], self.field.q)
            self._cache[key] = val
        return val

    def __getitem__(self, key: tuple[Character, Character]) -> CycloNum:
        A, B = key
        if A.field != self.field or B.field != self.field:
            raise FieldMismatchError("character does not belong to the table's field")
        return self.lookup(A.j, B.j)


_TABLES: dict[FieldCtx, BinomialTable] = {}


def build_binom_table(ctx: FieldCtx) -> BinomialTable:
    """Build (or fetch the already built) binomial table of ``ctx``."""
    table = _TABLES.get(ctx)
    if table is None:
        table = _TABLES[ctx] = BinomialTable(ctx)
    return table


def has_binom_table(ctx: FieldCtx) -> bool:
    return ctx in _TABLES


def register_binom_table(table: BinomialTable) -> None:
    """Use a caller-supplied table for its field unless one is already registered."""
    _TABLES.setdefault(table.field, table)


def binomial_expansion(A: Character, x: int) -> CycloNum:
    """delta(x) + q/(q-1) * sum_chi binom(A chi, chi) chi(x), which equals conj(A)(1 - x)."""
    ctx = A.field
    ctx._check(x)
    vf = value_field(ctx)
    if x == 0:
        return vf.one()
    m = ctx.order
    lx = int(_logs(ctx).dlog[x])
    table = build_binom_table(ctx) if m <= MAX_TABLE_ORDER else None
    acc = np.zeros(m, dtype=np.int64)
    for j in range(m):
        vec = table.vector(A.j + j, j) if table is not None else binom_vector(ctx, A.j + j, j)
        acc += np.roll(vec, j * lx)
    return vf.from_group_ring(acc, m)


def multinomial_expansion(A: Character, xs: Sequence[int]) -> CycloNum:
    """Expansion of A(1 + x_1 + ... + x_n) in multiple Jacobi sums.

    Sum over index subsets R of prod_{i not in R} delta(x_i) times
    (q-1)^-|R| sum_{chi_R} J(A, conj chi_R) prod_{i in R} chi_i(-x_i).
    """
    ctx = A.field
    for x in xs:
        ctx._check(x)
    vf = value_field(ctx)
    m = ctx.order
    lg = _logs(ctx)
    total = vf.zero()
    n = len(xs)
    for mask in range(1 << n):
        R = [i for i in range(n) if mask >> i & 1]
        if any(xs[i] != 0 for i in range(n) if i not in R):
            continue
        if not R:
            total = total + 1
            continue
        if any(xs[i] == 0 for i in R):
            continue  # chi(-0) vanishes for every chi
        logs = [int(lg.dlog[ctx.neg(xs[i])]) for i in R]
        acc = np.zeros(m, dtype=np.int64)
        for chis in itertools.product(range(m), repeat=len(R)):
            vec = multi_jacobi_vector(ctx, [A.j] + [-c for c in chis])
            acc += np.roll(vec, sum(c * l for c, l in zip(chis, logs)))
        total = total + vf.from_group_ring(acc, m ** len(R))
    return total
