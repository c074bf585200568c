"""Floating point mirror of the exact evaluators.

These functions multiply complex character values point by point and never
touch the exponent histograms used by the exact code, so agreement between
the two is a meaningful cross-check.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .field import FieldCtx


def _char_values(ctx: FieldCtx, j: int) -> np.ndarray:
    """chi_j(x) for every element x as complex numbers, 0 at x = 0."""
    m = ctx.order
    out = np.exp(2j * np.pi * ((j * ctx.dlog_table) % m) / m)
    out[0] = 0
    return out


def _one_minus(ctx: FieldCtx) -> np.ndarray:
    xs = np.arange(ctx.q)
    return ctx.vadd(np.full(ctx.q, ctx.one), ctx.vneg(xs))


def chi_float(ctx: FieldCtx, j: int, x: int) -> complex:
    return complex(_char_values(ctx, j)[x])


def jacobi_float(ctx: FieldCtx, a: int, b: int) -> complex:
    return complex(np.sum(_char_values(ctx, a) * _char_values(ctx, b)[_one_minus(ctx)]))


def binom_float(ctx: FieldCtx, a: int, b: int) -> complex:
    return chi_float(ctx, b, ctx.minus_one) * jacobi_float(ctx, a, -b) / ctx.q


def lauricella_fa_float(ctx: FieldCtx, a: int, bs: Sequence[int], cs: Sequence[int],
                        xs: Sequence[int], offset: int | None = None) -> complex:
    """prod_i eps(x_i) B_iC_i(-1)/q * sum_t prod_i B_i(t_i) conj(B_i)C_i(1 - t_i)
    * conj(A)(offset - sum_i x_i t_i), with offset = 1 by default."""
    if any(x == 0 for x in xs):
        return 0j
    c = ctx.one if offset is None else offset
    om = _one_minus(ctx)
    ts = np.arange(ctx.q)
    vals = np.ones(1, dtype=complex)
    sums = np.zeros(1, dtype=np.int64)
    pre = 1 + 0j
    for b, cc, x in zip(bs, cs, xs):
        w = _char_values(ctx, b) * _char_values(ctx, cc - b)[om]
        vals = np.outer(vals, w).ravel()
        sums = ctx.vadd(sums[:, None], ctx.vmul(np.full(ctx.q, x), ts)[None, :]).ravel()
        pre *= chi_float(ctx, b + cc, ctx.minus_one) / ctx.q
    last = _char_values(ctx, -a)[ctx.vadd(np.full_like(sums, c), ctx.vneg(sums))]
    return complex(pre * np.sum(vals * last))
