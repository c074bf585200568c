"""Brute-force complex oracles.

They rebuild discrete logs by walking powers of the generator, use the
constrained form of multiple Jacobi sums, and sum the Lauricella series over
every point of F_q^n.  Nothing here touches exponent histograms or cyclotomic
arithmetic, so agreement with the library is independent evidence.
"""

import cmath
import itertools
from functools import lru_cache


@lru_cache(maxsize=None)
def logs(ctx):
    table = {}
    x = ctx.one
    for k in range(ctx.order):
        table[x] = k
        x = ctx.mul(x, ctx.generator)
    return table


def chi(ctx, j, x):
    if x == 0:
        return 0j
    return cmath.exp(2j * cmath.pi * j * logs(ctx)[x] / ctx.order)


def jacobi(ctx, a, b):
    return sum(chi(ctx, a, x) * chi(ctx, b, ctx.sub(ctx.one, x)) for x in range(ctx.q))


def multi_jacobi(ctx, lams):
    """Sum over c_1 + ... + c_k = 1 of prod lambda_i(c_i)."""
    total = 0j
    for rest in itertools.product(range(ctx.q), repeat=len(lams) - 1):
        c1 = ctx.one
        for c in rest:
            c1 = ctx.sub(c1, c)
        term = chi(ctx, lams[0], c1)
        for lam, c in zip(lams[1:], rest):
            term *= chi(ctx, lam, c)
        total += term
    return total


def binom(ctx, a, b):
    return chi(ctx, b, ctx.minus_one) * jacobi(ctx, a, -b) / ctx.q


def lauricella(ctx, a, bs, cs, xs):
    """The defining n-fold point sum, including t_i in {0, 1}."""
    pre = 1 + 0j
    for b, c, x in zip(bs, cs, xs):
        pre *= chi(ctx, 0, x) * chi(ctx, b + c, ctx.minus_one) / ctx.q
    if pre == 0:
        return 0j
    total = 0j
    for ts in itertools.product(range(ctx.q), repeat=len(bs)):
        term = 1 + 0j
        s = ctx.one
        for b, c, x, t in zip(bs, cs, xs, ts):
            term *= chi(ctx, b, t) * chi(ctx, c - b, ctx.sub(ctx.one, t))
            s = ctx.sub(s, ctx.mul(x, t))
        total += term * chi(ctx, -a, s)
    return pre * total
