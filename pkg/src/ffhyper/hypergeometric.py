"""Finite-field hypergeometric functions: Lauricella F_A^(n) and its special cases.

For characters A, B_i, C_i and arguments x_i in F_q,

    F(A; B; C | x) = prod_i eps(x_i) B_iC_i(-1)/q
                     * sum_{t in F_q^n} prod_i B_i(t_i) conj(B_i)C_i(1 - t_i)
                       * conj(A)(1 - sum_i x_i t_i).

Two exact evaluation routes are provided.

``direct`` enumerates the point sum.  Every summand is a root of unity, so the
sum is a histogram of exponents over the (q-2)^n points with t_i not in {0, 1}.

``charsum`` uses the character expansion

    F = sum_chi P_n(chi) prod_i binom(B_i chi_i, C_i chi_i) chi_i(x_i) / (q-1)^n,

where the prefix weights Q_k = q^k P_k obey the three-term recurrence

    Q_k = Q_{k-1} * q binom(A chi_1..chi_k, chi_k)
          + (q-1) chi_{k-1}(-1) [A chi_1..chi_{k-1} = eps] Q_{k-2},   Q_0 = 1,

and Q_n / q^n = J(conj A, conj chi_1, ..., conj chi_n) / q^n.  Dropping the
second term gives the plain telescoped product of binomials, available as the
``telescoped`` route; it is exact for n = 1 but not in general.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .characters import Character, value_field
from .charsums import (BinomialTable, MAX_TABLE_ORDER, _logs, build_binom_table,
                       has_binom_table, register_binom_table, sign_exponent)
from .cyclotomic import CycloNum
from .errors import CapacityError, DomainError, FieldMismatchError
from .field import FieldCtx
from .ntt import PrimitiveEvaluation, primes_needed

MAX_POINTS = 1 << 24       # direct route: (q-2)^n summands
MAX_CHARSUM_CELLS = 1 << 24  # charsum route: (q-1)^(n+1) transform cells
ROUTES = ("auto", "direct", "charsum", "telescoped")


@dataclass(frozen=True)
class SeriesParams:
    """Parameters of F_A^(n): top character A, lower characters B and C, arguments x."""

    A: Character
    Bs: tuple[Character, ...]
    Cs: tuple[Character, ...]
    xs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "Bs", tuple(self.Bs))
        object.__setattr__(self, "Cs", tuple(self.Cs))
        object.__setattr__(self, "xs", tuple(int(x) for x in self.xs))
        n = len(self.Bs)
        if n < 1:
            raise DomainError("F_A needs at least one variable")
        if len(self.Cs) != n or len(self.xs) != n:
            raise DomainError(
                f"parameter lengths differ: {n} B, {len(self.Cs)} C, {len(self.xs)} x")
        ctx = self.A.field
        for ch in self.Bs + self.Cs:
            if ch.field != ctx:
                raise FieldMismatchError("all characters must belong to the same field")
        for x in self.xs:
            ctx._check(x)

    @classmethod
    def from_indices(cls, ctx: FieldCtx, a: int, bs: Sequence[int], cs: Sequence[int],
                     xs: Sequence[int]) -> "SeriesParams":
        return cls(Character(ctx, a), tuple(Character(ctx, b) for b in bs),
                   tuple(Character(ctx, c) for c in cs), tuple(xs))

    @property
    def field(self) -> FieldCtx:
        return self.A.field

    @property
    def n(self) -> int:
        return len(self.Bs)

    def indices(self) -> tuple[int, tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return self.A.j, tuple(b.j for b in self.Bs), tuple(c.j for c in self.Cs), self.xs

    def to_json(self) -> dict:
        return {"q": self.field.q, "A": self.A.j, "B": [b.j for b in self.Bs],
                "C": [c.j for c in self.Cs], "x": list(self.xs)}


# -- direct route ----------------------------------------------------------

def pointsum_vector(ctx: FieldCtx, a: int, bs: Sequence[int], cs: Sequence[int],
                    xs: Sequence[int], offset: int | None = None) -> np.ndarray:
    """Exponent histogram of sum_t prod_i B_i(t_i) conj(B_i)C_i(1-t_i) * conj(A)(c - sum x_i t_i).

    ``c`` is ``offset`` (default 1).  No prefactors are applied.
    """
    m = ctx.order
    if (ctx.q - 2) ** len(bs) > MAX_POINTS:
        raise CapacityError(f"direct sum over {ctx.q - 2}^{len(bs)} points is too large")
    lg = _logs(ctx)
    t = np.arange(ctx.q)
    t = t[(t != 0) & (lg.one_minus != 0)]
    lt = lg.dlog[t]
    l1 = lg.dlog[lg.one_minus[t]]
    s = np.zeros(1, dtype=np.int64)
    e = np.zeros(1, dtype=np.int64)
    for b, c, x in zip(bs, cs, xs):
        u = ctx.vmul(np.full_like(t, x), t)
        s = ctx.vadd(s[:, None], u[None, :]).ravel()
        e = (e[:, None] + ((b * lt + (c - b) * l1) % m)[None, :]).ravel()
    c0 = ctx.one if offset is None else offset
    w = ctx.vadd(np.full_like(s, c0), ctx.vneg(s))
    ok = w != 0
    e = (e[ok] - a * lg.dlog[w[ok]]) % m
    return np.bincount(e, minlength=m).astype(np.int64)


def _direct(ctx, a, bs, cs, xs, offset=None) -> CycloNum:
    vf = value_field(ctx)
    if any(x == 0 for x in xs):
        return vf.zero()
    vec = pointsum_vector(ctx, a, bs, cs, xs, offset)
    shift = sign_exponent(ctx, sum(bs) + sum(cs))
    return vf.from_group_ring(vec, ctx.q ** len(bs), shift=shift)


# -- character-sum route ---------------------------------------------------

class CharsumEngine:
    """Evaluates F_A^(n) from a binomial table in a number theoretic transform domain.

    Prefix weights depend only on (A, n) and are memoised, so a batch of
    evaluations sharing the top character pays for them once.
    """

    def __init__(self, table: BinomialTable):
        self.table = table
        self.field = table.field
        self._bases: dict[int, tuple[PrimitiveEvaluation, np.ndarray]] = {}
        self._nprimes: dict[int, int] = {}
        self._prefix: dict[tuple, np.ndarray] = {}

    def _basis(self, k: int) -> tuple[PrimitiveEvaluation, np.ndarray]:
        got = self._bases.get(k)
        if got is None:
            basis = PrimitiveEvaluation(self.field.order, k)
            got = self._bases[k] = (basis, basis.transform(self.table.vectors))
        return got

    def primes_for(self, n: int) -> int:
        k = self._nprimes.get(n)
        if k is None:
            # the final group ring vector has l1 norm at most (2q)^n q^n (q-1)^n;
            # reducing mod Phi_m scales coefficients by at most the largest row entry
            q, m = self.field.q, self.field.order
            bound = (2 * q * q * m) ** n * value_field(self.field)._row_bound
            k = self._nprimes[n] = primes_needed(m, bound)
        return k

    def prefix(self, a: int, n: int, corrected: bool = True) -> np.ndarray:
        """Evaluations of Q_n(chi_1..chi_n) for top character a: shape (K, m, ..., m, phi)."""
        m = self.field.order
        a %= m
        K = self.primes_for(n)
        key = (a, n, corrected, K)
        got = self._prefix.get(key)
        if got is not None:
            return got
        if m ** (n + 1) > MAX_CHARSUM_CELLS:
            raise CapacityError(f"character sum over {m}^{n} tuples is too large")
        basis, T = self._basis(K)
        chis = np.arange(m)
        signs = basis.twiddle([sign_exponent(self.field, j) for j in chis])
        q = self.field.q
        levels = [np.ones((K, basis.phi), dtype=np.int64)]
        cum = np.array(a)
        for k in range(1, n + 1):
            nxt = (cum[..., None] + chis) % m
            Tk = T[:, nxt, np.broadcast_to(chis, nxt.shape)]
            cur = _mod(levels[-1][..., None, :] * Tk, basis.P)
            if corrected and k >= 2:
                mask = cum == 0
                if mask.any():
                    shape = (K,) + (1,) * (k - 2) + (m, basis.phi)
                    corr = _mod(levels[-2][..., None, :] * signs.reshape(shape), basis.P)
                    corr = _mod(corr * (q - 1), basis.P) * mask[None, ..., None]
                    cur = _mod(cur + corr[..., None, :], basis.P)
            levels.append(cur)
            cum = nxt
        out = levels[-1]
        if out.size * 8 <= 1 << 26:
            self._prefix[key] = out
        return out

    def _slots(self, K: int) -> tuple[np.ndarray, np.ndarray] | None:
        """Per-field gathers reused by every evaluation, when they fit in memory.

        ``slot[b, c]`` holds the evaluations of q binom(chi_(b+j), chi_(c+j)) for
        each j, and ``twist[l]`` those of zeta^(j*l).
        """
        key = ("slots", K)
        got = self._prefix.get(key)
        if got is None:
            m = self.field.order
            basis, T = self._basis(K)
            if m ** 3 * basis.phi * K > 1 << 22:
                return None
            j = np.arange(m)
            shifted = (j[:, None] + j[None, :]) % m          # [b, j] -> b + j
            slot = T[:, shifted[:, None, :], shifted[None, :, :]]  # (K, b, c, j, phi)
            slot = np.ascontiguousarray(np.moveaxis(slot, 0, 2))   # (b, c, K, j, phi)
            twist = np.ascontiguousarray(np.moveaxis(basis.twiddle(np.outer(j, j) % m), 0, 1))
            got = self._prefix[key] = (slot, twist)
        return got

    def evaluate(self, a: int, bs: Sequence[int], cs: Sequence[int], xs: Sequence[int],
                 corrected: bool = True) -> CycloNum:
        ctx = self.field
        n = len(bs)
        if any(x == 0 for x in xs):
            return value_field(ctx).zero()
        m = ctx.order
        Y = self.prefix(a, n, corrected)
        K = Y.shape[0]
        basis, T = self._basis(K)
        Pk = [basis.P.reshape((K,) + (1,) * d) for d in range(n + 2)]
        P2 = Pk[2]
        cached = self._slots(K)
        chis = np.arange(m)
        dlog = ctx.dlog_table
        for i in range(n - 1, -1, -1):
            b, c, lx = bs[i] % m, cs[i] % m, int(dlog[xs[i]])
            if cached is not None:
                S = cached[0][b, c] * cached[1][lx] % P2
            else:
                S = T[:, (b + chis) % m, (c + chis) % m] * basis.twiddle(chis * lx) % P2
            # multiply in slot i and sum out its character axis (the last one left)
            Y = (Y * S.reshape((K,) + (1,) * i + (m, basis.phi)) % Pk[i + 2]).sum(axis=-2)
            Y %= Pk[i + 1]
        nums = basis.coefficients(Y)
        return CycloNum(value_field(ctx), tuple(int(v) for v in nums), ctx.q ** n * m ** n)


def _mod(arr: np.ndarray, P: np.ndarray) -> np.ndarray:
    return arr % P.reshape((-1,) + (1,) * (arr.ndim - 1))


def charsum_engine(table: BinomialTable) -> CharsumEngine:
    eng = getattr(table, "_engine", None)
    if eng is None:
        eng = CharsumEngine(table)
        table._engine = eng
    return eng


# -- public evaluators -----------------------------------------------------

def choose_route(ctx: FieldCtx, n: int, table: BinomialTable | None = None) -> str:
    """Charsum when a binomial table is at hand and the transform fits, else direct."""
    m = ctx.order
    if (table is not None or has_binom_table(ctx)) and m ** (n + 1) <= MAX_CHARSUM_CELLS:
        return "charsum"
    return "direct"


@lru_cache(maxsize=1 << 16)
def _evaluate(ctx: FieldCtx, route: str, a: int, bs: tuple, cs: tuple, xs: tuple) -> CycloNum:
    if route == "direct":
        return _direct(ctx, a, bs, cs, xs)
    if ctx.order > MAX_TABLE_ORDER:
        raise CapacityError(f"q={ctx.q} is too large for the binomial table")
    eng = charsum_engine(build_binom_table(ctx))
    return eng.evaluate(a, bs, cs, xs, corrected=(route == "charsum"))


def lauricella_fa(params: SeriesParams, route: str = "auto",
                  table: BinomialTable | None = None) -> CycloNum:
    """Exact value of F_A^(n)(A; B; C | x) by the requested route."""
    if route not in ROUTES:
        raise DomainError(f"unknown route {route!r}; choose from {', '.join(ROUTES)}")
    ctx = params.field
    if table is not None and table.field != ctx:
        raise FieldMismatchError("binomial table belongs to a different field")
    if route == "auto":
        route = choose_route(ctx, params.n, table)
    if table is not None and route != "direct":
        register_binom_table(table)
    a, bs, cs, xs = params.indices()
    return _evaluate(ctx, route, a, bs, cs, xs)


def lauricella_fa_shifted(params: SeriesParams, offset: int) -> CycloNum:
    """The point sum of F_A^(n) with conj(A)(1 - sum x_i t_i) replaced by
    conj(A)(offset - sum x_i t_i).  Equals A-bar(c) F(x / c) for c != 0."""
    params.field._check(offset)
    a, bs, cs, xs = params.indices()
    return _direct(params.field, a, bs, cs, xs, offset)


def gauss_2f1(A: Character, B: Character, C: Character, x: int, route: str = "direct") -> CycloNum:
    """2F1(A, B; C | x).

    ``direct``: eps(x) BC(-1)/q * sum_t B(t) conj(B)C(1-t) conj(A)(1-xt).
    ``charsum``: q/(q-1) * sum_chi binom(A chi, chi) binom(B chi, C chi) chi(x).
    """
    ctx = A.field
    for ch in (B, C):
        if ch.field != ctx:
            raise FieldMismatchError("all characters must belong to the same field")
    ctx._check(x)
    if route == "direct":
        return _direct(ctx, A.j, (B.j,), (C.j,), (x,))
    if route != "charsum":
        raise DomainError(f"unknown route {route!r}")
    vf = value_field(ctx)
    if x == 0:
        return vf.zero()
    table = build_binom_table(ctx)
    lx = ctx.dlog(x)
    acc = vf.zero()
    for j in range(ctx.order):
        acc = acc + table.lookup(A.j + j, j) * table.lookup(B.j + j, C.j + j) * vf.root_of_unity(j * lx)
    return acc * ctx.q / ctx.order


def hyper_np1_fn(As: Sequence[Character], Bs: Sequence[Character], x: int) -> CycloNum:
    """n+1Fn(A_0..A_n; B_1..B_n | x) = q/(q-1) sum_chi binom(A_0 chi, chi) prod_i binom(A_i chi, B_i chi) chi(x)."""
    As, Bs = list(As), list(Bs)
    if len(As) != len(Bs) + 1 or not Bs:
        raise DomainError("need n+1 upper and n >= 1 lower characters")
    ctx = As[0].field
    for ch in As + Bs:
        if ch.field != ctx:
            raise FieldMismatchError("all characters must belong to the same field")
    ctx._check(x)
    vf = value_field(ctx)
    if x == 0:
        return vf.zero()
    table = build_binom_table(ctx)
    lx = ctx.dlog(x)
    acc = vf.zero()
    for j in range(ctx.order):
        term = table.lookup(As[0].j + j, j) * vf.root_of_unity(j * lx)
        for Ai, Bi in zip(As[1:], Bs):
            term = term * table.lookup(Ai.j + j, Bi.j + j)
        acc = acc + term
    return acc * ctx.q / ctx.order


def appell_f2(A: Character, B1: Character, B2: Character, C1: Character, C2: Character,
              x1: int, x2: int, route: str = "auto") -> CycloNum:
    """Appell F2 as the two-variable Lauricella function."""
    return lauricella_fa(SeriesParams(A, (B1, B2), (C1, C2), (x1, x2)), route)


def appell_f2_pointsum(A: Character, B1: Character, B2: Character, C1: Character, C2: Character,
                       x1: int, x2: int) -> CycloNum:
    """Appell F2 from its own double sum,

        eps(x1 x2) B1C1B2C2(-1)/q^2 * sum_{u,v} B1(u) B2(v) conj(B1)C1(1-u) conj(B2)C2(1-v)
                                                 * conj(A)(1 - u x1 - v x2),

    written as a plain loop so it does not share code with :func:`lauricella_fa`.
    """
    ctx = A.field
    vf = value_field(ctx)
    if x1 == 0 or x2 == 0:
        return vf.zero()
    m = ctx.order
    hist = [0] * m

    def ex(ch_j, z):
        return None if z == 0 else (ch_j * ctx.dlog(z)) % m

    one = ctx.one
    for u in range(ctx.q):
        eu1, eu2 = ex(B1.j, u), ex(C1.j - B1.j, ctx.sub(one, u))
        if eu1 is None or eu2 is None:
            continue
        ux = ctx.mul(u, x1)
        for v in range(ctx.q):
            ev1, ev2 = ex(B2.j, v), ex(C2.j - B2.j, ctx.sub(one, v))
            if ev1 is None or ev2 is None:
                continue
            ea = ex(-A.j, ctx.sub(ctx.sub(one, ux), ctx.mul(v, x2)))
            if ea is None:
                continue
            hist[(eu1 + eu2 + ev1 + ev2 + ea) % m] += 1
    shift = sign_exponent(ctx, B1.j + C1.j + B2.j + C2.j)
    return vf.from_group_ring(hist, ctx.q ** 2, shift=shift)


def permute(params: SeriesParams, sigma: Sequence[int]) -> SeriesParams:
    """Reorder the variables: slot i of the result is slot sigma[i] of ``params``."""
    sigma = list(sigma)
    if sorted(sigma) != list(range(params.n)):
        raise DomainError(f"{sigma} is not a permutation of 0..{params.n - 1}")
    return SeriesParams(params.A, tuple(params.Bs[s] for s in sigma),
                        tuple(params.Cs[s] for s in sigma), tuple(params.xs[s] for s in sigma))
