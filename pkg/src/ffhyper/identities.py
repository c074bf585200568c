"""Machine verification of reduction, transformation and generating-function
identities for the finite-field Lauricella function.

Each identity is written once against an evaluation backend.  The exact
backend evaluates the left side with the direct point sum and the right side
with the character-sum route, so the two sides never share an evaluation path.
The float backend repeats the computation with complex point sums as a cross-check.

Every identity exists in two forms.  ``literal`` follows the statement as
usually published; several of those statements omit boundary terms and fail
on specific parameter coincidences.  ``corrected`` adds the missing terms and
holds on every admissible input.  The README lists the corrections.
"""

from __future__ import annotations

import cmath
import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .characters import value_field
from .charsums import build_binom_table
from .cyclotomic import CycloNum
from .errors import CapacityError, DomainError
from .field import FieldCtx, build_field, field_for_order
from .floatmirror import binom_float, lauricella_fa_float
from .hypergeometric import SeriesParams, _evaluate, lauricella_fa_shifted

IDENTITIES = (
    "reduction_split", "reduction_cov1", "reduction_cov2", "eps_reduction",
    "equal_reduction", "genfunc_forward", "genfunc_reversed", "genfunc_local",
)
FORMS = ("corrected", "literal")
FLOAT_TOL = 1e-6
LHS, RHS = "lhs", "rhs"


# -- evaluation backends ---------------------------------------------------

class ExactBackend:
    """Exact values; F on the left side by point sum, on the right by character sum."""

    def __init__(self, ctx: FieldCtx):
        self.field = ctx
        self.vf = value_field(ctx)
        self.table = build_binom_table(ctx)
        self.zero = self.vf.zero()

    def chi(self, j: int, x: int) -> CycloNum:
        if x == 0:
            return self.zero
        return self.vf.root_of_unity(j * int(self.field.dlog_table[x]))

    def sign(self, j: int) -> CycloNum:
        return self.chi(j, self.field.minus_one)

    @staticmethod
    def rat(num: int, den: int = 1) -> Fraction:
        return Fraction(num, den)

    def binom(self, a: int, b: int) -> CycloNum:
        return self.table.lookup(a, b)

    def F(self, a, bs, cs, xs, side: str) -> CycloNum:
        route = "direct" if side == LHS else "charsum"
        return _evaluate(self.field, route, a % self.field.order, _norm(self, bs), _norm(self, cs),
                         tuple(xs))

    def shifted(self, a, bs, cs, xs, c) -> CycloNum:
        if not bs:
            return self.chi(-a, c)
        return lauricella_fa_shifted(SeriesParams.from_indices(self.field, a, bs, cs, xs), c)

    @staticmethod
    def is_zero(v) -> bool:
        return v.is_zero()


class FloatBackend:
    """Complex point sums with the same interface as :class:`ExactBackend`."""

    def __init__(self, ctx: FieldCtx):
        self.field = ctx
        self.zero = 0j
        self._m = ctx.order

    def chi(self, j: int, x: int) -> complex:
        if x == 0:
            return 0j
        return _unit(self._m, (j * int(self.field.dlog_table[x])) % self._m)

    def sign(self, j: int) -> complex:
        return self.chi(j, self.field.minus_one)

    @staticmethod
    def rat(num: int, den: int = 1) -> float:
        return num / den

    def binom(self, a: int, b: int) -> complex:
        return _binom_float(self.field, a % self._m, b % self._m)

    def F(self, a, bs, cs, xs, side: str) -> complex:
        return _float_F(self.field, a % self._m, _norm(self, bs), _norm(self, cs), tuple(xs), None)

    def shifted(self, a, bs, cs, xs, c) -> complex:
        return _float_F(self.field, a % self._m, _norm(self, bs), _norm(self, cs), tuple(xs), c)

    @staticmethod
    def is_zero(v) -> bool:
        return v == 0


def _norm(ev, js) -> tuple[int, ...]:
    m = ev.field.order
    return tuple(j % m for j in js)


@lru_cache(maxsize=None)
def _unit(m: int, e: int) -> complex:
    return cmath.exp(2j * cmath.pi * e / m)


@lru_cache(maxsize=1 << 14)
def _binom_float(ctx, a, b):
    return binom_float(ctx, a, b)


@lru_cache(maxsize=1 << 16)
def _float_F(ctx, a, bs, cs, xs, offset):
    return lauricella_fa_float(ctx, a, bs, cs, xs, offset)


# -- instances and reports -------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """One identity check: parameters as character indices and element indices.

    ``k``, ``l`` are 0-based slot indices; ``t`` is a field element.
    """

    identity: str
    q: int
    a: int
    B: tuple[int, ...]
    C: tuple[int, ...]
    x: tuple[int, ...]
    k: int | None = None
    l: int | None = None
    t: int | None = None

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def field(self) -> FieldCtx:
        return field_for_order(self.q)

    def extras(self) -> dict:
        return {name: getattr(self, name) for name in ("k", "l", "t") if getattr(self, name) is not None}

    def to_json(self) -> dict:
        return {"A": self.a, "B": list(self.B), "C": list(self.C), "x": list(self.x), **self.extras()}


@dataclass
class VerificationReport:
    identity_id: str
    form: str
    q: int
    n: int
    params: SeriesParams
    extras: dict
    lhs: CycloNum
    rhs: CycloNum
    equal: bool
    elapsed: float
    float_error: float | None = None
    float_ok: bool | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "identity": self.identity_id, "form": self.form, "q": self.q, "n": self.n,
            "params": {"A": self.params.A.j, "B": [b.j for b in self.params.Bs],
                       "C": [c.j for c in self.params.Cs], "x": list(self.params.xs)},
            "extras": self.extras, "lhs": self.lhs.serialize(), "rhs": self.rhs.serialize(),
            "equal": self.equal,
        }
        if self.float_ok is not None:
            out["float_ok"] = self.float_ok
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


# -- identity sides --------------------------------------------------------

def _drop(seq: Sequence, k: int) -> tuple:
    return tuple(v for i, v in enumerate(seq) if i != k)


def _D(ev, bs, cs, xs, side):
    """prod_i eps(x_i) binom(B_i, C_i) - F(eps; B; C | x): the part of the
    expansion of the point sum lost when the top character is trivial."""
    f = ev.field
    prod = ev.rat(1)
    for b, c, x in zip(bs, cs, xs):
        if x == 0:
            return ev.zero
        prod = prod * ev.binom(b, c)
    return prod - ev.F(0, bs, cs, xs, side)


def _p_term(ev, inst: Instance):
    """Contribution of t_k = 1/x_k after substituting t_l -> 1 - t_l (shared by
    the split and first change-of-variable identities)."""
    f = ev.field
    a, B, C, x, k, l = inst.a, inst.B, inst.C, inst.x, inst.k, inst.l
    q, one = f.q, f.one
    w = (ev.sign(B[k] + C[k]) * ev.rat(1, q) * ev.chi(C[k] - B[k], f.sub(x[k], one))
         * ev.chi(-C[k], x[k]) * ev.chi(-a, f.neg(x[l])) * ev.sign(C[l]))
    if ev.is_zero(w):
        return ev.zero
    B2 = list(B)
    B2[l] = C[l] - B[l]
    x2 = [f.neg(f.div(xi, x[l])) for xi in x]
    x2[l] = one
    return w * ev.F(a, _drop(B2, k), _drop(C, k), _drop(x2, k), RHS)


def _sides_split(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, k = inst.a, inst.B, inst.C, inst.x, inst.k
    one = f.one
    lhs = ev.F(a, B, C, x, LHS)
    Bd, Cd, xd = _drop(B, k), _drop(C, k), _drop(x, k)
    Q = ev.zero
    for tk in range(f.q):
        u = f.sub(one, f.mul(x[k], tk))
        if u == 0:
            continue
        w = ev.chi(B[k], tk) * ev.chi(C[k] - B[k], f.sub(one, tk)) * ev.chi(-a, u)
        if ev.is_zero(w):
            continue
        d = f.inv(u)
        Q = Q + w * ev.F(a, Bd, Cd, tuple(f.mul(xi, d) for xi in xd), RHS)
    Q = Q * ev.sign(B[k] + C[k]) * ev.rat(1, f.q)
    if form == "corrected":
        # without a nonzero x_k the whole series vanishes but the t_k sum does not
        Q = Q * ev.chi(0, x[k])
    return lhs, _p_term(ev, inst) + Q


def _sides_cov1(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, k = inst.a, inst.B, inst.C, inst.x, inst.k
    one = f.one
    lhs = ev.F(a, B, C, x, LHS)
    Bd, Cd, xd = _drop(B, k), _drop(C, k), _drop(x, k)
    Q = ev.zero
    for tk in range(1, f.q):
        w = (ev.chi(a - C[k], tk) * ev.chi(B[k], f.sub(tk, one))
             * ev.chi(C[k] - B[k], f.add(f.sub(one, tk), f.mul(x[k], tk))))
        if ev.is_zero(w):
            continue
        Q = Q + w * ev.F(a, Bd, Cd, tuple(f.mul(xi, tk) for xi in xd), RHS)
    Q = Q * ev.sign(B[k] + C[k]) * ev.chi(-C[k], x[k]) * ev.rat(1, f.q)
    return lhs, _p_term(ev, inst) + Q


def _sides_cov2(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, k, l, t = inst.a, inst.B, inst.C, inst.x, inst.k, inst.l, inst.t
    q, one = f.q, f.one
    lx = [f.mul(xi, t) for xi in x]
    lx[k] = f.sub(one, f.div(t, x[k]))
    lhs = ev.F(a, B, C, tuple(lx), LHS)

    B2 = list(B)
    B2[l] = C[l] - B[l]
    if form == "literal":
        w = (ev.sign(-a + B[k] + C[k] + C[l]) * ev.rat(1, q) * ev.chi(-a, f.mul(x[l], t))
             * ev.chi(B[k], x[k]) * ev.chi(-B[k], f.sub(x[k], t)))
        x2 = [f.neg(f.div(f.mul(xi, t), x[l])) for xi in x]
    else:
        w = (ev.sign(-a + C[l]) * ev.rat(1, q) * ev.chi(-a, f.mul(x[l], t))
             * ev.chi(C[k] - B[k], t) * ev.chi(B[k], x[k]) * ev.chi(-C[k], f.sub(x[k], t)))
        x2 = [f.neg(f.div(xi, x[l])) for xi in x]
    x2[l] = one
    P = ev.zero if ev.is_zero(w) else w * ev.F(a, _drop(B2, k), _drop(C, k), _drop(x2, k), RHS)

    Bd, Cd, xd = _drop(B, k), _drop(C, k), _drop(x, k)
    pre = (ev.sign(B[k] + C[k]) * ev.rat(1, q) * ev.chi(-C[k], f.sub(x[k], t))
           * ev.chi(B[k], x[k]) * ev.chi(-a - B[k] + C[k], t))
    Q = ev.zero
    if not ev.is_zero(pre):
        for tk in range(1, q):
            w = (ev.chi(a - C[k], tk) * ev.chi(B[k], f.sub(tk, t))
                 * ev.chi(C[k] - B[k], f.sub(x[k], tk)))
            if ev.is_zero(w):
                continue
            Q = Q + w * ev.F(a, Bd, Cd, tuple(f.mul(xi, tk) for xi in xd), RHS)
        Q = Q * pre
    return lhs, P + Q


def _sides_eps(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, k = inst.a, inst.B, inst.C, inst.x, inst.k
    q, one = f.q, f.one
    lhs = ev.F(a, B, C, x, LHS)
    if x[k] == 0:
        return lhs, ev.zero
    Bd, Cd, xd = _drop(B, k), _drop(C, k), _drop(x, k)
    d = f.inv(f.sub(one, x[k]))
    y = tuple(f.mul(xi, d) for xi in xd)
    Ck = C[k]
    if form == "literal":
        rhs = ev.sign(Ck) * ev.rat(1, q) * (ev.F(a - Ck, Bd, Cd, y, RHS) - ev.F(a, Bd, Cd, xd, RHS))
        return lhs, rhs
    rhs = (ev.sign(a) * ev.chi(-Ck, x[k]) * ev.chi(Ck - a, f.sub(one, x[k])) * ev.binom(Ck, a)
           * ev.F(a - Ck, Bd, Cd, y, RHS)
           - ev.sign(Ck) * ev.rat(1, q) * ev.F(a, Bd, Cd, xd, RHS))
    if (Ck - a) % f.order == 0:
        rhs = rhs + ev.sign(Ck) * ev.rat(q - 1, q) * ev.chi(-a, x[k]) * _D(ev, Bd, Cd, y, RHS)
    return lhs, rhs


def _sides_equal(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, k = inst.a, inst.B, inst.C, inst.x, inst.k
    q, one = f.q, f.one
    lhs = ev.F(a, B, C, x, LHS)
    if x[k] == 0:
        return lhs, ev.zero
    Bk = B[k]
    Bd, Cd, xd = _drop(B, k), _drop(C, k), _drop(x, k)
    d = f.inv(f.sub(one, x[k]))
    y = tuple(f.mul(xi, d) for xi in xd)
    if form == "literal":
        e = f.inv(x[k])
        z = tuple(f.mul(xi, e) for xi in xd)
        rhs = (ev.rat(1, q) * ev.chi(-a, f.sub(one, x[k]))
               * (ev.F(-Bk, Bd, Cd, z, RHS) - ev.F(a, Bd, Cd, y, RHS)))
        return lhs, rhs
    inner = (ev.chi(-Bk, x[k]) * ev.rat(q) * ev.sign(a) * ev.binom(Bk, a) * ev.F(a - Bk, Bd, Cd, xd, RHS)
             - ev.chi(-a, f.sub(one, x[k])) * ev.F(a, Bd, Cd, y, RHS))
    if (Bk - a) % f.order == 0:
        inner = inner + ev.rat(q - 1) * ev.chi(-a, f.neg(x[k])) * _D(ev, Bd, Cd, xd, RHS)
    return lhs, inner * ev.rat(1, q)


def _theta_sum(ev, terms: Iterable):
    q = ev.field.q
    acc = ev.zero
    for w, val in terms:
        if not ev.is_zero(w):
            acc = acc + w * val()
    return acc * ev.rat(q, q - 1)


def _sides_gf_forward(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, t = inst.a, inst.B, inst.C, inst.x, inst.t
    lhs = _theta_sum(ev, ((ev.binom(a + th, th) * ev.chi(th, t),
                          lambda th=th: ev.F(a + th, B, C, x, LHS)) for th in range(f.order)))
    d = f.inv(f.sub(f.one, t))
    rhs = ev.chi(-a, f.sub(f.one, t)) * ev.F(a, B, C, tuple(f.mul(xi, d) for xi in x), RHS)
    if form == "corrected":
        rhs = rhs - ev.chi(-a, f.neg(t)) * _D(ev, B, C, x, RHS)
    return lhs, rhs


def _sides_gf_reversed(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, t = inst.a, inst.B, inst.C, inst.x, inst.t
    lhs = _theta_sum(ev, ((ev.binom(a + th, th) * ev.chi(th, t),
                          lambda th=th: ev.F(-th, B, C, x, LHS)) for th in range(f.order)))
    d = f.neg(f.div(t, f.sub(f.one, t)))
    rhs = ev.chi(-a, f.sub(f.one, t)) * ev.F(a, B, C, tuple(f.mul(xi, d) for xi in x), RHS)
    if form == "corrected":
        rhs = rhs - _D(ev, B, C, x, RHS)
    return lhs, rhs


def _sides_gf_local(ev, inst: Instance, form: str):
    f = ev.field
    a, B, C, x, k, t = inst.a, inst.B, inst.C, inst.x, inst.k, inst.t

    def shifted_B(th):
        B2 = list(B)
        B2[k] = B[k] + th
        return tuple(B2)

    lhs = _theta_sum(ev, ((ev.binom(B[k] - C[k] + th, th) * ev.chi(th, t),
                          lambda th=th: ev.F(a, shifted_B(th), C, x, LHS)) for th in range(f.order)))
    x2 = list(x)
    x2[k] = f.div(x[k], f.sub(f.one, t))
    rhs = ev.chi(-B[k], f.sub(f.one, t)) * ev.F(a, B, C, tuple(x2), RHS)
    if form == "corrected" and x[k] != 0:
        w = ev.sign(B[k] + C[k]) * ev.rat(1, f.q) * ev.chi(C[k] - B[k], t)
        rhs = rhs - w * ev.shifted(a, _drop(B, k), _drop(C, k), _drop(x, k), f.sub(f.one, x[k]))
    return lhs, rhs


_SIDES = {
    "reduction_split": _sides_split,
    "reduction_cov1": _sides_cov1,
    "reduction_cov2": _sides_cov2,
    "eps_reduction": _sides_eps,
    "equal_reduction": _sides_equal,
    "genfunc_forward": _sides_gf_forward,
    "genfunc_reversed": _sides_gf_reversed,
    "genfunc_local": _sides_gf_local,
}


# -- preconditions ---------------------------------------------------------

def admissibility(inst: Instance, form: str = "corrected") -> str | None:
    """Name of the first violated precondition, or None when ``inst`` is admissible."""
    ident, n, x = inst.identity, inst.n, inst.x
    if ident not in _SIDES:
        return f"unknown identity {ident!r}"
    if form not in FORMS:
        return f"unknown form {form!r}"
    m = inst.q - 1
    if ident.startswith("genfunc"):
        if inst.t is None or inst.t in (0, field_for_order(inst.q).one):
            return "t must be nonzero and different from 1"
        if ident == "genfunc_local" and not (inst.k is not None and 0 <= inst.k < n):
            return f"k must be a slot index in 0..{n - 1}"
        return None
    if n < 2:
        return "needs n >= 2"
    if inst.k is None or not 0 <= inst.k < n:
        return f"k must be a slot index in 0..{n - 1}"
    k = inst.k
    one = field_for_order(inst.q).one
    if ident.startswith("reduction"):
        if inst.l is None or not 0 <= inst.l < n:
            return f"l must be a slot index in 0..{n - 1}"
        if inst.l == k:
            return "k and l must differ"
        if x[inst.l] == 0:
            return "x_l must be nonzero"
        if ident == "reduction_cov2":
            if inst.t is None:
                return "t is required"
            if x[k] == 0:
                return "x_k must be nonzero"
        return None
    if x[k] == one:
        return "x_k must differ from 1"
    if ident == "eps_reduction" and inst.B[k] % m != 0:
        return "B_k must be the trivial character"
    if ident == "equal_reduction":
        if (inst.C[k] - inst.B[k]) % m != 0:
            return "C_k must equal B_k"
        if form == "literal" and x[k] == 0:
            return "x_k must be nonzero"
    return None


# -- checking --------------------------------------------------------------

def check(inst: Instance, form: str = "corrected", float_check: bool = True) -> VerificationReport:
    """Evaluate both sides of one instance exactly (and in floating point)."""
    problem = admissibility(inst, form)
    if problem:
        raise DomainError(f"{inst.identity}: {problem}")
    ctx = inst.field
    start = time.perf_counter()
    lhs, rhs = _SIDES[inst.identity](ExactBackend(ctx), inst, form)
    elapsed = time.perf_counter() - start
    report = VerificationReport(
        identity_id=inst.identity, form=form, q=inst.q, n=inst.n,
        params=SeriesParams.from_indices(ctx, inst.a, inst.B, inst.C, inst.x),
        extras=inst.extras(), lhs=lhs, rhs=rhs, equal=(lhs == rhs), elapsed=elapsed)
    if float_check:
        flhs, frhs = _SIDES[inst.identity](FloatBackend(ctx), inst, form)
        scale = inst.q ** inst.n
        err = max(abs(complex(lhs) - flhs), abs(complex(rhs) - frhs)) * scale
        report.float_error = err
        report.float_ok = err <= FLOAT_TOL
    return report


def _instance(identity: str, params: SeriesParams, **extras) -> Instance:
    a, bs, cs, xs = params.indices()
    return Instance(identity, params.field.q, a, bs, cs, xs, **extras)


def verify_reduction_split(params: SeriesParams, k: int, l: int, form: str = "corrected",
                           float_check: bool = True) -> VerificationReport:
    """F split into the t_k = 1/x_k part and the rest, each an (n-1)-variable series."""
    return check(_instance("reduction_split", params, k=k, l=l), form, float_check)


def verify_reduction_cov1(params: SeriesParams, k: int, l: int, form: str = "corrected",
                          float_check: bool = True) -> VerificationReport:
    return check(_instance("reduction_cov1", params, k=k, l=l), form, float_check)


def verify_reduction_cov2(params: SeriesParams, k: int, l: int, t: int, form: str = "corrected",
                          float_check: bool = True) -> VerificationReport:
    """The lhs is evaluated at arguments x_i t with slot k replaced by 1 - t/x_k."""
    params.field._check(t)
    return check(_instance("reduction_cov2", params, k=k, l=l, t=t), form, float_check)


def verify_eps_reduction(params: SeriesParams, k: int, form: str = "corrected",
                         float_check: bool = True) -> VerificationReport:
    return check(_instance("eps_reduction", params, k=k), form, float_check)


def verify_equal_reduction(params: SeriesParams, k: int, form: str = "corrected",
                           float_check: bool = True) -> VerificationReport:
    return check(_instance("equal_reduction", params, k=k), form, float_check)


def verify_genfunc_forward(params: SeriesParams, t: int, form: str = "corrected",
                           float_check: bool = True) -> VerificationReport:
    params.field._check(t)
    return check(_instance("genfunc_forward", params, t=t), form, float_check)


def verify_genfunc_reversed(params: SeriesParams, t: int, form: str = "corrected",
                            float_check: bool = True) -> VerificationReport:
    params.field._check(t)
    return check(_instance("genfunc_reversed", params, t=t), form, float_check)


def verify_genfunc_local(params: SeriesParams, k: int, t: int, form: str = "corrected",
                         float_check: bool = True) -> VerificationReport:
    params.field._check(t)
    return check(_instance("genfunc_local", params, k=k, t=t), form, float_check)


# -- enumeration -----------------------------------------------------------

def _extra_axes(identity: str, q: int, n: int) -> list[tuple[str, range]]:
    slots = range(n)
    if identity in ("reduction_split", "reduction_cov1"):
        return [("k", slots), ("l", slots)]
    if identity == "reduction_cov2":
        return [("k", slots), ("l", slots), ("t", range(q))]
    if identity in ("eps_reduction", "equal_reduction"):
        return [("k", slots)]
    if identity == "genfunc_local":
        return [("k", slots), ("t", range(q))]
    return [("t", range(q))]


def exhaustive_size(identity: str, q: int, n: int) -> int:
    """Number of raw tuples enumerated before filtering by admissibility."""
    size = (q - 1) ** (2 * n + 1) * q ** n
    for _, axis in _extra_axes(identity, q, n):
        size *= len(axis)
    return size


def enumerate_instances(identity: str, q: int, n: int, form: str = "corrected") -> Iterator[Instance]:
    """Every admissible instance in canonical (lexicographic) order."""
    field_for_order(q)
    m = q - 1
    axes = _extra_axes(identity, q, n)
    names = [name for name, _ in axes]
    for a in range(m):
        for B in itertools.product(range(m), repeat=n):
            for C in itertools.product(range(m), repeat=n):
                for x in itertools.product(range(q), repeat=n):
                    for vals in itertools.product(*(ax for _, ax in axes)):
                        inst = Instance(identity, q, a, B, C, x, **dict(zip(names, vals)))
                        if admissibility(inst, form) is None:
                            yield inst


def sample_instances(identity: str, q: int, n: int, count: int, seed: int,
                     form: str = "corrected", max_draws: int | None = None) -> list[Instance]:
    """``count`` admissible instances drawn uniformly with rejection from a seeded stream.

    For the reductions that fix a character (B_k = eps, or C_k = B_k) the
    fixed character is set after drawing k rather than rejected into place.
    """
    field_for_order(q)
    rng = random.Random(f"{seed}:{identity}:{q}:{n}")
    m = q - 1
    axes = _extra_axes(identity, q, n)
    out = []
    draws = 0
    limit = max_draws if max_draws is not None else 1000 * count + 1000
    while len(out) < count:
        draws += 1
        if draws > limit:
            raise CapacityError(f"{identity}: no admissible instance after {limit} draws")
        a = rng.randrange(m)
        B = [rng.randrange(m) for _ in range(n)]
        C = [rng.randrange(m) for _ in range(n)]
        x = [rng.randrange(q) for _ in range(n)]
        extras = {name: rng.choice(ax) for name, ax in axes}
        if identity == "eps_reduction":
            B[extras["k"]] = 0
        elif identity == "equal_reduction":
            C[extras["k"]] = B[extras["k"]]
        inst = Instance(identity, q, a, tuple(B), tuple(C), tuple(x), **extras)
        if admissibility(inst, form) is None:
            out.append(inst)
    return out


# -- sweeps ----------------------------------------------------------------

@dataclass
class IdentityTally:
    identity: str
    form: str
    checked: int = 0
    passed: int = 0
    float_failures: int = 0
    first_failure: dict | None = None

    @property
    def failed(self) -> int:
        return self.checked - self.passed

    def to_json(self) -> dict:
        return {"identity": self.identity, "form": self.form, "checked": self.checked,
                "passed": self.passed, "failed": self.failed,
                "float_failures": self.float_failures, "first_failure": self.first_failure}


@dataclass
class SweepResult:
    tallies: dict[str, IdentityTally] = field(default_factory=dict)
    reports: list[VerificationReport] = field(default_factory=list)
    stopped_early: bool = False

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 and t.float_failures == 0 for t in self.tallies.values())

    def summary(self) -> dict:
        return {"summary": True, "ok": self.ok, "stopped_early": self.stopped_early,
                "identities": [t.to_json() for t in self.tallies.values()]}


def _check_task(args):
    inst, form, float_check = args
    return check(inst, form, float_check)


def plan_sweep(suite: Sequence[str], qs: Sequence[int], n: int, mode: str = "sample",
               count: int = 500, seed: int = 42, form: str = "corrected",
               budget: int | None = None) -> list[Instance]:
    """The canonical, deterministic list of instances a sweep will check."""
    for ident in suite:
        if ident not in _SIDES:
            raise DomainError(f"unknown identity {ident!r}")
    if mode not in ("sample", "exhaustive"):
        raise DomainError(f"unknown mode {mode!r}")
    if n < 1:
        raise DomainError("n must be at least 1")
    plan = []
    for q in qs:
        field_for_order(q)
        for ident in suite:
            if mode == "exhaustive":
                size = exhaustive_size(ident, q, n)
                if budget is not None and size > budget:
                    raise CapacityError(
                        f"exhaustive {ident} at q={q}, n={n} has {size} tuples, over budget {budget}")
                plan.extend(enumerate_instances(ident, q, n, form))
            else:
                if budget is not None and count > budget:
                    raise CapacityError(f"sample of {count} exceeds budget {budget}")
                plan.extend(sample_instances(ident, q, n, count, seed, form))
    return plan


def sweep(suite: Sequence[str], qs: Sequence[int], n: int, mode: str = "sample",
          count: int = 500, seed: int = 42, jobs: int = 1, budget: int | None = None,
          fail_fast: bool = False, form: str = "corrected", float_check: bool = True,
          keep_reports: bool = True, on_report=None) -> SweepResult:
    """Check every planned instance; aggregation follows the canonical plan order."""
    plan = plan_sweep(suite, qs, n, mode, count, seed, form, budget)
    result = SweepResult()
    for ident in suite:
        result.tallies[ident] = IdentityTally(ident, form)
    tasks = [(inst, form, float_check) for inst in plan]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            stream = pool.map(_check_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
            _consume(stream, result, fail_fast, keep_reports, on_report)
    else:
        _consume(map(_check_task, tasks), result, fail_fast, keep_reports, on_report)
    return result


def _consume(stream, result: SweepResult, fail_fast: bool, keep_reports: bool, on_report) -> None:
    for rep in stream:
        tally = result.tallies[rep.identity_id]
        tally.checked += 1
        tally.passed += rep.equal
        if rep.float_ok is False:
            tally.float_failures += 1
        if not rep.equal and tally.first_failure is None:
            tally.first_failure = rep.to_json()
        if keep_reports:
            result.reports.append(rep)
        if on_report is not None:
            on_report(rep)
        if fail_fast and (not rep.equal or rep.float_ok is False):
            result.stopped_early = True
            break
