"""Multiplicative characters of F_q, extended to F_q by chi(0) = 0.

The character group is cyclic of order q - 1.  ``Character(ctx, j)`` is the
character sending the canonical generator g to zeta_{q-1}^j, so
``chi_j(g^k) = zeta^(j*k)``.  Index 0 is the trivial character epsilon, which
also vanishes at 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cyclotomic import CycloCtx, CycloNum, cyclo_ctx
from .errors import DomainError, FieldMismatchError
from .field import FieldCtx


def value_field(ctx: FieldCtx) -> CycloCtx:
    """The cyclotomic field Q(zeta_{q-1}) holding all character values of F_q."""
    return cyclo_ctx(ctx.order)


@dataclass(frozen=True)
class Character:
    field: FieldCtx
    j: int

    def __post_init__(self):
        object.__setattr__(self, "j", int(self.j) % self.field.order)

    @property
    def name(self) -> str:
        return f"chi{self.j}"

    def __repr__(self) -> str:
        return f"{self.name}@F{self.field.q}"

    def is_trivial(self) -> bool:
        return self.j == 0

    def _same_field(self, other: "Character") -> None:
        if other.field != self.field:
            raise FieldMismatchError(
                f"characters of F_{self.field.q} and F_{other.field.q} cannot be combined")

    def exponent(self, x: int) -> int | None:
        """k with chi(x) = zeta^k, or None when x = 0."""
        if x == 0:
            return None
        return (self.j * self.field.dlog(x)) % self.field.order

    def __call__(self, x: int) -> CycloNum:
        return chi_eval(self, x)

    def __mul__(self, other: "Character") -> "Character":
        return char_mul(self, other)

    def __truediv__(self, other: "Character") -> "Character":
        return char_mul(self, char_inv(other))

    def __pow__(self, e: int) -> "Character":
        return Character(self.field, self.j * e)

    def conj(self) -> "Character":
        return char_inv(self)


def chi_eval(chi: Character, x: int) -> CycloNum:
    """chi(x) as an exact cyclotomic number; 0 at x = 0 for every chi."""
    vf = value_field(chi.field)
    e = chi.exponent(x)
    return vf.zero() if e is None else vf.root_of_unity(e)


def char_group(ctx: FieldCtx) -> list[Character]:
    return [Character(ctx, j) for j in range(ctx.order)]


def trivial(ctx: FieldCtx) -> Character:
    return Character(ctx, 0)


def char_mul(a: Character, b: Character) -> Character:
    a._same_field(b)
    return Character(a.field, a.j + b.j)


def char_inv(a: Character) -> Character:
    return Character(a.field, -a.j)


def delta(x: int) -> int:
    """Indicator of the zero element."""
    return 1 if x == 0 else 0


_NAME = re.compile(r"^\s*(?:chi)?(-?\d+)\s*$")


def parse_character(ctx: FieldCtx, text: str) -> Character:
    """Parse ``chi<j>`` (or a bare index) into a character of ``ctx``."""
    mt = _NAME.match(text)
    if not mt:
        raise DomainError(f"malformed character {text!r}; expected chi<j>")
    j = int(mt.group(1))
    if not 0 <= j < ctx.order:
        raise DomainError(f"character index {j} outside 0..{ctx.order - 1}")
    return Character(ctx, j)
