import itertools
import random

import pytest

from ffhyper import (Character, FieldMismatchError, binom, build_binom_table, build_field, char_group,
                     chi_eval, field_for_order, jacobi, multi_jacobi, multinom, multinom_product,
                     multinom_product_signed, multinom_recursive, multinomial_expansion, value_field)
from ffhyper.errors import DomainError

import oracles


def close(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) < tol


def test_jacobi_examples():
    ctx = build_field(5)
    K = value_field(ctx)
    eps = Character(ctx, 0)
    assert jacobi(eps, eps) == K.rational(3)
    for j in (1, 2, 3):
        chi = Character(ctx, j)
        assert jacobi(chi, chi.conj()) == -chi_eval(chi, ctx.minus_one)
        assert jacobi(eps, chi) == K.rational(-1)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_jacobi_against_oracle(q):
    ctx = field_for_order(q)
    for a in range(q - 1):
        for b in range(q - 1):
            assert close(jacobi(Character(ctx, a), Character(ctx, b)), oracles.jacobi(ctx, a, b))


def test_multi_jacobi_small_cases():
    ctx = build_field(7)
    A, B = Character(ctx, 2), Character(ctx, 5)
    assert multi_jacobi([A]) == value_field(ctx).one()
    assert multi_jacobi([A, B]) == jacobi(A, B)
    with pytest.raises(DomainError):
        multi_jacobi([])


@pytest.mark.parametrize("q,idx", [(5, (1, 1, 2)), (7, (1, 2, 3)), (9, (0, 3, 5)), (5, (2, 1, 3, 1))])
def test_multi_jacobi_against_constrained_oracle(q, idx):
    ctx = field_for_order(q)
    assert close(multi_jacobi([Character(ctx, j) for j in idx]), oracles.multi_jacobi(ctx, idx))


def test_binom_examples():
    ctx = build_field(5)
    K = value_field(ctx)
    eps = Character(ctx, 0)
    assert binom(eps, eps) == K.rational(3) / 5
    chi = Character(ctx, 1)
    assert binom(chi, eps) == jacobi(chi, eps) / 5
    assert binom(Character(ctx, 1), Character(ctx, 2)) == binom(Character(ctx, 1), Character(ctx, 3))


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_binomial_symmetries(q):
    ctx = field_for_order(q)
    for A in char_group(ctx):
        for B in char_group(ctx):
            assert binom(A, B) == binom(A, A / B)
            assert binom(A, B) == binom(B / A, B) * chi_eval(B, ctx.minus_one)


def test_binom_table():
    ctx = build_field(3)
    table = build_binom_table(ctx)
    assert table.size == 2
    assert table.lookup(0, 0) == value_field(ctx).rational(1) / 3
    ctx = build_field(13)
    table = build_binom_table(ctx)
    rng = random.Random(7)
    for _ in range(20):
        i, j = rng.randrange(12), rng.randrange(12)
        assert table[Character(ctx, i), Character(ctx, j)] == binom(Character(ctx, i), Character(ctx, j))
    with pytest.raises(FieldMismatchError):
        table[Character(build_field(5), 1), Character(build_field(5), 1)]
    assert build_binom_table(ctx) is table


def test_binom_table_symmetric_exhaustive():
    ctx = build_field(5)
    t = build_binom_table(ctx)
    for i in range(4):
        for j in range(4):
            assert t.lookup(i, j) == t.lookup(i, i - j)


def test_multinom_n1_is_binom():
    ctx = build_field(7)
    for a in range(6):
        for b in range(6):
            A, B = Character(ctx, a), Character(ctx, b)
            assert multinom(A, [B]) == binom(A, B)


def test_product_and_signed_forms_on_generic_tuple():
    ctx = build_field(5)
    A, B1, B2 = Character(ctx, 1), Character(ctx, 1), Character(ctx, 2)
    # A/B1 is trivial here, so the plain product is off by the boundary term
    assert multinom(A, [B1, B2]) == multinom_recursive(A, [B1, B2])
    ctx = build_field(7)
    rng = random.Random(3)
    for _ in range(30):
        a, b1, b2 = (rng.randrange(6) for _ in range(3))
        if a == b1:
            continue
        A, B1, B2 = Character(ctx, a), Character(ctx, b1), Character(ctx, b2)
        assert multinom(A, [B1, B2]) == multinom_product(A, [B1, B2])
        assert multinom(A, [B1, B2]) == multinom_product_signed(A, [B1, B2])


def test_binomial_product_fails_on_trivial_quotient():
    ctx = build_field(5)
    A, B1, B2 = Character(ctx, 2), Character(ctx, 2), Character(ctx, 0)
    assert multinom(A, [B1, B2]) != multinom_product(A, [B1, B2])
    assert multinom(A, [B1, B2]) == multinom_recursive(A, [B1, B2])


@pytest.mark.parametrize("q,n", [(3, 2), (3, 3), (5, 2), (5, 3), (7, 3), (13, 2), (5, 4)])
def test_recursive_multinomial_exact(q, n):
    ctx = field_for_order(q)
    rng = random.Random(f"{q}:{n}")
    for _ in range(40):
        A = Character(ctx, rng.randrange(q - 1))
        Bs = [Character(ctx, rng.randrange(q - 1)) for _ in range(n)]
        assert multinom(A, Bs) == multinom_recursive(A, Bs)


@pytest.mark.parametrize("q,n", [(3, 2), (5, 2), (3, 3)])
def test_multinomial_theorem(q, n):
    ctx = field_for_order(q)
    for A in char_group(ctx):
        for xs in itertools.product(range(q), repeat=n):
            s = ctx.one
            for x in xs:
                s = ctx.add(s, x)
            assert multinomial_expansion(A, xs) == chi_eval(A, s)
