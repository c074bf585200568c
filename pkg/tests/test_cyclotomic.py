import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ffhyper import CycloCtx, cyclo_arith, cyclotomic_polynomial, embed_complex, root_of_unity
from ffhyper.cyclotomic import cyclo_ctx, euler_phi


@pytest.mark.parametrize("m,poly", [(1, (-1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)),
                                    (2, (1, 1)), (8, (1, 0, 0, 0, 1))])
def test_cyclotomic_polynomial(m, poly):
    assert tuple(cyclotomic_polynomial(m)) == poly


@pytest.mark.parametrize("m", range(1, 41))
def test_degree_is_totient(m):
    assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


def test_basic_arithmetic():
    K = cyclo_ctx(4)
    z = root_of_unity(K, 1)
    assert cyclo_arith(K, "mul", z, z) == K.rational(-1)
    s = cyclo_arith(K, "add", z + 1, -z - 1)
    assert s.is_zero()
    x = K.from_coeffs([Fraction(1, 3), 2])
    assert cyclo_arith(K, "scale_by_rational", x, 1) == x


@pytest.mark.parametrize("m,k,value", [(4, 0, 1), (4, 2, -1), (6, 3, -1)])
def test_roots(m, k, value):
    assert root_of_unity(cyclo_ctx(m), k) == cyclo_ctx(m).rational(value)


def test_embedding():
    assert abs(embed_complex(cyclo_ctx(4), root_of_unity(cyclo_ctx(4), 1)) - 1j) < 1e-12
    assert embed_complex(cyclo_ctx(1), cyclo_ctx(1).rational(Fraction(3, 2))) == 1.5
    w = embed_complex(cyclo_ctx(8), root_of_unity(cyclo_ctx(8), 1))
    assert abs(w - (2 ** 0.5 / 2) * (1 + 1j)) < 1e-12


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10, 12, 15, 16, 26])
def test_root_sums(m):
    K = cyclo_ctx(m)
    z = root_of_unity(K, 1)
    assert z ** m == K.one()
    total = K.zero()
    for k in range(m):
        total = total + root_of_unity(K, k)
    assert total.is_zero()


def test_serialization_lowest_terms():
    K = cyclo_ctx(6)
    x = K.from_coeffs([Fraction(2, 4), Fraction(-3, 9)])
    assert x.serialize() == ["1/2", "-1/3"]
    assert K.parse(x.serialize()) == x


def _nums(m):
    deg = euler_phi(m)
    frac = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
    return st.lists(frac, min_size=deg, max_size=deg)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([4, 6, 8, 10, 12]), st.data())
def test_ring_axioms_and_embedding(m, data):
    K = cyclo_ctx(m)
    a, b, c = (K.from_coeffs(data.draw(_nums(m))) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == K.zero()
    za, zb = complex(a), complex(b)
    assert abs(complex(a * b) - za * zb) < 1e-10 * max(1, abs(za * zb))
    assert abs(complex(a + b) - (za + zb)) < 1e-10 * max(1, abs(za) + abs(zb))


def test_canonical_equality_matches_complex():
    K = cyclo_ctx(12)
    a = root_of_unity(K, 3) + root_of_unity(K, 9)
    assert a.is_zero()
    assert abs(complex(a)) < 1e-12
    assert hash(root_of_unity(K, 13)) == hash(root_of_unity(K, 1))


def test_ctx_equality():
    assert CycloCtx(10) == cyclo_ctx(10)
