"""Field, monomial order, and polynomial arithmetic tests."""

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loccoh.groebner import quotient_ring
from loccoh.rings import (
    MonomialOrder,
    PrimeField,
    Ring,
    RingError,
    mono_mul,
)
from oracles import degrevlex_cmp, inverse_mod, lex_cmp


def test_prime_validation():
    PrimeField(2)
    PrimeField(32003)
    with pytest.raises(RingError):
        PrimeField(32001)  # 3 * 10667
    with pytest.raises(RingError):
        PrimeField(1)
    with pytest.raises(RingError):
        PrimeField(2**31 + 11)


@pytest.mark.parametrize("p", [2, 5, 7, 17])
def test_field_axioms_by_exhaustion(p):
    f = PrimeField(p)
    elems = range(p)
    for a, b in product(elems, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b, c in product(elems, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_inverse_identity_and_small():
    f = PrimeField(7)
    assert f.inv(1) == 1
    assert f.inv(2) == 4  # 2*4 = 8 = 1 mod 7
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_inverse_against_xgcd_oracle():
    f = PrimeField(32003)
    assert f.inv(12345) == inverse_mod(12345, 32003)
    assert (12345 * f.inv(12345)) % 32003 == 1
    rng = random.Random(7)
    for _ in range(200):
        a = rng.randrange(1, 32003)
        assert f.inv(a) == inverse_mod(a, 32003)


def test_order_examples():
    o = MonomialOrder("degrevlex", 2)
    assert o.compare((2, 0), (1, 1)) == 1  # x^2 > xy
    assert o.compare((1, 1), (1, 1)) == 0
    lex = MonomialOrder("lex", 2)
    assert lex.compare((1, 0), (0, 5)) == 1


def test_order_arity_mismatch():
    o = MonomialOrder("degrevlex", 2)
    with pytest.raises(RingError):
        o.compare((1, 0, 0), (0, 1, 0))


def test_orders_against_definitional_oracle():
    rng = random.Random(2024)
    for n, precedence in [(3, (0, 1, 2)), (3, (2, 0, 1)), (4, (0, 1, 2, 3))]:
        drl = MonomialOrder("degrevlex", n, precedence)
        lex = MonomialOrder("lex", n, precedence)
        for _ in range(1000):
            a = tuple(rng.randint(0, 5) for _ in range(n))
            b = tuple(rng.randint(0, 5) for _ in range(n))
            assert drl.compare(a, b) == degrevlex_cmp(a, b, precedence)
            assert lex.compare(a, b) == lex_cmp(a, b, precedence)


@given(
    st.tuples(*[st.integers(0, 6)] * 3),
    st.tuples(*[st.integers(0, 6)] * 3),
    st.tuples(*[st.integers(0, 4)] * 3),
)
@settings(max_examples=300, deadline=None)
def test_order_multiplicative(a, b, c):
    for kind in ("degrevlex", "lex"):
        o = MonomialOrder(kind, 3)
        cmp = o.compare(a, b)
        assert o.compare(mono_mul(a, c), mono_mul(b, c)) == cmp


def test_poly_binomial_identity(s2):
    x, y = s2.gens
    assert (x + y) * (x + y) == x**2 + 2 * x * y + y**2


def test_poly_absorbing_zero(s2):
    x, y = s2.gens
    f = x**3 + 2 * x * y
    assert f * s2.zero == s2.zero
    assert (f * 0).is_zero


def test_quotient_kills_modulus(s4, r4):
    x, y, z, w = r4.gens
    assert (x * z).is_zero
    assert (y * w).is_zero
    assert not (x * w).is_zero


def test_poly_ring_mismatch(s2, s4):
    with pytest.raises(RingError):
        s2.gens[0] + s4.gens[0]


def test_add_commutative_associative_random(s2):
    rng = random.Random(5)

    def rand_poly():
        d = {}
        for _ in range(rng.randint(0, 5)):
            m = (rng.randint(0, 3), rng.randint(0, 3))
            d[m] = rng.randrange(32003)
        return s2.from_dict(d)

    for _ in range(60):
        f, g, h = rand_poly(), rand_poly(), rand_poly()
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)


def test_quotient_normal_form_idempotent(r4):
    rng = random.Random(11)
    for _ in range(40):
        d = {}
        for _ in range(rng.randint(1, 6)):
            m = tuple(rng.randint(0, 2) for _ in range(4))
            d[m] = rng.randrange(1, 32003)
        f = r4.from_dict(d)
        assert r4.normal_form(f) == f


def test_parse_roundtrip(s4):
    f = s4.parse("x^2 + 3*y*z - 1")
    assert f == s4.gens[0] ** 2 + 3 * s4.gens[1] * s4.gens[2] - s4.one
    assert s4.parse(str(f)) == f
    with pytest.raises(RingError):
        s4.parse("q + 1")


def test_precedence_permutation():
    o = MonomialOrder("lex", 2, precedence=(1, 0))  # y beats x
    assert o.compare((5, 0), (0, 1)) == -1
