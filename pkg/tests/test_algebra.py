import itertools
import random

import pytest

from aswitt.algebra import (CONWAY, FieldError, finite_field, format_fq, fq_arith, fq_trace,
                            is_irreducible, lift, lift_ring, parse_field_spec, reduce_lift,
                            teichmuller_lift)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2)]


def naive_mul(a, b, modulus, p):
    """Schoolbook product of coefficient lists, reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    e = len(modulus) - 1
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for i in range(e + 1):
                prod[k - e + i] = (prod[k - e + i] - c * modulus[i]) % p
    return (prod + [0] * e)[:e]


def test_f2_one_plus_one():
    F = finite_field(2)
    assert F.one + F.one == F.zero


def test_f4_generator_squared():
    F = finite_field(2, 2)
    g = F.gen
    assert g * g == g + F.one
    assert format_fq(g * g) == "g+1"


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplication_matches_schoolbook(p, e):
    F = finite_field(p, e)
    for x, y in itertools.product(F.elements(), repeat=2):
        expected = naive_mul(x.coefficients(), y.coefficients(), F.modulus, p)
        assert (x * y).coefficients() == expected


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms(p, e):
    F = finite_field(p, e)
    for x in F.elements():
        assert x * F.one == x
        assert x + (-x) == F.zero
        if x:
            assert x * x.inverse() == F.one
            assert fq_arith(x, x, "div") == F.one
        assert x.pth_root().frobenius() == x
        assert x ** F.q == x


@pytest.mark.parametrize("p,e", FIELDS)
def test_trace_is_sum_of_conjugates(p, e):
    F = finite_field(p, e)
    for x in F.elements():
        total, y = F.zero, x
        for _ in range(e):
            total, y = total + y, y.frobenius()
        assert total.coefficients()[1:] == [0] * (e - 1)
        assert fq_trace(x) == total.coefficients()[0]


def test_trace_examples():
    F4 = finite_field(2, 2)
    assert fq_trace(F4.one) == 0
    assert fq_trace(F4.gen) == 1
    F5 = finite_field(5)
    assert [fq_trace(x) for x in F5.elements()] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("key", sorted(CONWAY))
def test_builtin_moduli_are_irreducible(key):
    p, e = key
    assert is_irreducible(CONWAY[key], p)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        finite_field(2, 2, (1, 0, 1))


def test_field_size_bound():
    with pytest.raises(FieldError):
        finite_field(2, 8)


def test_parse_field_spec():
    F = parse_field_spec("p=2, e=2, modulus=1,1,1")
    assert F == finite_field(2, 2)
    assert parse_field_spec("p=3").q == 3


def test_lift_and_reduce_examples():
    F = finite_field(2)
    R = lift_ring(F, 3)
    assert lift(F.zero, 3) == R.zero
    assert reduce_lift(R.zero) == F.zero
    assert lift(F.one, 3) == R.one
    assert reduce_lift(R.from_int(5)) == F.one


@pytest.mark.parametrize("p,e", [(2, 2), (3, 2), (2, 3)])
def test_lift_round_trip(p, e):
    F = finite_field(p, e)
    for x in F.elements():
        assert reduce_lift(lift(x, 4)) == x


@pytest.mark.parametrize("p,e,M", [(2, 2, 4), (3, 1, 3), (5, 2, 2), (2, 3, 5)])
def test_teichmuller_lift_is_root_of_unity(p, e, M):
    F = finite_field(p, e)
    for x in F.elements():
        T = teichmuller_lift(x, M)
        assert T ** F.q == T
        assert reduce_lift(T) == x


def test_lift_inverse_and_exact_division():
    F = finite_field(3, 2)
    R = lift_ring(F, 4)
    rng = random.Random(3)
    for _ in range(50):
        u = R(tuple(rng.randrange(81) for _ in range(2)))
        if reduce_lift(u):
            assert u * u.inverse() == R.one
    assert (R.from_int(18)).divide_by_p_power(2) == R.from_int(2)
    with pytest.raises(ArithmeticError):
        R.from_int(6).divide_by_p_power(2)
