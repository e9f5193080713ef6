import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from aswitt.algebra import finite_field, fq_trace, lift_ring
from aswitt.series import Laurent, LaurentRing
from aswitt.witt import (WittVec, format_witt, frobenius_witt, ghost, ghost_inverse,
                         int_to_witt, parse_witt, teich_one_plus_decomp, teichmuller,
                         universal_frobenius, universal_polys, verschiebung, witt_arith,
                         witt_to_int, wittvec_trace)

F2 = finite_field(2)
F3 = finite_field(3)
F4 = finite_field(2, 2)


def W(field, *codes):
    return WittVec(field, [field.from_code(c) for c in codes])


def test_sum_polynomials_low_degree():
    U2 = universal_polys(2, 2)
    assert U2.sums[0] == {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1}
    # X1 + Y1 - X0 Y0
    assert U2.sums[1] == {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}
    # X1 + Y1 - X0^2 Y0 - X0 Y0^2
    assert universal_polys(3, 2).sums[1] == {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1,
                                             (2, 0, 1, 0): -1, (1, 0, 2, 0): -1}


def test_length_bound():
    with pytest.raises(ValueError):
        universal_polys(2, 5)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_prime_field_witt_ring_is_integers_mod_pn(p, n):
    """W_n(F_p) = Z/p^n; the identification is checked against integer arithmetic."""
    F = finite_field(p)
    pn = p**n
    values = range(pn) if pn <= 27 else random.Random(p).sample(range(pn), 27)
    for k in values:
        a = int_to_witt(k, F, n)
        assert witt_to_int(a) == k
        for j in values:
            b = int_to_witt(j, F, n)
            assert witt_to_int(a + b) == (k + j) % pn
            assert witt_to_int(a * b) == (k * j) % pn
            assert witt_to_int(a - b) == (k - j) % pn


def test_w2_f2_examples():
    one = W(F2, 1, 0)
    assert witt_arith(one, one, "add") == W(F2, 0, 1)
    assert teichmuller(F2.one, 2, F2) == one
    assert verschiebung(W(F2, 1)) == W(F2, 0, 1)
    assert frobenius_witt(W(F2, 0, 1)) == W(F2, 0, 1) == one.scalar(2)


@pytest.mark.parametrize("field,n", [(F2, 3), (F3, 2), (F4, 2)])
def test_identities(field, n):
    rng = random.Random(field.q * n)
    for _ in range(50):
        a = WittVec(field, [field.from_code(rng.randrange(field.q)) for _ in range(n)])
        assert a + WittVec.zero(field, n) == a
        assert a * WittVec.one(field, n) == a
        assert verschiebung(WittVec.zero(field, n)) == WittVec.zero(field, n + 1)


@pytest.mark.parametrize("field,n", [(F2, 3), (F3, 3), (F4, 2)])
def test_teichmuller_is_multiplicative(field, n):
    rng = random.Random(7)
    for _ in range(100):
        x, y = (field.from_code(rng.randrange(field.q)) for _ in range(2))
        assert teichmuller(x, n, field) * teichmuller(y, n, field) == teichmuller(x * y, n, field)
    assert teichmuller(field.zero, n, field).is_zero()


@pytest.mark.parametrize("field,n", [(F2, 3), (F3, 2), (F4, 2)])
def test_verschiebung_is_additive(field, n):
    rng = random.Random(11)
    for _ in range(100):
        a, b = (WittVec(field, [field.from_code(rng.randrange(field.q)) for _ in range(n)])
                for _ in range(2))
        assert verschiebung(a + b) == verschiebung(a) + verschiebung(b)


@pytest.mark.parametrize("field", [F2, F3, F4])
def test_componentwise_frobenius_matches_universal(field):
    for comps in itertools.product(field.elements(), repeat=3):
        assert universal_frobenius(WittVec(field, list(comps))) == frobenius_witt(WittVec(field, list(comps[:2])))


def test_ghost_of_teichmuller():
    R = lift_ring(F3, 5)
    x = R.from_int(7)
    assert ghost(teichmuller(x, 3, R)) == [x, x**3, x**9]


@pytest.mark.parametrize("field,n", [(F2, 3), (F3, 2), (F4, 3)])
def test_ghost_is_additive_over_lifts(field, n):
    R = lift_ring(field, n + 3)
    rng = random.Random(5)
    for _ in range(100):
        a, b = (WittVec(R, [R(tuple(rng.randrange(R.pM) for _ in range(field.e))) for _ in range(n)])
                for _ in range(2))
        assert ghost(a + b) == [u + v for u, v in zip(ghost(a), ghost(b))]


def test_ghost_inverse_example():
    R = lift_ring(F2, 4)
    x = ghost_inverse([R.zero, R.from_int(2)], R)
    assert [c.coeffs[0] for c in x.comps] == [0, 1]


def test_ghost_inverse_rejects_non_ghost_vectors():
    R = lift_ring(F2, 4)
    with pytest.raises(ArithmeticError):
        ghost_inverse([R.one, R.from_int(2)], R)


def test_wittvec_trace_examples():
    a = W(F3, 2, 1)
    assert wittvec_trace(a) == witt_to_int(a)
    for x in F4.elements():
        assert wittvec_trace(WittVec(F4, [x])) == fq_trace(x)
    g = F4.gen
    direct = teichmuller(g, 2, F4) + teichmuller(g * g, 2, F4)
    assert direct.comps[0] in (F4.zero, F4.one) and direct.comps[1] in (F4.zero, F4.one)
    expected = witt_to_int(W(F2, *(c.coefficients()[0] for c in direct.comps)))
    assert wittvec_trace(teichmuller(g, 2, F4)) == expected


def test_teich_one_plus_decomposition():
    const, tpart = teich_one_plus_decomp(Laurent.zero(F2), 2)
    assert const == W(F2, 1, 0) and tpart.is_zero()
    const, tpart = teich_one_plus_decomp(Laurent.gen(F2), 2)
    assert const == W(F2, 1, 0)
    ring = LaurentRing(F2)
    assert tpart.comps[0] == Laurent.gen(F2)
    assert teichmuller(ring.one, 2, ring) + tpart == teichmuller(ring.one + Laurent.gen(F2), 2, ring)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_teich_one_plus_parts_have_positive_valuation(seed):
    rng = random.Random(seed)
    field = [F2, F3, F4][seed % 3]
    a = Laurent.from_dict(field, {k: field.from_code(rng.randrange(field.q)) for k in range(1, 5)})
    _, tpart = teich_one_plus_decomp(a, 3 if field.p == 2 else 2)
    for comp in tpart.comps:
        assert comp.is_zero() or comp.valuation() >= 1


@pytest.mark.parametrize("field", [F2, F3, F4])
def test_witt_text_round_trip(field):
    rng = random.Random(field.q)
    for _ in range(100):
        comps = [Laurent.from_dict(field, {k: field.from_code(rng.randrange(field.q))
                                           for k in range(-3, 3) if rng.random() < 0.5})
                 for _ in range(rng.randint(1, 3))]
        a = WittVec(LaurentRing(field), comps)
        assert parse_witt(format_witt(a), field) == a
