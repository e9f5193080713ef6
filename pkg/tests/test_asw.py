import random

import pytest
from hypothesis import given, settings, strategies as st

from aswitt.algebra import finite_field, fq_trace
from aswitt.asw import (ASWClass, NotReducedError, conductor_dual, conductor_fil,
                        enumerate_reduced, fil_level, fil_log_level, filagree_report,
                        is_reduced, matsuda_level, orthogonality_report, reduce_class,
                        schmid_n1, sw_pair, transversal_element)
from aswitt.series import Laurent, LaurentRing, PrecisionError, parse_laurent
from aswitt.verify import random_unit, random_witt_K
from aswitt.witt import (WittVec, frobenius_witt, parse_witt, restriction,
                         verschiebung, wittvec_trace)

F2 = finite_field(2)
F3 = finite_field(3)
F4 = finite_field(2, 2)


def vec(field, text):
    return parse_witt(text, field)


def ser(field, text):
    return parse_laurent(text, field)


# -- reduction -----------------------------------------------------------------------

def test_reduce_pole_divisible_by_p():
    x = reduce_class(vec(F2, "(t^-2)"))
    assert x.rep == vec(F2, "(t^-1)")
    assert x.trail == vec(F2, "(t^-1)")


def test_reduced_input_is_unchanged():
    x = reduce_class(vec(F2, "(t^-1)"))
    assert x.rep == vec(F2, "(t^-1)")
    assert x.trail.is_zero()


def test_trace_zero_constant_reduces_to_zero():
    c = F4.one
    assert fq_trace(c) == 0
    x = reduce_class(WittVec(LaurentRing(F4), [Laurent.constant(F4, c)]))
    assert x.is_zero()
    y = x.trail.comps[0].coefficient(0)
    assert y ** 2 - y == c


def test_transversal_element_has_nonzero_trace():
    assert transversal_element(F4) == F4.gen
    assert transversal_element(F3) == F3.one


@pytest.mark.parametrize("field,n", [(F2, 2), (F3, 2), (F4, 2), (F2, 3)])
def test_reduction_certificate_and_idempotence(field, n):
    rng = random.Random(n * field.q)
    for _ in range(30):
        a = random_witt_K(field, n, rng, pole=4)
        x = reduce_class(a)
        assert is_reduced(x.rep)
        assert x.rep + x.trail - frobenius_witt(x.trail) == a
        assert reduce_class(x.rep).rep == x.rep


@pytest.mark.parametrize("field,n", [(F2, 2), (F3, 2), (F4, 2)])
def test_normal_form_independent_of_pivots_and_representative(field, n):
    rng = random.Random(17)
    for _ in range(30):
        a = random_witt_K(field, n, rng, pole=4)
        c = random_witt_K(field, n, rng, pole=3)
        x = reduce_class(a)
        assert reduce_class(a, rng=random.Random(rng.random())).rep == x.rep
        shifted = reduce_class(a + c - frobenius_witt(c))
        assert shifted.rep == x.rep
        assert fil_level(shifted) == fil_level(x)


def test_truncated_input_reduces_within_precision():
    a = WittVec(LaurentRing(F2), [ser(F2, "t^-3 + t^-2 + t + O(t^4)"), ser(F2, "t^-1 + O(t^30)")])
    x = reduce_class(a)
    exact = reduce_class(WittVec(LaurentRing(F2), [ser(F2, "t^-3 + t^-2 + t"), ser(F2, "t^-1")]))
    assert x.rep == exact.rep


def test_precision_exhausted():
    a = WittVec(LaurentRing(F2), [ser(F2, "t^-1 + O(t^0)")])
    with pytest.raises(PrecisionError):
        reduce_class(a)


def test_levels_require_reduced_classes():
    with pytest.raises(NotReducedError):
        fil_level(vec(F2, "(t^-1)"))
    with pytest.raises(NotReducedError):
        ASWClass.from_reduced(vec(F2, "(t^-2)"))


# -- filtrations ---------------------------------------------------------------------

@pytest.mark.parametrize("text,level", [("(1; t)", 0), ("(t^-1; 0)", 2), ("(0; t^-1)", 1)])
def test_fil_log_examples(text, level):
    assert fil_log_level(reduce_class(vec(F2, text))) == level


@pytest.mark.parametrize("field,text,level", [
    (F2, "(0)", 0),
    (F2, "(t^-1)", 2),
    (F2, "(t^-3)", 4),
    (F2, "(0; t^-2)", 2),
    (F3, "(t^-1)", 2),
    (F3, "(t^-2)", 3),
    (F2, "(1)", 1),
])
def test_matsuda_examples(field, text, level):
    assert matsuda_level(vec(field, text)) == level


def test_matsuda_on_reduced_representative():
    x = reduce_class(vec(F2, "(0; t^-2)"))
    assert x.rep == vec(F2, "(0; t^-1)")
    assert fil_level(x) == 2
    assert conductor_fil(x) == conductor_dual(x) == 2


@pytest.mark.parametrize("field,n", [(F2, 2), (F3, 2), (F4, 1), (F2, 3)])
def test_level_inequalities(field, n):
    for x in enumerate_reduced(field, n, 3 if field.q < 4 else 4):
        log, fil = fil_log_level(x), fil_level(x)
        assert log <= max(fil, 1) and fil <= log + 1


# -- the symbol ------------------------------------------------------------------------

@pytest.mark.parametrize("field", [F2, F3, finite_field(5)])
def test_unramified_value_on_t(field):
    for c in field.elements():
        assert sw_pair(WittVec(LaurentRing(field), [Laurent.constant(field, c)]), Laurent.gen(field)) == int(c)


@pytest.mark.parametrize("field", [F2, F3, finite_field(5)])
def test_schmid_example(field):
    a = WittVec(LaurentRing(field), [ser(field, "t^-1")])
    for c in field.elements():
        b = Laurent.from_dict(field, {0: field.one, 1: c})
        assert sw_pair(a, b) == int(c)


@pytest.mark.parametrize("field,n", [(F2, 2), (F4, 2), (F3, 2), (F2, 3)])
def test_constant_vectors_pair_with_t_by_trace(field, n):
    ring = LaurentRing(field)
    rng = random.Random(6)
    for _ in range(20):
        comps = [field.from_code(rng.randrange(field.q)) for _ in range(n)]
        a = WittVec(ring, [Laurent.constant(field, c) for c in comps])
        assert sw_pair(a, Laurent.gen(field)) == wittvec_trace(WittVec(field, comps))
        assert sw_pair(a, random_unit(field, rng, vrange=0)) == 0


@pytest.mark.parametrize("field", [F2, F3, F4])
def test_restriction_and_verschiebung_compatibility(field):
    rng = random.Random(8)
    p = field.p
    for _ in range(30):
        a = random_witt_K(field, 2, rng)
        b = random_unit(field, rng)
        assert sw_pair(restriction(a), b) == sw_pair(a, b) % p
        a1 = random_witt_K(field, 1, rng)
        assert sw_pair(verschiebung(a1), b) == p * sw_pair(a1, b) % p**2


def test_symbol_independent_of_lift_choices():
    rng = random.Random(9)
    for field, n in [(F4, 2), (F3, 2), (F2, 3)]:
        for _ in range(15):
            a = random_witt_K(field, n, rng)
            b = random_unit(field, rng)
            base = sw_pair(a, b)
            assert sw_pair(a, b, lift_method="simple") == base
            assert sw_pair(a, b, M=2 * n + 2) == base
            assert sw_pair(a, b, series_precision=40) == base


def test_symbol_on_truncated_b():
    a = vec(F2, "(t^-3; t^-1)")
    b_exact = ser(F2, "1 + t + t^3")
    assert sw_pair(a, b_exact + Laurent.zero(F2, 20)) == sw_pair(a, b_exact)
    with pytest.raises(PrecisionError):
        sw_pair(a, b_exact + Laurent.zero(F2, 3))


def test_symbol_rejects_bad_input():
    with pytest.raises(ZeroDivisionError):
        sw_pair(vec(F2, "(t^-1)"), Laurent.zero(F2))
    with pytest.raises(ValueError):
        sw_pair(vec(F2, "(t^-1; 0)"), Laurent.gen(F2), M=1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(2, 1), (3, 1), (2, 2)]))
def test_n1_matches_direct_residue(seed, q):
    field = finite_field(*q)
    rng = random.Random(seed)
    a = random_witt_K(field, 1, rng, pole=5)
    b = random_unit(field, rng)
    assert sw_pair(a, b) == schmid_n1(a.comps[0], b)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_bilinear_and_well_defined(seed):
    rng = random.Random(seed)
    field, n = [(F2, 2), (F3, 2), (F4, 2)][seed % 3]
    pn = field.p**n
    a, a2, c = (random_witt_K(field, n, rng) for _ in range(3))
    b, b2 = random_unit(field, rng), random_unit(field, rng)
    assert sw_pair(a + c - frobenius_witt(c), b) == sw_pair(a, b)
    assert sw_pair(a + a2, b) == (sw_pair(a, b) + sw_pair(a2, b)) % pn
    assert sw_pair(a, b * b2) == (sw_pair(a, b) + sw_pair(a, b2)) % pn
    assert sw_pair(a, b2**pn) == 0


# -- conductors ------------------------------------------------------------------------

@pytest.mark.parametrize("field,text,fil,dual", [
    (F2, "(0)", 0, 0),
    (F2, "(t^-1)", 2, 2),
    (F2, "(t^-3)", 4, 4),
    (F2, "(1)", 1, 0),
    (F3, "(t^-1)", 2, 2),
    (F2, "(t^-1; 0)", 3, 3),
    (F2, "(0; t^-1)", 2, 2),
])
def test_conductor_examples(field, text, fil, dual):
    x = reduce_class(vec(field, text))
    assert conductor_fil(x) == fil
    assert conductor_dual(x) == dual


@pytest.mark.parametrize("field,n,bound", [(F2, 2, 4), (F3, 2, 2), (F4, 2, 2), (F2, 3, 2)])
def test_dual_conductor_bounded_by_log_level(field, n, bound):
    for x in enumerate_reduced(field, n, bound):
        assert conductor_dual(x) <= fil_log_level(x) + 1


# -- reports -----------------------------------------------------------------------------

def test_orthogonality_small_examples():
    report = orthogonality_report(F2, 1, 2)
    first, second = report["records"]
    assert (first["h1_order"], first["g_order"], first["perfect"]) == (2, 2, True)
    assert (second["h1_order"], second["g_order"]) == (4, 4)
    assert report["ok"]


def test_orthogonality_with_stationary_levels():
    # fil_2 = fil_3 for q = 2, n = 1: nothing new at m = 3
    records = orthogonality_report(F2, 1, 3)["records"]
    assert records[1]["h1_order"] == records[2]["h1_order"] == 4
    assert all(r["perfect"] and r["orthogonality"] for r in records)


@pytest.mark.parametrize("field,n,m_max", [(F3, 1, 3), (F3, 2, 3), (F2, 3, 3)])
def test_orthogonality_other_primes_and_lengths(field, n, m_max):
    assert orthogonality_report(field, n, m_max)["ok"]


def test_filagree_examples():
    report = filagree_report(F2, 1, 4)
    assert report["ok"] and report["mismatches"] == []
    assert [(b["fil"], b["Fil"]) for b in report["boundary"]] == [(1, 0)]


@pytest.mark.parametrize("field,n,bound", [(F4, 2, 3), (F3, 2, 3), (F2, 3, 3), (finite_field(5), 1, 4)])
def test_filagree_beyond_acceptance_grid(field, n, bound):
    report = filagree_report(field, n, bound)
    assert report["mismatches"] == [] and report["inclusion_failures"] == []


def test_filagree_parallel_matches_serial():
    serial = filagree_report(F3, 2, 2)
    parallel = filagree_report(F3, 2, 2, jobs=2)
    assert serial == parallel
