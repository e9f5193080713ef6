"""Randomized and exhaustive verification suites.

Every suite returns a dict with an ``ok`` flag and, on failure, the first
failing case in ``failure``.  Seeds are explicit so reruns are identical.
"""
from __future__ import annotations

import itertools
import random

from .algebra import FqField, finite_field, fq_trace, lift_ring
from .asw import (conductor_dual, enumerate_reduced, filagree_report, orthogonality_report,
                  reduce_class, schmid_n1, sw_pair)
from .localfield import build_unit_quot, order_identity_check
from .series import Laurent, LaurentRing, format_laurent
from .witt import (WittVec, frobenius_witt, ghost, teichmuller, universal_frobenius,
                   verschiebung, format_witt)


# -- random inputs --------------------------------------------------------------------

def random_elem(field: FqField, rng: random.Random, nonzero: bool = False):
    lo = 1 if nonzero else 0
    return field.from_code(rng.randrange(lo, field.q))


def random_laurent(field: FqField, rng: random.Random, low: int = -3, high: int = 2,
                   density: float = 0.6) -> Laurent:
    terms = {k: random_elem(field, rng) for k in range(low, high + 1) if rng.random() < density}
    return Laurent.from_dict(field, terms)


def random_unit(field: FqField, rng: random.Random, vrange: int = 3, degree: int = 4) -> Laurent:
    """A nonzero exact Laurent polynomial t^v (u0 + ...)."""
    terms = {0: random_elem(field, rng, nonzero=True)}
    for k in range(1, degree + 1):
        if rng.random() < 0.5:
            terms[k] = random_elem(field, rng)
    return Laurent.from_dict(field, terms).shift(rng.randint(-vrange, vrange))


def random_witt_K(field: FqField, n: int, rng: random.Random, pole: int = 3) -> WittVec:
    ring = LaurentRing(field)
    return WittVec(ring, [random_laurent(field, rng, -pole, 2) for _ in range(n)])


def _result(name: str, checks: dict, failure=None, **extra) -> dict:
    return {"suite": name, "checks": checks, "failure": failure,
            "ok": failure is None and all(v == "pass" or v is True for v in checks.values()),
            **extra}


# -- Witt vectors -----------------------------------------------------------------------

def witt_suite(p: int, n: int, cases: int = 500, seed: int = 0, e: int = 1) -> dict:
    """Ring axioms, FV = p, F[x] = [x^p] and the ghost homomorphism."""
    rng = random.Random(seed)
    F = finite_field(p, e)

    def rand():
        return WittVec(F, [random_elem(F, rng) for _ in range(n)])

    zero, one = WittVec.zero(F, n), WittVec.one(F, n)
    laws = {
        "add_commutative": lambda a, b, c: a + b == b + a,
        "add_associative": lambda a, b, c: (a + b) + c == a + (b + c),
        "add_identity": lambda a, b, c: a + zero == a,
        "add_inverse": lambda a, b, c: a + (-a) == zero,
        "mul_commutative": lambda a, b, c: a * b == b * a,
        "mul_associative": lambda a, b, c: (a * b) * c == a * (b * c),
        "mul_identity": lambda a, b, c: a * one == a,
        "distributive": lambda a, b, c: a * (b + c) == a * b + a * c,
        "FV_equals_p": lambda a, b, c: frobenius_witt(verschiebung(a, keep_length=True)) == a.scalar(p),
        "F_teichmuller": lambda a, b, c: frobenius_witt(teichmuller(a[0], n, F)) == teichmuller(a[0] ** p, n, F),
        "F_additive": lambda a, b, c: frobenius_witt(a + b) == frobenius_witt(a) + frobenius_witt(b),
    }
    checks = {}
    failure = None
    for name, law in laws.items():
        checks[name] = "pass"
        for _ in range(cases):
            a, b, c = rand(), rand(), rand()
            if not law(a, b, c):
                checks[name] = "fail"
                failure = failure or {"law": name, "a": format_witt(a), "b": format_witt(b), "c": format_witt(c)}
                break

    # ghost map over the torsion-free lift Z_q / p^M
    R = lift_ring(F, n + 2)

    def rand_lift():
        return WittVec(R, [R(tuple(rng.randrange(p ** (n + 2)) for _ in range(e))) for _ in range(n)])

    for name, op in (("ghost_additive", lambda x, y: x + y), ("ghost_multiplicative", lambda x, y: x * y)):
        checks[name] = "pass"
        combine = (lambda u, v: u + v) if name == "ghost_additive" else (lambda u, v: u * v)
        for _ in range(cases):
            a, b = rand_lift(), rand_lift()
            if ghost(op(a, b)) != [combine(u, v) for u, v in zip(ghost(a), ghost(b))]:
                checks[name] = "fail"
                failure = failure or {"law": name, "a": repr(a), "b": repr(b)}
                break
    return _result("witt", checks, failure, p=p, n=n, cases=cases)


def frobenius_suite(q_list=((2, 1), (3, 1), (2, 2)), n: int = 2) -> dict:
    """Componentwise Frobenius against the universal Frobenius mod p, exhaustively.

    The universal polynomials map W_{n+1} -> W_n, so every W_n vector is
    extended by every possible last component.
    """
    checks, failure, counted = {}, None, 0
    for p, e in q_list:
        F = finite_field(p, e)
        name = f"q={F.q}"
        checks[name] = "pass"
        for comps in itertools.product(F.elements(), repeat=n + 1):
            counted += 1
            longer = WittVec(F, list(comps))
            short = WittVec(F, list(comps[:n]))
            if universal_frobenius(longer) != frobenius_witt(short):
                checks[name] = "fail"
                failure = failure or {"q": F.q, "a": format_witt(longer)}
                break
    return _result("frobenius", checks, failure, vectors=counted)


# -- the symbol ----------------------------------------------------------------------------

def pairing_suite(field: FqField, n: int, cases: int = 200, seed: int = 0,
                  oracle_cases: int = 500, precision_cases: int = 100) -> dict:
    rng = random.Random(seed)
    p = field.p
    pn = p**n
    ring = LaurentRing(field)
    checks, failure = {}, None

    def record(name, ok, case):
        nonlocal failure
        if not ok and checks.get(name) != "fail":
            checks[name] = "fail"
            failure = failure or {"law": name, **case}
        checks.setdefault(name, "pass")

    for _ in range(cases):
        a = random_witt_K(field, n, rng)
        c = random_witt_K(field, n, rng, pole=2)
        b = random_unit(field, rng)
        shifted = a + c - frobenius_witt(c)
        record("kills_1_minus_F", sw_pair(shifted, b) == sw_pair(a, b),
               {"a": format_witt(a), "c": format_witt(c), "b": format_laurent(b)})

        d = random_unit(field, rng, vrange=1, degree=2)
        record("kills_pn_powers", sw_pair(a, b * d**pn) == sw_pair(a, b),
               {"a": format_witt(a), "b": format_laurent(b), "d": format_laurent(d)})

        a2 = random_witt_K(field, n, rng)
        record("additive_in_a", sw_pair(a + a2, b) == (sw_pair(a, b) + sw_pair(a2, b)) % pn,
               {"a": format_witt(a), "a2": format_witt(a2), "b": format_laurent(b)})

        b2 = random_unit(field, rng)
        record("multiplicative_in_b", sw_pair(a, b * b2) == (sw_pair(a, b) + sw_pair(a, b2)) % pn,
               {"a": format_witt(a), "b": format_laurent(b), "b2": format_laurent(b2)})

    for _ in range(precision_cases):
        a = random_witt_K(field, n, rng)
        b = random_unit(field, rng)
        base = sw_pair(a, b)
        pole = max(x.pole_order() for x in a.comps) * p ** (n - 1)
        same = (sw_pair(a, b, M=2 * n + 2) == base
                and sw_pair(a, b, series_precision=2 * (pole + 2)) == base
                and sw_pair(a, b, lift_method="simple") == base)
        record("precision_independent", same, {"a": format_witt(a), "b": format_laurent(b)})

    if n == 1:
        for _ in range(oracle_cases):
            a = random_laurent(field, rng, -4, 2)
            b = random_unit(field, rng)
            record("schmid_n1_oracle", sw_pair(WittVec(ring, [a]), b) == schmid_n1(a, b),
                   {"a": format_laurent(a), "b": format_laurent(b)})
    return _result("pairing", checks, failure, q=field.q, n=n, cases=cases)


def schmid_oracle_suite(cases: int = 500, seed: int = 0,
                        fields=((2, 1), (3, 1), (2, 2), (5, 1))) -> dict:
    """sw_pair against Tr Res(a dlog b) for n = 1, spread over several fields."""
    rng = random.Random(seed)
    failure = None
    for k in range(cases):
        F = finite_field(*fields[k % len(fields)])
        a = random_laurent(F, rng, -5, 3)
        b = random_unit(F, rng)
        if sw_pair(WittVec(LaurentRing(F), [a]), b) != schmid_n1(a, b):
            failure = {"q": F.q, "a": format_laurent(a), "b": format_laurent(b)}
            break
    return _result("schmid", {"n1_oracle": "fail" if failure else "pass"}, failure, cases=cases)


# -- reduction --------------------------------------------------------------------------------

def reduction_suite(field: FqField, n: int, cases: int = 100, seed: int = 0) -> dict:
    """Idempotence, independence of pivot order and of the coset representative."""
    rng = random.Random(seed)
    failure = None
    for _ in range(cases):
        a = random_witt_K(field, n, rng, pole=4)
        c = random_witt_K(field, n, rng, pole=2)
        x = reduce_class(a)
        y = reduce_class(a, rng=random.Random(rng.random()))
        z = reduce_class(a + c - frobenius_witt(c))
        if not (x.rep == y.rep == z.rep and reduce_class(x.rep).rep == x.rep):
            failure = {"a": format_witt(a), "c": format_witt(c)}
            break
    return _result("reduce", {"unique_normal_form": "fail" if failure else "pass"}, failure,
                   q=field.q, n=n, cases=cases)


# -- unit groups --------------------------------------------------------------------------------

def tower_suite(field: FqField, n: int, m_max: int, cases: int = 200, seed: int = 0) -> dict:
    """G_{n,m+1} -> G_{n,m} commutes with projection of random b."""
    rng = random.Random(seed)
    failure = None
    for k in range(cases):
        m = k % m_max
        big, small = build_unit_quot(field, n, m + 1), build_unit_quot(field, n, m)
        b = random_unit(field, rng, vrange=5, degree=m + 2)
        if big.coarsen(big.project(b), small) != small.project(b):
            failure = {"m": m, "b": format_laurent(b)}
            break
    return _result("tower", {"commutes": "fail" if failure else "pass"}, failure,
                   q=field.q, n=n, cases=cases)


def orders_suite(field: FqField, n: int, m_max: int, seed: int = 0) -> dict:
    report = order_identity_check(field, n, m_max)
    tower = tower_suite(field, n, m_max, seed=seed)
    checks = {"order_identity": "fail" if report["mismatches"] else "pass",
              "tower": "pass" if tower["ok"] else "fail"}
    failure = ({"m": report["mismatches"][0]} if report["mismatches"] else tower["failure"])
    return _result("orders", checks, failure, rows=report["rows"])


def orthogonality_suite(field: FqField, n: int, m_max: int, seed: int = 0) -> dict:
    report = orthogonality_report(field, n, m_max, seed=seed)
    failure = None
    for r in report["records"]:
        if not (r["perfect"] and r["orthogonality"]):
            failure = r
            break
    checks = {"perfect": all(r["perfect"] for r in report["records"]),
              "orthogonality": all(r["orthogonality"] for r in report["records"])}
    return _result("orthogonality", checks, failure,
                   records=[{k: r[k] for k in ("m", "h1_order", "g_order", "perfect", "orthogonality")}
                            for r in report["records"]])


def filagree_suite(field: FqField, n: int, pole_bound: int, jobs: int = 1) -> dict:
    report = filagree_report(field, n, pole_bound, jobs=jobs)
    checks = {"fil_equals_Fil": "fail" if report["mismatches"] else "pass",
              "inclusions": "fail" if report["inclusion_failures"] else "pass"}
    failure = (report["mismatches"] or report["inclusion_failures"] or [None])[0]
    return _result("filagree", checks, failure, classes=report["classes"],
                   boundary=len(report["boundary"]))
