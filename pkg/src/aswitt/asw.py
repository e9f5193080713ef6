"""Artin-Schreier-Witt characters of K = F_q((t)) and their conductors.

Characters are classes in W_n(K)/(1-F)W_n(K).  Every class has a unique
reduced representative: each component a_i is an exact Laurent polynomial
whose terms have exponent 0 or negative and prime to p, and whose constant
term lies in F_p * c0 for a fixed c0 of nonzero trace.

The symbol [a, b) is evaluated with the ghost-residue formula: lift to
Z_q((t)) / p^M, take residues of w_i(a) dlog b, pull back through the
ghost map, reduce mod p and take the Witt-vector trace to Z/p^n.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

from .algebra import FqElem, FqField, fq_trace, lift, lift_ring, reduce_lift, teichmuller_lift
from .localfield import UnitQuot, build_unit_quot
from .series import DEFAULT_PRECISION, Laurent, LaurentRing, PrecisionError, residue_of_product
from .witt import WittVec, format_witt, frobenius_witt, ghost_inverse, wittvec_trace


class NotReducedError(ValueError):
    pass


def transversal_element(field: FqField) -> FqElem:
    """c0: the element of smallest code with nonzero absolute trace."""
    for x in field.elements():
        if fq_trace(x) != 0:
            return x
    raise AssertionError("trace map is surjective")


def primitive_element(field: FqField) -> FqElem:
    for x in field.elements()[1:]:
        y, k = x, 1
        while y != field.one:
            y = y * x
            k += 1
        if k == field.q - 1:
            return x
    raise AssertionError("F_q^x is cyclic")


def _v_p(m: int, p: int) -> int:
    if m == 0:
        return math.inf
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def _ring(field: FqField) -> LaurentRing:
    return LaurentRing(field)


def _V(x: Laurent, i: int, n: int, ring: LaurentRing) -> WittVec:
    """V^i [x] in W_n."""
    comps = [ring.zero] * n
    comps[i] = x
    return WittVec(ring, comps)


def one_minus_F(c: WittVec) -> WittVec:
    return c - frobenius_witt(c)


@dataclass
class ASWClass:
    """A class in W_n(K)/(1-F) with its reduced representative.

    ``trail`` certifies  input = rep (+) (1-F)(trail)  (within precision).
    """

    field: FqField
    n: int
    rep: WittVec
    reduced: bool = True
    trail: WittVec | None = None
    source: WittVec | None = dc_field(default=None, repr=False)

    @property
    def p(self) -> int:
        return self.field.p

    def key(self) -> tuple:
        return tuple((c.v0, tuple(x.code for x in c.coeffs)) for c in self.rep.comps)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __add__(self, other: "ASWClass") -> "ASWClass":
        return reduce_class(self.rep + other.rep)

    def __neg__(self) -> "ASWClass":
        return reduce_class(-self.rep)

    def __repr__(self) -> str:
        return f"ASWClass{self.rep!r}"

    @classmethod
    def from_reduced(cls, rep: WittVec) -> "ASWClass":
        if not is_reduced(rep):
            raise NotReducedError(f"{rep!r} is not a reduced representative")
        return cls(rep.ring.base, rep.n, rep, True, None, rep)


def is_reduced(a: WittVec) -> bool:
    field = a.ring.base
    p = field.p
    c0 = transversal_element(field)
    allowed = {(c0 * k).code for k in range(p)}
    for comp in a.comps:
        if comp.prec is not None:
            return False
        for k, c in comp.terms():
            if k > 0 or (k < 0 and (-k) % p == 0):
                return False
        if comp.coefficient(0).code not in allowed:
            return False
    return True


def _solve_artin_schreier(d: FqElem) -> FqElem:
    """Some y in F_q with y - y^p = d (requires trace(d) = 0)."""
    for y in d.field.elements():
        if y - y.frobenius() == d:
            return y
    raise ValueError(f"{d} has nonzero trace; y - y^p = d has no solution")


def _trail_precision(a: WittVec) -> int:
    pole = max(c.pole_order() for c in a.comps)
    return DEFAULT_PRECISION + a.p ** a.n * (pole + 1)


def reduce_class(a: WittVec, rng: random.Random | None = None, verify: bool = True,
                 trail_precision: int | None = None) -> ASWClass:
    """Reduced representative of the class of a, with a certificate.

    With ``rng`` the pole term eliminated at each step is chosen at random
    instead of the one of largest weight; the result is the same.
    """
    ring = a.ring
    if not isinstance(ring, LaurentRing) or not isinstance(ring.base, FqField):
        raise TypeError("reduce_class expects a Witt vector over F_q((t))")
    field = ring.base
    p, n = field.p, a.n
    c0 = transversal_element(field)
    tc0 = fq_trace(c0)
    N = trail_precision or _trail_precision(a)
    cur = a
    trail = WittVec.zero(ring, n)

    for i in range(n):
        if cur[i].prec is not None and cur[i].prec < 1:
            raise PrecisionError(f"precision exhausted in component {i} during reduction")
        # pole terms whose order is divisible by p
        while True:
            bad = [(k, c) for k, c in cur[i].terms() if k < 0 and (-k) % p == 0]
            if not bad:
                break
            k, c = rng.choice(bad) if rng is not None else bad[0]
            w = _V(Laurent.monomial(field, c.pth_root(), k // p), i, n, ring)
            cur = cur + one_minus_F(w)
            trail = trail - w
        comp = cur[i]
        if comp.prec is not None and comp.prec < 1:
            raise PrecisionError(f"precision exhausted in component {i} during reduction")
        # positive part: V^i[z] lies in (1-F)W_n(tO_K); its preimage is sum_k F^k V^i[z]
        z = comp - Laurent.from_dict(field, {k: c for k, c in comp.terms() if k <= 0})
        if z.coeffs or z.prec is not None:
            cur = cur - _V(z, i, n, ring)
            comps = list(cur.comps)
            comps[i] = Laurent.from_dict(field, {k: c for k, c in comp.terms() if k <= 0})
            cur = WittVec(ring, comps)
            if z.coeffs:
                trail = trail + _positive_preimage(z, i, n, ring, N)
        # constant term into the transversal F_p * c0
        kappa = cur[i].coefficient(0)
        target = c0 * ((fq_trace(kappa) * pow(tc0, -1, p)) % p)
        if kappa != target:
            y = _solve_artin_schreier(target - kappa)
            w = _V(Laurent.constant(field, y), i, n, ring)
            cur = cur + one_minus_F(w)
            trail = trail - w

    comps = []
    for i, comp in enumerate(cur.comps):
        if comp.prec is not None and comp.prec < 1:
            raise PrecisionError(f"precision exhausted in component {i} during reduction")
        comps.append(comp.exact_part())
    rep = WittVec(ring, comps)
    assert is_reduced(rep), rep
    if verify:
        recomposed = rep + one_minus_F(trail)
        if recomposed != a:
            raise AssertionError(f"reduction certificate failed: {a!r} vs {recomposed!r}")
    return ASWClass(field, n, rep, True, trail, a)


def _positive_preimage(z: Laurent, i: int, n: int, ring: LaurentRing, N: int) -> WittVec:
    """c with (1-F)c = V^i[z] modulo t^N, for z of positive valuation."""
    total = WittVec.zero(ring, n)
    x = z.truncate(N)
    while x.coeffs:
        total = total + _V(x, i, n, ring)
        x = x.frobenius_series().truncate(N)
    return WittVec(ring, [c.truncate(N) for c in total.comps])


# -- filtrations --------------------------------------------------------------------

def _poles(a: WittVec) -> list[int]:
    return [c.pole_order() for c in a.comps]


def log_level_from_poles(poles: list[int], p: int) -> int:
    n = len(poles)
    return max(p ** (n - 1 - i) * e for i, e in enumerate(poles))


def matsuda_member(poles: list[int], p: int, m: int) -> bool:
    """Is the vector in fil^log_{m-1} W_n + V^{n-n'} fil^log_m W_{n'}, n' = min(n, ord_p m)?

    The top n-n' components are tested against fil^log_{m-1}, the rest
    (the V^{n-n'} part) against fil^log_m.
    """
    n = len(poles)
    n_prime = min(n, _v_p(m, p))
    k = n - n_prime
    for i, e in enumerate(poles):
        bound = m - 1 if i < k else m
        if p ** (n - 1 - i) * e > bound:
            return False
    return True


def matsuda_level_from_poles(poles: list[int], p: int, nonzero: bool = True) -> int:
    if not nonzero:
        return 0
    m = 1
    while not matsuda_member(poles, p, m):
        m += 1
    return m


def matsuda_level(a: WittVec) -> int:
    """Least m >= 1 with a in fil_m W_n(K) (0 for the zero vector)."""
    return matsuda_level_from_poles(_poles(a), a.p, not a.is_zero())


def _require_reduced(x) -> ASWClass:
    if isinstance(x, WittVec):
        raise NotReducedError("expected a reduced ASWClass; call reduce_class first")
    if not x.reduced:
        raise NotReducedError("class representative is not reduced")
    return x


def fil_log_level(x: ASWClass) -> int:
    """Least m with p^(n-1-i) * v(a_i) >= -m for all i."""
    x = _require_reduced(x)
    return log_level_from_poles(_poles(x.rep), x.p)


def fil_level(x: ASWClass) -> int:
    x = _require_reduced(x)
    return matsuda_level(x.rep)


def conductor_fil(x: ASWClass) -> int:
    return fil_level(x)


# -- the symbol ---------------------------------------------------------------------------

def _lift_fn(field: FqField, M: int, method: str):
    if method == "teichmuller":
        return lambda c: teichmuller_lift(c, M)
    if method == "simple":
        return lambda c: lift(c, M)
    raise ValueError(f"unknown lift method {method!r}")


def sw_pair(a, b: Laurent, M: int | None = None, lift_method: str = "teichmuller",
            series_precision: int | None = None) -> int:
    """[a, b) in Z/p^n, returned as an integer in [0, p^n)."""
    vec = a.rep if isinstance(a, ASWClass) else a
    ring = vec.ring
    if not isinstance(ring, LaurentRing) or not isinstance(ring.base, FqField):
        raise TypeError("sw_pair expects a Witt vector over F_q((t))")
    field = ring.base
    if b.ring != field:
        raise ValueError("b must be a series over the same F_q")
    if b.is_zero():
        raise ZeroDivisionError("b must be a unit of K")
    p, n = field.p, vec.n
    M = 2 * n if M is None else M
    if M < n:
        raise ValueError(f"lift precision M={M} is below the Witt length {n}")
    R = lift_ring(field, M)
    up = _lift_fn(field, M, lift_method)

    lifted = [c.map_coefficients(up, R) for c in vec.comps]
    ghosts = []
    for i in range(n):
        g = Laurent.zero(R)
        for j in range(i + 1):
            g = g + (lifted[j] ** (p ** (i - j))) * (p**j)
        ghosts.append(g)

    b_lift = b.map_coefficients(up, R)
    max_pole = max([g.pole_order() for g in ghosts] + [0])
    rel = series_precision if series_precision is not None else max_pole + 2
    if b_lift.prec is None:
        dl = b_lift.derivative() * b_lift.inverse(rel + 1)
    else:
        dl = b_lift.dlog()

    residues = [residue_of_product(g, dl) for g in ghosts]
    rho = ghost_inverse(residues, R)
    reduced = WittVec(field, [reduce_lift(c) for c in rho.comps])
    return wittvec_trace(reduced)


def schmid_n1(a: Laurent, b: Laurent) -> int:
    """Direct characteristic-p formula for n = 1: Tr Res(a db/b)."""
    return fq_trace(residue_of_product(a, b.dlog() if b.prec is not None
                                       else b.derivative() * b.inverse(a.pole_order() + 2)))


# -- conductors -------------------------------------------------------------------------------

def conductor_dual(x: ASWClass, pairing=None) -> int:
    """Least m >= 0 such that [x, u) = 0 for all u in U^m.

    U^m is generated by 1 + c t^j (j >= m, c in an F_p-basis of F_q) and
    p^n-th powers; for j > fil_log_level(x) the residue vanishes, so only
    j <= fil_log_level(x) + 1 is evaluated.
    """
    x = _require_reduced(x)
    pair = pairing or sw_pair
    field = x.field
    bound = fil_log_level(x) + 1
    level = 0
    g = primitive_element(field)
    if pair(x, Laurent.constant(field, g)) != 0:
        level = 1
    for j in range(1, bound + 1):
        for c in field.basis():
            if pair(x, Laurent.from_dict(field, {0: field.one, j: c})) != 0:
                level = max(level, j + 1)
    return level


# -- enumeration -----------------------------------------------------------------------------

def _component_options(field: FqField, pole_bound: int, c0: FqElem) -> list[dict]:
    p = field.p
    exps = [e for e in range(1, pole_bound + 1) if e % p]
    options = []
    for coeffs in itertools.product(field.elements(), repeat=len(exps)):
        for k in range(p):
            terms = {-e: c for e, c in zip(exps, coeffs) if c}
            if k:
                terms[0] = c0 * k
            options.append(terms)
    return options


def _poles_of_terms(terms: dict) -> int:
    return max([-k for k in terms if k < 0] + [0])


def enumerate_reduced(field: FqField, n: int, pole_bound: int, keep=None):
    """All reduced representatives with every component of pole order <= pole_bound.

    ``keep(poles, nonzero)`` filters on pole data before vectors are built.
    """
    ring = _ring(field)
    c0 = transversal_element(field)
    opts = _component_options(field, pole_bound, c0)
    for combo in itertools.product(opts, repeat=n):
        poles = [_poles_of_terms(t) for t in combo]
        nonzero = any(combo)
        if keep is not None and not keep(poles, nonzero):
            continue
        vec = WittVec(ring, [Laurent.from_dict(field, t) for t in combo])
        yield ASWClass(field, n, vec, True, None, vec)


# -- reports ---------------------------------------------------------------------------------

class PairingCache:
    def __init__(self):
        self._values: dict = {}
        self.calls = 0

    def __call__(self, x: ASWClass, b: Laurent) -> int:
        key = (x.key(), b.key())
        if key not in self._values:
            self.calls += 1
            self._values[key] = sw_pair(x, b)
        return self._values[key]


def _span_with_words(G: UnitQuot, gens: list) -> dict:
    """Breadth-first closure of the generators, recording an exponent word per element."""
    k = len(gens)
    words = {G.identity: (0,) * k}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = G.mul(x, g)
                if y not in words:
                    w = list(words[x])
                    w[i] += 1
                    words[y] = tuple(w)
                    nxt.append(y)
        frontier = nxt
    return words


def orthogonality_report(field: FqField, n: int, m_max: int, sample: int = 200,
                         seed: int = 0) -> dict:
    """Perfectness of fil_m H^1 x G_{n,m} -> Z/p^n and Brylinski orthogonality, m = 1..m_max."""
    p = field.p
    pn = p**n
    pair = PairingCache()
    rng = random.Random(seed)
    records = []
    for m in range(1, m_max + 1):
        H = list(enumerate_reduced(field, n, m,
                                   keep=lambda poles, nz: matsuda_level_from_poles(poles, p, nz) <= m))
        H_log = list(enumerate_reduced(field, n, m,
                                       keep=lambda poles, nz: log_level_from_poles(poles, p) <= m - 1))
        G = build_unit_quot(field, n, m)
        gen_series = G.generator_series()
        gens = [G.project(b) for b in gen_series]
        words = _span_with_words(G, gens)
        generated = len(words) == G.order

        def matrix(classes):
            rows = []
            for h in classes:
                on_gens = [pair(h, b) for b in gen_series]
                rows.append({g: sum(k * v for k, v in zip(w, on_gens)) % pn
                             for g, w in words.items()})
            return rows

        A = matrix(H)
        elements = G.elements()
        rows_distinct = len({tuple(r[g] for g in elements) for r in A}) == len(H)
        cols_distinct = len({tuple(r[g] for r in A) for g in elements}) == len(elements)

        # bilinearity in b is what turns generator values into the full matrix; spot-check it
        checks = [(i, g) for i in range(len(H)) for g in elements]
        if len(checks) > sample:
            checks = rng.sample(checks, sample)
        direct_ok = all(pair(H[i], G.representative(g)) == A[i][g] for i, g in checks)

        perfect = generated and rows_distinct and cols_distinct and len(H) == G.order and direct_ok

        # orthogonal complement of fil^log_{m-1} H^1 is the image of U^m
        bound = max([log_level_from_poles(_poles(h.rep), p) + 1 for h in H_log] + [m])
        kills_um = all(pair(h, Laurent.from_dict(field, {0: field.one, j: c})) == 0
                       for h in H_log for j in range(m, bound + 1) for c in field.basis())
        B = matrix(H_log)
        nothing_else = all(any(r[g] for r in B) for g in elements if g != G.identity)
        orthogonal = kills_um and nothing_else

        records.append({
            "m": m,
            "h1_order": len(H),
            "g_order": G.order,
            "perfect": perfect,
            "orthogonality": orthogonal,
            "details": {
                "generators_span_G": generated,
                "h1_to_dual_injective": rows_distinct,
                "g_to_dual_injective": cols_distinct,
                "bilinear_spot_check": direct_ok,
                "fil_log_order": len(H_log),
                "fil_log_kills_Um": kills_um,
                "complement_is_Um": nothing_else,
            },
        })
    return {"q": field.q, "n": n, "m_max": m_max, "records": records,
            "pairings_evaluated": pair.calls,
            "ok": all(r["perfect"] and r["orthogonality"] for r in records)}


def _levels(x: ASWClass, pair=None) -> tuple[int, int, int]:
    return fil_log_level(x), conductor_fil(x), conductor_dual(x, pair)


def _levels_worker(args) -> list[tuple[int, int, int]]:
    p, e, modulus, n, reps = args
    from .algebra import finite_field
    field = finite_field(p, e, modulus)
    ring = _ring(field)
    pair = PairingCache()
    out = []
    for comps in reps:
        vec = WittVec(ring, [Laurent.from_dict(field, {k: field.from_code(c) for k, c in terms})
                             for terms in comps])
        out.append(_levels(ASWClass(field, n, vec), pair))
    return out


def _class_payload(x: ASWClass) -> tuple:
    return tuple(tuple((k, c.code) for k, c in comp.terms()) for comp in x.rep.comps)


def filagree_report(field: FqField, n: int, pole_bound: int, jobs: int = 1) -> dict:
    """conductor_fil against conductor_dual on every reduced class with poles <= pole_bound."""
    p = field.p
    classes = list(enumerate_reduced(field, n, pole_bound))
    if jobs > 1 and len(classes) > 1:
        from concurrent.futures import ProcessPoolExecutor
        size = -(-len(classes) // jobs)
        chunks = [classes[i:i + size] for i in range(0, len(classes), size)]
        tasks = [(p, field.e, field.modulus, n, [_class_payload(x) for x in chunk]) for chunk in chunks]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            levels = [lv for part in pool.map(_levels_worker, tasks) for lv in part]
    else:
        pair = PairingCache()
        levels = [_levels(x, pair) for x in classes]

    mismatches, boundary, inclusion_failures = [], [], []
    top = p ** (n - 1) * pole_bound + 2
    for x, (log, fil, dual) in zip(classes, levels):
        entry = {"class": format_witt(x.rep), "fil_log": log, "fil": fil, "Fil": dual}
        # Fil_m = fil_m for every m >= 1, i.e. the levels agree after clamping at 1
        if max(fil, 1) != max(dual, 1) or (fil >= 1 and dual >= 1 and fil != dual):
            mismatches.append(entry)
        if fil != dual:
            boundary.append(entry)
        for m in range(1, top + 1):
            in_fil = fil <= m
            in_log = log <= m
            ok = (not in_fil or in_log) and (not in_log or fil <= m + 1)
            if m % p:
                ok = ok and (in_fil == (log <= m - 1))
            if not ok:
                inclusion_failures.append({**entry, "m": m})
                break
    return {"q": field.q, "n": n, "pole_bound": pole_bound, "classes": len(classes),
            "mismatches": mismatches, "boundary": boundary,
            "inclusion_failures": inclusion_failures,
            "ok": not mismatches and not inclusion_failures}
