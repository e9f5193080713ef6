"""Truncated p-typical Witt vectors W_n(R).

Addition, multiplication, negation and the universal Frobenius are given
by integer polynomials computed once by the ghost recursion

    w_i(Z) = sum_{j<=i} p^j Z_j^(p^(i-j)),

cached per (p, n), and then evaluated in whatever coefficient ring the
vector lives in (F_q, Z_q/p^M, or Laurent series over either).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (FqElem, FqField, PadicLiftElem, PadicLiftRing, fq_trace, lift_ring)
from .series import Laurent, LaurentRing, parse_laurent, format_laurent

MAX_LENGTH = 4

Poly = dict  # {exponent tuple: int}


# -- integer polynomials --------------------------------------------------------

def _padd(a: Poly, b: Poly, scale: int = 1) -> Poly:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _ppow(a: Poly, k: int, nvars: int) -> Poly:
    result: Poly = {(0,) * nvars: 1}
    base = a
    while k:
        if k & 1:
            result = _pmul(result, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return result


def _var(i: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): 1}


def _pdiv_exact(a: Poly, d: int) -> Poly:
    out = {}
    for k, c in a.items():
        if c % d:
            raise ArithmeticError("ghost recursion produced a non-integral coefficient")
        out[k] = c // d
    return out


def ghost_poly(p: int, i: int, offset: int, nvars: int) -> Poly:
    """w_i of the variables offset, offset+1, ... as an integer polynomial."""
    out: Poly = {}
    for j in range(i + 1):
        term = _ppow(_var(offset + j, nvars), p ** (i - j), nvars)
        out = _padd(out, term, p**j)
    return out


def _solve_ghost(p: int, n: int, targets: list[Poly], nvars: int) -> list[Poly]:
    """Find integer polynomials Z_i with w_i(Z) = targets[i]."""
    Z: list[Poly] = []
    # powers[j][k] = Z_j^(p^k)
    powers: list[list[Poly]] = []
    for i in range(n):
        acc = dict(targets[i])
        for j in range(i):
            while len(powers[j]) <= i - j:
                powers[j].append(_ppow(powers[j][-1], p, nvars))
            acc = _padd(acc, powers[j][i - j], -(p**j))
        Zi = _pdiv_exact(acc, p**i)
        Z.append(Zi)
        powers.append([Zi])
    return Z


@dataclass(frozen=True)
class UniversalWittPolys:
    """S_i (sum), P_i (product) in Z[X_0..X_{n-1}, Y_0..Y_{n-1}], N_i (negation) in
    Z[X_0..X_{n-1}] and the Frobenius F_i: W_{n+1} -> W_n in Z[X_0..X_n]."""

    p: int
    n: int
    sums: tuple
    products: tuple
    negation: tuple
    frobenius: tuple


_POLY_CACHE: dict[tuple[int, int], UniversalWittPolys] = {}
_POLY_LOCK = threading.Lock()


def universal_polys(p: int, n: int) -> UniversalWittPolys:
    if not 1 <= n <= MAX_LENGTH:
        raise ValueError(f"Witt length n={n} outside the supported range 1..{MAX_LENGTH}")
    key = (p, n)
    with _POLY_LOCK:
        if key not in _POLY_CACHE:
            _POLY_CACHE[key] = _build_polys(p, n)
        return _POLY_CACHE[key]


def _build_polys(p: int, n: int) -> UniversalWittPolys:
    nv = 2 * n
    wx = [ghost_poly(p, i, 0, nv) for i in range(n)]
    wy = [ghost_poly(p, i, n, nv) for i in range(n)]
    sums = _solve_ghost(p, n, [_padd(a, b) for a, b in zip(wx, wy)], nv)
    prods = _solve_ghost(p, n, [_pmul(a, b) for a, b in zip(wx, wy)], nv)
    wn = [ghost_poly(p, i, 0, n) for i in range(n)]
    neg = _solve_ghost(p, n, [{k: -c for k, c in w.items()} for w in wn], n)
    wf = [ghost_poly(p, i + 1, 0, n + 1) for i in range(n)]
    frob = _solve_ghost(p, n, wf, n + 1)
    return UniversalWittPolys(p, n, tuple(sums), tuple(prods), tuple(neg), tuple(frob))


@lru_cache(maxsize=None)
def _reduced_terms(p: int, n: int, kind: str, index: int, modulus: int) -> tuple:
    polys = getattr(universal_polys(p, n), kind)
    out = []
    for exps, c in polys[index].items():
        c = c % modulus if modulus else c
        if c:
            out.append((c, tuple((v, e) for v, e in enumerate(exps) if e)))
    return tuple(out)


def evaluate(p: int, n: int, kind: str, index: int, args: list, ring):
    """Evaluate a universal polynomial on ring elements, coefficients reduced mod char."""
    terms = _reduced_terms(p, n, kind, index, ring.characteristic)
    cache: dict = {}
    total = ring.zero
    for c, mono in terms:
        val = None
        for v, e in mono:
            pw = cache.get((v, e))
            if pw is None:
                pw = args[v] ** e if e > 1 else args[v]
                cache[(v, e)] = pw
            val = pw if val is None else val * pw
        if val is None:
            val = ring.one
        total = total + (val * c if c != 1 else val)
    return total


# -- rings -----------------------------------------------------------------------

def ring_prime(ring) -> int:
    if isinstance(ring, (FqField, PadicLiftRing)):
        return ring.p
    if isinstance(ring, LaurentRing):
        return ring_prime(ring.base)
    raise TypeError(f"unsupported Witt coefficient ring {ring!r}")


def is_char_p(ring) -> bool:
    return ring.characteristic == ring_prime(ring)


def _divide_by_p_power(x, k: int, ring):
    if k == 0:
        return x
    if isinstance(x, PadicLiftElem):
        return x.divide_by_p_power(k)
    if isinstance(x, Laurent) and isinstance(x.ring, PadicLiftRing):
        return x.map_coefficients(lambda c: c.divide_by_p_power(k), x.ring)
    raise ArithmeticError(f"division by p^{k} is not available in {ring!r}")


def _ring_of(x):
    if isinstance(x, FqElem):
        return x.field
    if isinstance(x, PadicLiftElem):
        return x.ring
    if isinstance(x, Laurent):
        return LaurentRing(x.ring)
    raise TypeError(f"cannot infer the ring of {x!r}")


# -- Witt vectors ------------------------------------------------------------------

class WittVec:
    """(a_0, ..., a_{n-1}) in standard order: a = sum_i V^i [a_i]."""

    __slots__ = ("ring", "comps", "p")

    def __init__(self, ring, comps):
        comps = tuple(ring.from_int(c) if isinstance(c, int) else c for c in comps)
        if not 1 <= len(comps) <= MAX_LENGTH + 1:
            raise ValueError(f"Witt length {len(comps)} outside the supported range")
        self.ring = ring
        self.comps = comps
        self.p = ring_prime(ring)

    @property
    def n(self) -> int:
        return len(self.comps)

    @classmethod
    def zero(cls, ring, n: int) -> "WittVec":
        return cls(ring, [ring.zero] * n)

    @classmethod
    def one(cls, ring, n: int) -> "WittVec":
        return teichmuller(ring.one, n, ring)

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def __len__(self) -> int:
        return len(self.comps)

    def _check(self, other: "WittVec") -> None:
        if not isinstance(other, WittVec):
            raise TypeError("expected a Witt vector")
        if other.n != self.n:
            raise ValueError(f"Witt length mismatch: {self.n} vs {other.n}")
        if other.ring != self.ring:
            raise ValueError("Witt coefficient ring mismatch")

    def __add__(self, other: "WittVec") -> "WittVec":
        self._check(other)
        args = list(self.comps) + list(other.comps)
        return WittVec(self.ring, [evaluate(self.p, self.n, "sums", i, args, self.ring)
                                   for i in range(self.n)])

    def __neg__(self) -> "WittVec":
        args = list(self.comps)
        return WittVec(self.ring, [evaluate(self.p, self.n, "negation", i, args, self.ring)
                                   for i in range(self.n)])

    def __sub__(self, other: "WittVec") -> "WittVec":
        self._check(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scalar(other)
        self._check(other)
        args = list(self.comps) + list(other.comps)
        return WittVec(self.ring, [evaluate(self.p, self.n, "products", i, args, self.ring)
                                   for i in range(self.n)])

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scalar(other)
        return NotImplemented

    def scalar(self, k: int) -> "WittVec":
        """k * a by double-and-add."""
        if k < 0:
            return (-self).scalar(-k)
        result = WittVec.zero(self.ring, self.n)
        base = self
        while k:
            if k & 1:
                result = result + base
            k >>= 1
            if k:
                base = base + base
        return result

    def is_zero(self) -> bool:
        return all(not c for c in self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittVec):
            return NotImplemented
        return self.n == other.n and self.ring == other.ring and all(
            a == b for a, b in zip(self.comps, other.comps))

    def __hash__(self) -> int:
        return hash(self.comps)

    def __repr__(self) -> str:
        return format_witt(self)

    def frobenius(self) -> "WittVec":
        return frobenius_witt(self)

    def verschiebung(self, keep_length: bool = False) -> "WittVec":
        return verschiebung(self, keep_length)

    def ghost(self) -> list:
        return ghost(self)

    def restriction(self) -> "WittVec":
        return restriction(self)


def witt_arith(a: WittVec, b: WittVec, op: str) -> WittVec:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def teichmuller(x, n: int, ring=None) -> WittVec:
    ring = ring if ring is not None else _ring_of(x)
    return WittVec(ring, [x] + [ring.zero] * (n - 1))


def verschiebung(a: WittVec, keep_length: bool = False) -> WittVec:
    """(a_0, ..., a_{n-1}) -> (0, a_0, ..., a_{n-1}); with keep_length the last entry is dropped."""
    comps = [a.ring.zero] + list(a.comps)
    if keep_length:
        comps = comps[:-1]
    return WittVec(a.ring, comps)


def restriction(a: WittVec) -> WittVec:
    """R: W_n -> W_{n-1}, forgetting the last component."""
    if a.n < 2:
        raise ValueError("restriction needs length >= 2")
    return WittVec(a.ring, a.comps[:-1])


def frobenius_witt(a: WittVec) -> WittVec:
    """Componentwise p-th power; valid only in characteristic p."""
    if not is_char_p(a.ring):
        raise TypeError("componentwise Frobenius needs a characteristic-p coefficient ring")
    return WittVec(a.ring, [a.ring.frobenius(c) for c in a.comps])


def universal_frobenius(a: WittVec) -> WittVec:
    """F: W_{n+1}(R) -> W_n(R) from the universal Frobenius polynomials."""
    n = a.n - 1
    args = list(a.comps)
    return WittVec(a.ring, [evaluate(a.p, n, "frobenius", i, args, a.ring) for i in range(n)])


def ghost(a: WittVec) -> list:
    p = a.p
    out = []
    for i in range(a.n):
        total = a.ring.zero
        for j in range(i + 1):
            total = total + (a.comps[j] ** (p ** (i - j))) * (p**j)
        out.append(total)
    return out


def ghost_inverse(w: list, ring) -> WittVec:
    """Recover x from its ghost components, checking every division by p^i.

    Over Z_q/p^M the i-th component is only determined modulo p^(M-i); the
    result is returned over Z_q/p^(M-n+1), where all components are exact.
    """
    p = ring_prime(ring)
    n = len(w)
    xs: list = []
    for i in range(n):
        acc = w[i]
        for j in range(i):
            acc = acc - (xs[j] ** (p ** (i - j))) * (p**j)
        try:
            xs.append(_divide_by_p_power(acc, i, ring))
        except ArithmeticError as exc:
            raise ArithmeticError(f"inexact division in ghost_inverse at component {i}: {exc}") from exc
    if isinstance(ring, PadicLiftRing):
        if ring.M - (n - 1) < 1:
            raise ArithmeticError(f"lift precision M={ring.M} too small for length {n}")
        small = lift_ring(ring.field, ring.M - (n - 1))
        return WittVec(small, [small.with_precision(x) for x in xs])
    return WittVec(ring, xs)


# -- W_n(F_p) = Z/p^n ---------------------------------------------------------------

def witt_to_int(a: WittVec) -> int:
    """The fixed identification W_n(F_p) -> Z/p^n with [1] -> 1.

    a = sum_j p^j [a_j] and the Teichmuller lift of c in Z/p^n is c^(p^(n-1)).
    """
    ring = a.ring
    if not isinstance(ring, FqField):
        raise TypeError("witt_to_int expects a Witt vector over a finite field")
    p, n = ring.p, a.n
    pn = p**n
    total = 0
    for j, c in enumerate(a.comps):
        coeffs = c.coefficients()
        if any(coeffs[1:]):
            raise ValueError("Witt vector does not lie in W_n(F_p)")
        total += p**j * pow(coeffs[0], p ** (n - 1), pn)
    return total % pn


def int_to_witt(k: int, field: FqField, n: int) -> WittVec:
    p = field.p
    pn = p**n
    k %= pn
    comps = []
    for j in range(n):
        d = k % p
        comps.append(field.from_int(d))
        k = (k - pow(d, p ** (n - 1), pn)) % pn
        assert k % p == 0
        k //= p
        pn //= p
    return WittVec(field, comps)


def wittvec_trace(a: WittVec) -> int:
    """Witt sum of the e Frobenius conjugates of a in W_n(F_q), read in Z/p^n."""
    field = a.ring
    if not isinstance(field, FqField):
        raise TypeError("wittvec_trace expects a Witt vector over a finite field")
    total = a
    conj = a
    for _ in range(field.e - 1):
        conj = frobenius_witt(conj)
        total = total + conj
    if field.e == 1:
        return witt_to_int(total)
    prime = _prime_subfield(field)
    return witt_to_int(WittVec(prime, [prime.from_int(_prime_part(c)) for c in total.comps]))


def _prime_part(c: FqElem) -> int:
    coeffs = c.coefficients()
    if any(coeffs[1:]):
        raise ValueError("trace did not land in the prime field")
    return coeffs[0]


def _prime_subfield(field: FqField) -> FqField:
    from .algebra import finite_field
    return finite_field(field.p, 1)


# -- decomposition of [1 + a] --------------------------------------------------------

def teich_one_plus_decomp(a: Laurent, n: int) -> tuple[WittVec, WittVec]:
    """[1+a]_n = X (+) Y with X = [1]_n over F_p and every Y_i in t*F_q[[t]]."""
    if not isinstance(a.ring, FqField):
        raise TypeError("expected a series over F_q")
    if a and a.valuation() < 1:
        raise ValueError("a must have valuation >= 1")
    ring = LaurentRing(a.ring)
    one_plus = teichmuller(ring.one + a, n, ring)
    const = teichmuller(ring.one, n, ring)
    tpart = one_plus - const
    prime = _prime_subfield(a.ring)
    return teichmuller(prime.one, n, prime), tpart


# -- text format ------------------------------------------------------------------------

def format_witt(a: WittVec) -> str:
    parts = []
    for c in a.comps:
        parts.append(format_laurent(c) if isinstance(c, Laurent) else str(c))
    return "(" + "; ".join(parts) + ")"


def parse_witt(text: str, field: FqField) -> WittVec:
    """Parse ``(a0; a1; ...)`` with each entry a Laurent series over ``field``."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        from .series import ParseError
        raise ParseError("Witt vector must be written as (a0; a1; ...)", 0)
    body = s[1:-1]
    ring = LaurentRing(field)
    comps = []
    offset = text.index("(") + 1
    for chunk in body.split(";"):
        try:
            comps.append(parse_laurent(chunk, field))
        except Exception as exc:
            from .series import ParseError
            if isinstance(exc, ParseError):
                raise ParseError(str(exc).rsplit(" at position", 1)[0], offset + exc.position) from exc
            raise
        offset += len(chunk) + 1
    return WittVec(ring, comps)
