"""The multiplicative group of K = F_q((t)) modulo p^n-th powers and U_K^m.

G_{n,m} = K^x / (K^x)^{p^n} U_K^m  splits as  Z/p^n (valuation)  x  U^1/(U^1)^{p^n} U^m,
because F_q^x has order prime to p.  The principal-unit factor is handled by
brute-force enumeration of truncated polynomials 1 + c_1 t + ... + c_{m-1} t^{m-1}.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .algebra import FqElem, FqField
from .series import Laurent, PrecisionError, format_laurent

ENUMERATION_BOUND = 10**5


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class UnitDecomposition:
    """b = t^v * u0 * w with u0 in F_q^x and w = 1 mod t."""

    v: int
    u0: FqElem
    w: Laurent

    def recompose(self) -> Laurent:
        return self.w.scale(self.u0).shift(self.v)


def unit_decompose(b: Laurent) -> UnitDecomposition:
    if not isinstance(b.ring, FqField):
        raise TypeError("unit_decompose expects a series over F_q")
    if b.is_zero():
        raise ZeroDivisionError("zero has no unit decomposition")
    v = b.valuation()
    u0 = b.coefficient(v)
    w = b.shift(-v).scale(u0.inverse())
    return UnitDecomposition(v, u0, w)


def ceil_div(m: int, p: int) -> int:
    """[m/p] = min{a in N : a >= m/p}."""
    return -(-m // p)


@dataclass(frozen=True)
class UnitClass:
    """Element of G_{n,m}: exponent of t mod p^n and the normal form of the principal part.

    ``w`` holds the codes of c_1, ..., c_{m-1} of 1 + sum c_j t^j.
    """

    k: int
    w: tuple


class UnitQuot:
    """The finite group G_{n,m} with an enumeration-backed normal form."""

    def __init__(self, field: FqField, n: int, m: int):
        if n < 0 or m < 0:
            raise ValueError("need n >= 0 and m >= 0")
        self.field = field
        self.p = field.p
        self.n = n
        self.m = m
        self.pn = field.p**n
        self.length = max(m - 1, 0)
        size = field.q**self.length
        if size > ENUMERATION_BOUND:
            raise EnumerationBoundError(
                f"q^(m-1) = {size} exceeds the enumeration bound {ENUMERATION_BOUND}")
        self._build()

    # -- truncated principal units ---------------------------------------------------
    def _mul_w(self, a: tuple, b: tuple) -> tuple:
        """(1 + sum a_j t^j)(1 + sum b_j t^j) mod t^m; index j-1 holds c_j."""
        f = self.field
        add, mul = f._add, f._mul
        L = self.length
        out = [add[x][y] for x, y in zip(a, b)]
        for i in range(L):
            x = a[i]
            if not x:
                continue
            for j in range(L - i - 1):
                y = b[j]
                if y:
                    k = i + j + 1
                    out[k] = add[out[k]][mul[x][y]]
        return tuple(out)

    def _pow_w(self, a: tuple, e: int) -> tuple:
        result = (0,) * self.length
        base = a
        while e:
            if e & 1:
                result = self._mul_w(result, base)
            e >>= 1
            if e:
                base = self._mul_w(base, base)
        return result

    def _build(self) -> None:
        q, L = self.field.q, self.length
        everything = list(itertools.product(range(q), repeat=L))
        if self.n == 0:
            image = set(everything)
        else:
            image = {self._pow_w(w, self.pn) for w in everything}
        self._image = sorted(image)
        nf: dict[tuple, tuple] = {}
        for w in everything:
            if w in nf:
                continue
            coset = [self._mul_w(w, s) for s in self._image]
            rep = min(coset)
            for x in coset:
                nf[x] = rep
        self._nf = nf
        self._cosets = sorted(set(nf.values()))

    # -- group structure -------------------------------------------------------------------
    @property
    def order(self) -> int:
        return self.pn * len(self._cosets)

    @property
    def identity(self) -> UnitClass:
        return UnitClass(0, (0,) * self.length)

    def mul(self, x: UnitClass, y: UnitClass) -> UnitClass:
        return UnitClass((x.k + y.k) % self.pn, self._nf[self._mul_w(x.w, y.w)])

    def power(self, x: UnitClass, e: int) -> UnitClass:
        e %= self.pn if self.pn > 1 else 1
        result = self.identity
        for _ in range(e):
            result = self.mul(result, x)
        return result

    def elements(self) -> list[UnitClass]:
        return [UnitClass(k, w) for k in range(self.pn) for w in self._cosets]

    def element_order(self, x: UnitClass) -> int:
        y, k = x, 1
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def principal_unit(self, c: FqElem, j: int) -> Laurent:
        return Laurent.from_dict(self.field, {0: self.field.one, j: c})

    def generator_series(self) -> list[Laurent]:
        """t and 1 + c t^j for 1 <= j < m, c in the F_p-basis of F_q."""
        gens = [Laurent.gen(self.field)]
        for j in range(1, self.m):
            for c in self.field.basis():
                gens.append(self.principal_unit(c, j))
        return gens

    def generators(self) -> list[UnitClass]:
        return [self.project(b) for b in self.generator_series()]

    def representative(self, x: UnitClass) -> Laurent:
        """An element of K^x (exact Laurent polynomial) in the class x."""
        terms = {0: self.field.one}
        for j, code in enumerate(x.w, start=1):
            if code:
                terms[j] = self.field.from_code(code)
        return Laurent.from_dict(self.field, terms).shift(x.k)

    def project(self, b: Laurent) -> UnitClass:
        """Class of b in G_{n,m}."""
        dec = unit_decompose(b)
        w = dec.w
        if w.prec is not None and w.prec < self.m:
            raise PrecisionError(
                f"need the unit part modulo t^{self.m} but it is only known modulo t^{w.prec}")
        codes = tuple(w.coefficient(j).code for j in range(1, self.length + 1))
        return UnitClass(dec.v % self.pn, self._nf[codes])

    def coarsen(self, x: UnitClass, target: "UnitQuot") -> UnitClass:
        """The projection G_{n,m} -> G_{n,m'} for m' <= m (same n)."""
        if target.field != self.field or target.n != self.n or target.m > self.m:
            raise ValueError("can only project to a coarser quotient of the same tower")
        return UnitClass(x.k % target.pn, target._nf[x.w[:target.length]])

    def format_element(self, x: UnitClass) -> str:
        return format_laurent(self.representative(x))

    def to_json(self) -> dict:
        return {
            "q": self.field.q,
            "n": self.n,
            "m": self.m,
            "order": self.order,
            "generators": [format_laurent(b) for b in self.generator_series()],
        }


@lru_cache(maxsize=None)
def build_unit_quot(field: FqField, n: int, m: int) -> UnitQuot:
    return UnitQuot(field, n, m)


def project_unit(G: UnitQuot, b: Laurent) -> UnitClass:
    return G.project(b)


def order_identity_check(field: FqField, n: int, m_max: int) -> dict:
    """|G_{n,m}| against |G_{n-1,[m/p]}| * |G_{1,m}| for m = 0..m_max."""
    rows = []
    for m in range(m_max + 1):
        lhs = build_unit_quot(field, n, m).order
        a = ceil_div(m, field.p)
        left = build_unit_quot(field, n - 1, a).order if n >= 1 else 1
        right = build_unit_quot(field, 1, m).order
        rows.append({"m": m, "lhs": lhs, "rhs": left * right,
                     "ceil_m_over_p": a, "ok": lhs == left * right})
    return {
        "q": field.q,
        "n": n,
        "m_max": m_max,
        "rows": rows,
        "mismatches": [r["m"] for r in rows if not r["ok"]],
    }
