"""Truncated Laurent series  sum c_k t^k + O(t^N)  over F_q or Z_q/p^M.

A series whose precision is ``None`` is exact (a Laurent polynomial).
Operations propagate precision and never invent coefficients: asking for
a coefficient at or beyond the precision raises :class:`PrecisionError`.
"""
from __future__ import annotations

import math

from .algebra import FqElem, FqField, PadicLiftElem, PadicLiftRing, format_fq

# Relative precision used when an exact series has to be expanded into an
# infinite one (inverse of a non-monomial).
DEFAULT_PRECISION = 64

INF = math.inf


class PrecisionError(ArithmeticError):
    """A requested coefficient lies outside the known window."""


class AtLeast(int):
    """Valuation of a series known only to vanish modulo t^N."""

    def __repr__(self) -> str:
        return f">={int(self)}"


def _prec_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_inf(prec):
    return INF if prec is None else prec


class Laurent:
    __slots__ = ("ring", "v0", "coeffs", "prec")

    def __init__(self, ring, coeffs=(), v0: int = 0, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is not None:
            keep = max(0, prec - v0)
            del coeffs[keep:]
        lo = 0
        while lo < len(coeffs) and not coeffs[lo]:
            lo += 1
        hi = len(coeffs)
        while hi > lo and not coeffs[hi - 1]:
            hi -= 1
        self.ring = ring
        self.coeffs = tuple(coeffs[lo:hi])
        self.v0 = v0 + lo if self.coeffs else 0
        self.prec = prec

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, ring, prec: int | None = None) -> "Laurent":
        return cls(ring, (), 0, prec)

    @classmethod
    def monomial(cls, ring, coeff, k: int, prec: int | None = None) -> "Laurent":
        return cls(ring, (_coerce(ring, coeff),), k, prec)

    @classmethod
    def constant(cls, ring, coeff, prec: int | None = None) -> "Laurent":
        return cls.monomial(ring, coeff, 0, prec)

    @classmethod
    def from_dict(cls, ring, terms: dict, prec: int | None = None) -> "Laurent":
        if not terms:
            return cls.zero(ring, prec)
        lo, hi = min(terms), max(terms)
        coeffs = [ring.zero] * (hi - lo + 1)
        for k, c in terms.items():
            coeffs[k - lo] = coeffs[k - lo] + _coerce(ring, c)
        return cls(ring, coeffs, lo, prec)

    @classmethod
    def gen(cls, ring) -> "Laurent":
        return cls.monomial(ring, ring.one, 1)

    # -- inspection ----------------------------------------------------------
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def valuation(self):
        """Lowest exponent with nonzero coefficient; AtLeast(N) or inf for zero."""
        if self.coeffs:
            return self.v0
        return INF if self.prec is None else AtLeast(self.prec)

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero series has no degree")
        return self.v0 + len(self.coeffs) - 1

    def pole_order(self) -> int:
        """max(0, -valuation)."""
        if not self.coeffs:
            return 0
        return max(0, -self.v0)

    def coefficient(self, k: int):
        if self.prec is not None and k >= self.prec:
            raise PrecisionError(f"coefficient of t^{k} requested but series is only known mod t^{self.prec}")
        i = k - self.v0
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def terms(self) -> list[tuple[int, object]]:
        """Nonzero (exponent, coefficient) pairs in ascending order."""
        return [(self.v0 + i, c) for i, c in enumerate(self.coeffs) if c]

    def to_dict(self) -> dict:
        return dict(self.terms())

    # -- precision -------------------------------------------------------------
    def truncate(self, N: int) -> "Laurent":
        return Laurent(self.ring, self.coeffs, self.v0, _prec_min(self.prec, N))

    def add_bigoh(self, N: int) -> "Laurent":
        return self.truncate(N)

    def exact_part(self) -> "Laurent":
        """Forget the O(t^N) term (the known coefficients as an exact polynomial)."""
        return Laurent(self.ring, self.coeffs, self.v0, None)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "Laurent") -> None:
        if other.ring != self.ring:
            raise ValueError("coefficient ring mismatch")

    def _lift_other(self, other):
        if isinstance(other, Laurent):
            self._check(other)
            return other
        if isinstance(other, (int, FqElem, PadicLiftElem)):
            return Laurent.constant(self.ring, other)
        return None

    def __add__(self, other):
        other = self._lift_other(other)
        if other is None:
            return NotImplemented
        if not self.coeffs:
            return Laurent(self.ring, other.coeffs, other.v0, _prec_min(self.prec, other.prec))
        if not other.coeffs:
            return Laurent(self.ring, self.coeffs, self.v0, _prec_min(self.prec, other.prec))
        lo = min(self.v0, other.v0)
        hi = max(self.v0 + len(self.coeffs), other.v0 + len(other.coeffs))
        out = [self.ring.zero] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.v0 - lo + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.v0 - lo + i
            out[j] = out[j] + c
        return Laurent(self.ring, out, lo, _prec_min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.ring, [-c for c in self.coeffs], self.v0, self.prec)

    def __sub__(self, other):
        other = self._lift_other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Laurent":
        c = _coerce(self.ring, c)
        if not self.coeffs:
            return self
        if not c and self.prec is None:
            return Laurent.zero(self.ring)
        return Laurent(self.ring, [c * x for x in self.coeffs], self.v0, self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, FqElem, PadicLiftElem)):
            return self.scale(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        self._check(other)
        vf = _as_inf(self.prec) if not self.coeffs else self.v0
        vg = _as_inf(other.prec) if not other.coeffs else other.v0
        prec = min(_as_inf(self.prec) + vg, _as_inf(other.prec) + vf)
        prec = None if prec == INF else int(prec)
        if not self.coeffs or not other.coeffs:
            return Laurent.zero(self.ring, prec)
        v0 = self.v0 + other.v0
        n = len(self.coeffs) + len(other.coeffs) - 1
        if prec is not None:
            n = min(n, max(0, prec - v0))
        zero = self.ring.zero
        out = [zero] * n
        b = other.coeffs
        lb = len(b)
        for i, x in enumerate(self.coeffs):
            if not x or i >= n:
                continue
            for j in range(min(lb, n - i)):
                y = b[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return Laurent(self.ring, out, v0, prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        """Multiply by t^k."""
        prec = None if self.prec is None else self.prec + k
        return Laurent(self.ring, self.coeffs, self.v0 + k, prec)

    def inverse(self, relative_precision: int = DEFAULT_PRECISION) -> "Laurent":
        if not self.coeffs:
            raise ZeroDivisionError("division by a series that is zero modulo its precision")
        v = self.v0
        lead = self.coeffs[0]
        if isinstance(lead, PadicLiftElem) and not lead.is_unit():
            raise ArithmeticError("leading coefficient is not a unit; cannot invert in the lift")
        if len(self.coeffs) == 1 and self.prec is None:
            return Laurent(self.ring, (lead.inverse(),), -v)
        r = relative_precision if self.prec is None else self.prec - v
        u = self.coeffs
        inv0 = lead.inverse()
        w = [inv0]
        for k in range(1, r):
            acc = self.ring.zero
            for i in range(1, min(k, len(u) - 1) + 1):
                if u[i]:
                    acc = acc + u[i] * w[k - i]
            w.append(-(inv0 * acc))
        return Laurent(self.ring, w, -v, -v + r)

    def __truediv__(self, other):
        if isinstance(other, (int, FqElem, PadicLiftElem)):
            c = _coerce(self.ring, other)
            return self.scale(c.inverse())
        if not isinstance(other, Laurent):
            return NotImplemented
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by a series that is zero modulo its precision")
        if self.prec is None and other.prec is None:
            rel = self._span() + DEFAULT_PRECISION
            return self * other.inverse(rel)
        return self * other.inverse()

    def _span(self) -> int:
        return len(self.coeffs)

    def __rtruediv__(self, other):
        return Laurent.constant(self.ring, other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Laurent.constant(self.ring, self.ring.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus ------------------------------------------------------------
    def derivative(self) -> "Laurent":
        """Formal d/dt."""
        out = [c * (self.v0 + i) for i, c in enumerate(self.coeffs)]
        prec = None if self.prec is None else self.prec - 1
        return Laurent(self.ring, out, self.v0 - 1, prec)

    def residue(self):
        """Coefficient of t^-1."""
        if self.prec is not None and self.prec <= -1:
            raise PrecisionError(f"t^-1 coefficient is outside the window O(t^{self.prec})")
        return self.coefficient(-1)

    def dlog(self) -> "Laurent":
        """Logarithmic derivative (d/dt f) / f."""
        if not self.coeffs:
            raise ZeroDivisionError("dlog of zero")
        return self.derivative() / self

    def frobenius_series(self) -> "Laurent":
        """f^p computed termwise; only in characteristic p."""
        if not isinstance(self.ring, FqField):
            raise TypeError("Frobenius on series requires an F_q coefficient ring")
        p = self.ring.p
        terms = {p * k: c.frobenius() for k, c in self.terms()}
        prec = None if self.prec is None else p * self.prec
        return Laurent.from_dict(self.ring, terms, prec)

    def map_coefficients(self, fn, ring) -> "Laurent":
        return Laurent(ring, [fn(c) for c in self.coeffs], self.v0, self.prec)

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        """Agreement on the common window of known coefficients."""
        if isinstance(other, (int, FqElem, PadicLiftElem)):
            other = Laurent.constant(self.ring, other)
        if not isinstance(other, Laurent):
            return NotImplemented
        if other.ring != self.ring:
            return False
        diff = self - other
        return not diff.coeffs

    def __hash__(self) -> int:
        if self.prec is not None:
            raise TypeError("only exact series are hashable")
        return hash((self.v0, self.coeffs))

    def key(self) -> tuple:
        return (self.v0, self.coeffs, self.prec)

    def __repr__(self) -> str:
        return format_laurent(self)

    __str__ = __repr__


def _coerce(ring, c):
    if isinstance(c, int):
        return ring.from_int(c)
    return c


def residue_of_product(f: Laurent, g: Laurent):
    """Res(f * g) without forming the whole product."""
    f._check(g)
    vf = _as_inf(f.prec) if not f.coeffs else f.v0
    vg = _as_inf(g.prec) if not g.coeffs else g.v0
    prec = min(_as_inf(f.prec) + vg, _as_inf(g.prec) + vf)
    if prec <= -1:
        raise PrecisionError(f"t^-1 coefficient of the product is outside the window O(t^{prec})")
    acc = f.ring.zero
    for i, c in enumerate(f.coeffs):
        if c:
            k = -1 - (f.v0 + i) - g.v0
            if 0 <= k < len(g.coeffs) and g.coeffs[k]:
                acc = acc + c * g.coeffs[k]
    return acc


def residue(f: Laurent):
    return f.residue()


def dlog(b: Laurent) -> Laurent:
    return b.dlog()


def frobenius_series(f: Laurent) -> Laurent:
    return f.frobenius_series()


def laurent_arith(f: Laurent, g: Laurent, op: str) -> Laurent:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


class LaurentRing:
    """Ring handle for series over a fixed coefficient ring (used as Witt-vector base)."""

    def __init__(self, base):
        self.base = base

    @property
    def zero(self) -> Laurent:
        return Laurent.zero(self.base)

    @property
    def one(self) -> Laurent:
        return Laurent.constant(self.base, self.base.one)

    def from_int(self, n: int) -> Laurent:
        return Laurent.constant(self.base, self.base.from_int(n))

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def frobenius(self, x: Laurent) -> Laurent:
        return x.frobenius_series()

    def __call__(self, value) -> Laurent:
        if isinstance(value, Laurent):
            return value
        if isinstance(value, str):
            return parse_laurent(value, self.base)
        return Laurent.constant(self.base, value)

    def gen(self) -> Laurent:
        return Laurent.gen(self.base)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentRing) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("laurent", self.base))

    def __repr__(self) -> str:
        return f"LaurentRing({self.base!r})"


# -- text format ---------------------------------------------------------------

def _format_coeff(c) -> str:
    if isinstance(c, FqElem):
        return format_fq(c)
    if isinstance(c, PadicLiftElem):
        if c.ring.e == 1:
            return str(c.coeffs[0])
        parts = []
        for i, a in reversed(list(enumerate(c.coeffs))):
            if a:
                mon = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                if not mon:
                    parts.append(str(a))
                else:
                    parts.append(mon if a == 1 else f"{a}*{mon}")
        return "+".join(parts) if parts else "0"
    return str(c)


def format_laurent(f: Laurent) -> str:
    parts = []
    for k, c in f.terms():
        s = _format_coeff(c)
        if "+" in s:
            s = f"({s})"
        if k == 0:
            parts.append(s)
            continue
        mon = "t" if k == 1 else f"t^{k}"
        parts.append(mon if s == "1" else f"{s}*{mon}")
    if f.prec is not None:
        parts.append(f"O(t^{f.prec})")
    return " + ".join(parts) if parts else "0"


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str, ring):
        self.text = text
        self.ring = ring
        self.toks = self._tokenize(text)
        self.i = 0

    @staticmethod
    def _tokenize(text: str):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("int", int(text[i:j]), i))
                i = j
            elif ch in "+-*^()":
                toks.append((ch, ch, i))
                i += 1
            elif ch in "gtO":
                toks.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        toks.append(("end", None, len(text)))
        return toks

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r} but found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Laurent:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self) -> Laurent:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Laurent:
        value = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                value = value * self.power()
            elif kind in ("int", "g", "t", "(", "O"):
                value = value * self.power()
            else:
                return value

    def _signed_int(self) -> int:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        return sign * self.take("int")[1]

    def power(self) -> Laurent:
        value = self.atom()
        if self.peek()[0] == "^":
            pos = self.take()[2]
            k = self._signed_int()
            try:
                value = value ** k
            except (ZeroDivisionError, ArithmeticError) as exc:
                raise ParseError(str(exc), pos) from exc
        return value

    def atom(self) -> Laurent:
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "int":
            return Laurent.constant(ring, ring.from_int(val))
        if kind == "g":
            return Laurent.constant(ring, _generator(ring))
        if kind == "t":
            return Laurent.gen(ring)
        if kind == "(":
            value = self.expr()
            self.take(")")
            return value
        if kind == "O":
            self.take("(")
            self.take("t")
            N = 1
            if self.peek()[0] == "^":
                self.take()
                N = self._signed_int()
            self.take(")")
            return Laurent.zero(ring, N)
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected token {val!r}", pos)


def _generator(ring):
    if isinstance(ring, FqField):
        return ring.gen
    if isinstance(ring, PadicLiftRing):
        if ring.e == 1:
            return ring.from_int(-ring.modulus[0])
        return ring((0, 1))
    raise TypeError(f"no generator for {ring!r}")


def parse_laurent(text: str, ring) -> Laurent:
    """Parse e.g. ``2*t^-3 + g*t^-1 + 1 + O(t^10)``."""
    return _Parser(text, ring).parse()
