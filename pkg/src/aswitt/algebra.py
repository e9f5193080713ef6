"""Finite fields F_q and their truncated unramified lifts Z_q / p^M.

Elements of ``F_q = F_p[g]/(f)`` are encoded internally as integers
``sum(c_i * p**i)`` where ``c_i`` are the coefficients of the polynomial
in the generator ``g``.  All arithmetic goes through precomputed tables,
which is fine for the small fields this package targets (q <= 125).
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterator, Sequence

# Conway polynomials, coefficients listed from the constant term up.
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
}

MAX_FIELD_ORDER = 125


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomials over F_p as coefficient lists (constant term first) --------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    for k in range(p**d):
        coeffs = []
        for _ in range(d):
            coeffs.append(k % p)
            k //= p
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, e // 2 + 1):
        for f in _monic_polys(p, d):
            if not _polymod(modulus, f, p):
                return False
    return True


class FqField:
    """The finite field F_q, q = p^e, with tables for all operations."""

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree e={e} must be >= 1")
        if p**e > MAX_FIELD_ORDER:
            raise FieldError(f"field order {p**e} exceeds the supported bound {MAX_FIELD_ORDER}")
        if modulus is None:
            if (p, e) not in CONWAY:
                raise FieldError(f"no built-in Conway polynomial for p={p}, e={e}; pass a modulus")
            modulus = CONWAY[(p, e)]
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {e}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._build_tables()

    # -- encoding ----------------------------------------------------------
    def _decode(self, code: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(code % self.p)
            code //= self.p
        return out

    def _encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(coeffs) + [0] * (self.e - len(coeffs))):
            code = code * self.p + c % self.p
        return code

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        vecs = [self._decode(c) for c in range(q)]
        self._add = [[self._encode([x + y for x, y in zip(vecs[a], vecs[b])]) for b in range(q)]
                     for a in range(q)]
        self._neg = [self._encode([-x for x in vecs[a]]) for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * self.e - 1)
                for i, x in enumerate(vecs[a]):
                    if x:
                        for j, y in enumerate(vecs[b]):
                            prod[i + j] += x * y
                c = self._encode(_polymod(prod, self.modulus, p))
                mul[a][b] = mul[b][a] = c
        self._mul = mul
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self._frob = [self._pow_code(a, p) for a in range(q)]

    def _pow_code(self, a: int, k: int) -> int:
        if k < 0:
            if a == 0:
                raise ZeroDivisionError("0 has no inverse in F_q")
            a, k = self._inv[a], -k
        r = 1
        while k:
            if k & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            k >>= 1
        return r

    # -- element construction ----------------------------------------------
    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, value % self.p)
        if isinstance(value, (list, tuple)):
            if len(value) > self.e:
                raise FieldError(f"too many coefficients for F_{self.q}")
            return FqElem(self, self._encode(value))
        raise TypeError(f"cannot coerce {value!r} into F_{self.q}")

    def from_code(self, code: int) -> "FqElem":
        return FqElem(self, code)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    @property
    def gen(self) -> "FqElem":
        """Root of the modulus (for e = 1 this is -c_0)."""
        if self.e == 1:
            return FqElem(self, (-self.modulus[0]) % self.p)
        return FqElem(self, self.p)

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self) -> list["FqElem"]:
        return [FqElem(self, c) for c in range(self.q)]

    def basis(self) -> list["FqElem"]:
        """The F_p-basis 1, g, ..., g^(e-1)."""
        return [FqElem(self, self.p**i) for i in range(self.e)]

    def from_int(self, n: int) -> "FqElem":
        return FqElem(self, n % self.p)

    def frobenius(self, x: "FqElem") -> "FqElem":
        return FqElem(self, self._frob[x.code])

    def __eq__(self, other) -> bool:
        return isinstance(other, FqField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"FqField(p={self.p}, e={self.e}, modulus={self.modulus})"

    def spec(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"p={self.p},e={self.e},modulus={mod}"


@lru_cache(maxsize=None)
def finite_field(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FqField:
    """Cached constructor; identical parameters give the identical object."""
    if modulus is not None:
        modulus = tuple(modulus)
    return FqField(p, e, modulus)


class FqElem:
    __slots__ = ("field", "code")

    def __init__(self, field: FqField, code: int):
        self.field = field
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("field mismatch")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field._add[self.code][o])

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.field, self.field._neg[self.code])

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return FqElem(f, f._add[self.code][f._neg[o]])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field._mul[self.code][o])

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.code == 0:
            raise ZeroDivisionError("division by zero in F_q")
        return FqElem(self.field, self.field._inv[self.code])

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_q")
        f = self.field
        return FqElem(f, f._mul[self.code][f._inv[o]])

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        return FqElem(self.field, self.field._pow_code(self.code, k))

    def frobenius(self) -> "FqElem":
        return FqElem(self.field, self.field._frob[self.code])

    def pth_root(self) -> "FqElem":
        # Frobenius has order e on F_q
        x = self
        for _ in range(self.field.e - 1):
            x = x.frobenius()
        return x

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.code))

    def coefficients(self) -> list[int]:
        return self.field._decode(self.code)

    def __int__(self) -> int:
        if self.field.e != 1:
            raise TypeError("only elements of a prime field convert to int")
        return self.code

    def __repr__(self) -> str:
        return format_fq(self)

    def __str__(self) -> str:
        return format_fq(self)


def format_fq(x: FqElem, symbol: str = "g") -> str:
    """Polynomial in the generator, highest power first, e.g. ``g^2+2*g+1``."""
    if x.field.e == 1:
        return str(x.code)
    parts = []
    for i, c in reversed(list(enumerate(x.coefficients()))):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mon = symbol if i == 1 else f"{symbol}^{i}"
            parts.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(parts) if parts else "0"


def fq_arith(x: FqElem, y: FqElem, op: str) -> FqElem:
    if x.field != y.field:
        raise FieldError("field mismatch")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def fq_trace(x: FqElem) -> int:
    """Absolute trace x + x^p + ... + x^(p^(e-1)), returned as an int mod p."""
    total = x
    y = x
    for _ in range(x.field.e - 1):
        y = y.frobenius()
        total = total + y
    coeffs = total.coefficients()
    assert all(c == 0 for c in coeffs[1:]), "trace must land in the prime field"
    return coeffs[0]


_SPEC_RE = re.compile(r"^\s*p\s*=\s*(\d+)\s*(?:,\s*e\s*=\s*(\d+))?\s*(?:,\s*modulus\s*=\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str) -> FqField:
    """Parse ``p=<prime>,e=<deg>[,modulus=<c0,...,ce>]``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field spec {text!r}")
    p = int(m.group(1))
    e = int(m.group(2) or 1)
    mod = None
    if m.group(3):
        mod = tuple(int(c) for c in m.group(3).split(",") if c.strip())
    return finite_field(p, e, mod)


# -- the lift Z_q / p^M ------------------------------------------------------

class PadicLiftRing:
    """Z_q / p^M realised as (Z/p^M)[x] / (f~) with f~ the integral lift of the modulus."""

    def __init__(self, field: FqField, M: int):
        if M < 1:
            raise ValueError(f"lift precision M={M} must be >= 1")
        self.field = field
        self.p = field.p
        self.e = field.e
        self.M = M
        self.pM = field.p**M
        self.modulus = field.modulus  # least nonnegative residues, monic

    @property
    def characteristic(self) -> int:
        return self.pM

    @property
    def zero(self) -> "PadicLiftElem":
        return PadicLiftElem(self, (0,) * self.e)

    @property
    def one(self) -> "PadicLiftElem":
        return PadicLiftElem(self, (1,) + (0,) * (self.e - 1))

    def from_int(self, n: int) -> "PadicLiftElem":
        return PadicLiftElem(self, (n % self.pM,) + (0,) * (self.e - 1))

    def __call__(self, value) -> "PadicLiftElem":
        if isinstance(value, PadicLiftElem):
            return self.with_precision(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, (list, tuple)):
            v = [int(c) % self.pM for c in value] + [0] * (self.e - len(value))
            return PadicLiftElem(self, tuple(v))
        raise TypeError(f"cannot coerce {value!r} into Z_q/p^{self.M}")

    def with_precision(self, x: "PadicLiftElem") -> "PadicLiftElem":
        return PadicLiftElem(self, tuple(c % self.pM for c in x.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, PadicLiftRing) and self.field == other.field and self.M == other.M

    def __hash__(self) -> int:
        return hash((self.field, self.M))

    def __repr__(self) -> str:
        return f"PadicLiftRing(q={self.field.q}, M={self.M})"

    def _reduce_poly(self, prod: list[int]) -> tuple[int, ...]:
        e, pM, mod = self.e, self.pM, self.modulus
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                for i in range(e):
                    prod[k - e + i] -= c * mod[i]
        return tuple(c % pM for c in prod[:e])


class PadicLiftElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PadicLiftRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, PadicLiftElem):
            if other.ring != self.ring:
                raise ValueError("lift ring mismatch")
            return other.coeffs
        if isinstance(other, int):
            return (other,) + (0,) * (self.ring.e - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        pM = self.ring.pM
        return PadicLiftElem(self.ring, tuple((a + b) % pM for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        pM = self.ring.pM
        return PadicLiftElem(self.ring, tuple(-a % pM for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        pM = self.ring.pM
        return PadicLiftElem(self.ring, tuple((a - b) % pM for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.coeffs
        if self.ring.e == 1:
            return PadicLiftElem(self.ring, (a[0] * o[0] % self.ring.pM,))
        prod = [0] * (2 * self.ring.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(o):
                    prod[i + j] += x * y
        return PadicLiftElem(self.ring, self.ring._reduce_poly(prod))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.ring.one
        a = self
        while k:
            if k & 1:
                r = r * a
            a = a * a
            k >>= 1
        return r

    def is_unit(self) -> bool:
        return not reduce_lift(self).is_zero()

    def inverse(self) -> "PadicLiftElem":
        red = reduce_lift(self)
        if red.is_zero():
            raise ZeroDivisionError("non-unit in Z_q/p^M has no inverse")
        x = lift(red.inverse(), self.ring.M)
        x = PadicLiftElem(self.ring, x.coeffs)
        # Newton iteration doubles the number of correct p-adic digits
        digits = 1
        while digits < self.ring.M:
            x = x * (2 - self * x)
            digits *= 2
        return x

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return self * other.inverse()

    def divide_by_p_power(self, k: int) -> "PadicLiftElem":
        """Exact division by p^k; the quotient is known modulo p^(M-k)."""
        pk = self.ring.p**k
        if any(c % pk for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by p^{k} in Z_q/p^{self.ring.M}")
        return PadicLiftElem(self.ring, tuple(c // pk for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (PadicLiftElem, int)) else None
        if o is None:
            return NotImplemented
        pM = self.ring.pM
        return all((a - b) % pM == 0 for a, b in zip(self.coeffs, o))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.ring.e == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    __str__ = __repr__


def lift(x: FqElem, M: int) -> PadicLiftElem:
    """Coefficientwise lift to least nonnegative residues."""
    if M < 1:
        raise ValueError(f"lift precision M={M} must be >= 1")
    ring = _lift_ring(x.field, M)
    return PadicLiftElem(ring, tuple(x.coefficients()))


def reduce_lift(x: PadicLiftElem) -> FqElem:
    return x.ring.field([c % x.ring.p for c in x.coeffs])


@lru_cache(maxsize=None)
def _lift_ring(field: FqField, M: int) -> PadicLiftRing:
    return PadicLiftRing(field, M)


def lift_ring(field: FqField, M: int) -> PadicLiftRing:
    if M < 1:
        raise ValueError(f"lift precision M={M} must be >= 1")
    return _lift_ring(field, M)


@lru_cache(maxsize=None)
def _teichmuller_table(field: FqField, M: int) -> tuple[PadicLiftElem, ...]:
    table = []
    for x in field.elements():
        y = lift(x, M)
        # y -> y^q converges to the Teichmuller lift, one p-adic digit per step
        for _ in range(M):
            y = y ** field.q
        table.append(y)
    return tuple(table)


def teichmuller_lift(x: FqElem, M: int) -> PadicLiftElem:
    """The root of unity (or zero) in Z_q reducing to x, modulo p^M."""
    return _teichmuller_table(x.field, M)[x.code]
