"""Arithmetic over the two supported coefficient rings.

Two principal ideal domains are implemented behind one element type:
arbitrary-precision integers, and dense univariate polynomials over a
prime field F_p.  Both are Euclidean, which keeps gcds (remainder
chains) and factorization (trial division) exact and decidable at desk
scale.  Unit-normal forms (non-negative integers, monic polynomials)
make ideal generators, invariant factors and factorizations canonical
and comparable by plain equality.

Elements are immutable; every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Union

from .errors import CapacityError, DomainError

#: factor() refuses integers beyond this magnitude (trial division only).
INT_FACTOR_BOUND = 2**63
#: factor() refuses polynomials beyond this degree.
POLY_FACTOR_MAX_DEGREE = 12
#: coefficient moduli must be primes below this bound.
PRIME_MODULUS_BOUND = 2**13

Payload = Union[int, "tuple[int, ...]"]


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: ``Ring("int")`` or ``Ring("polymod", p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "int":
            if self.p is not None:
                raise DomainError("integer ring takes no modulus")
        elif self.kind == "polymod":
            if self.p is None or not _is_small_prime(self.p):
                raise DomainError(f"polynomial modulus must be a small prime, got {self.p!r}")
            if self.p >= PRIME_MODULUS_BOUND:
                raise CapacityError(f"coefficient prime cap is {PRIME_MODULUS_BOUND}")
        else:
            raise DomainError(f"unknown ring kind {self.kind!r}")

    @property
    def is_int(self) -> bool:
        return self.kind == "int"

    def zero(self) -> "PIDElement":
        return PIDElement(self, 0 if self.is_int else ())

    def one(self) -> "PIDElement":
        return PIDElement(self, 1 if self.is_int else (1,))

    def from_int(self, n: int) -> "PIDElement":
        """Embed an integer (constant polynomial for F_p[x])."""
        if self.is_int:
            return PIDElement(self, n)
        return PIDElement(self, _trim((n % self.p,)))

    def variable(self) -> "PIDElement":
        if self.is_int:
            raise DomainError("the integer ring has no variable")
        return PIDElement(self, (0, 1))

    def smallest_prime(self) -> "PIDElement":
        """The canonical witness prime: 2 over Z, the monomial x over F_p[x]."""
        return self.from_int(2) if self.is_int else self.variable()

    def element(self, raw) -> "PIDElement":
        """Coerce a raw payload: an element, an int, a coefficient
        sequence, or the text syntax ("-5", "poly(2; 1,0,1)")."""
        if isinstance(raw, PIDElement):
            if raw.ring != self:
                raise DomainError(f"element of {raw.ring} used in {self}")
            return raw
        if isinstance(raw, str):
            return parse_element(raw, self)
        if self.is_int:
            if not isinstance(raw, int):
                raise DomainError(f"integer ring expects int payloads, got {raw!r}")
            return PIDElement(self, raw)
        if isinstance(raw, int):
            return self.from_int(raw)
        return PIDElement(self, _trim(tuple(int(c) % self.p for c in raw)))

    def to_json(self):
        return "int" if self.is_int else {"polymod": self.p}

    @classmethod
    def from_json(cls, obj) -> "Ring":
        if obj == "int":
            return cls("int")
        if isinstance(obj, dict) and set(obj) == {"polymod"}:
            return cls("polymod", int(obj["polymod"]))
        raise DomainError(f"bad ring description {obj!r}")

    def __str__(self):
        return "Z" if self.is_int else f"F_{self.p}[x]"

    def __repr__(self):
        return f"Ring({self})"


ZZ = Ring("int")


def polynomial_ring(p: int) -> Ring:
    return Ring("polymod", p)


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient tuples, lowest degree first)

def _trim(cs: tuple[int, ...]) -> tuple[int, ...]:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return cs[:n]


def _poly_add(p: int, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(tuple(out))


def _poly_neg(p: int, a):
    return tuple((-c) % p for c in a)


def _poly_mul(p: int, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(tuple(out))


def _poly_divmod(p: int, a, b):
    if not b:
        raise DomainError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 0)
    for top in range(len(rem) - 1, db - 1, -1):
        c = rem[top]
        if c == 0:
            continue
        q = (c * inv) % p
        quo[top - db] = q
        for j, bj in enumerate(b):
            rem[top - db + j] = (rem[top - db + j] - q * bj) % p
    return _trim(tuple(quo)), _trim(tuple(rem))


def monic_polynomials(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    """All monic coefficient tuples of exactly the given degree, in
    lexicographic order of (c0, ..., c_{d-1})."""
    if degree == 0:
        yield (1,)
        return
    lower = [0] * degree
    while True:
        yield tuple(lower) + (1,)
        i = 0
        while i < degree:
            lower[i] += 1
            if lower[i] < p:
                break
            lower[i] = 0
            i += 1
        else:
            return


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PIDElement:
    """An element of Z or of F_p[x].

    The payload is an int, or a tuple of coefficients in [0, p) with the
    trailing zeros stripped (the zero polynomial is the empty tuple).
    """

    ring: Ring
    payload: Payload

    def __post_init__(self):
        if self.ring.is_int:
            if not isinstance(self.payload, int):
                raise DomainError("integer element needs an int payload")
        else:
            cs = self.payload
            if not isinstance(cs, tuple) or (cs and cs[-1] == 0):
                raise DomainError("polynomial payload must be a trimmed tuple")
            if any(not (0 <= c < self.ring.p) for c in cs):
                raise DomainError("polynomial coefficients must lie in [0, p)")

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.payload == 0 if self.ring.is_int else not self.payload

    def is_unit(self) -> bool:
        if self.ring.is_int:
            return self.payload in (1, -1)
        return len(self.payload) == 1

    def size(self) -> int:
        """Euclidean size: |n| for integers, degree for polynomials."""
        if self.ring.is_int:
            return abs(self.payload)
        return len(self.payload) - 1

    def sort_key(self):
        if self.ring.is_int:
            return self.payload
        return (len(self.payload), self.payload)

    # -- normal forms ---------------------------------------------------

    def unit_normal(self) -> "tuple[PIDElement, PIDElement]":
        """Split as (unit, normal) with self = unit * normal and the normal
        part canonical (non-negative / monic).  Zero splits as (1, 0)."""
        one = self.ring.one()
        if self.is_zero():
            return one, self
        if self.ring.is_int:
            if self.payload < 0:
                return PIDElement(self.ring, -1), PIDElement(self.ring, -self.payload)
            return one, self
        lc = self.payload[-1]
        if lc == 1:
            return one, self
        p = self.ring.p
        inv = pow(lc, -1, p)
        normal = _trim(tuple((c * inv) % p for c in self.payload))
        return PIDElement(self.ring, (lc,)), PIDElement(self.ring, normal)

    def normalized(self) -> "PIDElement":
        return self.unit_normal()[1]

    def is_unit_normal(self) -> bool:
        if self.ring.is_int:
            return self.payload >= 0
        return not self.payload or self.payload[-1] == 1

    def inverse_unit(self) -> "PIDElement":
        if not self.is_unit():
            raise DomainError(f"{self} is not a unit")
        if self.ring.is_int:
            return self
        return PIDElement(self.ring, (pow(self.payload[0], -1, self.ring.p),))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "PIDElement"):
        if not isinstance(other, PIDElement):
            raise DomainError(f"expected a ring element, got {other!r}")
        if other.ring != self.ring:
            raise DomainError(f"mixed rings: {self.ring} and {other.ring}")

    def __add__(self, other):
        self._check(other)
        if self.ring.is_int:
            return PIDElement(self.ring, self.payload + other.payload)
        return PIDElement(self.ring, _poly_add(self.ring.p, self.payload, other.payload))

    def __neg__(self):
        if self.ring.is_int:
            return PIDElement(self.ring, -self.payload)
        return PIDElement(self.ring, _poly_neg(self.ring.p, self.payload))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.ring.is_int:
            return PIDElement(self.ring, self.payload * other.payload)
        return PIDElement(self.ring, _poly_mul(self.ring.p, self.payload, other.payload))

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers are not ring elements")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise DomainError("division by zero")
        if self.ring.is_int:
            q, r = divmod(self.payload, other.payload)
            return PIDElement(self.ring, q), PIDElement(self.ring, r)
        q, r = _poly_divmod(self.ring.p, self.payload, other.payload)
        return PIDElement(self.ring, q), PIDElement(self.ring, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "PIDElement") -> bool:
        self._check(other)
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def exact_div(self, other: "PIDElement") -> "PIDElement":
        """self / other, raising if the division is inexact."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    # -- rendering ---------------------------------------------------

    def to_json(self):
        return self.payload if self.ring.is_int else list(self.payload)

    def __str__(self):
        if self.ring.is_int:
            return str(self.payload)
        if not self.payload:
            return "0"
        terms = []
        for k in range(len(self.payload) - 1, -1, -1):
            c = self.payload[k]
            if c == 0:
                continue
            coeff = "" if (c == 1 and k > 0) else str(c)
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{coeff}x")
            else:
                terms.append(f"{coeff}x^{k}")
        return "+".join(terms)

    def __repr__(self):
        return f"<{self} over {self.ring}>"


def format_element(el: PIDElement) -> str:
    """The fixture text syntax: decimal, or ``poly(p; c0,c1,...)``."""
    if el.ring.is_int:
        return str(el.payload)
    return f"poly({el.ring.p}; {','.join(str(c) for c in el.payload) or '0'})"


def parse_element(text: str, ring: Ring | None = None) -> PIDElement:
    """Parse the fixture syntax: decimal integers, or ``poly(p; c0,c1,...)``."""
    text = text.strip()
    if text.startswith("poly(") and text.endswith(")"):
        body = text[len("poly("):-1]
        try:
            head, coeffs = body.split(";")
            p = int(head)
            cs = tuple(int(c) for c in coeffs.split(","))
        except ValueError as exc:
            raise DomainError(f"bad polynomial literal {text!r}") from exc
        el = polynomial_ring(p).element(cs)
    else:
        try:
            el = PIDElement(ZZ, int(text))
        except ValueError as exc:
            raise DomainError(f"bad integer literal {text!r}") from exc
    if ring is not None and el.ring != ring:
        raise DomainError(f"element {text!r} does not belong to {ring}")
    return el


# ---------------------------------------------------------------------------
# gcds and factorization


def ext_gcd(a: PIDElement, b: PIDElement) -> tuple[PIDElement, PIDElement, PIDElement]:
    """Extended Euclid: returns (g, x, y) with g = a*x + b*y, g unit-normal."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    one, zero = a.ring.one(), a.ring.zero()
    r0, r1 = a, b
    x0, x1 = one, zero
    y0, y1 = zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    unit, g = r0.unit_normal()
    inv = unit.inverse_unit()
    return g, x0 * inv, y0 * inv


def gcd(a: PIDElement, b: PIDElement) -> PIDElement:
    return ext_gcd(a, b)[0]


def lcm(a: PIDElement, b: PIDElement) -> PIDElement:
    if a.is_zero() or b.is_zero():
        return a.ring.zero()
    return (a * b).exact_div(gcd(a, b)).normalized()


@dataclass(frozen=True)
class Factorization:
    """unit * prod(prime**exponent); primes unit-normal, pairwise distinct,
    sorted by (size, payload)."""

    unit: PIDElement
    factors: tuple[tuple[PIDElement, int], ...]

    def value(self) -> PIDElement:
        out = self.unit
        for prime, exp in self.factors:
            out = out * prime**exp
        return out


def factor(a: PIDElement) -> Factorization:
    """Factor by trial division.  Desk-scale only: |a| <= 2**63 for
    integers, deg(a) <= 12 for polynomials."""
    if a.is_zero():
        raise DomainError("cannot factor zero")
    if a.ring.is_int:
        return _factor_int(a)
    return _factor_poly(a)


def _factor_int(a: PIDElement) -> Factorization:
    v = a.payload
    if abs(v) > INT_FACTOR_BOUND:
        raise CapacityError(f"|{v}| exceeds the factorization bound 2**63")
    ring = a.ring
    unit = PIDElement(ring, -1 if v < 0 else 1)
    n = abs(v)
    out = []
    d = 2
    while d <= isqrt(n):
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((PIDElement(ring, d), e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((PIDElement(ring, n), 1))
    return Factorization(unit, tuple(out))


def _factor_poly(a: PIDElement) -> Factorization:
    if a.size() > POLY_FACTOR_MAX_DEGREE:
        raise CapacityError(f"degree {a.size()} exceeds the factorization bound {POLY_FACTOR_MAX_DEGREE}")
    ring = a.ring
    unit, rem = a.unit_normal()
    out = []
    d = 1
    while 2 * d <= rem.size():
        for coeffs in monic_polynomials(ring.p, d):
            q = PIDElement(ring, coeffs)
            if q.divides(rem):
                e = 0
                while q.divides(rem):
                    rem = rem.exact_div(q)
                    e += 1
                out.append((q, e))
                if 2 * d > rem.size():
                    break
        d += 1
    if rem.size() >= 1:
        out.append((rem, 1))
    out.sort(key=lambda pe: pe[0].sort_key())
    return Factorization(unit, tuple(out))


def is_squarefree(a: PIDElement) -> bool:
    if a.is_zero():
        raise DomainError("square-freeness of zero is undefined")
    return all(e == 1 for _, e in factor(a).factors)


def is_prime(a: PIDElement) -> bool:
    if a.is_zero() or a.is_unit():
        return False
    f = factor(a)
    return len(f.factors) == 1 and f.factors[0][1] == 1
