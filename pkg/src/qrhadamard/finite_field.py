"""Exact table-driven arithmetic in small finite fields GF(p^f).

A FieldContext carries full exp/log tables for a canonical representation:
the modulus is the lexicographically least monic irreducible polynomial of
degree f over GF(p) (coefficients listed constant term first), and the
primitive element omega is the one with the lexicographically least
coefficient vector among elements of multiplicative order q-1.  Nonzero
field elements are plain ints, namely their discrete log to base omega;
the zero element is the sentinel ZERO.  Fixing both choices makes every
downstream cyclotomic class, point set and matrix labeling reproducible
bit for bit.

Contexts are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

ZERO = -1                 # rep of the zero element; logs are >= 0
MAX_FIELD_SIZE = 1 << 24  # full-table construction beyond this is refused


class FieldError(ValueError):
    """Base class for field construction and arithmetic errors."""


class NotPrime(FieldError):
    pass


class TooLarge(FieldError):
    pass


class NoSubfield(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroHasNoLog(FieldError):
    pass


def _isprime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


def _prime_factors(n: int) -> list[int]:
    from sympy import factorint

    return sorted(factorint(n))


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over GF(p); coefficient lists, constant first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _reduce(a: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _trim(a[:dm])


def _mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _reduce(res, mod, p)


def _powmod(a: list[int], k: int, mod: tuple[int, ...], p: int) -> list[int]:
    result = [1]
    a = _reduce(list(a), mod, p)
    while k:
        if k & 1:
            result = _mulmod(result, a, mod, p)
        a = _mulmod(a, a, mod, p)
        k >>= 1
    return result


def _rem(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem(a, b, p)
    return a


def _sub_poly(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Rabin test for a monic polynomial over GF(p), constant term first."""
    f = len(coeffs) - 1
    if f < 1 or coeffs[-1] != 1:
        return False
    if f == 1:
        return True
    if coeffs[0] == 0:  # root at 0
        return False
    x = [0, 1]
    t = _powmod(x, p**f, coeffs, p)
    if _sub_poly(t, x, p):
        return False
    for r in _prime_factors(f):
        t = _powmod(x, p ** (f // r), coeffs, p)
        g = _poly_gcd(_sub_poly(t, x, p), list(coeffs), p)
        if len(g) - 1 != 0:
            return False
    return True


def _least_irreducible(p: int, f: int) -> tuple[int, ...]:
    for coeffs in itertools.product(range(p), repeat=f):
        cand = coeffs + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found; invariant breach")


@dataclass(frozen=True)
class FieldSpec:
    """Prime p, degree f and the canonical modulus (constant term first)."""

    p: int
    f: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.f


class FieldContext:
    """GF(p^f) with exp/log tables, absolute traces and a subfield link.

    Elements are ints: a log index in [0, q-1) or ZERO.  When f is even the
    context also holds GF(p^(f/2)) together with the canonical embedding of
    it onto the Frobenius-fixed subfield, so that the relative trace
    x + x^q' can be mapped back to subfield representation.
    """

    def __init__(self, spec: FieldSpec):
        p, f = spec.p, spec.f
        if not is_irreducible(spec.modulus, p):
            raise FieldError(f"modulus {spec.modulus} is not monic irreducible over GF({p})")
        self.spec = spec
        self.p = p
        self.f = f
        self.q = p**f
        self.order = self.q - 1
        self.one = 0
        self._build_tables()
        self.half = self.order // 2 if p != 2 else 0
        self.subfield: FieldContext | None = None
        self._embed_mult = None
        self._project_mult = None
        if f % 2 == 0:
            self.subfield = build_field(p, f // 2)
            nu, t, t_inv = embedding_data(self, self.subfield)
            self._embed_mult = nu * t
            self._project_mult = t_inv
            self._nu = nu

    def _build_tables(self) -> None:
        p, f, n = self.p, self.f, self.order
        mod = self.spec.modulus
        omega = self._find_primitive(mod)
        exp_table = []
        cur = [1]
        for _ in range(n):
            exp_table.append(tuple(cur) + (0,) * (f - len(cur)))
            cur = _mulmod(cur, omega, mod, p)
        if tuple(cur) + (0,) * (f - len(cur)) != exp_table[0]:
            raise AssertionError("primitive element order mismatch")
        self.exp_table = tuple(exp_table)
        self.log_table = {v: i for i, v in enumerate(exp_table)}
        if len(self.log_table) != n:
            raise AssertionError("exp table has repeats; omega not primitive")
        # absolute traces Tr_{q/p}(omega^k) as ints in [0, p)
        pmults = [pow(p, i, n) if n > 1 else 0 for i in range(f)]
        trace = []
        for k in range(n):
            acc = [0] * f
            for m in pmults:
                v = exp_table[(k * m) % n]
                for j in range(f):
                    acc[j] = (acc[j] + v[j]) % p
            if any(acc[1:]):
                raise AssertionError("trace landed outside the prime field")
            trace.append(acc[0])
        self.trace_table = tuple(trace)

    def _find_primitive(self, mod: tuple[int, ...]) -> list[int]:
        p, f, n = self.p, self.f, self.order
        checks = [n // r for r in _prime_factors(n)] if n > 1 else []
        for vec in itertools.product(range(p), repeat=f):
            if not any(vec):
                continue
            if f > 1 and not any(vec[1:]):
                continue  # prime-field element, order divides p-1 < q-1
            poly = _trim(list(vec))
            if all(_powmod(poly, m, mod, p) != [1] for m in checks):
                return poly
        raise AssertionError("no primitive element found; invariant breach")

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % self.order

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        p = self.p
        va, vb = self.exp_table[a], self.exp_table[b]
        vec = tuple((x + y) % p for x, y in zip(va, vb))
        return self.log_table.get(vec, ZERO)

    def neg(self, a: int) -> int:
        if a == ZERO or self.p == 2:
            return a
        return (a + self.half) % self.order

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise DivisionByZero("zero has no multiplicative inverse")
        return (-a) % self.order

    def pow(self, a: int, k: int) -> int:
        if a == ZERO:
            if k <= 0:
                raise DivisionByZero("0 cannot be raised to a nonpositive power")
            return ZERO
        return (a * k) % self.order

    def discrete_log(self, a: int) -> int:
        if a == ZERO:
            raise ZeroHasNoLog("zero has no discrete log")
        return a

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p) if a != ZERO else ZERO

    # -- representation helpers ---------------------------------------------

    def vector(self, a: int) -> tuple[int, ...]:
        if a == ZERO:
            return (0,) * self.f
        return self.exp_table[a]

    def from_vector(self, vec) -> int:
        vec = tuple(c % self.p for c in vec)
        if len(vec) != self.f:
            raise FieldError("coefficient vector has wrong length")
        if not any(vec):
            return ZERO
        return self.log_table[vec]

    def from_int(self, c: int) -> int:
        c %= self.p
        if c == 0:
            return ZERO
        return self.log_table[(c,) + (0,) * (self.f - 1)]

    def elements(self):
        """All field elements, canonical order [0, omega^0, omega^1, ...]."""
        yield ZERO
        yield from range(self.order)

    def nonzero(self):
        return range(self.order)

    def canonical_index(self, a: int) -> int:
        return 0 if a == ZERO else a + 1

    def element_at(self, idx: int) -> int:
        return ZERO if idx == 0 else idx - 1

    # -- subfield machinery ---------------------------------------------------

    def _require_subfield(self) -> FieldContext:
        if self.subfield is None:
            raise NoSubfield(f"GF({self.p}^{self.f}) has no index-2 subfield here")
        return self.subfield

    def embed(self, x: int) -> int:
        """Map a subfield element into this field."""
        self._require_subfield()
        if x == ZERO:
            return ZERO
        return (x * self._embed_mult) % self.order

    def in_subfield(self, x: int) -> bool:
        self._require_subfield()
        return x == ZERO or x % self._nu == 0

    def project(self, x: int) -> int:
        """Inverse of embed; x must lie in the Frobenius-fixed subfield."""
        sub = self._require_subfield()
        if x == ZERO:
            return ZERO
        if x % self._nu:
            raise FieldError("element does not lie in the subfield")
        return ((x // self._nu) * self._project_mult) % sub.order

    def rel_trace(self, x: int) -> int:
        """Relative trace x + x^q' into subfield representation."""
        sub = self._require_subfield()
        y = self.add(x, self.pow(x, sub.q)) if x != ZERO else ZERO
        return self.project(y)

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldContext(GF({self.p}^{self.f}))"


@lru_cache(maxsize=None)
def build_field(p: int, f: int = 1) -> FieldContext:
    """Deterministic GF(p^f): lex-least modulus, lex-least primitive element."""
    if f < 1:
        raise FieldError("extension degree must be >= 1")
    if not _isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p**f > MAX_FIELD_SIZE:
        raise TooLarge(f"{p}^{f} exceeds the table size cap 2^24")
    return FieldContext(FieldSpec(p, f, _least_irreducible(p, f)))


def minimal_polynomial(ctx: FieldContext, a: int) -> tuple[int, ...]:
    """Minimal polynomial of a over GF(p), monic, constant term first."""
    conjugates = []
    c = a
    while c not in conjugates:
        conjugates.append(c)
        c = ctx.frobenius(c)
    poly = [ctx.one]  # field-element coefficients, constant first
    for c in conjugates:
        nc = ctx.neg(c)
        poly = [ctx.mul(nc, poly[0])] + [
            ctx.add(poly[i - 1], ctx.mul(nc, poly[i])) for i in range(1, len(poly))
        ] + [poly[-1]]
    out = []
    for coeff in poly:
        vec = ctx.vector(coeff)
        if any(vec[1:]):
            raise AssertionError("minimal polynomial coefficient not in GF(p)")
        out.append(vec[0])
    return tuple(out)


@lru_cache(maxsize=None)
def embedding_data(ext: FieldContext, base: FieldContext) -> tuple[int, int, int]:
    """(nu, t, t_inv) realizing GF(base.q) inside ext.

    base's primitive element maps to Omega^(nu*t), nu = (ext.q-1)/(base.q-1),
    where t is the least exponent coprime to base.q-1 whose image is a root
    of the minimal polynomial of base's primitive element.
    """
    if ext.p != base.p or ext.f % base.f:
        raise NoSubfield("not a subfield pair")
    nu = ext.order // base.order
    coeffs = minimal_polynomial(base, base.one if base.order == 1 else 1)
    for t in range(1, max(base.order, 2)):
        if gcd(t, base.order) != 1:
            continue
        y = (nu * t) % ext.order
        acc = ZERO
        for c in reversed(coeffs):
            acc = ext.add(ext.mul(acc, y), ext.from_int(c))
        if acc == ZERO:
            t_inv = pow(t, -1, base.order) if base.order > 1 else 0
            return nu, t, t_inv
    raise AssertionError("no embedding found; invariant breach")


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^f; raises FieldError if q is not a prime power."""
    from sympy import factorint

    fac = factorint(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, f),) = fac.items()
    return p, f


def field_for(q: int) -> FieldContext:
    p, f = prime_power(q)
    return build_field(p, f)


def quadratic_tower(q: int) -> tuple[FieldContext, FieldContext]:
    """(GF(q^2), GF(q)) with the extension's subfield link pointing at the base."""
    p, f = prime_power(q)
    ext = build_field(p, 2 * f)
    return ext, ext.subfield


def clear_caches() -> None:
    build_field.cache_clear()
    embedding_data.cache_clear()
