"""Additive and multiplicative characters, Gauss periods, Gauss and Jacobi
sums, and numeric cross-checks of their closed forms.

Multiplicative characters are always normalized so that chi_e(omega) is the
first primitive e-th root of unity; a character of order e is then evaluated
exactly through discrete logs mod e.  Complex values are plain doubles and
every closed-form comparison uses absolute tolerance TOL: all quantities
here are algebraic integers of magnitude at most q^2 at desk scale, so
doubles leave many digits of margin.  Nothing float-valued ever feeds a
constructed set or matrix; integer conclusions are drawn by exact
enumeration elsewhere.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, sqrt

from .finite_field import ZERO, FieldContext, NoSubfield, embedding_data

TOL = 1e-6


class CharError(ValueError):
    pass


class ZeroArgument(CharError):
    pass


class NoMatch(CharError):
    """All closed-form sign candidates failed to match the numeric sum."""


@lru_cache(maxsize=None)
def roots_of_unity(m: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / m) for k in range(m))


def _check_order(ctx: FieldContext, e: int) -> None:
    if e < 1 or ctx.order % e:
        raise CharError(f"character order {e} does not divide q-1 = {ctx.order}")


def additive_char(ctx: FieldContext, x: int) -> complex:
    """Canonical additive character zeta_p^Tr(x); psi(0) = 1."""
    if x == ZERO:
        return 1 + 0j
    return roots_of_unity(ctx.p)[ctx.trace_table[x]]


def mult_char_exponent(ctx: FieldContext, e: int, x: int) -> int:
    """Exponent a with chi_e(x) = zeta_e^a, for nonzero x."""
    _check_order(ctx, e)
    if x == ZERO:
        raise ZeroArgument("multiplicative character exponent of zero")
    return x % e


def mult_char(ctx: FieldContext, e: int, x: int) -> complex:
    return roots_of_unity(e)[mult_char_exponent(ctx, e, x)]


def char_value(ctx: FieldContext, e: int, j: int, x: int) -> complex:
    """chi_e^j(x), extended to 0 by 1 for the trivial character and 0 otherwise."""
    _check_order(ctx, e)
    if x == ZERO:
        return (1 + 0j) if j % e == 0 else 0j
    return roots_of_unity(e)[(j * x) % e]


@lru_cache(maxsize=None)
def gauss_periods(ctx: FieldContext, e: int) -> tuple[complex, ...]:
    """Additive-character sums over the e cyclotomic classes."""
    _check_order(ctx, e)
    zp = roots_of_unity(ctx.p)
    counts = [[0] * ctx.p for _ in range(e)]
    trace = ctx.trace_table
    for k in range(ctx.order):
        counts[k % e][trace[k]] += 1
    return tuple(sum(c * zp[t] for t, c in enumerate(row) if c) for row in counts)


def gauss_period(ctx: FieldContext, e: int, i: int) -> complex:
    return gauss_periods(ctx, e)[i % e]


def gauss_sum(ctx: FieldContext, e: int, j: int = 1) -> complex:
    """G_q(chi_e^j) = sum over nonzero x of chi_e^j(x) psi(x)."""
    per = gauss_periods(ctx, e)
    ze = roots_of_unity(e)
    return sum(ze[(j * r) % e] * per[r] for r in range(e))


def jacobi_sum(ctx: FieldContext, e1: int, e2: int) -> complex:
    """J_q(chi_e1, chi_e2) over all of F_q, with the chi(0) convention."""
    _check_order(ctx, e1)
    _check_order(ctx, e2)
    total = 0j
    one = ctx.one
    for x in ctx.elements():
        total += char_value(ctx, e1, 1, x) * char_value(ctx, e2, 1, ctx.sub(one, x))
    return total


def orthogonality_residual(ctx: FieldContext, e: int, j: int, x: int) -> float:
    """|chi(x) - chi(-1) G(chi)/q * sum_a chi^-1(a) psi(ax)| for nontrivial chi."""
    if j % e == 0:
        raise CharError("orthogonality identity needs a nontrivial character")
    if x == ZERO:
        raise ZeroArgument("identity stated for nonzero x")
    ze = roots_of_unity(e)
    rhs = sum(ze[(-j * a) % e] * additive_char(ctx, ctx.mul(a, x)) for a in ctx.nonzero())
    chi_m1 = ze[(j * ctx.half) % e]
    rhs *= chi_m1 * gauss_sum(ctx, e, j) / ctx.q
    return abs(ze[(j * x) % e] - rhs)


# ---------------------------------------------------------------------------
# closed-form decompositions with empirically resolved sign ambiguity

FORM_ORDER8 = "order8"
FORM_ORDER4_ODD = "order4_odd"
FORM_ORDER4_EVEN = "order4_even"


@dataclass(frozen=True)
class GaussDecomposition:
    epsilon: int
    delta: int
    form: str
    m: int
    value: complex  # the matched closed-form value


def family_m(q: int, family: str) -> int:
    """m for q = 4m^2+4m+3 ('e8'), 2m^2+2m+1 ('e4') or 2m^2-1 ('scheme')."""
    if family == "e8":
        m = (isqrt(q - 2) - 1) // 2
        if 4 * m * m + 4 * m + 3 == q:
            return m
    elif family == "e4":
        m = (isqrt(2 * q - 1) - 1) // 2
        if 2 * m * m + 2 * m + 1 == q:
            return m
    elif family == "scheme":
        m = isqrt((q + 1) // 2)
        if 2 * m * m - 1 == q:
            return m
    else:
        raise CharError(f"unknown family {family!r}")
    raise CharError(f"q = {q} is not of the {family} form")


def decompose_gauss(ext: FieldContext, family: str) -> GaussDecomposition:
    """Resolve the sign pair (epsilon, delta) of the order-8 or order-4
    Gauss-sum closed form over GF(q^2) against the numeric sum."""
    if ext.subfield is None:
        raise NoSubfield("decomposition needs the quadratic tower GF(q) in GF(q^2)")
    base = ext.subfield
    q = base.q
    m = family_m(q, family)
    g_eta = gauss_sum(base, 2, 1)
    if family == "e8":
        target = gauss_sum(ext, 8, 1)
        sqrt_m2 = 1j * sqrt(2.0)
        for eps in (1, -1):
            for delta in (1, -1):
                cand = g_eta * (eps * (2 * m + 1) + delta * sqrt_m2)
                if abs(cand - target) < TOL:
                    return GaussDecomposition(eps, delta, FORM_ORDER8, m, cand)
        raise NoMatch(f"no order-8 sign pattern matches at q = {q}")
    # family e4
    target = g_eta * gauss_sum(ext, 4, 1) / q
    form = FORM_ORDER4_ODD if m % 2 else FORM_ORDER4_EVEN
    a, b = (m, m + 1) if m % 2 else (m + 1, m)
    for eps in (1, -1):
        for delta in (1, -1):
            cand = eps * a + delta * b * 1j
            if abs(cand - target) < TOL:
                return GaussDecomposition(eps, delta, form, m, cand)
    raise NoMatch(f"no order-4 sign pattern matches at q = {q}")


def check_davenport_hasse(base: FieldContext, ext: FieldContext, e: int, d: int) -> bool:
    """Lifted-character identity G_{q^d}(chi) = (-1)^(d-1) G_q(chi')^d."""
    if ext.p != base.p or ext.f != base.f * d or d < 2:
        raise CharError("ext must be the degree-d extension of base")
    _check_order(base, e)
    if e == 1:
        raise CharError("the lift identity is stated for nontrivial characters")
    _, _, t_inv = embedding_data(ext, base)
    lifted = gauss_sum(ext, e, t_inv % e)
    direct = (-1) ** (d - 1) * gauss_sum(base, e, 1) ** d
    return abs(lifted - direct) < TOL


def _restriction_is_quadratic(ext: FieldContext, e: int) -> None:
    q = ext.subfield.q
    if e // gcd(e, q + 1) != 2:
        raise CharError(f"chi_{e} does not restrict to the quadratic character of GF({q})")


def check_lemma_linear(ext: FieldContext, e: int, ell: int) -> bool:
    """Brute-force sum of chi_e(1 + omega^ell x) over x in GF(q) against its
    Gauss-sum closed form."""
    if ext.subfield is None:
        raise NoSubfield("requires the quadratic tower")
    base = ext.subfield
    q, n = base.q, ext.order
    if ell % (q + 1) == 0:
        raise CharError("ell must not be divisible by q+1")
    _check_order(ext, e)
    _restriction_is_quadratic(ext, e)
    ze = roots_of_unity(e)
    lell = ell % n
    lhs = 0j
    for x in base.elements():
        v = ext.add(ext.one, ext.mul(ext.embed(x), lell))
        lhs += ze[v % e]
    t_el = ext.sub((ell * q) % n, lell)
    rhs = (
        ze[ext.half % e]
        * gauss_sum(ext, e, 1)
        * gauss_sum(base, 2, 1)
        / q
        * ze[(-q * ell) % e]
        * ze[t_el % e]
    )
    return abs(lhs - rhs) < TOL


def check_lemma_quadratic_twist(ext: FieldContext, e: int, ell: int, s: int) -> bool:
    """Brute-force sum of chi_e(1 + omega^ell x) eta(x - s) over x != s in
    GF(q) against its closed form; s is a base-field element."""
    if ext.subfield is None:
        raise NoSubfield("requires the quadratic tower")
    base = ext.subfield
    q, n = base.q, ext.order
    if ell % (q + 1) == 0:
        raise CharError("ell must not be divisible by q+1")
    _check_order(ext, e)
    _restriction_is_quadratic(ext, e)
    ze = roots_of_unity(e)
    lell = ell % n
    lhs = 0j
    for x in base.elements():
        if x == s:
            continue
        v = ext.add(ext.one, ext.mul(ext.embed(x), lell))
        eta = -1.0 if base.sub(x, s) % 2 else 1.0
        lhs += ze[v % e] * eta
    t_el = ext.sub((ell * q) % n, lell)
    u = ext.add(ext.one, ext.mul(ext.embed(s), (ell * q) % n))  # 1 + omega^{q ell} s
    rhs = (
        gauss_sum(ext, e, 1)
        * gauss_sum(base, 2, 1)
        / q
        * ze[(-u) % e]
        * ze[t_el % e]
        - ze[lell % e]
    )
    return abs(lhs - rhs) < TOL


def clear_caches() -> None:
    gauss_periods.cache_clear()
    roots_of_unity.cache_clear()
