import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import counter_indices
from qrhadamard.finite_field import (
    ZERO,
    DivisionByZero,
    FieldError,
    NotPrime,
    TooLarge,
    ZeroHasNoLog,
    build_field,
    embedding_data,
    is_irreducible,
    minimal_polynomial,
    prime_power,
)


def brute_force_least_primitive_root(p):
    """Oracle: least integer of multiplicative order p-1 mod p."""
    for g in range(1, p):
        x, order = g, 1
        while x != 1:
            x = x * g % p
            order += 1
        if order == p - 1:
            return g
    raise AssertionError


def test_gf11_least_primitive_is_two():
    ctx = build_field(11)
    assert ctx.q == 11
    assert ctx.exp_table[1] == (2,)
    assert brute_force_least_primitive_root(11) == 2


def test_gf2_trivial_unit():
    ctx = build_field(2)
    assert ctx.order == 1
    assert ctx.exp_table[0] == (1,)
    assert ctx.add(ctx.one, ctx.one) == ZERO


def square_repeatedly(vec, modulus, p, times):
    """Oracle: square a coefficient vector by plain polynomial arithmetic."""
    poly = [c for c in vec]
    for _ in range(times):
        prod = [0] * (2 * len(poly) - 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(poly):
                prod[i + j] = (prod[i + j] + a * b) % p
        for i in range(len(prod) - 1, len(modulus) - 2, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, mc in enumerate(modulus[:-1]):
                    prod[i - len(modulus) + 1 + j] = (prod[i - len(modulus) + 1 + j] - c * mc) % p
        poly = prod[: len(modulus) - 1]
    return tuple(poly)


def test_gf289_primitive_order():
    ctx = build_field(17, 2)
    assert ctx.q == 289
    assert len(set(ctx.exp_table)) == 288
    # omega^(2^k) by independent repeated squaring: omega^256 * omega^32 = 1
    omega = ctx.exp_table[1]
    v256 = square_repeatedly(omega, ctx.spec.modulus, 17, 8)
    v32 = square_repeatedly(omega, ctx.spec.modulus, 17, 5)
    assert v256 == ctx.exp_table[256]
    assert ctx.mul(ctx.log_table[v256], ctx.log_table[v32]) == ctx.one
    # omega^144 != 1: order is exactly 288
    assert ctx.exp_table[144] != ctx.exp_table[0]


def test_build_field_errors():
    with pytest.raises(NotPrime):
        build_field(6)
    with pytest.raises(TooLarge):
        build_field(2, 25)
    with pytest.raises(FieldError):
        build_field(5, 0)


def test_mul_is_log_addition():
    ctx = build_field(13)
    assert ctx.mul(3, 5) == 8
    assert ctx.mul(10, 5) == (10 + 5) % 12


def test_additive_inverse_and_inv():
    ctx = build_field(11)
    for x in [ZERO] + counter_indices(20, ctx.order):
        assert ctx.add(x, ctx.neg(x)) == ZERO
    for k in counter_indices(20, ctx.order):
        assert ctx.inv(k) == (ctx.order - k) % ctx.order
        assert ctx.mul(k, ctx.inv(k)) == ctx.one


def test_discrete_log():
    ctx = build_field(11)
    assert ctx.discrete_log(7) == 7
    assert ctx.discrete_log(ctx.one) == 0
    # 2^6 = 64 = 9 mod 11
    assert pow(2, 6, 11) == 9
    assert ctx.from_int(9) == 6
    with pytest.raises(ZeroHasNoLog):
        ctx.discrete_log(ZERO)
    with pytest.raises(DivisionByZero):
        ctx.inv(ZERO)


def test_exp_mul_law_exhaustive_small():
    ctx = build_field(7)
    n = ctx.order
    for i in range(n):
        for j in range(n):
            assert ctx.mul(i, j) == (i + j) % n


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=287), st.integers(min_value=0, max_value=287))
def test_field_axioms_gf289(i, j):
    ctx = build_field(17, 2)
    assert ctx.add(i, j) == ctx.add(j, i)
    assert ctx.mul(i, j) == (i + j) % 288
    # distributivity against a fixed third element
    k = 57
    lhs = ctx.mul(k, ctx.add(i, j))
    rhs = ctx.add(ctx.mul(k, i), ctx.mul(k, j))
    assert lhs == rhs


def test_frobenius_is_ring_hom_200_pairs():
    ctx = build_field(3, 6)
    n = ctx.order
    pairs = zip(counter_indices(200, n, salt=1), counter_indices(200, n, salt=2))
    for a, b in pairs:
        assert ctx.frobenius(ctx.add(a, b)) == ctx.add(ctx.frobenius(a), ctx.frobenius(b))
        assert ctx.frobenius(ctx.mul(a, b)) == ctx.mul(ctx.frobenius(a), ctx.frobenius(b))


def test_rel_trace_doubles_subfield_elements(tower17):
    ext, base = tower17
    for x in [ZERO] + counter_indices(10, base.order):
        emb = ext.embed(x)
        assert ext.rel_trace(emb) == base.add(x, x)
    assert ext.rel_trace(ZERO) == ZERO


def test_rel_trace_frobenius_fixed(tower17):
    ext, base = tower17
    q = base.q
    for x in counter_indices(40, ext.order, salt=3):
        y = ext.add(x, ext.pow(x, q))
        assert y == ZERO or ext.pow(y, q) == y
        assert ext.in_subfield(y)


def test_rel_trace_linearity(tower25):
    ext, base = tower25
    for a, x, y in zip(
        counter_indices(30, base.order, salt=4),
        counter_indices(30, ext.order, salt=5),
        counter_indices(30, ext.order, salt=6),
    ):
        lhs = ext.rel_trace(ext.add(ext.mul(ext.embed(a), x), y))
        rhs = base.add(base.mul(a, ext.rel_trace(x)), ext.rel_trace(y))
        assert lhs == rhs


def test_exp_table_covers_nonzero_elements():
    for p, f in [(11, 1), (3, 3), (5, 2)]:
        ctx = build_field(p, f)
        assert len(set(ctx.exp_table)) == ctx.order
        assert ctx.exp_table[0] == (1,) + (0,) * (f - 1)
        for i, vec in enumerate(ctx.exp_table):
            assert ctx.log_table[vec] == i


def test_irreducibility_oracle():
    # x^2 - 1 factors; x^2 + 1 is irreducible mod 7 but not mod 17
    assert not is_irreducible((16, 0, 1), 17)  # x^2 - 1
    assert is_irreducible((1, 0, 1), 7)
    assert not is_irreducible((1, 0, 1), 17)  # -1 is a square mod 17


def test_minimal_polynomial_has_root():
    ctx = build_field(3, 3)
    for a in counter_indices(8, ctx.order, salt=7):
        coeffs = minimal_polynomial(ctx, a)
        acc = ZERO
        for c in reversed(coeffs):
            acc = ctx.add(ctx.mul(acc, a), ctx.from_int(c))
        assert acc == ZERO


def test_embedding_is_field_hom(tower25):
    ext, base = tower25
    for a, b in zip(counter_indices(40, base.order, salt=8), counter_indices(40, base.order, salt=9)):
        assert ext.embed(base.add(a, b)) == ext.add(ext.embed(a), ext.embed(b))
        assert ext.embed(base.mul(a, b)) == ext.mul(ext.embed(a), ext.embed(b))
        assert ext.project(ext.embed(a)) == a


def test_embedding_data_for_degree_gt_2():
    ext = build_field(5, 4)
    base = build_field(5, 1)
    nu, t, t_inv = embedding_data(ext, base)
    assert nu == (5**4 - 1) // 4
    img = (nu * t) % ext.order
    # image of the base primitive element must have order p-1
    assert ext.pow(img, 4) == ext.one
    assert ext.pow(img, 2) != ext.one


def test_prime_power_helper():
    assert prime_power(27) == (3, 3)
    assert prime_power(49) == (7, 2)
    with pytest.raises(FieldError):
        prime_power(12)


def test_canonical_order_round_trip():
    ctx = build_field(7)
    elems = list(ctx.elements())
    assert elems[0] == ZERO and elems[1] == ctx.one
    for i, x in enumerate(elems):
        assert ctx.canonical_index(x) == i
        assert ctx.element_at(i) == x
