"""Quadratic-residue block designs, the point sets D_{l,H} cut out of GF(q)
by cyclotomic classes of GF(q^2), their intersection profiles and duals,
admissible-parameter search, and character-sum size formulas used purely as
validation oracles.

All set membership is decided by exact discrete logs; the complex formulas
never feed a construction, they only cross-check the enumerated counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import character_sums as cs
from .finite_field import ZERO, FieldContext, NoSubfield

TOL = cs.TOL


class IntersectionError(ValueError):
    pass


class WrongResidue(IntersectionError):
    pass


class BadE(IntersectionError):
    pass


class BadEll(IntersectionError):
    pass


class NotFound(IntersectionError):
    """No admissible parameter pair; signals an implementation bug."""


class BlockDesign:
    """Points, blocks as bitmasks over point indices, and block labels."""

    def __init__(self, points, blocks, block_labels):
        self.points = tuple(points)
        self.blocks = tuple(blocks)
        self.block_labels = tuple(block_labels)
        self.point_index = {p: i for i, p in enumerate(self.points)}

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def mask_of(self, members) -> int:
        mask = 0
        for p in members:
            mask |= 1 << self.point_index[p]
        return mask

    def incidence(self) -> list[list[int]]:
        """points x blocks 0/1 matrix; column i is block i's bit-vector."""
        return [[(blk >> i) & 1 for blk in self.blocks] for i in range(self.v)]

    def replication(self, point) -> int:
        i = self.point_index[point]
        return sum((blk >> i) & 1 for blk in self.blocks)


@dataclass(frozen=True)
class IntersectionSet:
    members: frozenset
    profile: tuple[tuple[int, int], ...]  # (size, multiplicity), sizes ascending
    duals: tuple[tuple[int, tuple[int, ...]], ...]  # size -> block indices

    def profile_values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.profile)

    def dual_blocks(self, *sizes) -> tuple[int, ...]:
        wanted = set(sizes)
        out = []
        for v, idxs in self.duals:
            if v in wanted:
                out.extend(idxs)
        return tuple(sorted(out))


@dataclass(frozen=True)
class ParamChoice:
    family: str  # "e8" | "e4" | "scheme"
    ell: int
    m: int
    h: int | None = None
    epsilon: int | None = None
    delta: int | None = None
    tau: int | None = None


def _squares(ctx: FieldContext) -> list[int]:
    return [k for k in ctx.nonzero() if k % 2 == 0]


def _nonsquares(ctx: FieldContext) -> list[int]:
    return [k for k in ctx.nonzero() if k % 2]


@lru_cache(maxsize=None)
def _translate_masks(ctx: FieldContext, with_zero: bool) -> tuple[int, ...]:
    """Masks of (C_0 (+ {0})) + s over canonical point indices, one per s."""
    blockbase = _squares(ctx) + ([ZERO] if with_zero else [])
    masks = []
    for s in ctx.elements():
        mask = 0
        for c in blockbase:
            mask |= 1 << ctx.canonical_index(ctx.add(c, s))
        masks.append(mask)
    return tuple(masks)


def paley_design(ctx: FieldContext) -> BlockDesign:
    """Translates of the squares-with-zero block, q = 3 mod 4."""
    if ctx.q % 4 != 3:
        raise WrongResidue(f"q = {ctx.q} is not 3 mod 4")
    pts = list(ctx.elements())
    return BlockDesign(pts, _translate_masks(ctx, True), pts)


def paired_designs(ctx: FieldContext) -> tuple[BlockDesign, BlockDesign]:
    """The two block designs on {0,1} x F_q carried by the doubled
    quadratic-residue matrix, q = 1 mod 4."""
    if ctx.q % 4 != 1:
        raise WrongResidue(f"q = {ctx.q} is not 1 mod 4")
    elems = list(ctx.elements())
    pts = [(0, x) for x in elems] + [(1, x) for x in elems]
    q = ctx.q
    cz = _translate_masks(ctx, True)
    c = _translate_masks(ctx, False)
    full = (1 << q) - 1
    ns = [full & ~m & ~(1 << ctx.canonical_index(s)) for m, s in zip(c, elems)]
    blocks1 = [czm | (cm << q) for czm, cm in zip(cz, c)]
    blocks2 = [cm | (nm << q) for cm, nm in zip(c, ns)]
    return (BlockDesign(pts, blocks1, elems), BlockDesign(pts, blocks2, elems))


def doubled_symmetric_design(ctx: FieldContext) -> BlockDesign:
    """The symmetric 2-(2q+1, q, (q-1)/2) design on a star point plus
    {0,1} x F_q, q = 1 mod 4; blocks mirror the point order."""
    if ctx.q % 4 != 1:
        raise WrongResidue(f"q = {ctx.q} is not 1 mod 4")
    elems = list(ctx.elements())
    q = ctx.q
    pts = ["star"] + [(0, x) for x in elems] + [(1, x) for x in elems]
    cz = _translate_masks(ctx, True)
    c = _translate_masks(ctx, False)
    full = (1 << q) - 1
    ns = [full & ~m & ~(1 << ctx.canonical_index(s)) for m, s in zip(c, elems)]
    star_block = full << (1 + q)
    blocks = [star_block]
    for czm, cm in zip(cz, c):
        blocks.append((czm << 1) | (cm << (1 + q)))
    for cm, nm in zip(c, ns):
        blocks.append(1 | (cm << 1) | (nm << (1 + q)))
    return BlockDesign(pts, blocks, list(pts))


def intersection_profile(members, design: BlockDesign) -> IntersectionSet:
    """Exact intersection sizes of a point set against every block."""
    mask = design.mask_of(members)
    tally: dict[int, list[int]] = {}
    for idx, blk in enumerate(design.blocks):
        c = (mask & blk).bit_count()
        tally.setdefault(c, []).append(idx)
    sizes = sorted(tally)
    return IntersectionSet(
        members=frozenset(members),
        profile=tuple((v, len(tally[v])) for v in sizes),
        duals=tuple((v, tuple(tally[v])) for v in sizes),
    )


def _validate_dlh_args(ext: FieldContext, ell: int, e: int, H) -> frozenset[int]:
    if ext.subfield is None:
        raise NoSubfield("D_{l,H} lives in a quadratic tower")
    q = ext.subfield.q
    if e < 2 or ext.order % e:
        raise BadE(f"e = {e} does not divide q^2-1")
    if e // gcd(e, q + 1) != 2:
        raise BadE(f"e = {e} does not restrict to the quadratic character")
    hset = frozenset(h % e for h in H)
    if len(hset) != e // 2 or {h % (e // 2) for h in hset} != set(range(e // 2)):
        raise BadE("H must hit every residue mod e/2 exactly once")
    if ell % (q + 1) == 0:
        raise BadEll(f"ell = {ell} is divisible by q+1")
    return hset


def build_dlh(ext: FieldContext, ell: int, e: int, H) -> frozenset[int]:
    """Points x of GF(q) with 1 + x omega^ell in the H-classes of GF(q^2)."""
    hset = _validate_dlh_args(ext, ell, e, H)
    base = ext.subfield
    lell = ell % ext.order
    members = set()
    for x in base.elements():
        v = ext.add(ext.one, ext.mul(ext.embed(x), lell))
        if v % e in hset:
            members.add(x)
    return frozenset(members)


def admissible_params(ext: FieldContext, family: str, partition=None, tau: int | None = None):
    """Yield admissible (h, ell) pairs in ascending ell, per family.

    Every condition is an exact discrete-log congruence; the sign data
    (epsilon, delta) comes from the Gauss-sum decomposition and tau from the
    scheme eigenvalue table.
    """
    if ext.subfield is None:
        raise NoSubfield("parameter search needs the quadratic tower")
    base = ext.subfield
    q, n = base.q, ext.order
    if family == "e8":
        dec = cs.decompose_gauss(ext, "e8")
        eps, delta, m = dec.epsilon, dec.delta, dec.m
        t_target = (4 + 2 * delta) % 8
        h_of = {0: 0, 6: 1, 4: 2, 2: 3}
        for ell in range(1, n):
            if ell % (q + 1) == 0 or ell % 2 == 0:
                continue
            if ext.sub((ell * q) % n, ell) % 8 != t_target:
                continue
            hp = h_of[(2 - 5 * eps * delta - ell) % 8]
            yield ParamChoice("e8", ell, m, h=hp, epsilon=eps, delta=delta)
    elif family == "e4":
        dec = cs.decompose_gauss(ext, "e4")
        eps, delta, m = dec.epsilon, dec.delta, dec.m
        for ell in range(1, n):
            if ell % (q + 1) == 0:
                continue
            h = (ell - 3) % 4
            if ext.sub((ell * q) % n, ell) % 4 != (delta * (1 + 2 * h)) % 4:
                continue
            yield ParamChoice("e4", ell, m, h=h, epsilon=eps, delta=delta)
    elif family == "scheme":
        if partition is None or tau not in (1, -1):
            raise IntersectionError("scheme family needs a partition and tau")
        m = cs.family_m(q, "scheme")
        e = partition.e
        four_m2 = 4 * m * m
        t_target = (tau * m * m) % four_m2
        classes_24 = set(partition.h_lists[1]) | set(partition.h_lists[3])
        for ell in range(1, n):
            if ell % (q + 1) == 0:
                continue
            if ell % e not in classes_24:
                continue
            if ext.sub((ell * q) % n, ell) % four_m2 != t_target:
                continue
            yield ParamChoice("scheme", ell, m, tau=tau)
    else:
        raise IntersectionError(f"unknown family {family!r}")


def find_params(ext: FieldContext, family: str, partition=None, tau: int | None = None) -> ParamChoice:
    """Smallest admissible ell with its h; NotFound signals a bug."""
    for choice in admissible_params(ext, family, partition, tau):
        return choice
    raise NotFound(f"no admissible parameters for family {family} at q = {ext.subfield.q}")


def _rounds_to(value: complex, target: int) -> bool:
    return abs(value.imag) < TOL and abs(value.real - target) < TOL


def check_size_formulas(ext: FieldContext, ell: int, e: int, H) -> bool:
    """Cross-check both size formulas and both block-count formulas against
    exact enumeration, for every shift s."""
    hset = _validate_dlh_args(ext, ell, e, H)
    base = ext.subfield
    q, n = base.q, ext.order
    members = build_dlh(ext, ell, e, H)
    hs = sorted(hset)
    ze = cs.roots_of_unity(e)
    g2 = [cs.gauss_sum(ext, e, j) for j in range(e)]
    g_eta = cs.gauss_sum(base, 2, 1)
    per2 = cs.gauss_periods(ext, e)
    chi_m1 = ze[ext.half % e]
    amp = [sum(ze[(-j * i) % e] for j in hs) for i in range(e)]
    odd = range(1, e, 2)
    lell = ell % n
    lq = (ell * q) % n
    t_el = ext.sub(lq, lell)
    t_inv = ext.inv(t_el)

    size_a = q / 2 + chi_m1 * g_eta / (e * q) * sum(
        amp[i] * g2[i] * ze[(-i * lq) % e] * ze[(i * t_el) % e] for i in odd
    )
    w = ext.mul(lq, t_inv)
    size_b = (
        q / 2
        + chi_m1 * g_eta / (2 * q)
        + chi_m1 * g_eta / q * sum(per2[(j + w) % e] for j in hs)
    )
    if not (_rounds_to(size_a, len(members)) and _rounds_to(size_b, len(members))):
        return False

    dmask = 0
    for x in members:
        dmask |= 1 << base.canonical_index(x)
    sq_masks = _translate_masks(base, False)
    xi_l = 1 if lell % e in hset else 0
    c2 = (ext.half + t_inv + lq) % n % e  # class of -T^{-1} omega^{q ell}
    minus_lq = (ext.half + lq) % n
    for si, s in enumerate(base.elements()):
        enum = (dmask & sq_masks[si]).bit_count()
        u1 = ext.add(ext.one, ext.mul(ext.embed(s), lell))  # 1 + omega^ell s
        u2 = ext.add(ext.one, ext.mul(ext.embed(s), lq))  # 1 + omega^{q ell} s
        n_a = (
            (q - 1) / 4
            - 1 / (2 * e) * sum(amp[i] * (ze[(i * u1) % e] + ze[(i * lell) % e]) for i in odd)
            + g_eta
            / (2 * e * q)
            * sum(
                amp[i]
                * g2[i]
                * ze[(i * t_el) % e]
                * (ze[(-i * u2) % e] + ze[(-i * minus_lq) % e])
                for i in odd
            )
        )
        xi_s = 1 if u1 % e in hset else 0
        c1 = ext.mul(t_inv, u2) % e
        n_b = (
            (q - 1) / 4
            + (1 - xi_s - xi_l) / 2
            + g_eta
            / (2 * q)
            * (
                1
                + sum(per2[(i + c1) % e] for i in hs)
                + sum(per2[(i + c2) % e] for i in hs)
            )
        )
        if not (_rounds_to(n_a, enum) and _rounds_to(n_b, enum)):
            return False
    return True


def theorem_e8_branches(ext: FieldContext, params: ParamChoice) -> bool:
    """Check that each measured block count lands in the branch selected by
    the order-8 character of 1 + omega^ell s."""
    base = ext.subfield
    q, n = base.q, ext.order
    m, hp = params.m, params.h
    eps_delta = params.epsilon * params.delta
    h = 2 * hp + (1 - eps_delta) // 2
    members = build_dlh(ext, params.ell, 8, [h + i for i in range(4)])
    dmask = 0
    for x in members:
        dmask |= 1 << base.canonical_index(x)
    blocks = _translate_masks(base, True)
    if eps_delta == 1:
        branch = {0: m * m + m + 2, 3: m * m + m + 2, 6: m * m + m + 2,
                  1: m * m + 2, 2: m * m + 1, 4: m * m + 1, 7: m * m + 1,
                  5: m * m + m + 1}
    else:
        branch = {1: m * m + m + 2, 4: m * m + m + 2, 6: m * m + m + 2,
                  3: m * m + 2, 0: m * m + 1, 2: m * m + 1, 5: m * m + 1,
                  7: m * m + m + 1}
    lell = params.ell % n
    for si, s in enumerate(base.elements()):
        u1 = ext.add(ext.one, ext.mul(ext.embed(s), lell))
        expected = branch[(u1 - 2 * hp) % 8]
        if (dmask & blocks[si]).bit_count() != expected:
            return False
    return True


def clear_caches() -> None:
    _translate_masks.cache_clear()
