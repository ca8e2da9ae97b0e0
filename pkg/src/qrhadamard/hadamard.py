"""Sign matrices, Hadamard verification, the excess bound, the two
quadratic-residue base constructions, and the row/column signing transforms
that reach maximum excess.

Rows are bit-packed (set bit = entry -1) so the O(n^3) orthogonality check
runs on word-wide popcounts; all verification is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import association_schemes as schemes
from . import character_sums as cs
from . import intersection_sets as isets
from .finite_field import FieldContext


class HadamardError(ValueError):
    pass


class NotHadamard(HadamardError):
    pass


class LengthMismatch(HadamardError):
    pass


class NotPrimePower(HadamardError):
    pass


class ParamSearchFailed(HadamardError):
    pass


class ParseError(HadamardError):
    pass


class SignMatrix:
    """n x n matrix over {+1,-1}; rows[i] bit j set means entry -1."""

    __slots__ = ("n", "rows", "labels")

    def __init__(self, n: int, rows, labels=None):
        rows = list(rows)
        if len(rows) != n or any(r >> n for r in rows) or any(r < 0 for r in rows):
            raise HadamardError("row masks inconsistent with order n")
        self.n = n
        self.rows = rows
        self.labels = tuple(labels) if labels is not None else None

    def entry(self, i: int, j: int) -> int:
        return -1 if (self.rows[i] >> j) & 1 else 1

    def row_sum(self, i: int) -> int:
        return self.n - 2 * self.rows[i].bit_count()

    def row_sums(self) -> list[int]:
        return [self.row_sum(i) for i in range(self.n)]

    def excess(self) -> int:
        return sum(self.row_sums())

    def transpose(self) -> "SignMatrix":
        n = self.n
        cols = [0] * n
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return SignMatrix(n, cols, self.labels)

    def to_text(self) -> str:
        lines = [str(self.n)]
        for r in self.rows:
            lines.append("".join("-" if (r >> j) & 1 else "+" for j in range(self.n)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SignMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty matrix file")
        try:
            n = int(lines[0].strip())
        except ValueError as exc:
            raise ParseError("first line must be the order n") from exc
        if n < 1 or len(lines) != n + 1:
            raise ParseError(f"expected {n} rows after the header")
        rows = []
        for ln in lines[1:]:
            ln = ln.strip()
            if len(ln) != n or set(ln) - {"+", "-"}:
                raise ParseError("rows must be n characters from {+,-}")
            rows.append(sum(1 << j for j, ch in enumerate(ln) if ch == "-"))
        return cls(n, rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, SignMatrix) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, tuple(self.rows)))


def is_hadamard(h: SignMatrix) -> bool:
    return hadamard_violation(h) is None


def hadamard_violation(h: SignMatrix) -> tuple[int, int] | None:
    """First row pair with nonzero dot product, or None."""
    n, rows = h.n, h.rows
    if n % 2 and n > 1:
        return (0, 1)
    half = n // 2
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            if (ri ^ rows[j]).bit_count() != half:
                return (i, j)
    return None


def bound_params(n: int) -> tuple[int, int, int, int, int]:
    """(k, t, s, bound, bound_other_branch) of the excess upper bound."""
    if n < 4:
        raise HadamardError("excess bound is stated for n >= 4")
    k = isqrt(n)
    k -= k % 2
    t = k if abs(n - k * k) < abs(n - (k + 2) ** 2) else k - 2

    def bnd(tt: int) -> int:
        s = n * ((tt + 4) ** 2 - n) // (8 * tt + 16)
        return n * (tt + 4) - 4 * s

    s = n * ((t + 4) ** 2 - n) // (8 * t + 16)
    t_alt = k - 2 if t == k else k
    return k, t, s, bnd(t), bnd(t_alt)


@dataclass(frozen=True)
class ExcessReport:
    n: int
    excess: int
    k: int
    t: int
    s: int
    bound: int
    row_sums: tuple[tuple[int, int], ...]  # (value, multiplicity), ascending
    classification: str
    bound_alt: int  # the other t-branch; equal to bound on all target orders

    @property
    def attains_bound(self) -> bool:
        return self.excess == self.bound


def excess_and_bound(h: SignMatrix) -> ExcessReport:
    """Excess, bound parameters and row-sum classification; exact integers."""
    bad = hadamard_violation(h)
    if bad is not None:
        raise NotHadamard(f"rows {bad[0]} and {bad[1]} are not orthogonal")
    n = h.n
    k, t, s, bound, bound_alt = bound_params(n)
    hist: dict[int, int] = {}
    for v in h.row_sums():
        hist[v] = hist.get(v, 0) + 1
    values = sorted(hist)
    excess = sum(v * c for v, c in hist.items())
    if sum(v * v * c for v, c in hist.items()) != n * n:
        raise AssertionError("row-sum square identity violated")  # impossible for Hadamard
    if len(values) == 1 and values[0] > 0:
        classification = f"regular(r={values[0]})"
    elif len(values) == 2 and values[0] >= 0:
        k2, k1 = values
        m1 = (n * n - n * k2 * k2) // (k1 * k1 - k2 * k2)
        m2 = n - m1
        if hist[k1] != m1 or hist[k2] != m2:
            raise AssertionError("biregular frequencies violate the counting identity")
        classification = f"biregular(k1={k1},k2={k2},m1={m1},m2={m2})"
    else:
        classification = "irregular"
    return ExcessReport(
        n=n,
        excess=excess,
        k=k,
        t=t,
        s=s,
        bound=bound,
        row_sums=tuple((v, hist[v]) for v in values),
        classification=classification,
        bound_alt=bound_alt,
    )


def report_json(rep: ExcessReport) -> dict:
    return {
        "n": rep.n,
        "excess": rep.excess,
        "k": rep.k,
        "t": rep.t,
        "s": rep.s,
        "bound": rep.bound,
        "row_sums": {str(v): c for v, c in rep.row_sums},
        "classification": rep.classification,
    }


# ---------------------------------------------------------------------------
# base constructions

def construct_q3(ctx: FieldContext) -> SignMatrix:
    """Order q+1 Hadamard matrix bordering the quadratic-residue matrix,
    q = 3 mod 4; rows/cols after the first follow the canonical field order."""
    if ctx.q % 4 != 3:
        raise isets.WrongResidue(f"q = {ctx.q} is not 3 mod 4")
    q = ctx.q
    n = q + 1
    elems = list(ctx.elements())
    nonsquares = [k for k in ctx.nonzero() if k % 2]
    rows = [1]  # first row: -1 then all ones
    for x in elems:
        mask = 0
        for d in nonsquares:
            mask |= 1 << (1 + ctx.canonical_index(ctx.add(x, d)))
        rows.append(mask)
    return SignMatrix(n, rows, ["corner"] + elems)


def construct_q1(ctx: FieldContext, variant: str = "plain") -> SignMatrix:
    """Order 2q+2 symmetric Hadamard matrix from the doubled quadratic-residue
    matrix, q = 1 mod 4; 'negated2' negates the second row and column."""
    if ctx.q % 4 != 1:
        raise isets.WrongResidue(f"q = {ctx.q} is not 1 mod 4")
    if variant not in ("plain", "negated2"):
        raise HadamardError(f"unknown variant {variant!r}")
    q = ctx.q
    n = 2 * q + 2
    elems = list(ctx.elements())
    pos = {x: ctx.canonical_index(x) for x in elems}
    # sign-mask rows of M1 = M+I, M2 = M-I, M3 = -M1 (bit set = entry -1)
    m1 = [0] * q
    m2 = [0] * q
    m3 = [0] * q
    full = (1 << q) - 1
    nonsquares = [k for k in ctx.nonzero() if k % 2]
    for x in elems:
        px = pos[x]
        neg = 0
        for d in nonsquares:
            neg |= 1 << pos[ctx.add(x, d)]
        m1[px] = neg
        m2[px] = neg | (1 << px)
        m3[px] = full ^ neg
    rows = [1 << 1]  # (1, -1, 1_q, 1_q)
    rows.append(0b11 | (full << (2 + q)))  # (-1, -1, 1_q, -1_q)
    for x in elems:
        px = pos[x]
        rows.append((m1[px] << 2) | (m2[px] << (2 + q)))
    for x in elems:
        px = pos[x]
        rows.append((1 << 1) | (m2[px] << 2) | (m3[px] << (2 + q)))
    labels = ["corner0", "corner1"] + [(0, x) for x in elems] + [(1, x) for x in elems]
    h = SignMatrix(n, rows, labels)
    if variant == "negated2":
        signs = [1] * n
        signs[1] = -1
        h = apply_signing(h, signs, signs)
    return h


def apply_signing(h: SignMatrix, row_signs, col_signs) -> SignMatrix:
    """H'[i][j] = row_signs[i] * H[i][j] * col_signs[j]."""
    n = h.n
    row_signs = list(row_signs)
    col_signs = list(col_signs)
    if len(row_signs) != n or len(col_signs) != n:
        raise LengthMismatch("sign vectors must have length n")
    if any(s not in (1, -1) for s in row_signs + col_signs):
        raise HadamardError("signs must be +1 or -1")
    col_mask = sum(1 << j for j, s in enumerate(col_signs) if s == -1)
    full = (1 << n) - 1
    rows = [
        (r ^ col_mask) ^ (full if s == -1 else 0)
        for r, s in zip(h.rows, row_signs)
    ]
    return SignMatrix(n, rows, h.labels)


# ---------------------------------------------------------------------------
# max-excess transforms

def _require_family(ext: FieldContext, family: str) -> int:
    if ext.subfield is None:
        raise NotPrimePower("transforms need the quadratic tower over GF(q)")
    try:
        return cs.family_m(ext.subfield.q, family)
    except cs.CharError as exc:
        raise NotPrimePower(str(exc)) from exc


def transform_biregular_q3(ext: FieldContext, params: isets.ParamChoice | None = None):
    """Biregular maximum-excess signing of the order q+1 matrix,
    q = 4m^2+4m+3; row sums land in {2m-2, 2m+2}."""
    m = _require_family(ext, "e8")
    base = ext.subfield
    if params is None:
        try:
            params = isets.find_params(ext, "e8")
        except isets.NotFound as exc:
            raise ParamSearchFailed(str(exc)) from exc
    h0 = 2 * params.h + (1 - params.epsilon * params.delta) // 2
    members = isets.build_dlh(ext, params.ell, 8, [h0 + i for i in range(4)])
    design = isets.paley_design(base)
    profile = isets.intersection_profile(members, design)
    allowed = {m * m + 1, m * m + 2, m * m + m + 1, m * m + m + 2}
    if len(members) != 2 * m * m + m + 2 or not set(profile.profile_values()) <= allowed:
        raise HadamardError("intersection set violates its promised profile")
    h = construct_q3(base)
    n = h.n
    col_signs = [1] * n
    for x in members:
        col_signs[1 + base.canonical_index(x)] = -1
    row_signs = [1] * n
    for b in profile.dual_blocks(m * m + m + 1, m * m + m + 2):
        row_signs[1 + b] = -1
    signed = apply_signing(h, row_signs, col_signs)
    return signed, excess_and_bound(signed)


def transform_biregular_q1(ext: FieldContext, params: isets.ParamChoice | None = None):
    """Biregular maximum-excess signing of the order 2q+2 matrix,
    q = 2m^2+2m+1; row sums {2m-2, 2m+2} for odd m, {2m, 2m+4} for even m."""
    m = _require_family(ext, "e4")
    base = ext.subfield
    q = base.q
    if params is None:
        try:
            params = isets.find_params(ext, "e4")
        except isets.NotFound as exc:
            raise ParamSearchFailed(str(exc)) from exc
    hh = params.h
    if params.epsilon * params.delta == 1:
        h_first, h_second = [hh, hh + 1], [hh + 1, hh + 2]
    else:
        h_first, h_second = [hh + 1, hh + 2], [hh, hh + 1]
    d0 = isets.build_dlh(ext, params.ell, 4, h_first)
    d1 = isets.build_dlh(ext, params.ell, 4, h_second)
    members = {(0, x) for x in d0} | {(1, x) for x in d1}
    design1, design2 = isets.paired_designs(base)
    prof1 = isets.intersection_profile(members, design1)
    prof2 = isets.intersection_profile(members, design2)
    if m % 2:
        sizes = (m * m, m * m + m)
        alphas = (m * m, m * m + 1, m * m + m, m * m + m + 1)
        betas = (m * m - 1, m * m, m * m + m - 1, m * m + m)
    else:
        sizes = (m * m, m * m + m + 1)
        alphas = (m * m, m * m + 1, m * m + m + 1, m * m + m + 2)
        betas = (m * m - 1, m * m, m * m + m, m * m + m + 1)
    if (len(d0), len(d1)) != sizes:
        raise HadamardError("intersection set sizes violate their promise")
    if not set(prof1.profile_values()) <= set(alphas):
        raise HadamardError("first design profile violates its promise")
    if not set(prof2.profile_values()) <= set(betas):
        raise HadamardError("second design profile violates its promise")
    h = construct_q1(base, "plain")
    n = h.n
    col_signs = [1] * n
    for x in d0:
        col_signs[2 + base.canonical_index(x)] = -1
    for x in d1:
        col_signs[2 + q + base.canonical_index(x)] = -1
    row_signs = [1] * n
    for b in prof1.dual_blocks(alphas[2], alphas[3]):
        row_signs[2 + b] = -1
    for b in prof2.dual_blocks(betas[2], betas[3]):
        row_signs[2 + q + b] = -1
    signed = apply_signing(h, row_signs, col_signs)
    return signed, excess_and_bound(signed)


def transform_regular(ext: FieldContext, partition, params: isets.ParamChoice | None = None):
    """Regular maximum-excess signing of the order 4m^2 matrix via a verified
    four-class partition of GF(q^2), q = 2m^2-1 with m odd."""
    m = _require_family(ext, "scheme")
    base = ext.subfield
    q = base.q
    report = schemes.verify_scheme(ext, partition)
    if not (report.is_scheme and report.table1_match):
        raise schemes.SchemeInvalid("partition fails scheme or eigenvalue-table verification")
    if params is None:
        try:
            params = isets.find_params(ext, "scheme", partition=partition, tau=report.tau)
        except isets.NotFound as exc:
            raise ParamSearchFailed(str(exc)) from exc
    d0, d1 = schemes.two_intersection_from_scheme(ext, partition, params)
    members = {(0, x) for x in d0} | {(1, x) for x in d1}
    design = isets.doubled_symmetric_design(base)
    profile = isets.intersection_profile(members, design)
    if not set(profile.profile_values()) <= {m * m - m, m * m}:
        raise HadamardError("two-intersection profile violates its promise")
    h = construct_q1(base, "negated2")
    n = h.n
    col_signs = [1] * n
    for pt in members:
        col_signs[1 + design.point_index[pt]] = -1
    row_signs = [1] * n
    for b in profile.dual_blocks(m * m):
        row_signs[1 + b] = -1
    signed = apply_signing(h, row_signs, col_signs)
    return signed, excess_and_bound(signed)
