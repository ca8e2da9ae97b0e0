"""Four-class translation association schemes on GF(q^2) from cyclotomic
partitions: structural conditions, intersection-number constancy, the first
eigenmatrix against the prescribed eigenvalue table, fusion checks, and the
two-intersection sets the schemes produce.

A partition is given by four index lists H_1..H_4 over [0, e); X_i is the
union of the cyclotomic classes C_j^(e, q^2) with j in H_i.  Index lists are
relative to this package's canonical primitive element, so files and
reported partitions are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import character_sums as cs
from . import intersection_sets as isets
from .finite_field import ZERO, FieldContext

TOL = cs.TOL
DEFAULT_SEARCH_BUDGET = 1_000_000


class SchemeError(ValueError):
    pass


class BadForm(SchemeError):
    pass


class SchemeInvalid(SchemeError):
    pass


class ProfileMismatch(SchemeError):
    pass


class BudgetExceeded(SchemeError):
    pass


class ParseError(SchemeError):
    pass


@dataclass(frozen=True)
class SchemePartition:
    q: int
    m: int
    e: int
    h_lists: tuple[tuple[int, ...], ...]  # H_1..H_4, sorted index lists

    def __post_init__(self):
        if len(self.h_lists) != 4:
            raise BadForm("expected exactly four index lists")
        seen: set[int] = set()
        for hs in self.h_lists:
            for j in hs:
                if not 0 <= j < self.e or j in seen:
                    raise BadForm("index lists must partition [0, e)")
                seen.add(j)
        if len(seen) != self.e:
            raise BadForm("index lists must partition [0, e)")

    def residue_class(self) -> tuple[int, ...]:
        """class index (1..4) of each residue mod e."""
        cls = [0] * self.e
        for i, hs in enumerate(self.h_lists, start=1):
            for j in hs:
                cls[j] = i
        return tuple(cls)


@dataclass(frozen=True)
class SchemeReport:
    is_scheme: bool
    symmetric: bool
    class_sizes: tuple[int, ...]
    intersection_numbers: tuple | None  # p[i][j][k], 5x5x5
    eigen_rows: tuple  # 5x5 complex, rows indexed by dual classes
    table1_match: bool
    tau: int | None
    tau_candidates: tuple[int, ...]


def normalized_partition(q: int, m: int, e: int, h_lists) -> SchemePartition:
    return SchemePartition(q, m, e, tuple(tuple(sorted(set(hs))) for hs in h_lists))


def example_partition(m: int) -> SchemePartition:
    """Known verified four-class partitions for m = 3 and m = 5, expressed in
    this package's canonical class labeling."""
    if m == 3:
        return normalized_partition(17, 3, 12, [(7, 11), (0, 2, 3, 10), (1, 5), (4, 6, 8, 9)])
    if m == 5:
        return normalized_partition(
            49, 5, 20,
            [(1, 10, 17, 18), (2, 4, 5, 6, 13, 19), (0, 7, 8, 11), (3, 9, 12, 14, 15, 16)],
        )
    raise BadForm(f"no stored example partition for m = {m}")


def partition_text(part: SchemePartition) -> str:
    lines = [f"{part.q} {part.m} {part.e}"]
    for hs in part.h_lists:
        lines.append(" ".join(str(j) for j in hs))
    return "\n".join(lines) + "\n"


def parse_partition(text: str) -> SchemePartition:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 5:
        raise ParseError("partition file needs a header line and four index lines")
    try:
        q, m, e = (int(v) for v in lines[0].split())
        h_lists = tuple(tuple(int(v) for v in ln.split()) for ln in lines[1:])
    except ValueError as exc:
        raise ParseError(f"malformed partition file: {exc}") from exc
    try:
        return normalized_partition(q, m, e, h_lists)
    except BadForm as exc:
        raise ParseError(str(exc)) from exc


def _check_form(ext: FieldContext, part: SchemePartition) -> None:
    if ext.subfield is None or ext.subfield.q != part.q:
        raise BadForm(f"context is not the quadratic tower over GF({part.q})")
    if part.m % 2 == 0 or 2 * part.m * part.m - 1 != part.q:
        raise BadForm("q must be 2m^2-1 with m odd")
    if part.e < 4 or ext.order % part.e:
        raise BadForm(f"e = {part.e} does not divide q^2-1")
    if (4 * part.m * part.m) % part.e:
        raise BadForm("e must divide 4m^2")
    if ext.order % (4 * part.m * part.m):
        raise AssertionError("4m^2 does not divide q^2-1; arithmetic identity broken")


def verify_structure(ext: FieldContext, part: SchemePartition) -> bool:
    """Element-level check of the shift condition X_1 = w^(2m^2) X_3,
    X_2 = w^(2m^2) X_4 and of each X_i being a union of index-4m^2 cosets."""
    _check_form(ext, part)
    cls = part.residue_class()
    e, n = part.e, ext.order
    shift = (2 * part.m * part.m) % n
    coset = (4 * part.m * part.m) % n
    want = {1: 3, 2: 4, 3: 1, 4: 2}
    for k in range(n):
        c = cls[k % e]
        if cls[(k + shift) % n % e] != want[c]:
            return False
        if cls[(k + coset) % n % e] != c:
            return False
    return True


def table1_values(m: int, g: float) -> list[list[float]]:
    """Expected first-eigenmatrix cells; g is the (real) quadratic Gauss sum
    of GF(q), rows indexed by the dual classes Y_0..Y_4, columns X_0..X_4."""
    mm = m * m
    return [
        [1, m * (mm - 1) * (m - 1), m * (mm - 1) * (m + 1), m * (mm - 1) * (m - 1), m * (mm - 1) * (m + 1)],
        [1, (mm + m - 1) / 2 - m / 2 * g, (-mm - m) / 2 - (m + 1) / 2 * g,
         (mm + m - 1) / 2 + m / 2 * g, (-mm - m) / 2 + (m + 1) / 2 * g],
        [1, (-mm + m) / 2 - (m - 1) / 2 * g, (mm - m - 1) / 2 + m / 2 * g,
         (-mm + m) / 2 + (m - 1) / 2 * g, (mm - m - 1) / 2 - m / 2 * g],
        [1, (mm + m - 1) / 2 + m / 2 * g, (-mm - m) / 2 + (m + 1) / 2 * g,
         (mm + m - 1) / 2 - m / 2 * g, (-mm - m) / 2 - (m + 1) / 2 * g],
        [1, (-mm + m) / 2 + (m - 1) / 2 * g, (mm - m - 1) / 2 - m / 2 * g,
         (-mm + m) / 2 - (m - 1) / 2 * g, (mm - m - 1) / 2 + m / 2 * g],
    ]


def _dual_residues(part: SchemePartition, q: int, tau: int) -> list[tuple[int, ...]]:
    """Residue lists of Y_i = w^(-m^2 tau) X_i^q for i = 1..4."""
    e, m = part.e, part.m
    return [
        tuple(sorted({(j * q - m * m * tau) % e for j in hs}))
        for hs in part.h_lists
    ]


def _eigen_row_values(part: SchemePartition, periods, residue: int) -> list[complex]:
    """psi(a X_c) for a in the class of the given residue, c = 0..4."""
    e = part.e
    row: list[complex] = [1 + 0j]
    for hs in part.h_lists:
        row.append(sum(periods[(j + residue) % e] for j in hs))
    return row


def eigenmatrix_vs_table1(ext: FieldContext, part: SchemePartition):
    """(table1_match, matching taus, eigen rows).

    For each tau, every a in each dual class Y_i is covered: psi(a X_c)
    depends on a only through its class index mod e, and all residues of
    Y_i are checked, so the constancy test is exhaustive over GF(q^2)*.
    """
    _check_form(ext, part)
    base = ext.subfield
    q, e, m = part.q, part.e, part.m
    periods = cs.gauss_periods(ext, e)
    g_eta = cs.gauss_sum(base, 2, 1)
    if abs(g_eta.imag) > TOL:
        raise AssertionError("quadratic Gauss sum is not real at q = 1 mod 4")
    expected = table1_values(m, g_eta.real)
    valency = ext.order // e
    class_sizes = (1,) + tuple(len(hs) * valency for hs in part.h_lists)
    matches = []
    eigen_by_tau = {}
    for tau in (1, -1):
        ylists = _dual_residues(part, q, tau)
        eigen = [[1 + 0j] + [complex(sz) for sz in class_sizes[1:]]]
        ok = all(
            abs(eigen[0][c] - expected[0][c]) < TOL for c in range(5)
        )
        for i, ylist in enumerate(ylists, start=1):
            if not ylist:  # empty class: no eigenvalue row to match
                ok = False
                eigen.append([0j] * 5)
                continue
            rows = [_eigen_row_values(part, periods, r) for r in ylist]
            first = rows[0]
            for other in rows[1:]:
                if any(abs(a - b) > TOL for a, b in zip(first, other)):
                    ok = False
            if any(abs(first[c] - expected[i][c]) > TOL for c in range(5)):
                ok = False
            eigen.append(first)
        eigen_by_tau[tau] = tuple(tuple(row) for row in eigen)
        if ok:
            matches.append(tau)
    taus = tuple(matches)
    eigen_rows = eigen_by_tau[taus[0]] if taus else eigen_by_tau[1]
    return bool(taus), taus, eigen_rows


def first_table1_failure(ext: FieldContext, part: SchemePartition, tau: int):
    """(row, col, got, expected) of the first failing eigenvalue cell for tau,
    or None when every cell matches."""
    _check_form(ext, part)
    base = ext.subfield
    periods = cs.gauss_periods(ext, part.e)
    expected = table1_values(part.m, cs.gauss_sum(base, 2, 1).real)
    valency = ext.order // part.e
    sizes = [1] + [len(hs) * valency for hs in part.h_lists]
    for c in range(5):
        if abs(sizes[c] - expected[0][c]) > TOL:
            return (0, c, complex(sizes[c]), expected[0][c])
    for i, ylist in enumerate(_dual_residues(part, part.q, tau), start=1):
        for r in ylist:
            row = _eigen_row_values(part, periods, r)
            for c in range(5):
                if abs(row[c] - expected[i][c]) > TOL:
                    return (i, c, row[c], expected[i][c])
    return None


def _convolution_counts(ext: FieldContext, cls, e: int, w: int) -> list[list[int]]:
    """counts[i][j] = #{(u, v) in X_i x X_j : u + v = w}."""
    counts = [[0] * 5 for _ in range(5)]
    cu = 0  # class of u = ZERO
    for u in ext.elements():
        if u != ZERO:
            cu = cls[u % e]
        else:
            cu = 0
        v = ext.sub(w, u)
        cv = 0 if v == ZERO else cls[v % e]
        counts[cu][cv] += 1
    return counts


def verify_scheme(ext: FieldContext, part: SchemePartition, exhaustive: bool = False) -> SchemeReport:
    """Intersection-number constancy plus the eigenvalue-table check.

    By default one representative per cyclotomic class inside each X_k is
    convolved (counts are constant on each class because every X_i is a
    union of classes); exhaustive=True sweeps every w instead.
    """
    structure_ok = verify_structure(ext, part)
    cls = part.residue_class()
    e, n = part.e, ext.order
    valency = n // e
    class_sizes = (1,) + tuple(len(hs) * valency for hs in part.h_lists)
    symmetric = all(cls[(r + ext.half) % n % e] == cls[r % e] for r in range(e))
    tensor: list[list[list[int]]] | None = [[[0] * 5 for _ in range(5)] for _ in range(5)]
    is_scheme = structure_ok and symmetric
    # k = 0: u + v = 0
    zero_counts = _convolution_counts(ext, cls, e, ZERO)
    for i in range(5):
        for j in range(5):
            tensor[i][j][0] = zero_counts[i][j]
    for k in range(1, 5):
        if exhaustive:
            witnesses = [w for w in range(n) if cls[w % e] == k]
        else:
            witnesses = [r for r in range(e) if cls[r] == k]
        ref = None
        for w in witnesses:
            counts = _convolution_counts(ext, cls, e, w)
            if ref is None:
                ref = counts
            elif counts != ref:
                is_scheme = False
                break
        if ref is None:  # empty class: not a four-class scheme
            is_scheme = False
            continue
        for i in range(5):
            for j in range(5):
                tensor[i][j][k] = ref[i][j]
    table1_match, taus, eigen_rows = eigenmatrix_vs_table1(ext, part)
    return SchemeReport(
        is_scheme=is_scheme,
        symmetric=symmetric,
        class_sizes=class_sizes,
        intersection_numbers=tuple(tuple(tuple(col) for col in row) for row in tensor) if is_scheme else None,
        eigen_rows=eigen_rows,
        table1_match=table1_match,
        tau=taus[0] if taus else None,
        tau_candidates=taus,
    )


def bannai_muzychuk_check(eigen_rows, groups) -> bool:
    """Fusion criterion: grouping columns of the first eigenmatrix by the
    given partition (group 0 = {0}) admits a matching row partition with
    constant block row sums iff the distinct row signatures are no more
    numerous than the groups."""
    groups = [tuple(g) for g in groups]
    flat = sorted(j for g in groups for j in g)
    if flat != list(range(len(eigen_rows[0]))) or groups[0] != (0,):
        raise SchemeError("groups must partition the column set with group 0 = {0}")
    signatures: list[tuple[complex, ...]] = []
    for row in eigen_rows:
        signatures.append(tuple(sum(row[j] for j in g) for g in groups))
    clusters: list[tuple[complex, ...]] = []
    for sig in signatures:
        if not any(all(abs(a - b) < TOL for a, b in zip(sig, c)) for c in clusters):
            clusters.append(sig)
    return len(clusters) <= len(groups)


def two_intersection_from_scheme(ext: FieldContext, part: SchemePartition, params: isets.ParamChoice):
    """The pair of point sets cut out of GF(q) by S_0, S_1; verified to give
    a two-intersection set with sizes (m^2-m, m^2)."""
    _check_form(ext, part)
    base = ext.subfield
    m, e = part.m, part.e
    h1, h2, h3, h4 = part.h_lists
    r = params.ell % e
    if r in h2:
        s0, s1 = h1 + h4, h1 + h2
    elif r in h4:
        s0, s1 = h2 + h3, h3 + h4
    else:
        raise isets.BadEll("omega^ell must lie in X_2 or X_4")
    d0 = isets.build_dlh(ext, params.ell, e, s0)
    d1 = isets.build_dlh(ext, params.ell, e, s1)
    if (len(d0), len(d1)) != (m * m - m, m * m):
        raise ProfileMismatch(f"sizes {(len(d0), len(d1))} != {(m*m-m, m*m)}")
    members = {(0, x) for x in d0} | {(1, x) for x in d1}
    design = isets.doubled_symmetric_design(base)
    profile = isets.intersection_profile(members, design)
    if not set(profile.profile_values()) <= {m * m - m, m * m}:
        raise ProfileMismatch(f"profile {profile.profile_values()} escapes {{m^2-m, m^2}}")
    return d0, d1


def scheme_search(ext: FieldContext, e: int, budget: int = DEFAULT_SEARCH_BUDGET) -> list[SchemePartition]:
    """Best-effort enumeration of partitions satisfying the shift symmetry,
    filtered through the eigenvalue table and then full verification."""
    if ext.subfield is None:
        raise BadForm("search needs the quadratic tower")
    q = ext.subfield.q
    m = cs.family_m(q, "scheme")
    if m % 2 == 0:
        raise BadForm("m must be odd")
    if e < 4 or e % 2 or ext.order % e or (4 * m * m) % e:
        raise BadForm(f"e = {e} must be even and divide both 4m^2 and q^2-1")
    shift = (2 * m * m) % e
    if shift != e // 2:
        return []  # the shift collapses; condition (1) cannot hold disjointly
    half = e // 2
    size1_num = e * (m - 1)
    if size1_num % (4 * m):
        return []
    size1 = size1_num // (4 * m)
    periods = cs.gauss_periods(ext, e)
    g_eta = cs.gauss_sum(ext.subfield, 2, 1).real
    expected = table1_values(m, g_eta)
    found = []
    examined = 0
    for assign in itertools.product(range(4), repeat=half):
        examined += 1
        if examined > budget:
            raise BudgetExceeded(f"search budget {budget} exhausted")
        if sum(1 for a in assign if a < 2) != size1:
            continue
        lists: list[list[int]] = [[], [], [], []]
        for r, a in enumerate(assign):
            if a == 0:
                lists[0].append(r)
                lists[2].append(r + half)
            elif a == 1:
                lists[2].append(r)
                lists[0].append(r + half)
            elif a == 2:
                lists[1].append(r)
                lists[3].append(r + half)
            else:
                lists[3].append(r)
                lists[1].append(r + half)
        part = normalized_partition(q, m, e, lists)
        ok_tau = None
        for tau in (1, -1):
            ok = True
            for i, ylist in enumerate(_dual_residues(part, q, tau), start=1):
                for r in ylist:
                    row = _eigen_row_values(part, periods, r)
                    if any(abs(row[c] - expected[i][c]) > TOL for c in range(5)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                ok_tau = tau
                break
        if ok_tau is None:
            continue
        report = verify_scheme(ext, part)
        if report.is_scheme and report.table1_match:
            found.append(part)
    return sorted(found, key=lambda p: p.h_lists)


def scheme_report_json(report: SchemeReport) -> dict:
    return {
        "is_scheme": report.is_scheme,
        "tau": report.tau,
        "class_sizes": list(report.class_sizes),
        "eigenmatrix": [[[z.real, z.imag] for z in row] for row in report.eigen_rows],
        "table1_match": report.table1_match,
    }
