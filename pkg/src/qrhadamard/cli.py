"""Command-line surface: construct and transform matrices, verify matrix
files, list admissible parameters, and verify or search scheme partitions.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget
exhausted.  Runs are fully deterministic (fixed modulus, fixed primitive
element, ascending parameter scans) and outputs are written atomically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import association_schemes as schemes
from . import hadamard as hd
from . import intersection_sets as isets
from .character_sums import CharError, family_m
from .finite_field import FieldError, prime_power, quadratic_tower

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

_FAMILY_FORMS = {
    "q3": ("e8", lambda m: 4 * m * m + 4 * m + 3),
    "q1": ("e4", lambda m: 2 * m * m + 2 * m + 1),
    "regular": ("scheme", lambda m: 2 * m * m - 1),
}


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp_", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _resolve_q_m(args, family: str) -> tuple[int, int]:
    if (args.q is None) == (args.m is None):
        raise ValueError("give exactly one of --q and --m")
    search_family, form = _FAMILY_FORMS[family]
    if args.m is not None:
        q = form(args.m)
        m = args.m
    else:
        q = args.q
        m = family_m(q, search_family)
    prime_power(q)  # raises FieldError if not a prime power
    if form(m) != q:
        raise ValueError(f"q = {q} is not of the {family} family form")
    if family == "regular" and m % 2 == 0:
        raise ValueError("the regular family needs odd m")
    return q, m


def _report_lines(rep: hd.ExcessReport, fmt: str) -> str:
    payload = hd.report_json(rep)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True)
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(payload.items()))


def cmd_construct(args) -> int:
    family = args.family
    try:
        q, m = _resolve_q_m(args, family)
    except (ValueError, FieldError, CharError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    ext, base = quadratic_tower(q)
    search_family = _FAMILY_FORMS[family][0]

    partition = None
    if family == "regular":
        if not args.partition:
            return _fail("--partition is required for the regular family", EXIT_INPUT)
        try:
            with open(args.partition) as fh:
                partition = schemes.parse_partition(fh.read())
        except OSError as exc:
            return _fail(str(exc), EXIT_INPUT)
        except schemes.ParseError as exc:
            return _fail(str(exc), EXIT_INPUT)
        if partition.q != q or partition.m != m:
            return _fail("partition file does not match the requested q/m", EXIT_INPUT)

    params = None
    if args.ell is not None:
        tau = None
        if family == "regular":
            ok, taus, _ = schemes.eigenmatrix_vs_table1(ext, partition)
            if not ok:
                return _fail("partition fails the eigenvalue table", EXIT_VERIFY)
            tau = taus[0]
        for cand in isets.admissible_params(ext, search_family, partition=partition, tau=tau):
            if cand.ell == args.ell:
                params = cand
                break
            if cand.ell > args.ell:
                break
        if params is None:
            return _fail(f"--ell {args.ell} is not admissible for this family", EXIT_INPUT)
        if args.h is not None and params.h != args.h:
            return _fail(f"--h {args.h} conflicts with the admissible h = {params.h}", EXIT_INPUT)
    elif args.h is not None:
        return _fail("--h needs --ell", EXIT_INPUT)

    try:
        if family == "q3":
            base_matrix = hd.construct_q3(base)
            signed, rep = hd.transform_biregular_q3(ext, params)
            promise = "biregular"
        elif family == "q1":
            base_matrix = hd.construct_q1(base, "plain")
            signed, rep = hd.transform_biregular_q1(ext, params)
            promise = "biregular"
        else:
            base_matrix = hd.construct_q1(base, "negated2")
            signed, rep = hd.transform_regular(ext, partition, params)
            promise = "regular"
    except (schemes.SchemeInvalid, schemes.ProfileMismatch, hd.HadamardError) as exc:
        return _fail(str(exc), EXIT_VERIFY)

    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    prefix = os.path.join(out, f"{family}_q{q}")
    _atomic_write(prefix + "_base.mat", base_matrix.to_text())
    _atomic_write(prefix + "_transformed.mat", signed.to_text())
    _atomic_write(prefix + "_report.json", json.dumps(hd.report_json(rep), sort_keys=True) + "\n")
    print(_report_lines(rep, args.format))
    ok = rep.excess == rep.bound and rep.classification.startswith(promise)
    if not ok:
        diag = {"excess": rep.excess, "bound": rep.bound, "classification": rep.classification}
        print(json.dumps({"verification_failure": diag}, sort_keys=True), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.matrix) as fh:
            matrix = hd.SignMatrix.from_text(fh.read())
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except hd.ParseError as exc:
        return _fail(str(exc), EXIT_INPUT)
    violation = hd.hadamard_violation(matrix)
    if violation is not None:
        payload = {
            "n": matrix.n,
            "hadamard": False,
            "violating_rows": list(violation),
        }
        print(json.dumps(payload, sort_keys=True))
        return EXIT_VERIFY
    if matrix.n >= 4:
        rep = hd.excess_and_bound(matrix)
        payload = hd.report_json(rep)
    else:
        hist: dict[str, int] = {}
        for v in matrix.row_sums():
            hist[str(v)] = hist.get(str(v), 0) + 1
        payload = {"n": matrix.n, "excess": matrix.excess(), "row_sums": hist}
    payload["hadamard"] = True
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for k, v in sorted(payload.items()):
            print(f"{k}: {json.dumps(v, sort_keys=True)}")
    return EXIT_OK


def cmd_search_params(args) -> int:
    family = args.family
    try:
        m = family_m(args.q, family) if args.q is not None else args.m
        if m is None:
            raise ValueError("give --q or --m")
        forms = {"e8": "q3", "e4": "q1", "scheme": "regular"}
        ns = argparse.Namespace(q=None, m=m)
        q, m = _resolve_q_m(ns, forms[family])
    except (ValueError, FieldError, CharError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    ext, base = quadratic_tower(q)
    partition = None
    tau = None
    if family == "scheme":
        if not args.partition:
            return _fail("scheme family needs --partition", EXIT_INPUT)
        try:
            with open(args.partition) as fh:
                partition = schemes.parse_partition(fh.read())
        except (OSError, schemes.ParseError) as exc:
            return _fail(str(exc), EXIT_INPUT)
        ok, taus, _ = schemes.eigenmatrix_vs_table1(ext, partition)
        if not ok:
            return _fail("partition fails the eigenvalue table", EXIT_VERIFY)
        tau = taus[0]
    rows = []
    for choice in isets.admissible_params(ext, family, partition=partition, tau=tau):
        row = {"ell": choice.ell}
        if choice.h is not None:
            row["h"] = choice.h
        if choice.epsilon is not None:
            row["epsilon"] = choice.epsilon
            row["delta"] = choice.delta
        if choice.tau is not None:
            row["tau"] = choice.tau
        rows.append(row)
        if args.limit and len(rows) >= args.limit:
            break
    print(json.dumps(rows, sort_keys=True))
    if not rows:
        return _fail("no admissible parameters found; this contradicts the nonemptiness counts", EXIT_VERIFY)
    return EXIT_OK


def cmd_scheme(args) -> int:
    if args.search:
        try:
            ns = argparse.Namespace(q=args.q, m=args.m)
            q, m = _resolve_q_m(ns, "regular")
        except (ValueError, FieldError, CharError) as exc:
            return _fail(str(exc), EXIT_INPUT)
        ext, _ = quadratic_tower(q)
        e = args.e or 4 * m * m
        try:
            results = schemes.scheme_search(ext, e, budget=args.budget)
        except schemes.BudgetExceeded as exc:
            return _fail(str(exc), EXIT_BUDGET)
        except schemes.BadForm as exc:
            return _fail(str(exc), EXIT_INPUT)
        for part in results:
            sys.stdout.write(schemes.partition_text(part))
            sys.stdout.write("\n")
        print(f"found {len(results)} partition(s)", file=sys.stderr)
        return EXIT_OK
    if not args.verify:
        return _fail("give --verify FILE or --search", EXIT_INPUT)
    try:
        with open(args.verify) as fh:
            partition = schemes.parse_partition(fh.read())
    except (OSError, schemes.ParseError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    try:
        ext, _ = quadratic_tower(partition.q)
        report = schemes.verify_scheme(ext, partition)
    except (FieldError, schemes.BadForm) as exc:
        return _fail(str(exc), EXIT_INPUT)
    print(json.dumps(schemes.scheme_report_json(report), sort_keys=True))
    if report.is_scheme and report.table1_match:
        return EXIT_OK
    if not report.table1_match:
        for tau in (1, -1):
            failure = schemes.first_table1_failure(ext, partition, tau)
            if failure:
                i, c, got, want = failure
                print(
                    f"tau={tau}: first failing cell (Y_{i}, X_{c}): "
                    f"got {got:.6f}, expected {want:.6f}",
                    file=sys.stderr,
                )
    return EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrhadamard",
        description="Maximum-excess Hadamard matrices from quadratic residues",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build, transform and verify a matrix")
    p_con.add_argument("--family", required=True, choices=["q3", "q1", "regular"])
    p_con.add_argument("--m", type=int)
    p_con.add_argument("--q", type=int)
    p_con.add_argument("--ell", type=int)
    p_con.add_argument("--h", type=int)
    p_con.add_argument("--partition")
    p_con.add_argument("--out", default=".")
    p_con.add_argument("--format", choices=["text", "json"], default="text")
    p_con.set_defaults(func=cmd_construct)

    p_ver = sub.add_parser("verify", help="verify a matrix file and report excess")
    p_ver.add_argument("matrix")
    p_ver.add_argument("--format", choices=["text", "json"], default="json")
    p_ver.set_defaults(func=cmd_verify)

    p_sp = sub.add_parser("search-params", help="list admissible (h, ell) pairs")
    p_sp.add_argument("--family", required=True, choices=["e8", "e4", "scheme"])
    p_sp.add_argument("--q", type=int)
    p_sp.add_argument("--m", type=int)
    p_sp.add_argument("--partition")
    p_sp.add_argument("--limit", type=int)
    p_sp.set_defaults(func=cmd_search_params)

    p_sch = sub.add_parser("scheme", help="verify a partition file or search for partitions")
    p_sch.add_argument("--verify")
    p_sch.add_argument("--search", action="store_true")
    p_sch.add_argument("--q", type=int)
    p_sch.add_argument("--m", type=int)
    p_sch.add_argument("--e", type=int)
    p_sch.add_argument("--budget", type=int, default=schemes.DEFAULT_SEARCH_BUDGET)
    p_sch.set_defaults(func=cmd_scheme)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
