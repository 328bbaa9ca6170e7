"""Command-line interface: enumerate, verify, construct, decide, selftest."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions, designs, feasibility, nonexistence, verify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED = 2
EXIT_BUDGET = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tightdesigns",
        description="Tight relative 2-designs on two shells of H(n,2): "
        "enumerate parameter rows, verify designs, construct and decide.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="print feasible parameter rows")
    p_enum.add_argument("--n-min", type=int, required=True)
    p_enum.add_argument("--n-max", type=int, required=True)
    p_enum.add_argument("--format", choices=("csv", "json", "table"), default="csv")

    p_verify = sub.add_parser("verify", help="run all checks on a design file")
    p_verify.add_argument("--design", required=True)
    p_verify.add_argument("--t", type=int, default=2)

    p_con = sub.add_parser("construct", help="build, verify, and save a design")
    con_sub = p_con.add_subparsers(dest="kind", required=True)
    p_had = con_sub.add_parser("hadamard", help="Hadamard pairing in H(2m,2)")
    p_had.add_argument("--m", type=int, required=True, help="m = n/2, m = 3 (mod 4)")
    p_had.add_argument("--out", required=True)
    p_sym = con_sub.add_parser("symmetric", help="split a symmetric design at a point")
    source = p_sym.add_mutually_exclusive_group(required=True)
    source.add_argument("--plane", type=int, help="projective plane order (2..5)")
    source.add_argument("--paley", type=int, help="odd prime power q = 3 (mod 4)")
    p_sym.add_argument("--variant", choices=("residual", "complemented"), default="residual")
    p_sym.add_argument("--complement", action="store_true",
                       help="use the complement of the symmetric design")
    p_sym.add_argument("--base-point", type=int, default=0)
    p_sym.add_argument("--out", required=True)

    p_decide = sub.add_parser("decide", help="run the nonexistence pipeline")
    p_decide.add_argument("--n", type=int, required=True)
    p_decide.add_argument("--row-index", type=int, help="1-based row within the n block")
    p_decide.add_argument("--budget", type=int, default=nonexistence.DEFAULT_BUDGET)
    p_decide.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("selftest", help="run the quick property suites of all modules")
    return parser


def _cmd_enumerate(args) -> int:
    rows = feasibility.enumerate_rows(args.n_min, args.n_max)
    if args.format == "csv":
        sys.stdout.write(feasibility.to_csv(rows))
    elif args.format == "json":
        sys.stdout.write(feasibility.to_json_lines(rows))
    else:
        sys.stdout.write(feasibility.to_table(rows))
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        design = designs.load(Path(args.design).read_bytes())
    except (OSError, designs.MalformedFile) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    ok = True

    moments = verify.moments_check(design, args.t)
    print(f"moments_check (t={args.t}): {'pass' if moments.ok else 'FAIL'}")
    if not moments.ok:
        j, u, lhs, rhs = moments.first_violation
        print(f"  violated at j={j}, u={u.to_string()}: {lhs} != {rhs}")
        ok = False

    balanced = verify.balanced_check(design, args.t)
    print(f"balanced_check (t={args.t}): {'pass' if balanced.ok else 'FAIL'}")
    if balanced.ok:
        shown = ", ".join(f"lambda_{j}={v}" for j, v in enumerate(balanced.lambdas))
        print(f"  {shown}")
    else:
        j, u, observed = balanced.first_violation
        print(f"  violated at j={j}, u={u.to_string()}: covering sum {observed}")
        ok = False

    try:
        tight = verify.tightness_check(design)
        print(f"tightness_check: size {tight.size} vs bound {tight.bound}: "
              f"{'tight' if tight.tight else 'NOT TIGHT'}")
        ok = ok and tight.tight
        frame = verify.frame_check(design)
        print(f"frame_check: {'pass' if frame else 'FAIL'}")
        ok = ok and frame
        relations = designs.relation_profile(design)
        print(f"relation_profile: within {sorted(relations.within_first)} / "
              f"{sorted(relations.within_second)}, between {sorted(relations.between)}"
              f" ({'coherent' if relations.is_coherent else 'NOT coherent'})")
        ok = ok and relations.is_coherent
    except (designs.WrongShellCount, verify.DegenerateShells, verify.NotTight) as exc:
        print(f"two-shell checks skipped: {exc}")
        ok = False

    constant = verify.weight_constancy_check(design)
    print(f"weight_constancy_check: {'pass' if constant else 'FAIL'}")
    ok = ok and constant
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_construct(args) -> int:
    if args.kind == "hadamard":
        try:
            if args.m % 4 != 3:
                raise constructions.BadOrder(f"m = {args.m} needs m = 3 (mod 4)")
            matrix = constructions.hadamard_of_order(args.m + 1)
            design = constructions.hadamard_design(matrix)
        except (ValueError, constructions.BadOrder, constructions.BadModulus) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MALFORMED
    else:
        try:
            if args.plane is not None:
                symmetric = constructions.projective_plane(args.plane)
            else:
                symmetric = constructions.paley_design(args.paley)
            if args.complement:
                symmetric = constructions.complement_design(symmetric)
            if args.variant == "residual":
                design = constructions.from_symmetric_residual(symmetric, args.base_point)
            else:
                design = constructions.from_symmetric_complemented(symmetric, args.base_point)
        except (ValueError, constructions.UnsupportedOrder, constructions.BadModulus,
                constructions.HalfSizeBlock, constructions.DegenerateDesign) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MALFORMED
    if not (verify.moments_check(design, 2).ok and verify.tightness_check(design).tight
            and verify.frame_check(design) and verify.weight_constancy_check(design)
            and designs.relation_profile(design).is_coherent):
        print("error: constructed design failed verification", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    Path(args.out).write_bytes(designs.save(design))
    profile = designs.shells_of(design)
    shells = ", ".join(f"X_{r}: {c} points (w={w})" for r, c, w in profile.shells)
    print(f"verified design in H({design.n},2) written to {args.out}: {shells}")
    return EXIT_OK


def _cmd_decide(args) -> int:
    budget = args.budget
    env = os.environ.get("DESIGNS_SEARCH_BUDGET")
    if env is not None:
        budget = int(env)
    rows = feasibility.enumerate_rows(args.n, args.n)
    if args.row_index is not None:
        if not 1 <= args.row_index <= len(rows):
            print(f"error: row index {args.row_index} outside 1..{len(rows)}",
                  file=sys.stderr)
            return EXIT_MALFORMED
        rows = [rows[args.row_index - 1]]
    any_undecided = False
    for i, row in enumerate(rows, start=1 if args.row_index is None else args.row_index):
        verdict = nonexistence.decide(row, budget=budget)
        any_undecided = any_undecided or verdict.undecided
        if args.format == "json":
            print(json.dumps(nonexistence.verdict_to_dict(row, verdict)))
        else:
            label = f"{row.n}({i})"
            summary = verdict.detail if not verdict.refuted else \
                f"{verdict.cause}: {verdict.detail}"
            print(f"{label} r1={row.r1} r2={row.r2} N1={row.n1} N2={row.n2} "
                  f"w={row.w}: {verdict.status.upper()} [{summary}]")
    return EXIT_BUDGET if any_undecided else EXIT_OK


def _cmd_selftest(_args) -> int:
    from . import selftest

    return EXIT_OK if selftest.run(sys.stdout) else EXIT_VERIFY_FAILED


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "enumerate": _cmd_enumerate,
        "verify": _cmd_verify,
        "construct": _cmd_construct,
        "decide": _cmd_decide,
        "selftest": _cmd_selftest,
    }[args.command]
    return handler(args)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
