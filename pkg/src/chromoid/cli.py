"""Command-line interface.

Exit codes: 0 = success / all checks passed, 1 = a verification check
failed, 2 = usage or structural error.  Every command is deterministic:
identical inputs and flags produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import builders, serialization
from .coloring import (
    check_colored_category,
    check_inverse_compat,
    check_move_lemmas,
    check_schemoid,
)
from .core import FinGroupoid, validate_category, validate_groupoid
from .errors import ChromoidError, PreconditionError, SerializationError
from .functors import factor_through_quotient, groupoid_isomorphic, induced_functor, universal_functor
from .quotient import build_quotient, group_table

OK, CHECK_FAILED, USAGE_ERROR = 0, 1, 2


def _load_pair(category_path, coloring_path):
    cat = serialization.load_category(category_path)
    col = serialization.load_coloring(coloring_path, cat)
    return cat, col


def _require_groupoid(cat, path) -> FinGroupoid:
    if not isinstance(cat, FinGroupoid):
        raise SerializationError(f"{path}: an inverse table is required for this command")
    return cat


def cmd_check(args) -> int:
    cat, col = _load_pair(args.category, args.coloring)
    reports = [validate_category(cat)]
    is_groupoid = isinstance(cat, FinGroupoid)
    if is_groupoid:
        reports.append(validate_groupoid(cat))
    elif args.groupoid:
        raise SerializationError(f"{args.category}: --groupoid requires an inverse table")
    reports.append(check_colored_category(cat, col))
    if is_groupoid:
        reports.append(check_inverse_compat(cat, col))
    if args.schemoid:
        reports.append(check_schemoid(cat, col)[0])
    if args.move_lemmas:
        reports.append(check_move_lemmas(_require_groupoid(cat, args.category), col))
    if args.report:
        serialization.save_report(reports, args.report)
    for r in reports:
        print(f"{r.name}: {'pass' if r.ok else 'fail'}")
        for v in r.violations[:5]:
            print(f"  {v.rule}: {', '.join(v.witness)}")
    return OK if all(r.ok for r in reports) else CHECK_FAILED


def cmd_quotient(args) -> int:
    cat, col = _load_pair(args.category, args.coloring)
    gpd = _require_groupoid(cat, args.category)
    try:
        qr = build_quotient(gpd, col, unchecked=args.unchecked)
    except PreconditionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        for r in exc.reports:
            for v in r.violations[:5]:
                print(f"  {r.name} {v.rule}: {', '.join(v.witness)}", file=sys.stderr)
        return CHECK_FAILED
    serialization.save_category(qr.u, args.output)
    if args.map:
        serialization.save_quotient_maps(gpd, col, qr, args.map)
    print(f"quotient: {qr.u.n_objects} object(s), {qr.u.n_morphisms} morphism(s)")
    return OK


def cmd_hamming(args) -> int:
    gpd = builders.action_groupoid(args.n, args.d)
    if args.coloring == "weight":
        col = builders.hamming_coloring(gpd)
    elif args.coloring == "pi":
        col = builders.pi_coloring(gpd)
    elif args.coloring == "discrete":
        col = builders.discrete_coloring(gpd)
    else:
        col = builders.trivial_coloring(gpd)
    prefix = Path(args.output)
    category_path = prefix.with_name(prefix.name + ".category.json")
    coloring_path = prefix.with_name(prefix.name + ".coloring.json")
    serialization.save_category(gpd, category_path)
    serialization.save_coloring(gpd, col, coloring_path)
    print(
        f"wrote {category_path} ({gpd.n_objects} objects, {gpd.n_morphisms} morphisms) "
        f"and {coloring_path} ({col.n_colors} colors)"
    )
    return OK


def cmd_factor(args) -> int:
    cat, col = _load_pair(args.category, args.coloring)
    gpd = _require_groupoid(cat, args.category)
    F = serialization.load_functor(args.functor)
    qr = build_quotient(gpd, col)
    try:
        factored = factor_through_quotient(gpd, col, F, qr)
    except ChromoidError as exc:
        print(f"factorization failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    out = Path(args.output)
    quotient_cat = out.with_name(out.stem + ".quotient.category.json")
    quotient_col = out.with_name(out.stem + ".quotient.coloring.json")
    serialization.save_category(qr.u, quotient_cat)
    serialization.save_coloring(qr.u, builders.discrete_coloring(qr.u), quotient_col)
    target_refs = serialization._read(args.functor)["target"]
    serialization.save_functor(
        factored,
        out,
        {"category": quotient_cat.name, "coloring": quotient_col.name},
        target_refs,
    )
    print(f"wrote {out}")
    return OK


def cmd_induced(args) -> int:
    src_cat, src_col = _load_pair(args.source_category, args.source_coloring)
    tgt_cat, tgt_col = _load_pair(args.target_category, args.target_coloring)
    src_gpd = _require_groupoid(src_cat, args.source_category)
    tgt_gpd = _require_groupoid(tgt_cat, args.target_category)
    F = serialization.load_functor(args.functor)
    # The functor file references its own copies; rebind to the loaded pairs
    # after confirming they agree.
    if F.source_cat != src_cat or F.target_cat != tgt_cat:
        raise SerializationError(f"{args.functor}: functor endpoints do not match the given pairs")
    try:
        induced = induced_functor(src_gpd, src_col, tgt_gpd, tgt_col, F)
    except ChromoidError as exc:
        print(f"induced functor failed: {exc}", file=sys.stderr)
        return CHECK_FAILED
    out = Path(args.output)
    refs = {}
    for name, gpd in (("source", induced.source_cat), ("target", induced.target_cat)):
        cat_path = out.with_name(f"{out.stem}.{name}.category.json")
        col_path = out.with_name(f"{out.stem}.{name}.coloring.json")
        serialization.save_category(gpd, cat_path)
        serialization.save_coloring(
            gpd, builders.discrete_coloring(gpd), col_path
        )
        refs[name] = {"category": cat_path.name, "coloring": col_path.name}
    serialization.save_functor(induced, out, refs["source"], refs["target"])
    print(f"wrote {out}")
    return OK


def cmd_group(args) -> int:
    cat = serialization.load_category(args.quotient)
    gpd = _require_groupoid(cat, args.quotient)
    try:
        table = group_table(gpd)
    except ChromoidError as exc:
        print(str(exc), file=sys.stderr)
        return CHECK_FAILED
    header = " ".join(table.elements)
    print(f"elements: {header}")
    for a, row in enumerate(table.mul):
        print(f"{table.elements[a]}: " + " ".join(table.elements[b] for b in row))
    print(f"classification: {table.classification}")
    return OK


def cmd_iso(args) -> int:
    a = _require_groupoid(serialization.load_category(args.a), args.a)
    b = _require_groupoid(serialization.load_category(args.b), args.b)
    iso = groupoid_isomorphic(a, b)
    if iso is None:
        print("not isomorphic")
        return CHECK_FAILED
    f_obj, f_mor = iso
    print("isomorphic")
    print("objects: " + ", ".join(f"{a.objects[x]}->{b.objects[f_obj[x]]}" for x in range(a.n_objects)))
    print("morphisms: " + ", ".join(f"{a.morphisms[f]}->{b.morphisms[f_mor[f]]}" for f in range(a.n_morphisms)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chromoid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run axiom checks on a colored category")
    p.add_argument("category")
    p.add_argument("coloring")
    p.add_argument("--schemoid", action="store_true")
    p.add_argument("--groupoid", action="store_true")
    p.add_argument("--move-lemmas", action="store_true", dest="move_lemmas")
    p.add_argument("--report", metavar="OUT")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("quotient", help="compute the universal quotient groupoid")
    p.add_argument("category")
    p.add_argument("coloring")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--map", metavar="MAP")
    p.add_argument("--unchecked", action="store_true")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("hamming", help="generate a translation-action instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--coloring", choices=["weight", "pi", "discrete", "trivial"], default="weight")
    p.add_argument("-o", "--output", required=True, help="output path prefix")
    p.set_defaults(func=cmd_hamming)

    p = sub.add_parser("factor", help="factor a functor to a discrete target through the quotient")
    p.add_argument("category")
    p.add_argument("coloring")
    p.add_argument("functor")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("induced", help="functor induced between quotients")
    p.add_argument("source_category")
    p.add_argument("source_coloring")
    p.add_argument("target_category")
    p.add_argument("target_coloring")
    p.add_argument("functor")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_induced)

    p = sub.add_parser("group", help="print the group of a one-object quotient")
    p.add_argument("quotient")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("iso", help="test two groupoid files for isomorphism")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else OK
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except ChromoidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
