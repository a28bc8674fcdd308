"""Command-line front end.

Exit codes: 0 success, 1 computational failure (any EngineError), 2
usage error (argparse).  `--format tsv` emits stable tab-separated rows
for scripting; the default text format is for humans.
"""

from __future__ import annotations

import argparse
import sys

from .chartab import label_sort_key, parse_label
from .errors import EngineError
from .rootsys import CartanType, build_root_system, degrees, levi_by_name, levi_representatives
from .tables import get_context, get_table


def _fmt_rows(rows, header, fmt):
    if fmt == "tsv":
        return "\n".join("\t".join(str(x) for x in r) for r in rows)
    widths = [max(len(str(r[i])) for r in ([header] + rows))
              for i in range(len(header))]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    for r in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(r, widths)))
    return "\n".join(lines)


def cmd_info(args):
    t = CartanType.parse(args.type)
    if t.is_torus:
        rows = [("order", 1), ("classes", 1), ("irreps", 1),
                ("degrees", "-"), ("positive_roots", 0)]
    else:
        rs = build_root_system(t)
        table = get_table(t, args.data)
        for fam, rank in t.components:
            get_context("%s%d" % (fam, rank))   # validates degree product
        rows = [("order", table.order),
                ("classes", len(table.classes)),
                ("irreps", len(table.irreps)),
                ("degrees", " ".join(map(str, degrees(rs)))),
                ("positive_roots", rs.n_positive)]
    print(_fmt_rows([(k, v) for k, v in rows], ("field", "value"), args.format))
    return 0


def cmd_levis(args):
    t = CartanType.parse(args.type)
    ctx = get_context(t.text)
    rows = []
    simple = ctx.rs.simple_root_indices
    pos = {idx: i for i, idx in enumerate(simple)}
    for lc in levi_representatives(ctx.rs):
        subset = "+".join(str(pos[i] + 1) for i in sorted(lc.subset)) or "-"
        rows.append((lc.name, lc.cartan_type.rank, subset))
    print(_fmt_rows(rows, ("levi", "rank", "subset"), args.format))
    return 0


def cmd_jind(args):
    from .fusion import class_fusion, embed_levi
    from .jind import j_induce_label
    from .strata import engine_for

    t = CartanType.parse(args.type)
    eng = engine_for(t, args.data)
    levi = levi_by_name(eng.rs, args.levi)
    if levi.cartan_type == t:
        parse_label(args.irrep)
        print(args.irrep)
        return 0
    emb, fus = eng.embedding(levi)
    out = j_induce_label(emb, fus, eng.table, args.irrep)
    print(out.text)
    return 0


def cmd_strata(args):
    from .strata import strata_labels

    t = CartanType.parse(args.type)
    lset = strata_labels(t, args.data)
    rows = []
    for text in lset.sorted_labels():
        chars = ",".join(str(r) for r in lset.provenance.get(text, ()))
        rows.append((text, chars))
    print(_fmt_rows(rows, ("label", "characteristics"), args.format))
    return 0


def cmd_rigid(args):
    from .strata import (bundled_characteristics, char2_decomposition_check,
                         rigid_strata, rigid_union_check, rigid_unipotent,
                         strata_to_classes)

    t = CartanType.parse(args.type)
    labels = rigid_strata(t, args.data)
    if args.as_classes:
        for name in strata_to_classes(t, labels, args.data):
            print(name)
    else:
        for text in labels:
            print(text)
    if args.per_char:
        for r in bundled_characteristics(t, args.data):
            part = rigid_unipotent(t, r, args.data)
            print("char %d rigid:\t%s" % (r, " ".join(part)))
        ok = rigid_union_check(t, args.data)
        print("union identity:\t%s" % ("ok" if ok else "FAILED"))
        if t.text == "E8":
            rep = char2_decomposition_check(t, args.data)
            print("char-2 decomposition:\textras=%s one_extra=%s "
                  "j_images_inside_char2=%s extras_never_induced=%s"
                  % (",".join(rep["extras"]), len(rep["extras"]) == 1,
                     rep["j_images_inside_char2"], rep["extras_never_induced"]))
            if not (len(rep["extras"]) == 1 and rep["j_images_inside_char2"]
                    and rep["extras_never_induced"]):
                raise EngineError("characteristic-2 decomposition check failed")
        if not ok:
            raise EngineError("rigid union identity failed for %s" % t.text)
    return 0


def cmd_unipotent_rigid(args):
    from .strata import rigid_unipotent

    t = CartanType.parse(args.type)
    for text in rigid_unipotent(t, args.char, args.data):
        print(text)
    return 0


def cmd_selftest(args):
    from .selftest import run_selftest

    return 0 if run_selftest(args.data, deep=args.deep) else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="weylstrata",
        description="Exact Weyl-group character theory: truncated induction "
                    "and rigid strata.")
    ap.add_argument("--data", default=None,
                    help="data directory (default: bundled; also "
                         "WEYLSTRATA_DATA)")
    ap.add_argument("--format", choices=("text", "tsv"), default="text")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("info", help="order, classes, irreps, degrees")
    p.add_argument("type")
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("levis", help="Levi classes with tags")
    p.add_argument("type")
    p.set_defaults(fn=cmd_levis)

    p = sub.add_parser("jind", help="truncated induction of one label")
    p.add_argument("type")
    p.add_argument("--levi", required=True)
    p.add_argument("--irrep", required=True)
    p.set_defaults(fn=cmd_jind)

    p = sub.add_parser("strata", help="strata labels with provenance")
    p.add_argument("type")
    p.set_defaults(fn=cmd_strata)

    p = sub.add_parser("rigid", help="rigid strata labels")
    p.add_argument("type")
    p.add_argument("--as-classes", action="store_true")
    p.add_argument("--per-char", action="store_true")
    p.set_defaults(fn=cmd_rigid)

    p = sub.add_parser("unipotent-rigid",
                       help="rigid unipotent classes at one characteristic")
    p.add_argument("type")
    p.add_argument("--char", type=int, required=True)
    p.set_defaults(fn=cmd_unipotent_rigid)

    p = sub.add_parser("selftest", help="full invariant suite")
    p.add_argument("--deep", action="store_true")
    p.set_defaults(fn=cmd_selftest)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except EngineError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
