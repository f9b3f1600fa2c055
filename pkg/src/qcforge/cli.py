"""qcforge command-line front end."""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import equiv, gf, lincode, qc, search

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


def _poly_pretty(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(p.bit_length() - 1, -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else ("Y" if i == 1 else f"Y^{i}"))
    return " + ".join(terms)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("QCFORGE_THREADS")
    return int(env) if env else 1


def _read_codes(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return lincode.parse_codes(fh.read())


def _cmd_factor(args) -> int:
    fact = gf.factor_cyclotomic(args.m)
    parts = [f"({_poly_pretty(g)})" for g in fact.self_reciprocal]
    for h, hs in fact.pairs:
        parts.append(f"({_poly_pretty(h)})")
        parts.append(f"({_poly_pretty(hs)})")
    print(f"Y^{args.m} - 1 = " + "".join(parts))
    for i, g in enumerate(fact.self_reciprocal, 1):
        print(f"g{i} = {gf.poly_to_str(g)}")
    for j, (h, hs) in enumerate(fact.pairs, 1):
        print(f"h{j} = {gf.poly_to_str(h)}  h{j}* = {gf.poly_to_str(hs)}")
    print(f"s={len(fact.self_reciprocal)} t={len(fact.pairs)}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    codes = _read_codes(args.infile)
    c1 = next((c for _, c in codes if isinstance(c, lincode.BinaryCode)), None)
    c2 = next((c for _, c in codes if isinstance(c, lincode.QuaternaryCode)), None)
    if c1 is None or c2 is None:
        print("input must contain one binary and one quaternary code", file=sys.stderr)
        return EXIT_VALIDATION
    code = qc.construct_cubic(qc.CubicComponents(c1=c1, c2=c2))
    text = lincode.format_code(args.name, code)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    print(f"constructed [{code.n},{code.k}] cubic code", file=sys.stderr)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    out_lines = []
    for name, code in _read_codes(args.infile):
        if not isinstance(code, lincode.BinaryCode):
            print(f"{name}: decompose expects binary codes", file=sys.stderr)
            return EXIT_VALIDATION
        parts = qc.decompose_cubic(code)
        out_lines.append(lincode.format_code(f"{name}.c1", parts.c1))
        out_lines.append(lincode.format_code(f"{name}.c2", parts.c2))
    text = "\n".join(out_lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_check(args) -> int:
    for name, code in _read_codes(args.infile):
        sd = lincode.is_self_dual(code)
        bits = [f"[{code.n},{code.k}]", f"self-dual={'yes' if sd else 'no'}"]
        if isinstance(code, lincode.BinaryCode) and args.ell:
            shape = qc.QcShape(ell=args.ell, m=code.n // args.ell)
            bits.append(
                f"quasi-cyclic(ell={args.ell})="
                f"{'yes' if qc.check_quasi_cyclic(code, shape) else 'no'}"
            )
        if sd and isinstance(code, lincode.BinaryCode) and code.k <= 26:
            w = lincode.weight_enumerator(code)
            bits.append(f"type={lincode.classify_type(w, sd).value}")
        print(f"{name}: " + " ".join(bits))
    return EXIT_OK


def _cmd_wenum(args) -> int:
    for name, code in _read_codes(args.infile):
        w = lincode.weight_enumerator(code, cap=args.cap, workers=_threads(args))
        print(f"{name}: {w.serialize()}")
    return EXIT_OK


def _cmd_mindist(args) -> int:
    for name, code in _read_codes(args.infile):
        d = lincode.min_distance(
            code, early_stop=args.early_stop, workers=_threads(args)
        )
        marker = " (upper bound)" if args.early_stop and d <= args.early_stop else ""
        print(f"{name}: d={d}{marker}")
    return EXIT_OK


def _cmd_canon(args) -> int:
    budget_hit = False
    for name, code in _read_codes(args.infile):
        if not isinstance(code, lincode.BinaryCode):
            print(f"{name}: canonicalization is for binary codes", file=sys.stderr)
            return EXIT_VALIDATION
        canon = equiv.canonicalize(code, args.budget)
        info = equiv.aut_order(code, args.budget)
        if not canon.complete:
            budget_hit = True
        aut = info.order if info.complete else "?"
        print(
            f"{name}: hash={canon.hash_hex} aut={aut} "
            f"complete={'yes' if canon.complete else 'no'}"
        )
    return EXIT_BUDGET if budget_hit else EXIT_OK


def _cmd_classify_small(args) -> int:
    census = search.classify_cubic(args.ell, budget=args.budget)
    print(f"ell={args.ell} length={3 * args.ell}")
    print(f"classes: {census.class_count}")
    for rep in sorted(census.classes, key=lambda r: (r.d, r.hash_hex)):
        print(
            f"  [{rep.code.n},{rep.code.k},{rep.d}] aut={rep.aut} "
            f"hash={rep.hash_hex} constructions={rep.count}"
        )
    if not census.complete:
        print("census incomplete: canonicalization budget exhausted")
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_search(args) -> int:
    db = search.load_component_db(args.db)
    cfg = search.SearchConfig(
        ell=args.ell,
        d_target=args.d,
        samples=args.samples,
        seed=args.seed,
        scalings=args.scalings,
        conjugation=args.conjugation,
        workers=_threads(args),
    )
    catalog = search.run_search(db, cfg)
    catalog.save(args.out)
    print(
        f"catalog: {len(catalog.records)} records from "
        f"{catalog.meta['pairs']} pairs x {cfg.samples} samples -> {args.out}"
    )
    return EXIT_OK


def _cmd_report(args) -> int:
    catalog = search.Catalog.load(args.catalog)
    print(search.catalog_report(catalog, args.length))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qcforge",
        description="binary quasi-cyclic self-dual codes: cubic construction toolkit",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factor", help="factor Y^m - 1 over GF(2)")
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=_cmd_factor)

    sp = sub.add_parser("construct", help="cubic construction from components")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out")
    sp.add_argument("--name", default="cubic")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("decompose", help="split cubic codes into components")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("check", help="self-duality / quasi-cyclicity checks")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--ell", type=int)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("wenum", help="weight enumerator")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--cap", type=int)
    sp.add_argument("--threads", type=int)
    sp.set_defaults(func=_cmd_wenum)

    sp = sub.add_parser("mindist", help="minimum distance")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--early-stop", dest="early_stop", type=int)
    sp.add_argument("--threads", type=int)
    sp.set_defaults(func=_cmd_mindist)

    sp = sub.add_parser("canon", help="canonical form and automorphism order")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--budget", type=int, default=equiv.DEFAULT_BUDGET)
    sp.set_defaults(func=_cmd_canon)

    sp = sub.add_parser("classify-small", help="exhaustive cubic classification")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--budget", type=int, default=equiv.DEFAULT_BUDGET)
    sp.set_defaults(func=_cmd_classify_small)

    sp = sub.add_parser("search", help="seeded transform search over a component db")
    sp.add_argument("--db", required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scalings", action="store_true")
    sp.add_argument("--conjugation", action="store_true")
    sp.add_argument("--threads", type=int)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("report", help="parameter coverage report for a catalog")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.set_defaults(func=_cmd_report)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except lincode.EnumerationBudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
