"""Command-line interface.  Exit codes: 0 success, 1 negative verdict, 2 usage or input error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import completion, constructions, fileformat
from .errors import KleeneError
from .involution import InvolutivePoset, classify
from .morphisms import find_isomorphism
from .poset import dual, interval, is_distributive
from .representability import SearchConfig, search_general, search_odd

MODE_NAMES = {"odd": "odd_complete", "subposet": "subposet", "exhaustive": "exhaustive"}


class Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text.rstrip("\n"))


def _entry(args, path=None, name=None):
    pf = fileformat.load(path or args.file)
    name = name if name is not None else getattr(args, "poset", None)
    return pf[name] if name else pf.only()


def _write_or_print(args, text: str):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- check ---------------------------------------------------------------------


def verdict_line(K) -> str:
    if not isinstance(K, InvolutivePoset):
        return "poset without involution"
    c = classify(K)
    if c.boolean and c.ortho:
        return "Boolean poset (Kleene poset)"
    if c.kleene:
        return "Kleene poset"
    if c.pseudo_kleene:
        return "pseudo-Kleene poset"
    return "poset with antitone involution (not pseudo-Kleene)"


def cmd_check(args):
    e = _entry(args)
    X = e.structure
    P = e.poset
    payload = {"poset": e.name, "size": len(P), "verdict": verdict_line(X)}
    lines = [f"poset {e.name}: {len(P)} elements"]
    if isinstance(X, InvolutivePoset):
        c = classify(X)
        payload.update(c.flags())
        payload["fixed_points"] = sorted(c.fixed_points.labels, key=P.idx)
        for k, v in c.flags().items():
            lines.append(f"  {k:<14}{'yes' if v else 'no'}")
        fp = payload["fixed_points"]
        lines.append(f"  fixed points  {', '.join(fp) if fp else 'none'}")
    else:
        d = is_distributive(P)
        payload["distributive"] = d
        lines.append(f"  distributive  {'yes' if d else 'no'}")
    lines.append(payload["verdict"])
    _emit(args, "\n".join(lines), payload)


# -- construct -----------------------------------------------------------------


def cmd_construct(args):
    pf = fileformat.load(args.file)
    op = args.op
    names = args.posets or ([args.poset] if args.poset else [pf.only().name])
    ents = [pf[n] for n in names]
    need = {"osum2": 2, "osum3": 3}.get(op)
    if need and len(ents) != need:
        raise Exit(_usage(f"{op} needs {need} posets via --posets"))
    first = ents[0]
    sets = {}
    if op == "twist":
        result = constructions.twist_product(first.poset)
    elif op == "ps":
        S = _resolve_set(first, args.set)
        result = constructions.ps_construct(first.poset, S)
    elif op == "osum2":
        if len(args.at or []) != 1:
            raise Exit(_usage("osum2 needs one --at point"))
        result = constructions.ordinal_sum2(ents[0].poset, args.at[0], ents[1].poset)
    elif op == "osum3":
        if len(args.at or []) != 2:
            raise Exit(_usage("osum3 needs two --at points"))
        a, b = args.at
        result = constructions.ordinal_sum3(ents[0].poset, a, ents[1].poset, b, ents[2].poset)
    elif op == "product":
        if all(e.involution is not None for e in ents):
            result = constructions.product_involution([e.involution for e in ents])
        else:
            result = constructions.direct_product([e.poset for e in ents])
    elif op == "dual":
        result = dual(first.poset)
        if first.involution is not None:
            result = InvolutivePoset(result, first.involution.inv)
    elif op == "interval":
        if not (args.lo and args.hi):
            raise Exit(_usage("interval needs --lo and --hi"))
        result = interval(first.poset, args.lo, args.hi)
    else:  # pragma: no cover - argparse restricts choices
        raise Exit(_usage(f"unknown construction {op}"))
    name = args.name or f"{op}_{first.name}"
    _write_or_print(args, fileformat.format_entry(fileformat.entry(name, result, sets)))


def _resolve_set(e, spec: str | None):
    if not spec:
        raise Exit(_usage("--set is required"))
    if spec in e.sets:
        return e.sets[spec]
    return e.poset.subset([x for x in spec.split(",") if x])


def _usage(msg: str) -> int:
    print(f"usage error: {msg}", file=sys.stderr)
    return 2


# -- complete / compare-dm -----------------------------------------------------


def cmd_complete(args):
    e = _entry(args)
    build = completion.dm_completion if args.kind == "dm" else completion.g_completion
    lat = build(e.poset)
    if args.involution:
        if e.involution is None:
            raise Exit(_usage(f"poset {e.name} has no involution"))
        lat = completion.bot_involution(lat, e.involution)
    P = e.poset
    members = [(lat.label(m), sorted(P.names(m), key=P.idx)) for m in lat.closed_sets]
    principal = {x: lat.label(lat.closed_sets[k]) for x, k in zip(P.labels, lat.principal)}
    payload = {"kind": args.kind, "size": len(lat),
               "members": {k: v for k, v in members}, "principal": principal}
    lines = [f"{args.kind.upper()}({e.name}): {len(lat)} members"]
    for lab, elems in members:
        lines.append(f"  {lab:<20} = {{{', '.join(elems)}}}")
    lines.append("principal embedding:")
    for x, lab in principal.items():
        lines.append(f"  {x} -> {lab}")
    if lat.bot_involution is not None:
        bot = {lat.label(m): lat.label(lat.closed_sets[lat.bot_involution[k]])
               for k, m in enumerate(lat.closed_sets)}
        payload["bot"] = bot
        lines.append("involution X -> L(X'):")
        for k, v in bot.items():
            lines.append(f"  {k} -> {v}")
    _emit(args, "\n".join(lines), payload)


def cmd_compare_dm(args):
    e = _entry(args)
    S = _resolve_set(e, args.set)
    r = completion.dm_ps_compare(e.poset, S)
    payload = {"verdict": r.verdict, "left_size": len(r.left), "right_size": len(r.right),
               "witness": r.witness.as_dict() if r.witness else None}
    lines = [f"DM(P_S(A)): {len(r.left)} elements",
             f"P_L(S)(DM(A)): {len(r.right)} elements", r.verdict]
    _emit(args, "\n".join(lines), payload)
    if not r.isomorphic:
        raise Exit(1)


# -- represent -----------------------------------------------------------------


def cmd_represent(args):
    pf = fileformat.load(args.file)
    e = pf[args.poset] if args.poset else pf.only()
    if e.involution is None:
        raise Exit(_usage(f"poset {e.name} has no involution"))
    universe = pf[args.universe].poset if args.universe else None
    cfg = SearchConfig(mode=MODE_NAMES[args.mode], max_carrier_size=args.max_size,
                       parallel_partitions=args.partitions, universe=universe)
    K = e.involution
    r = search_odd(K, cfg) if cfg.mode == "odd_complete" else search_general(K, cfg)
    qualifier = {"odd_complete": "odd-complete", "subposet": "subposet search",
                 "exhaustive": "exhaustive search"}[cfg.mode]
    status = r.status
    lines = [f"{status} ({qualifier})",
             f"candidates examined: {r.candidates_examined}",
             f"elapsed: {r.elapsed:.3f}s"]
    for n in r.notes:
        lines.append(f"note: {n}")
    if r.representable:
        lines.append("--- witness ---")
        lines.append(fileformat.format_entry(
            fileformat.entry("A", r.A, {"S": r.S})).rstrip("\n"))
        for x, y in r.iso.as_dict().items():
            lines.append(f"map {x} {y}")
        lines.append("--- end witness ---")
    payload = {"status": status, "mode": cfg.mode, "bounds": r.bounds,
               "candidates_examined": r.candidates_examined, "elapsed": r.elapsed,
               "notes": list(r.notes), "witness": r.witness()}
    _emit(args, "\n".join(lines), payload)
    if not r.representable:
        raise Exit(1)


# -- iso / export ----------------------------------------------------------------


def cmd_iso(args):
    a = _entry(args, args.file_a, args.poset_a)
    b = _entry(args, args.file_b, args.poset_b)
    if args.involution:
        if a.involution is None or b.involution is None:
            raise Exit(_usage("--involution needs both posets to carry one"))
        f = find_isomorphism(a.involution, b.involution, respect_involution=True)
    else:
        f = find_isomorphism(a.poset, b.poset)
    if f is None:
        _emit(args, "not isomorphic", {"isomorphic": False})
        raise Exit(1)
    lines = ["isomorphic"] + [f"  {x} -> {y}" for x, y in f.as_dict().items()]
    _emit(args, "\n".join(lines), {"isomorphic": True, "witness": f.as_dict()})


def cmd_export(args):
    e = _entry(args)
    _write_or_print(args, fileformat.to_dot(e.name, e.structure))


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="kleeneposet",
                                description="Finite posets, antitone involutions and Kleene structures.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="classify a poset")
    c.add_argument("file")
    c.add_argument("--poset")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", parents=[common], help="build a new poset")
    c.add_argument("op", choices=["twist", "ps", "osum2", "osum3", "product", "dual", "interval"])
    c.add_argument("file")
    c.add_argument("--poset")
    c.add_argument("--posets", nargs="+", help="operands for osum2/osum3/product")
    c.add_argument("--set", help="named set of the poset, or comma-separated ids")
    c.add_argument("--at", nargs="+", help="gluing points for ordinal sums")
    c.add_argument("--lo")
    c.add_argument("--hi")
    c.add_argument("--name", help="name of the output poset")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("complete", parents=[common], help="DM or G completion")
    c.add_argument("kind", choices=["dm", "g"])
    c.add_argument("file")
    c.add_argument("--poset")
    c.add_argument("--involution", action="store_true")
    c.set_defaults(func=cmd_complete)

    c = sub.add_parser("compare-dm", parents=[common], help="DM(P_S(A)) against P over DM(A)")
    c.add_argument("file")
    c.add_argument("--poset")
    c.add_argument("--set", required=True)
    c.set_defaults(func=cmd_compare_dm)

    c = sub.add_parser("represent", parents=[common], help="search for A, S with K = P_S(A)")
    c.add_argument("file")
    c.add_argument("--poset")
    c.add_argument("--mode", choices=list(MODE_NAMES), default="subposet")
    c.add_argument("--max-size", type=int, default=None)
    c.add_argument("--partitions", type=int, default=1)
    c.add_argument("--universe", help="poset in the same file whose subposets are searched")
    c.set_defaults(func=cmd_represent)

    c = sub.add_parser("iso", parents=[common], help="isomorphism between two posets")
    c.add_argument("file_a")
    c.add_argument("file_b")
    c.add_argument("--poset-a")
    c.add_argument("--poset-b")
    c.add_argument("--involution", action="store_true")
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("export", parents=[common], help="export a Hasse diagram")
    c.add_argument("format", choices=["dot"])
    c.add_argument("file")
    c.add_argument("--poset")
    c.add_argument("--out")
    c.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "represent" and args.partitions < 1:
        parser.error("--partitions must be positive")
    try:
        args.func(args)
    except Exit as e:
        return e.code
    except (KleeneError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
