"""Command line front end.

    anticontraction anticolimit exists|enum|antipushout CAT LEG... [--shape P]
    anticontraction antipushout CAT LEG LEG
    anticontraction contract DIAGRAM [--range a:b] [--pick i]
    anticontraction run SCRIPT [--trace FILE]

CAT is one of set, ord, pos, pre or sig (labels, with --sig).  A LEG is
``SRC->TGT:MAP`` (``:MAP`` may be dropped when the map is unique), e.g.
``2->1:00`` in ord or ``{0,1}->{0}:[0->0, 1->0]`` in set.
Exit codes: 0 ok, 1 validation failure, 2 parse error, 3 capability missing.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .anticolim import anticolimits_exist, antipushout, enumerate_anticolimits, sink
from .anticontract import contract_range, jn_poset
from .errors import KernelError, ParseError
from .fincat import FINORD, FINPOS, FINPRE, FINSET, ConcreteCategory, carrier
from .syntax import (_Parser, build_morphism, build_object, parse_diagram, parse_signature,
                     parse_term, poset_from, print_morphism, print_object)
from .util import sort_key
from .zigzag import ZigCategory

_CATS = {"set": FINSET, "ord": FINORD, "pos": FINPOS, "pre": FINPRE}


def _category(name: str, sig_text: Optional[str]):
    if name == "sig":
        if not sig_text:
            raise ParseError("category sig needs --sig")
        return parse_signature(sig_text)
    if name not in _CATS:
        raise ParseError(f"unknown category {name!r} (set, ord, pos, pre, sig)")
    return _CATS[name]


def _object(p: _Parser, cat):
    t = p.term()
    if cat is FINORD and t[0] == "word" and t[1].isdigit():
        return int(t[1])
    return build_object(t, cat)


def parse_leg(text: str, cat):
    p = _Parser(text)
    src = _object(p, cat)
    p.expect("->")
    tgt = _object(p, cat)
    if p.peek() == ":":
        p.next()
        f = build_morphism(p.term(), cat, src, tgt)
    else:
        f = build_morphism(("word", "_"), cat, src, tgt)
    p.done()
    return f


def _obj_text(x) -> str:
    return str(x) if isinstance(x, int) else print_object(x)


def print_leg(f) -> str:
    return f"{_obj_text(f.source)}->{_obj_text(f.target)}:{print_morphism(f)}"


def _anticocone_record(a) -> dict:
    d = a.extension
    free = [x for x in d.shape.topological(descending=True) if x not in d.shape.maximal]
    return {"objects": {str(x): _obj_text(d.objects[x]) for x in free},
            "arrows": {f"{a_}->{b}": print_leg(f) for (a_, b), f in sorted(d.arrows.items(), key=sort_key)
                       if a_ in free}}


def _emit(args, lines: list[str], records: list):
    if args.format == "json":
        for r in records:
            print(json.dumps(r, ensure_ascii=False, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _shape_and_sink(args, cat):
    legs = [parse_leg(t, cat) for t in args.legs]
    if not legs:
        raise ParseError("give at least one leg")
    apex = legs[0].target
    if any(f.target != apex for f in legs):
        raise ParseError("legs must share their target")
    if args.shape:
        shape = poset_from(parse_term(args.shape))
        tops = sorted(shape.maximal, key=sort_key)
        if len(tops) != len(legs):
            raise ParseError(f"shape has {len(tops)} maximal elements but {len(legs)} legs were given")
    else:
        shape = jn_poset(len(legs) - 1)
        tops = list(range(len(legs)))
    return shape, sink(cat, apex, dict(zip(tops, legs)))


def cmd_anticolimit(args) -> int:
    cat = _category(args.category, args.sig)
    if args.action == "antipushout":
        if len(args.legs) != 2:
            raise ParseError("antipushout takes exactly two legs")
        f, g = (parse_leg(t, cat) for t in args.legs)
        bound = args.bound
        if bound is None and isinstance(cat, ConcreteCategory):
            bound = max(len(carrier(f.source)), len(carrier(g.source))) + 2
        spans = antipushout(cat, f, g, bound)
        if not spans:
            _emit(args, ["none"], [])
            return 0
        lines, recs = [], []
        for a in spans:
            d = a.extension
            l0, l1 = d.arrow("e0", 0), d.arrow("e0", 1)
            lines.append(f"{print_leg(l0)} {print_leg(l1)}")
            recs.append({"apex": _obj_text(d.objects["e0"]), "legs": [print_leg(l0), print_leg(l1)]})
        _emit(args, lines, recs)
        return 0
    shape, k = _shape_and_sink(args, cat)
    if args.action == "exists":
        ex = anticolimits_exist(shape, k, args.bound)
        word = "true" if ex.exists else ("undecided" if ex.method == "bounded" else "false")
        text = f"{word} ({ex.method}" + (f", bound {ex.bound})" if ex.bound is not None else ")")
        _emit(args, [text], [{"exists": ex.exists, "method": ex.method, "bound": ex.bound}])
        return 0
    bound = args.bound
    if bound is None and isinstance(cat, ConcreteCategory):
        bound = max(len(carrier(f.source)) for f in k.legs.values()) + 2
    found = enumerate_anticolimits(shape, k, bound)
    recs = [_anticocone_record(a) for a in found]
    lines = ["; ".join([f"{x}={o}" for x, o in r["objects"].items()] + list(r["arrows"].values()))
             for r in recs] or ["none"]
    _emit(args, lines, recs)
    return 0


def cmd_antipushout(args) -> int:
    args.action = "antipushout"
    return cmd_anticolimit(args)


def cmd_contract(args) -> int:
    sig = parse_signature(args.sig) if args.sig else None
    cat, d = parse_diagram(args.diagram, sig)
    if not isinstance(cat, ZigCategory):
        raise ParseError("contract needs a zigzag literal zz[...]")
    if args.range:
        a, _, b = args.range.partition(":")
        if not a.isdigit() or not b.isdigit():
            raise ParseError("--range takes a:b")
        a, b = int(a), int(b)
    else:
        a, b = 0, len(d)
    f = contract_range(cat, d, a, b, args.pick)
    _emit(args, [print_object(f.target), print_morphism(f)],
          [{"diagram": print_object(f.target), "map": print_morphism(f)}])
    return 0


def cmd_run(args) -> int:
    from .script import parse_script, run_script

    with open(args.script, encoding="utf-8") as fh:
        script = parse_script(fh.read())
    result = run_script(script, args.bound)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(result.trace_lines())
    if args.format == "json":
        print(json.dumps({"diagram": print_object(result.diagram), "steps": len(result.trace)},
                         ensure_ascii=False, sort_keys=True))
    else:
        print(print_object(result.diagram))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="size bound for searches")
    common.add_argument("--pick", type=int, default=None, help="index among several choices")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--sig", help="signature, e.g. 'x: 0, a: 2'")

    parser = argparse.ArgumentParser(prog="anticontraction", description="Anticolimit and zigzag kernel.")
    sub = parser.add_subparsers(dest="command", required=True)

    ac = sub.add_parser("anticolimit", parents=[common], help="anticolimits of a finite sink")
    ac.add_argument("action", choices=("exists", "enum", "antipushout"))
    ac.add_argument("category")
    ac.add_argument("legs", nargs="+")
    ac.add_argument("--shape", help="poset literal; maximal elements take the legs in order")
    ac.set_defaults(func=cmd_anticolimit)

    ap = sub.add_parser("antipushout", parents=[common], help="spans completing a cospan to a pushout")
    ap.add_argument("category")
    ap.add_argument("legs", nargs=2)
    ap.add_argument("--shape", help=argparse.SUPPRESS)
    ap.set_defaults(func=cmd_antipushout)

    ct = sub.add_parser("contract", parents=[common], help="contract a zigzag")
    ct.add_argument("diagram")
    ct.add_argument("--range", help="heights a:b to contract (default: all)")
    ct.set_defaults(func=cmd_contract)

    rn = sub.add_parser("run", parents=[common], help="replay a move script")
    rn.add_argument("script")
    rn.add_argument("--trace", help="write the JSON-lines trace here")
    rn.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KernelError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
