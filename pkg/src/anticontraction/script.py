"""Move scripts: replay contraction and anticontraction steps with a trace.

A script is line based; ``#`` starts a comment::

    signature x: 0, α: 2, β: 2
    diagram zz[...]
    contract 0:2 pick=0
    anticontract 0/0 sink=[zz[x | α | x] @ <0> ; zz[x | α | x | β | x] @ <01>] pick=0
    expect zz[...]

The state is a proof: an (n+1)-diagram that grows by one cospan per move,
whose last regular slice is the current n-diagram.  ``contract a:b``
appends D -> S <- S where S contracts heights a..b-1 of D into one;
``anticontract`` appends D -> D <- D' where D' -> D is the recursive
anticontraction of the cell at the given path.  ``bound=`` takes one
number or a comma list (outer level first).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from .anticontract import contract_range, recursive_anticontract, round_trip
from .errors import KernelError, MoveError, ParseError
from .fincat import Category, LabelPoset
from .syntax import (_Parser, build_morphism, build_object, leaf_category, parse_signature,
                     parse_term, print_object, zz_depth)
from .zigzag import ZigCategory, Zigzag, restrict_map, zig_tower


def diagram_hash(d) -> str:
    return hashlib.sha256(print_object(d).encode("utf-8")).hexdigest()


@dataclass
class Command:
    line: int
    verb: str
    text: str
    args: dict = field(default_factory=dict)


@dataclass
class MoveScript:
    signature: Optional[LabelPoset]
    diagram_text: str
    commands: list
    diagram_line: int = 0


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _path(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split("/")]
    except ValueError:
        raise ParseError(f"bad path {text!r}: expected heights like 0/1/0") from None


def _options(p: _Parser) -> dict:
    out = {}
    while p.peek() is not None:
        key = p.next()
        p.expect("=")
        if key == "sink":
            p.expect("[")
            legs = []
            while True:
                obj = p.term()
                p.expect("@")
                legs.append((obj, p.term()))
                sep = p.next()
                if sep == "]":
                    break
                if sep != ";":
                    raise ParseError(f"expected ';' or ']' in sink, found {sep!r}")
            out["sink"] = legs
        elif key in ("pick", "bound"):
            nums = [p.next()]
            while p.peek() == ",":
                p.next()
                nums.append(p.next())
            if not all(n.isdigit() for n in nums):
                raise ParseError(f"{key} takes natural numbers")
            vals = [int(n) for n in nums]
            if key == "pick" and len(vals) != 1:
                raise ParseError("pick takes a single index")
            out[key] = vals[0] if len(vals) == 1 else tuple(vals)
        else:
            raise ParseError(f"unknown option {key!r}")
    return out


def parse_script(text: str) -> MoveScript:
    sig, diagram, diagram_line, commands = None, None, 0, []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        verb, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if verb in ("signature", "sig"):
                if sig is not None:
                    raise ParseError("signature given twice")
                sig = parse_signature(rest)
            elif verb == "diagram":
                if diagram is not None:
                    raise ParseError("diagram given twice")
                parse_term(rest)
                diagram, diagram_line = rest, no
            elif verb in ("contract", "anticontract"):
                target, _, opts = rest.partition(" ")
                if not target:
                    raise ParseError(f"{verb} needs a target")
                args = {"target": target}
                args.update(_options(_Parser(opts)))
                if verb == "anticontract":
                    args["path"] = _path(target)
                    if "sink" not in args:
                        raise ParseError("anticontract needs sink=[...]")
                else:
                    a, sep, b = target.partition(":")
                    if not a.isdigit() or (sep and not b.isdigit()):
                        raise ParseError(f"bad range {target!r}: expected a:b")
                    args["range"] = (int(a), int(b) if sep else int(a) + 1)
                    if "sink" in args:
                        raise ParseError("contract takes no sink")
                commands.append(Command(no, verb, line, args))
            elif verb == "expect":
                parse_term(rest)
                commands.append(Command(no, verb, line, {"literal": rest}))
            else:
                raise ParseError(f"unknown command {verb!r}")
        except ParseError as e:
            raise ParseError(f"line {no}: {e}") from None
    if diagram is None:
        raise ParseError("script has no diagram line")
    return MoveScript(sig, diagram, commands, diagram_line)


@dataclass
class Result:
    category: Category
    diagram: Zigzag
    proof: Zigzag
    trace: list

    def trace_lines(self) -> str:
        return "".join(json.dumps(t, ensure_ascii=False, sort_keys=True) + "\n" for t in self.trace)


def _addressed(cat: Category, d, path):
    for depth, h in enumerate(path):
        if not isinstance(cat, ZigCategory) or not isinstance(d, Zigzag):
            raise MoveError(f"path {'/'.join(map(str, path))} is deeper than the diagram")
        if not 0 <= h < len(d):
            raise MoveError(f"height {h} at depth {depth} is out of range (length {len(d)})")
        cat, d = cat.base, d.singulars[h]
    return cat, d


def run_script(script: MoveScript, bound=None) -> Result:
    """Replay a script; the first failing command raises, naming its step."""
    t = parse_term(script.diagram_text)
    cat = zig_tower(leaf_category(t, script.signature), zz_depth(t))
    d = build_object(t, cat)
    if not isinstance(cat, ZigCategory):
        raise MoveError("the initial diagram must be a zigzag")
    proof_cat = ZigCategory(cat)
    regs, sings, fwd, bwd = [d], [], [], []
    trace = []
    for step, cmd in enumerate(script.commands, start=1):
        try:
            entry = {"step": step, "command": cmd.text}
            if cmd.verb == "expect":
                want = build_object(parse_term(cmd.args["literal"]), cat)
                if want != d:
                    raise MoveError("expect failed: current diagram is " + print_object(d))
                continue
            pick = cmd.args.get("pick")
            b = cmd.args.get("bound", bound)
            if cmd.verb == "contract":
                a, e = cmd.args["range"]
                f = contract_range(cat, d, a, e, pick)
                new = f.target
                regs.append(new)
                sings.append(new)
                fwd.append(f)
                bwd.append(cat.identity(new))
                verdicts = {"valid": True, "globular": cat.is_globular(f)}
                entry.update(pick=pick, steps=["contract"])
            else:
                path = cmd.args["path"]
                leg_cat, target = _addressed(cat, d, path)
                legs = []
                for obj_t, map_t in cmd.args["sink"]:
                    src = build_object(obj_t, leg_cat)
                    legs.append(build_morphism(map_t, leg_cat, src, target))
                f, info = recursive_anticontract(cat, d, path, legs, b, pick or 0)
                new = f.source
                regs.append(new)
                sings.append(d)
                fwd.append(cat.identity(d))
                bwd.append(f)
                h = path[0]
                part = restrict_map(f, h, h + 1)
                verdicts = {"valid": True, "globular": cat.is_globular(f),
                            "round_trip": round_trip(cat, part)}
                entry.update(pick=pick or 0, steps=[i.step for i in info])
                if not all(verdicts.values()):
                    raise MoveError(f"verification failed: {verdicts}")
            d = new
            entry.update(hash=diagram_hash(d), verdicts=verdicts)
            trace.append(entry)
        except KernelError as e:
            err = type(e)(f"step {step} (line {cmd.line}, {cmd.verb}): {e}")
            raise err from e
    proof = proof_cat.validate_zigzag(Zigzag(regs, sings, fwd, bwd))
    return Result(cat, d, proof, trace)
