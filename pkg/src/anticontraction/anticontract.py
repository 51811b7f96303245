"""Anticontraction: zigzag anticolimits and the recursive anticontraction move."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, islice
from typing import Mapping, Optional, Sequence

from .anticolim import (extend_anticolimits, is_anticolimit, iter_anticolimits,
                        make_anticocone, sink)
from .errors import MoveError, NoColimit, ValidationError
from .fincat import FINORD, ConcreteCategory, Diagram, Mor, carrier, cocone_legs
from .poset import FinPoset, hypergraph_to_poset, jn_hypergraph
from .util import LazySeq, lazy_product, sort_key
from .zigzag import (ZigCategory, Zigzag, ZigzagMap, contraction, explode, explode_height,
                     explode_shape, r_, reg_dual, restrict, s_, unexplode)


def jn_poset(n: int) -> FinPoset:
    if n < 0:
        raise ValidationError("J_n needs n >= 0")
    return hypergraph_to_poset(jn_hypergraph(n))


def _split_bound(bound):
    """(this level, levels below): a tuple lists bounds from the outside in."""
    if isinstance(bound, tuple):
        if len(bound) == 1:
            return bound[0], bound[0]
        return bound[0], (bound[1] if len(bound) == 2 else bound[1:])
    return bound, bound


def concat(zcat: ZigCategory, parts: Sequence[Zigzag]) -> Zigzag:
    regs, sings, fwd, bwd = [parts[0].regulars[0]], [], [], []
    for p in parts:
        if p.regulars[0] != regs[-1]:
            raise ValidationError("cannot concatenate: boundary regular objects differ")
        regs += p.regulars[1:]
        sings += p.singulars
        fwd += p.forward
        bwd += p.backward
    return Zigzag(regs, sings, fwd, bwd)


def zigzag_anticolimits(zcat: ZigCategory, shape: FinPoset, fixed_objects: Mapping,
                        fixed_arrows: Mapping, apex: Zigzag, legs: Mapping, bound=None):
    """Anticolimits in globular zigzags, through Ord and per-height explosions.

    Enumerates Ord anticolimits F of the lengths, then for every height an
    anticolimit of the exploded sink in the base; each combination is
    unexploded, kept if globular, concatenated and re-verified.
    """
    base = zcat.base
    fixed = set(fixed_objects)
    ord_bound, base_bound = _split_bound(bound)
    sub = shape.subposet(fixed)
    fixed_d = Diagram.build(zcat, sub, fixed_objects,
                            {p: f for p, f in fixed_arrows.items() if p[0] in fixed and p[1] in fixed})
    legs_u = dict(legs)
    for x in fixed:
        if x not in legs_u:
            v = sorted(shape.upper_max(x), key=sort_key)[0]
            legs_u[x] = zcat.compose(legs[v], fixed_d.arrow(x, v))
    if ord_bound is None:
        ord_bound = max([len(apex)] + [len(z) for z in fixed_objects.values()]) + 2
    n = len(apex)
    ord_fixed = {x: len(z) for x, z in fixed_objects.items()}
    ord_arrows = {p: Mor(ord_fixed[p[0]], ord_fixed[p[1]], f.sing) for p, f in fixed_d.arrows.items()}
    ord_legs = {x: Mor(ord_fixed[x], n, legs_u[x].sing) for x in fixed}
    height_data = []
    for i in range(n):
        exp_u, g_u, g_legs = explode_height(zcat, fixed_d, legs_u, i)
        height_data.append((g_u, g_legs))
    for f in extend_anticolimits(FINORD, shape, ord_fixed, ord_arrows, n, ord_legs, ord_bound):
        lam = cocone_legs(f, sink(FINORD, n, {v: ord_legs[v] for v in shape.maximal}))
        heights = []
        for i in range(n):
            spans = {}
            for x in shape:
                reg = reg_dual(lam[x].table, f.objects[x], n)
                spans[x] = (reg[i], reg[i + 1])
            lengths = {x: d - c for x, (c, d) in spans.items()}
            sing = {(a, b): tuple(f.arrow(a, b)(k) - spans[b][0] for k in range(*spans[a]))
                    for a, b in shape.strict_pairs()}
            g_u, g_legs = height_data[i]
            gen = extend_anticolimits(base, explode_shape(shape, lengths, sing), g_u.objects,
                                      g_u.arrows, apex.singulars[i], g_legs, base_bound)
            heights.append(LazySeq(_globular_pieces(zcat, shape, lengths, sing, gen)))
        for pieces in lazy_product(heights):
            a = _reassemble(zcat, shape, f, apex, pieces)
            if a is None:
                continue
            a_legs = cocone_legs(a, sink(zcat, apex, {v: legs[v] for v in shape.maximal}))
            if a_legs is not None and zcat.is_colimit(a, apex, a_legs):
                yield a


def _globular_pieces(zcat, shape, lengths, sing, gen):
    for g in gen:
        try:
            d = unexplode(zcat, shape, lengths, sing, g)
        except ValidationError:
            continue
        if all(zcat.is_globular(m) for m in d.arrows.values()):
            yield d


def _reassemble(zcat, shape, f, apex, pieces) -> Optional[Diagram]:
    if not pieces:
        obj = Zigzag.point(apex.regulars[0])
        objects = {x: obj for x in shape}
        arrows = {p: zcat.identity(obj) for p in shape.strict_pairs()}
        return Diagram(zcat, shape, objects, arrows)
    try:
        objects = {x: concat(zcat, [d.objects[x] for d in pieces]) for x in shape}
    except ValidationError:
        return None
    arrows = {}
    for a, b in shape.strict_pairs():
        maps = [d.arrow(a, b) for d in pieces]
        sslices = [s for m in maps for s in m.sslices]
        rslices = list(maps[0].rslices)
        for m in maps[1:]:
            rslices += m.rslices[1:]
        try:
            arrows[(a, b)] = zcat.validate_map(ZigzagMap(objects[a], objects[b], f.arrow(a, b).table,
                                                         sslices, rslices))
        except ValidationError:
            return None
    return Diagram(zcat, shape, objects, arrows)


# --------------------------------------------------------- anticontraction

def _span_of_legs(zcat, x: Zigzag, legs):
    if len(x) != 1:
        raise ValidationError("anticontraction needs a length-1 zigzag")
    if not legs:
        raise ValidationError("anticontraction needs at least one sink leg")
    for f in legs:
        if f.target != x.singulars[0]:
            raise ValidationError("sink leg does not land in the singular object")


def _identity_leg_candidates(shape: FinPoset, k):
    """For two legs one of which is an identity: E is the other source."""
    cat = k.cat
    if len(shape.maximal) != 2 or not isinstance(cat, ZigCategory):
        return
    for keep, other in ((0, 1), (1, 0)):
        f = k.legs[keep]
        if f != cat.identity(k.apex):
            continue
        g = k.legs[other]
        arrows = {("e0", keep): g, ("e0", other): cat.identity(g.source)}
        try:
            a = make_anticocone(shape, k, {"e0": g.source}, arrows)
        except ValidationError:
            continue
        if is_anticolimit(a):
            yield a


def anticontractions(zcat: ZigCategory, x: Zigzag, legs: Sequence, bound=None):
    """Every anticontraction of x with the given sink, one per anticolimit
    (up to the bound) that admits both boundary lifts, in enumeration order."""
    _span_of_legs(zcat, x, legs)
    base = zcat.base
    n = len(legs) - 1
    shape = jn_poset(n)
    k = sink(base, x.singulars[0], dict(enumerate(legs)))
    if bound is None and isinstance(base, ConcreteCategory):
        bound = max(len(carrier(f.source)) for f in legs) ** 2 + 1
    lift0 = base.find_lift(x.forward[0], legs[0])
    lift1 = base.find_lift(x.backward[0], legs[n])
    if lift0 is None or lift1 is None:
        return
    seen = []
    for a in chain(_identity_leg_candidates(shape, k), iter_anticolimits(shape, k, bound)):
        d = a.extension
        if d in seen:
            continue
        seen.append(d)
        edges = [f"e{j}" for j in range(n)]
        z = zcat.validate_zigzag(Zigzag(
            [x.regulars[0]] + [d.objects[e] for e in edges] + [x.regulars[1]],
            [f.source for f in legs],
            [lift0] + [d.arrow(e, j + 1) for j, e in enumerate(edges)],
            [d.arrow(e, j) for j, e in enumerate(edges)] + [lift1]))
        yield zcat.validate_map(ZigzagMap(z, x, (0,) * (n + 1), legs,
                                          [base.identity(x.regulars[0]), base.identity(x.regulars[1])]))


def anticontract(zcat: ZigCategory, x: Zigzag, legs: Sequence, bound=None, pick: int = 0) -> ZigzagMap:
    options = list(islice(anticontractions(zcat, x, legs, bound), pick + 1))
    if not options:
        raise MoveError("no anticontraction: no anticolimit with boundary lifts within the bound")
    if not 0 <= pick < len(options):
        raise MoveError(f"pick {pick} out of range ({len(options)} anticontractions)")
    return options[pick]


def round_trip(zcat: ZigCategory, f: ZigzagMap) -> bool:
    """Does contracting the source of f give back f (up to the comparison iso)?"""
    c = contraction(zcat, f.source)
    if c == f:
        return True
    base = zcat.base
    if c.target.regulars != f.target.regulars or c.sing != f.sing:
        return False
    if isinstance(base, ConcreteCategory):
        exp, g = explode(Diagram(zcat, FinPoset.chain(1), {0: f.source}, {}))
        col = base.colimit(g)
        diag = zcat.diagonals(f)
        legs = {s_(0, i): f.sslices[i] for i in range(len(f.source))}
        legs.update({r_(0, j): diag[(j, 0)] for j in range(len(f.source) + 1)})
        u = base.comparison(col, f.target.singulars[0], legs)
        if u is None or not base.is_iso(u):
            return False
        return (all(base.compose(u, s) == t for s, t in zip(c.sslices, f.sslices))
                and base.compose(u, c.target.forward[0]) == f.target.forward[0]
                and base.compose(u, c.target.backward[0]) == f.target.backward[0])
    exp, g = explode(Diagram(zcat, FinPoset.chain(1), {0: f.source}, {}))
    diag = zcat.diagonals(f)
    legs = {s_(0, i): f.sslices[i] for i in range(len(f.source))}
    legs.update({r_(0, j): diag[(j, 0)] for j in range(len(f.source) + 1)})
    return base.is_colimit(g, f.target.singulars[0], legs)


# ------------------------------------------------------------ recursion

@dataclass(frozen=True)
class StepInfo:
    depth: int
    height: int
    step: str   # "anticontract", "a", "b-left", "b-right" or "c"


def splice(zcat: ZigCategory, x: Zigzag, h: int, m: ZigzagMap) -> ZigzagMap:
    """Extend m : Z -> x[h, h+1] by identities to a map x' -> x."""
    z = m.source
    left, right = restrict(x, 0, h), restrict(x, h + 1, len(x))
    new = concat(zcat, [left, z, right])
    base = zcat.base
    sing = tuple(range(h)) + (h,) * len(z) + tuple(range(h + 1, len(x)))
    sslices = ([base.identity(o) for o in x.singulars[:h]] + list(m.sslices)
               + [base.identity(o) for o in x.singulars[h + 1:]])
    rslices = [base.identity(o) for o in x.regulars]
    return zcat.validate_map(ZigzagMap(new, x, sing, sslices, rslices))


def lift_scheme(zcat: ZigCategory, x: Zigzag, g, bound=None):
    """Turn a single map g : A -> x(s0) into a map onto x (length 1).

    (a) both boundary lifts: x(r0) -> A <- x(r1);
    (b) one lift: factor the other boundary map and anticontract with the
        two legs, taking the first anticontraction found;
    (c) otherwise a bubble around A.
    """
    base = zcat.base
    l0 = base.find_lift(x.forward[0], g)
    l1 = base.find_lift(x.backward[0], g)
    ids = [base.identity(x.regulars[0]), base.identity(x.regulars[1])]
    if l0 is not None and l1 is not None:
        z = Zigzag(x.regulars, [g.source], [l0], [l1])
        return zcat.validate_map(ZigzagMap(z, x, (0,), [g], ids)), "a"
    if l0 is not None or l1 is not None:
        if l0 is not None:
            _, m = base.factorise_sink([x.backward[0]], x.singulars[0])
            legs, side = [g, m], "b-right"
        else:
            _, m = base.factorise_sink([x.forward[0]], x.singulars[0])
            legs, side = [m, g], "b-left"
        try:
            options = list(islice(anticontractions(zcat, x, legs, bound), 1))
        except (NoColimit, ValidationError):
            options = []
        if options:
            return options[0], side
    z = Zigzag([x.regulars[0], g.source, x.regulars[1]], [x.singulars[0]] * 2,
               [x.forward[0], g], [g, x.backward[0]])
    sid = base.identity(x.singulars[0])
    return zcat.validate_map(ZigzagMap(z, x, (0, 0), [sid, sid], ids)), "c"


def recursive_anticontract(zcat: ZigCategory, d: Zigzag, path: Sequence[int], legs: Sequence,
                           bound=None, pick: int = 0) -> tuple[ZigzagMap, list[StepInfo]]:
    """Anticontract the cell at ``path`` and propagate outwards.

    ``path`` lists singular heights from the outermost zigzag inwards; the
    sink ``legs`` lands in the innermost addressed singular object.
    Returns the map d' -> d and a record of the step used at each depth.
    """
    if not path:
        raise MoveError("empty path")
    h = path[0]
    if not 0 <= h < len(d):
        raise MoveError(f"height {h} out of range for a zigzag of length {len(d)}")
    span = restrict(d, h, h + 1)
    if len(path) == 1:
        m = anticontract(zcat, span, legs, bound, pick)
        info = [StepInfo(0, h, "anticontract")]
    else:
        if not isinstance(zcat.base, ZigCategory):
            raise MoveError("path is deeper than the diagram")
        inner, info = recursive_anticontract(zcat.base, d.singulars[h], path[1:], legs, bound, pick)
        info = [StepInfo(i.depth + 1, i.height, i.step) for i in info]
        m, step = lift_scheme(zcat, span, inner, bound)
        info = [StepInfo(0, h, step)] + info
    return splice(zcat, d, h, m), info


def contract_range(zcat: ZigCategory, d: Zigzag, a: int, b: int, pick: Optional[int] = None) -> ZigzagMap:
    """Contract the heights [a, b) of d into one, as a map d -> d'."""
    if not 0 <= a <= b <= len(d):
        raise MoveError(f"range {a}:{b} out of bounds for length {len(d)}")
    c = contraction(zcat, restrict(d, a, b), pick)
    base = zcat.base
    new = concat(zcat, [restrict(d, 0, a), c.target, restrict(d, b, len(d))])
    shift = b - a - 1
    sing = tuple(range(a)) + (a,) * (b - a) + tuple(k - shift for k in range(b, len(d)))
    sslices = ([base.identity(o) for o in d.singulars[:a]] + list(c.sslices)
               + [base.identity(o) for o in d.singulars[b:]])
    rslices = [base.identity(o) for o in new.regulars]
    return zcat.validate_map(ZigzagMap(d, new, sing, sslices, rslices))
