"""Anticocones and anticolimits of poset-shaped sinks.

Given a sink over the maximal elements of a shape J, an anticocone extends
the sink's sources to a J-diagram over which the sink is a cocone; it is an
anticolimit when the sink becomes a colimit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, islice, product
from typing import Iterator, Mapping, Optional

from .errors import CapabilityMissing, NoLimit, PosetError, ValidationError
from .fincat import (FINPRE, FINSET, ConcreteCategory, Diagram, FinOrdCat, FinSetCat, Mor,
                     PreObj, SetObj, Sink, carrier, cocone_legs, order)
from .poset import (FinPoset, Hypergraph, MonotoneMap, hypergraph_to_poset, is_fair, is_final,
                    reduce_to_hypergraph_like)
from .util import LazySeq, UnionFind, lazy_product, multisets, set_partitions, sort_key


@dataclass(frozen=True)
class Anticocone:
    shape: FinPoset
    sink: Sink
    extension: Diagram

    def __post_init__(self):
        for v in self.shape.maximal:
            if v not in self.sink.legs:
                raise ValidationError(f"sink has no leg at maximal element {v!r}")
            if self.extension.objects[v] != self.sink.legs[v].source:
                raise ValidationError(f"extension disagrees with the sink at {v!r}")

    @property
    def cat(self):
        return self.extension.cat

    def legs(self) -> Optional[dict]:
        return cocone_legs(self.extension, self.sink)

    def violation(self) -> Optional[str]:
        """Description of the first failing cocone square, if any."""
        cat, d = self.cat, self.extension
        for i in d.shape:
            tops = sorted(self.shape.upper_max(i), key=sort_key)
            ref = cat.compose(self.sink.legs[tops[0]], d.arrow(i, tops[0]))
            for j in tops[1:]:
                if cat.compose(self.sink.legs[j], d.arrow(i, j)) != ref:
                    return f"cocone square at {i!r} through {tops[0]!r} and {j!r} fails"
        return None

    def is_cocone(self) -> bool:
        return self.violation() is None

    def objects(self) -> dict:
        return self.extension.objects


@dataclass(frozen=True)
class AnticoconeMorphism:
    source: Anticocone
    target: Anticocone
    components: Mapping = field(hash=False)


def make_anticocone(shape: FinPoset, sink: Sink, objects: Mapping, arrows: Mapping,
                    check: bool = True) -> Anticocone:
    cat_objects = dict(objects)
    for v in shape.maximal:
        cat_objects.setdefault(v, sink.legs[v].source)
    cat = _cat_of(sink)
    a = Anticocone(shape, sink, Diagram.build(cat, shape, cat_objects, arrows))
    if check and not a.is_cocone():
        raise ValidationError(a.violation())
    return a


def _cat_of(sink: Sink):
    cat = getattr(sink, "cat", None)
    if cat is not None:
        return cat
    raise ValidationError("sink carries no category")


class CatSink(Sink):
    """A sink that remembers its category."""

    def __init__(self, cat, apex, legs):
        super().__init__(apex, legs)
        object.__setattr__(self, "cat", cat)


def sink(cat, apex, legs: Mapping) -> CatSink:
    return CatSink(cat, apex, legs)


# ---------------------------------------------------------- canonical Pi

def _into_pullback(cat, apex, projections, cone):
    """Universal map from a cone into a chosen pullback (concrete or thin)."""
    src = cone[0].source
    if cat.thin:
        return Mor(src, apex)
    index = {tuple(p(z) for p in projections): z for z in carrier(apex)}
    table = []
    for x in carrier(src):
        key = tuple(c(x) for c in cone)
        if key not in index:
            raise ValidationError("cone does not factor through the pullback")
        table.append(index[key])
    return Mor(src, apex, tuple(table))


def canonical_anticocone(shape: FinPoset, k: Sink) -> Optional[Anticocone]:
    """Pi_J(k): wide pullbacks of the legs above each element, or None."""
    cat = _cat_of(k)
    objects, projs = {}, {}
    for i in shape:
        tops = sorted(shape.upper_max(i), key=sort_key)
        if i in shape.maximal:
            objects[i] = k.legs[i].source
            projs[i] = (tops, [cat.identity(objects[i])])
            continue
        try:
            apex, ps = cat.wide_pullback([k.legs[j] for j in tops])
        except NoLimit:
            return None
        objects[i] = apex
        projs[i] = (tops, ps)
    arrows = {}
    for a, b in shape.covers:
        tops_a, ps_a = projs[a]
        tops_b, ps_b = projs[b]
        cone = [ps_a[tops_a.index(j)] for j in tops_b]
        arrows[(a, b)] = _into_pullback(cat, objects[b], ps_b, cone)
    return make_anticocone(shape, k, objects, arrows)


def terminal_morphism(a: Anticocone, pi: Anticocone) -> AnticoconeMorphism:
    cat = a.cat
    comps = {}
    for i in a.shape:
        if i in a.shape.maximal:
            comps[i] = cat.identity(a.extension.objects[i])
            continue
        tops = sorted(a.shape.upper_max(i), key=sort_key)
        projs = [pi.extension.arrow(i, j) for j in tops]
        cone = [a.extension.arrow(i, j) for j in tops]
        comps[i] = _into_pullback(cat, pi.extension.objects[i], projs, cone)
    return AnticoconeMorphism(a, pi, comps)


def is_anticolimit(a: Anticocone) -> bool:
    legs = a.legs()
    if legs is None:
        return False
    return a.cat.is_colimit(a.extension, a.sink.apex, legs)


@dataclass(frozen=True)
class Existence:
    """Answer of anticolimits_exist; ``bound`` is set when decided by search."""

    exists: bool
    method: str
    bound: Optional[int] = None

    def __bool__(self):
        return self.exists


def anticolimits_exist(shape: FinPoset, k: Sink, bound: Optional[int] = None) -> Existence:
    pi = canonical_anticocone(shape, k)
    if pi is not None:
        return Existence(is_anticolimit(pi), "canonical")
    bound = _default_bound(k) if bound is None else bound
    found = next(iter(enumerate_anticolimits(shape, k, bound)), None)
    return Existence(found is not None, "bounded", bound)


def _default_bound(k: Sink) -> int:
    sizes = [len(carrier(f.source)) for f in k.legs.values()]
    return (max(sizes) if sizes else 0) + 2


def enumerate_anticolimits(shape: FinPoset, k: Sink, bound) -> list[Anticocone]:
    return list(iter_anticolimits(shape, k, bound))


def iter_anticolimits(shape: FinPoset, k: Sink, bound) -> Iterator[Anticocone]:
    """Like enumerate_anticolimits, but lazy for the generic search."""
    cat = _cat_of(k)
    if isinstance(cat, FinSetCat):
        return iter_set_anticolimits(shape, k, bound)
    if isinstance(cat, FinOrdCat):
        return iter(enumerate_ord_anticolimits(shape, k, bound))
    return extend_anticolimits(cat, shape, {v: k.legs[v].source for v in shape.maximal},
                               {}, k.apex, k.legs, bound, sink_obj=k)


# ------------------------------------------------------------------ Set

def _as_shape(h) -> FinPoset:
    return hypergraph_to_poset(h) if isinstance(h, Hypergraph) else h


def enumerate_set_anticolimits(h, k: Sink, bound: int, descending: bool = False,
                               limit: Optional[int] = None) -> list[Anticocone]:
    """Set anticolimits with every non-maximal carrier of size <= bound.

    Follows the pullback scheme on a hypergraph-like shape: choose
    g_e : A_e -> Pi_e, glue, and keep families whose quotient maps
    bijectively onto the apex. Sets split over the points of the apex, so
    the search runs independently per fibre and recombines. Other shapes are
    reduced first and extended back along the reduction.
    """
    return list(islice(iter_set_anticolimits(h, k, bound, descending), limit))


def iter_set_anticolimits(h, k: Sink, bound: int, descending: bool = False) -> Iterator[Anticocone]:
    shape = _as_shape(h)
    if not shape.is_hypergraph_like():
        reduced, f = reduce_to_hypergraph_like(shape)
        seen = []
        for a in iter_set_anticolimits(reduced, k, bound, descending):
            b = change_of_shape(f, k, a)
            if b is not None and b.extension not in seen:
                seen.append(b.extension)
                yield b
        return
    edges = [e for e in shape if e not in shape.maximal]
    tops = {e: sorted(shape.upper_max(e), key=sort_key) for e in edges}
    pis = {}
    for e in edges:
        apex, ps = FINSET.wide_pullback([k.legs[v] for v in tops[e]])
        pis[e] = [tuple(p(z) for p in ps) for z in carrier(apex)]
    points = carrier(k.apex)
    over = {c: [(v, x) for v in sorted(shape.maximal, key=sort_key)
                for x in carrier(k.legs[v].source) if k.legs[v](x) == c] for c in points}

    def fibre_solutions(c):
        nodes = over[c]
        if not nodes:
            return
        items = [(e, t) for e in edges for t in pis[e] if k.legs[tops[e][0]](t[0]) == c]
        for support in _connecting_supports(nodes, items, tops, bound, descending):
            yield from _multiplicities(support, edges, bound)

    per_fibre = [LazySeq(fibre_solutions(c)) for c in points]
    if any(s.get(0) is None for s in per_fibre):
        return
    for combo in lazy_product(per_fibre):
        members = {e: sorted((t for sol in combo for t in sol[e]), key=sort_key) for e in edges}
        if any(len(members[e]) > bound for e in edges):
            continue
        objects, arrows = {}, {}
        for e in edges:
            objects[e] = SetObj(tuple(range(len(members[e]))))
            for n, v in enumerate(tops[e]):
                arrows[(e, v)] = Mor(objects[e], k.legs[v].source, tuple(t[n] for t in members[e]))
        yield make_anticocone(shape, k, objects, arrows)


def _connecting_supports(nodes, items, tops, bound, include_first=False):
    """Subsets of items gluing the nodes into one class, at most bound per edge.

    Depth-first over include/exclude decisions (exclusion first, so small
    supports come early), pruned when even every remaining item cannot
    connect the nodes.
    """
    def glued(chosen, rest) -> bool:
        uf = UnionFind(nodes)
        for e, t in chain(chosen, rest):
            for v, x in zip(tops[e], t):
                uf.union((tops[e][0], t[0]), (v, x))
        return len(uf.classes()) == 1

    def go(n, chosen, used):
        if not glued(chosen, items[n:]):
            return
        if n == len(items):
            yield list(chosen)
            return
        e = items[n][0]
        options = (False, True) if not include_first else (True, False)
        for take in options:
            if take:
                if used.get(e, 0) >= bound:
                    continue
                used[e] = used.get(e, 0) + 1
                yield from go(n + 1, chosen + [items[n]], used)
                used[e] -= 1
            else:
                yield from go(n + 1, chosen, used)

    yield from go(0, [], {})


def _multiplicities(support, edges, bound):
    """Multisets with the given support, each edge holding at most bound members."""
    per_edge = {e: [t for f, t in support if f == e] for e in edges}
    choices = []
    for e in edges:
        base = per_edge[e]
        extra = bound - len(base)
        choices.append([tuple(sorted(base + list(ms), key=sort_key))
                        for n in range(extra + 1) for ms in multisets(base, n)])
    for combo in product(*choices):
        yield dict(zip(edges, combo))


# ------------------------------------------------------------------ Ord

def _weak_orders(elems: list, allowed) -> Iterator[list[list]]:
    """Total preorders on elems (as ordered blocks) inside the relation allowed."""
    if not elems:
        yield []
        return
    first = elems[0]
    for mask in range(1 << (len(elems) - 1)):
        block = [first] + [e for n, e in enumerate(elems[1:]) if mask >> n & 1]
        rest = [e for e in elems if e not in block]
        if not all(allowed(a, b) and allowed(b, a) for a in block for b in block):
            continue
        for tail in _weak_orders(rest, allowed):
            # block may sit at any position; build by inserting in all places
            for pos in range(len(tail) + 1):
                cand = tail[:pos] + [block] + tail[pos:]
                if _respects(cand, allowed):
                    yield cand


def _respects(blocks, allowed) -> bool:
    for n, lo in enumerate(blocks):
        for hi in blocks[n + 1:]:
            if not all(allowed(a, b) for a in lo for b in hi):
                return False
    return True


def enumerate_ord_anticolimits(shape: FinPoset, k: Sink, bound: int) -> list[Anticocone]:
    """Ord anticolimits via Set -> Pre -> Pos -> Ord.

    The sink is lifted along the poset reflection in every way (the trivial
    lift first); for each lift that has Pre anticolimits, Set anticolimits
    of its underlying sink are given preorders making the legs monotone,
    reflected into posets, and kept when every object is a total order.
    """
    if not shape.is_hypergraph_like():
        reduced, f = reduce_to_hypergraph_like(shape)
        found = [change_of_shape(f, k, a) for a in enumerate_ord_anticolimits(reduced, k, bound)]
        return _dedup([a for a in found if a is not None])
    edges = [e for e in shape if e not in shape.maximal]
    tops = {e: sorted(shape.upper_max(e), key=sort_key) for e in edges}
    out = []
    for pre_sink in reflection_lifts(k):
        pi = canonical_anticocone(shape, pre_sink)
        if pi is None or not is_anticolimit(pi):
            continue
        apex = SetObj(carrier(pre_sink.apex))
        set_sink = sink(FINSET, apex, {v: Mor(SetObj(carrier(f.source)), apex, f.table)
                                       for v, f in pre_sink.legs.items()})
        for a in enumerate_set_anticolimits(shape, set_sink, bound):
            per_edge = []
            for e in edges:
                maps = [a.extension.arrow(e, v) for v in tops[e]]
                elems = list(carrier(a.extension.objects[e]))

                def allowed(x, y, maps=maps, e=e):
                    return all(FINORD_le(k.legs[v].source, m(x), m(y)) for v, m in zip(tops[e], maps))

                per_edge.append([(e, elems, maps, blocks) for blocks in _weak_orders(elems, allowed)])
            for choice in product(*per_edge):
                objects, arrows = {}, {}
                for e, elems, maps, blocks in choice:
                    # reflection into posets merges each block into one point
                    objects[e] = len(blocks)
                    rank = {x: n for n, blk in enumerate(blocks) for x in blk}
                    for v, m in zip(tops[e], maps):
                        table = [None] * len(blocks)
                        for x in elems:
                            table[rank[x]] = m(x)
                        arrows[(e, v)] = Mor(len(blocks), k.legs[v].source, tuple(table))
                cand = make_anticocone(shape, k, objects, arrows, check=False)
                if cand.is_cocone() and is_anticolimit(cand):
                    out.append(cand)
    return _dedup(out)


def reflection_lifts(k: Sink) -> Iterator[CatSink]:
    """Sinks in Pre whose reflection into posets is the Ord sink k.

    The apex becomes a preorder in which each point of k's apex is an
    indiscrete block; the legs choose a block member for every source point.
    Only lifts whose legs cover the apex are listed: any other one has no
    anticolimits. The trivial lift comes first.
    """
    sources = {v: FINPRE_obj(f.source) for v, f in k.legs.items()}
    tops = sorted(k.legs, key=sort_key)
    over = {c: [(v, x) for v in tops for x in range(k.legs[v].source) if k.legs[v](x) == c]
            for c in range(k.apex)}
    for parts in product(*[list(set_partitions(over[c])) or [[]] for c in range(k.apex)]):
        blocks = [(c, blk) for c, part in enumerate(parts) for blk in (part or [[]])]
        fibre = [c for c, _ in blocks]
        apex = PreObj(tuple(range(len(blocks))),
                      frozenset((p, q) for p in range(len(blocks)) for q in range(len(blocks))
                                if fibre[p] <= fibre[q]))
        where = {vx: p for p, (_, blk) in enumerate(blocks) for vx in blk}
        yield sink(FINPRE, apex, {v: Mor(sources[v], apex, tuple(where[(v, x)] for x in range(f.source)))
                                  for v, f in k.legs.items()})


def FINPRE_obj(n: int) -> PreObj:
    return PreObj(tuple(range(n)), order(n))


def FINORD_le(n: int, a: int, b: int) -> bool:
    return a <= b


# ---------------------------------------------------------- generic search

def extend_anticolimits(cat, shape: FinPoset, fixed_objects: Mapping, fixed_arrows: Mapping,
                        apex, legs: Mapping, bound, sink_obj: Optional[Sink] = None,
                        limit: Optional[int] = None) -> Iterator:
    """Extensions of a diagram given on an up-closed set U to all of J,
    making the legs (given on U) a colimit cocone.

    Free elements are filled top-down: each gets an object with a compatible
    family of maps to everything above it. Yields Diagram objects, or
    Anticocone objects when ``sink_obj`` is given. Categories may override
    the whole search through an ``extension_anticolimits`` method.
    """
    fixed = set(fixed_objects)
    if not shape.is_up_closed(fixed) or not shape.maximal <= fixed:
        raise ValidationError("fixed region must be up-closed and contain all maximal elements")
    if hasattr(cat, "extension_anticolimits"):
        gen = cat.extension_anticolimits(shape, fixed_objects, fixed_arrows, apex, legs, bound)
    else:
        gen = _top_down(cat, shape, fixed_objects, fixed_arrows, apex, legs, bound)
    seen = []
    count = 0
    for d in gen:
        if isinstance(cat, FinSetCat) and any(_isomorphic_extensions(d, e, fixed) for e in seen):
            continue
        seen.append(d)
        yield Anticocone(shape, sink_obj, d) if sink_obj is not None else d
        count += 1
        if limit is not None and count >= limit:
            return


def _full_arrows(cat, shape, sub, objects, arrows):
    """All strict-pair arrows inside sub, completing from covers where missing."""
    out = dict(arrows)
    d = Diagram.build(cat, shape.subposet(sub), {a: objects[a] for a in sub},
                      {p: f for p, f in arrows.items() if p[0] in sub and p[1] in sub})
    out.update(d.arrows)
    return out


def _top_down(cat, shape, fixed_objects, fixed_arrows, apex, legs, bound):
    fixed = set(fixed_objects)
    arrows0 = _full_arrows(cat, shape, fixed, fixed_objects, fixed_arrows)
    legs0 = dict(legs)
    for i in fixed:
        if i not in legs0:
            j = next(iter(sorted(shape.upper_max(i), key=sort_key)))
            legs0[i] = cat.compose(legs[j], arrows0[(i, j)] if i != j else cat.identity(fixed_objects[i]))
    free = [i for i in shape.topological(descending=True) if i not in fixed]

    def go(n, objects, arrows, lg):
        if n == len(free):
            d = Diagram(cat, shape, objects, arrows)
            if cat.is_colimit(d, apex, lg):
                yield d
            return
        i = free[n]
        above = sorted(shape.upper_set(i) - {i}, key=sort_key)
        targets = [(j, objects[j]) for j in above]
        sub_arrows = {(a, b): f for (a, b), f in arrows.items() if a in above and b in above}
        for obj, maps in cat.cone_candidates(targets, sub_arrows, lg, bound):
            new_obj = dict(objects)
            new_obj[i] = obj
            new_arr = dict(arrows)
            for j, m in maps.items():
                new_arr[(i, j)] = m
            new_lg = dict(lg)
            new_lg[i] = cat.compose(lg[above[0]], maps[above[0]])
            yield from go(n + 1, new_obj, new_arr, new_lg)

    yield from go(0, dict(fixed_objects), arrows0, legs0)


def extension_morphisms(a: Diagram, b: Diagram, fixed) -> Iterator[dict]:
    """Natural transformations a => b that are identities on ``fixed``."""
    cat, shape = a.cat, a.shape
    fixed = set(fixed)
    free = [i for i in shape.topological(descending=True) if i not in fixed]
    base = {i: cat.identity(a.objects[i]) for i in fixed}

    def natural_at(i, comps):
        for j in shape.upper_set(i) - {i}:
            if j in comps:
                if cat.compose(comps[j], a.arrow(i, j)) != cat.compose(b.arrow(i, j), comps[i]):
                    return False
        return True

    def go(n, comps):
        if n == len(free):
            yield dict(comps)
            return
        i = free[n]
        for h in _candidate_components(cat, shape, a, b, i, comps):
            comps[i] = h
            if natural_at(i, comps):
                yield from go(n + 1, comps)
            del comps[i]

    if any(a.objects[i] != b.objects[i] for i in fixed):
        return
    if any(a.arrow(x, y) != b.arrow(x, y) for x in fixed for y in fixed if shape.lt(x, y)):
        return
    yield from go(0, dict(base))


def _candidate_components(cat, shape, a: Diagram, b: Diagram, i, comps):
    """Morphisms a(i) -> b(i); for concrete categories, pruned pointwise by
    naturality against the components already chosen above i."""
    src, tgt = a.objects[i], b.objects[i]
    if not isinstance(cat, ConcreteCategory):
        yield from cat.hom(src, tgt)
        return
    above = [j for j in shape.upper_set(i) - {i} if j in comps]
    options = []
    for x in carrier(src):
        want = [(b.arrow(i, j), comps[j](a.arrow(i, j)(x))) for j in above]
        options.append([y for y in carrier(tgt) if all(g(y) == v for g, v in want)])
    for table in product(*options):
        h = Mor(src, tgt, table)
        if cat.is_monotone(h):
            yield h


def _isomorphic_extensions(a: Diagram, b: Diagram, fixed) -> bool:
    for i in a.shape:
        if len(carrier(a.objects[i])) != len(carrier(b.objects[i])):
            return False
    cat = a.cat
    return any(all(cat.is_iso(f) for f in comps.values())
               for comps in extension_morphisms(a, b, fixed))


def _dedup(items: list[Anticocone]) -> list[Anticocone]:
    out = []
    for a in items:
        fixed = a.shape.maximal
        if any(a.extension == b.extension for b in out):
            continue
        if isinstance(a.cat, FinSetCat) and any(
                _isomorphic_extensions(a.extension, b.extension, fixed) for b in out):
            continue
        out.append(a)
    return out


# -------------------------------------------------------- change of shape

def change_of_shape(f: MonotoneMap, k: Sink, a_i: Anticocone) -> Optional[Anticocone]:
    """Extend an I-anticolimit of k.f to a J-anticolimit of k along f.

    Supported when f is bijective on elements (as for edge removal); any
    arrow of J missing from the image of I is searched for.
    """
    if not is_fair(f) or not is_final(f):
        raise PosetError("change of shape needs a fair and final map")
    src, tgt = f.source, f.target
    images = [f(x) for x in src]
    if len(set(images)) != len(images) or set(images) != set(tgt.elements):
        raise CapabilityMissing("change of shape along a map that is not bijective on elements")
    cat = a_i.cat
    inv = {f(x): x for x in src}
    objects = {j: a_i.extension.objects[inv[j]] for j in tgt}
    known = {}
    missing = []
    for a, b in tgt.covers:
        if src.le(inv[a], inv[b]):
            known[(a, b)] = a_i.extension.arrow(inv[a], inv[b])
        else:
            missing.append((a, b))
    options = []
    for a, b in missing:
        # the new arrow must commute with the maps to the maxima above b
        tops = sorted(tgt.upper_max(b), key=sort_key)
        want = [a_i.extension.arrow(inv[a], inv[v]) for v in tops]
        have = [a_i.extension.arrow(inv[b], inv[v]) for v in tops]
        options.append(list(_joint_lifts(cat, objects[a], objects[b], want, have)))
    for choice in product(*options):
        arrows = dict(known)
        arrows.update(zip(missing, choice))
        try:
            cand = make_anticocone(tgt, k, objects, arrows, check=False)
        except ValidationError:
            continue
        if cand.is_cocone() and is_anticolimit(cand):
            return cand
    return None


def _joint_lifts(cat, src_obj, tgt_obj, want, have):
    """Maps h : src -> tgt with have[n] . h == want[n] for all n."""
    if cat.thin:
        yield from cat.hom(src_obj, tgt_obj)
        return
    if isinstance(cat, ConcreteCategory):
        choices = []
        for x in carrier(src_obj):
            choices.append([y for y in carrier(tgt_obj)
                            if all(h(y) == w(x) for h, w in zip(have, want))])
        for table in product(*choices):
            h = Mor(src_obj, tgt_obj, tuple(table))
            if cat.is_monotone(h):
                yield h
        return
    for h in cat.hom(src_obj, tgt_obj):
        if all(cat.compose(g, h) == w for g, w in zip(have, want)):
            yield h


# -------------------------------------------------------------- wrappers

def span_shape() -> FinPoset:
    from .poset import jn_hypergraph
    return hypergraph_to_poset(jn_hypergraph(1))


def antipushout(cat, f: Mor, g: Mor, bound: int) -> list[Anticocone]:
    """Spans completing the cospan (f, g) to a pushout square."""
    if f.target != g.target:
        raise ValidationError("antipushout: cospan legs do not share a codomain")
    shape = span_shape()
    k = sink(cat, f.target, {0: f, 1: g})
    ex = anticolimits_exist(shape, k, bound)
    if not ex:
        return []
    return sorted(enumerate_anticolimits(shape, k, bound), key=_span_key)


def _span_key(a: Anticocone):
    d = a.extension
    obj = d.objects["e0"]
    return (len(carrier(obj)) if not d.cat.thin else 0,
            sort_key(d.arrow("e0", 0).table), sort_key(d.arrow("e0", 1).table))


# --------------------------------------------------------------- lemmas

@dataclass
class LemmaReport:
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        lines = [f"{name}: {n} checks" for name, n in self.checked.items()]
        lines += [f"FAIL {msg}" for msg in self.failures]
        return "\n".join(lines)


def check_lemma_suite(shape: FinPoset, k: Sink, samples: list[Anticocone]) -> LemmaReport:
    """Audit the structural lemmas on explicit extensions of k.

    sieve: a morphism into an anticocone has an anticocone source.
    cosieve: a morphism between anticocones out of an anticolimit lands in one.
    pointwise-epi: a pointwise epi into an anticolimit has an anticolimit source.
    jointly-epic: anticolimits only exist for jointly epic sinks.
    terminality: every anticocone has exactly one morphism to Pi.
    """
    rep = LemmaReport({"sieve": 0, "cosieve": 0, "pointwise-epi": 0,
                       "jointly-epic": 0, "terminality": 0})
    cat = _cat_of(k)
    fixed = shape.maximal
    cocone = [a.is_cocone() for a in samples]
    for n, a in enumerate(samples):
        if not cocone[n]:
            rep.failures.append(f"sieve: sample {n} is not an anticocone ({a.violation()})")
    colim = [cocone[n] and is_anticolimit(a) for n, a in enumerate(samples)]
    for n, a in enumerate(samples):
        for m, b in enumerate(samples):
            for comps in extension_morphisms(a.extension, b.extension, fixed):
                if cocone[m]:
                    rep.checked["sieve"] += 1
                    if not cocone[n]:
                        rep.failures.append(f"sieve: morphism {n}->{m} into an anticocone")
                if cocone[n] and cocone[m]:
                    rep.checked["cosieve"] += 1
                    if colim[n] and not colim[m]:
                        rep.failures.append(f"cosieve: morphism {n}->{m} leaves the anticolimits")
                if colim[m] and all(cat.is_epi(h) for h in comps.values()):
                    rep.checked["pointwise-epi"] += 1
                    if not colim[n]:
                        rep.failures.append(f"pointwise-epi: {n}->{m} has a non-anticolimit source")
    if any(colim):
        rep.checked["jointly-epic"] += 1
        if not cat.is_jointly_epic(list(k.legs.values()), k.apex):
            rep.failures.append("jointly-epic: anticolimit over a non-jointly-epic sink")
    pi = canonical_anticocone(shape, k)
    if pi is not None:
        for n, a in enumerate(samples):
            if not cocone[n]:
                continue
            rep.checked["terminality"] += 1
            found = list(extension_morphisms(a.extension, pi.extension, fixed))
            expected = terminal_morphism(a, pi).components
            if len(found) != 1 or found[0] != dict(expected):
                rep.failures.append(f"terminality: sample {n} has {len(found)} morphisms to Pi")
    return rep
