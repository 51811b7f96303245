"""Brute-force oracles and random generators shared by the tests.

Nothing here calls a kernel algorithm: partitions come from graph search,
Ord colimits from a preorder closure, zigzags from explicit constructions.
"""
from __future__ import annotations

import itertools
import random
from collections import defaultdict

from anticontraction.fincat import FINSET, Mor, SetObj
from anticontraction.zigzag import Zigzag, ZigzagMap


# ------------------------------------------------------------ partitions

def components(nodes, edges):
    """Connected components of an undirected graph, as a node -> class id map."""
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    cls, n = {}, 0
    for v in nodes:
        if v in cls:
            continue
        stack = [v]
        cls[v] = n
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in cls:
                    cls[w] = n
                    stack.append(w)
        n += 1
    return cls, n


def same_partition(a: dict, b: dict) -> bool:
    """Two labellings of the same keys induce the same partition."""
    if set(a) != set(b):
        return False
    fwd, bwd = {}, {}
    for k in a:
        if fwd.setdefault(a[k], b[k]) != b[k] or bwd.setdefault(b[k], a[k]) != a[k]:
            return False
    return True


def set_colimit(objects: dict, arrows: dict):
    """Colimit in FinSet of {name: carrier}, {(a, b): Mor}: (class of (name, x), size)."""
    nodes = [(o, x) for o, c in objects.items() for x in c]
    edges = [((a, x), (b, f(x))) for (a, b), f in arrows.items() for x in objects[a]]
    return components(nodes, edges)


# ------------------------------------------------------------------- Ord

def ord_maps(n: int, m: int):
    """All monotone maps ord n -> ord m as tuples."""
    return [t for t in itertools.combinations_with_replacement(range(m), n)]


def ord_pushout_is(f: tuple, g: tuple, a: int, b: int, span_f: tuple, span_g: tuple, k: int) -> bool:
    """Is (f: a -> t, g: b -> t) the Ord pushout of span_f: k -> a, span_g: k -> b?

    The Pos colimit of a span of chains is the antisymmetric quotient of the
    preorder generated by both orders and the span identifications; it must
    be a chain matched bijectively and order-isomorphically by f and g.
    """
    nodes = [("a", i) for i in range(a)] + [("b", j) for j in range(b)]
    le = {(u, u) for u in nodes}
    le |= {(("a", i), ("a", i + 1)) for i in range(a - 1)}
    le |= {(("b", j), ("b", j + 1)) for j in range(b - 1)}
    for z in range(k):
        u, v = ("a", span_f[z]), ("b", span_g[z])
        le |= {(u, v), (v, u)}
    changed = True
    while changed:
        changed = False
        for (x, y) in list(le):
            for (y2, z) in list(le):
                if y == y2 and (x, z) not in le:
                    le.add((x, z))
                    changed = True
    val = {("a", i): f[i] for i in range(a)} | {("b", j): g[j] for j in range(b)}
    t = max(val.values(), default=-1) + 1
    for u in nodes:
        for v in nodes:
            if ((u, v) in le) != (val[u] <= val[v]):
                return False
    return len(set(val.values())) == t


def brute_antipushouts(f: tuple, g: tuple, a: int, b: int, bound: int):
    """Every span (k, p, q) with k <= bound whose Ord pushout is (f, g)."""
    out = []
    for k in range(bound + 1):
        for p in ord_maps(k, a):
            for q in ord_maps(k, b):
                if all(f[p[z]] == g[q[z]] for z in range(k)) and ord_pushout_is(f, g, a, b, p, q, k):
                    out.append((k, p, q))
    return out


# ------------------------------------------------------- FinSet helpers

def sset(n: int) -> SetObj:
    return SetObj(tuple(range(n)))


def fmap(src: SetObj, tgt: SetObj, table) -> Mor:
    return Mor(src, tgt, tuple(table))


def rand_fun(rng: random.Random, src: SetObj, tgt: SetObj) -> Mor:
    return fmap(src, tgt, [rng.choice(tgt.elements) for _ in src.elements])


def ident(x: SetObj) -> Mor:
    return Mor(x, x, x.elements)


# ------------------------------------------------------ random zigzags

def rand_zigzag(rng: random.Random, length: int, max_size: int = 2) -> Zigzag:
    regs = [sset(rng.randint(0, max_size)) for _ in range(length + 1)]
    sings = [sset(rng.randint(1, max_size + 1)) for _ in range(length)]
    fwd = [rand_fun(rng, regs[i], sings[i]) for i in range(length)]
    bwd = [rand_fun(rng, regs[i + 1], sings[i]) for i in range(length)]
    return Zigzag(regs, sings, fwd, bwd)


def _fence_colimit(regs, sings, fwd, bwd):
    """Colimit in FinSet of a fence, with legs out of its singular objects and its regular objects."""
    objects = {("r", j): r.elements for j, r in enumerate(regs)}
    objects |= {("s", i): s.elements for i, s in enumerate(sings)}
    arrows = {}
    for i in range(len(sings)):
        arrows[(("r", i), ("s", i))] = fwd[i]
        arrows[(("r", i + 1), ("s", i))] = bwd[i]
    return set_colimit(objects, arrows)


def rand_globular_map(rng: random.Random, x: Zigzag, max_target: int = 3, extra: int = 1) -> ZigzagMap:
    """A random globular map out of x.

    Blocks of consecutive singular heights are glued by their fence colimit,
    then pushed along a random injection that may add fresh points; empty
    blocks insert a new height with equal forward and backward maps.
    """
    n = len(x)
    cuts = sorted(rng.sample(range(n + 1), rng.randint(0, n + 1)) if n else [])
    # blocks: a sequence of [c, d) intervals covering 0..n in order, possibly empty
    bounds = sorted(set(cuts) | {0, n})
    blocks = [(bounds[t], bounds[t + 1]) for t in range(len(bounds) - 1)] or []
    seq = []
    for blk in blocks:
        while rng.random() < 0.25 and len(seq) < max_target:
            seq.append((blk[0], blk[0]))
        seq.append(blk)
    if not seq or (rng.random() < 0.25 and len(seq) < max_target):
        seq.append((n, n))
    while len(seq) > max_target and any(c == d for c, d in seq):
        empties = [t for t, (c, d) in enumerate(seq) if c == d]
        del seq[rng.choice(empties)]
    regs, sings, fwd, bwd, sing, sslices = [], [], [], [], [], [None] * n
    for i, (c, d) in enumerate(seq):
        regs.append(x.regulars[c])
        if c == d:
            s = sset(rng.randint(1, 2))
            h = rand_fun(rng, x.regulars[c], s)
            sings.append(s)
            fwd.append(h)
            bwd.append(h)
            continue
        cls, size = _fence_colimit(x.regulars[c:d + 1], x.singulars[c:d], x.forward[c:d], x.backward[c:d])
        total = size + rng.randint(0, extra)
        perm = list(range(total))
        rng.shuffle(perm)
        s = sset(total)

        def leg(key, obj, perm=perm, cls=cls):
            return fmap(obj, s, [perm[cls[(key, e)]] for e in obj.elements])
        sings.append(s)
        fwd.append(leg(("r", 0), x.regulars[c]))
        bwd.append(leg(("r", d - c), x.regulars[d]))
        for k in range(c, d):
            sing.append(i)
            sslices[k] = leg(("s", k - c), x.singulars[k])
    regs.append(x.regulars[n])
    y = Zigzag(regs, sings, fwd, bwd)
    return ZigzagMap(x, y, tuple(sing), tuple(sslices), tuple(ident(r) for r in y.regulars))


def rand_map_into(rng: random.Random, y: Zigzag, max_extra: int = 2) -> ZigzagMap:
    """A random globular map into y.

    Heights of y are skipped only where forward and backward agree; each
    hit height receives a block of fresh singular objects whose elements are
    tagged by the regular element they come from, plus a few free points.
    """
    m = len(y)
    counts = []
    for i in range(m):
        lo = 0 if y.forward[i] == y.backward[i] else 1
        counts.append(rng.randint(lo, 2))
    regs, sings, fwd, bwd, sing, sslices = [], [], [], [], [], []
    for i in range(m):
        t = counts[i]
        if t == 0:
            continue
        ys = y.singulars[i]
        # regular objects of the block: y's boundaries, fresh sets inside
        block_regs = [y.regulars[i]] + [sset(rng.randint(0, 2)) for _ in range(t - 1)] + [y.regulars[i + 1]]
        diags = [y.forward[i]] + [rand_fun(rng, r, ys) for r in block_regs[1:-1]] + [y.backward[i]]
        for k in range(t):
            left, right = block_regs[k], block_regs[k + 1]
            elems = [("l", e) for e in left.elements] + [("r", e) for e in right.elements]
            elems += [("e", z) for z in range(rng.randint(0, max_extra))]
            s = SetObj(tuple(elems))
            image = {("l", e): diags[k](e) for e in left.elements}
            image |= {("r", e): diags[k + 1](e) for e in right.elements}
            image |= {el: rng.choice(ys.elements) for el in elems if el[0] == "e" and ys.elements}
            if any(el not in image for el in elems):
                s = SetObj(tuple(el for el in elems if el in image))
            if not regs:
                regs.append(left)
            regs.append(right)
            sings.append(s)
            fwd.append(fmap(left, s, [("l", e) for e in left.elements]))
            bwd.append(fmap(right, s, [("r", e) for e in right.elements]))
            sing.append(i)
            sslices.append(fmap(s, ys, [image[el] for el in s.elements]))
    if not regs:
        regs.append(y.regulars[0])
    x = Zigzag(regs, sings, fwd, bwd)
    return ZigzagMap(x, y, tuple(sing), tuple(sslices), tuple(ident(r) for r in y.regulars))


def set_maps(src: SetObj, tgt: SetObj):
    for table in itertools.product(tgt.elements, repeat=len(src)):
        yield Mor(src, tgt, table)


def compose(g: Mor, f: Mor) -> Mor:
    return FINSET.compose(g, f)
