"""Zigzags over a base category and the globular zigzag category.

A zigzag of length n is a row of cospans

    X(r0) -> X(s0) <- X(r1) -> ... <- X(rn)

and a zigzag map X -> Y is a monotone singular map |X| -> |Y| together with
singular and regular slices. ``ZigCategory(base)`` packages zigzags and
their maps as a ``Category`` so the construction can be iterated.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Optional, Sequence

from .errors import CapabilityMissing, NoColimit, ValidationError
from .fincat import FINORD, Category, Cocone, Diagram, Mor
from .poset import FinPoset
from .util import sort_key


def reg_dual(f: Sequence[int], n: int, m: int) -> tuple:
    """Reg f : ord(m+1) -> ord(n+1) for a monotone f : ord n -> ord m."""
    return tuple(min([j for j in range(n) if f[j] >= i] + [n]) for i in range(m + 1))


def is_monotone_map(f: Sequence[int], m: int) -> bool:
    return all(0 <= v < m for v in f) and all(a <= b for a, b in zip(f, f[1:]))


@dataclass(frozen=True)
class Zigzag:
    regulars: tuple
    singulars: tuple
    forward: tuple   # X(r i) -> X(s i)
    backward: tuple  # X(r i+1) -> X(s i)

    def __post_init__(self):
        for name in ("regulars", "singulars", "forward", "backward"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        n = len(self.singulars)
        if len(self.regulars) != n + 1 or len(self.forward) != n or len(self.backward) != n:
            raise ValidationError("zigzag needs n singular objects, n+1 regular objects and 2n maps")

    @classmethod
    def point(cls, obj) -> "Zigzag":
        return cls((obj,), (), (), ())

    def __len__(self):
        return len(self.singulars)

    def reg(self, j):
        return self.regulars[j]

    def sing(self, i):
        return self.singulars[i]

    def __repr__(self):
        from .syntax import print_object
        try:
            return print_object(self)
        except Exception:  # pragma: no cover - repr must never fail
            return f"Zigzag(len={len(self)})"


@dataclass(frozen=True)
class ZigzagMap:
    source: Zigzag
    target: Zigzag
    sing: tuple
    sslices: tuple
    rslices: tuple

    def __post_init__(self):
        for name in ("sing", "sslices", "rslices"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def reg(self) -> tuple:
        return reg_dual(self.sing, len(self.source), len(self.target))

    def preimage(self, i) -> list:
        return [j for j, v in enumerate(self.sing) if v == i]

    def __repr__(self):
        return f"ZigzagMap(sing={self.sing}, {len(self.source)}->{len(self.target)})"


def restrict(x: Zigzag, a: int, b: int) -> Zigzag:
    if not 0 <= a <= b <= len(x):
        raise ValidationError(f"restriction [{a}, {b}] out of range for length {len(x)}")
    return Zigzag(x.regulars[a:b + 1], x.singulars[a:b], x.forward[a:b], x.backward[a:b])


def restrict_map(f: ZigzagMap, a: int, b: int) -> ZigzagMap:
    """f[a, b] : X[c, d] -> Y[a, b] with [c, d] = Reg f([a, b])."""
    if not 0 <= a <= b <= len(f.target):
        raise ValidationError(f"restriction [{a}, {b}] out of range for length {len(f.target)}")
    reg = f.reg
    c, d = reg[a], reg[b]
    return ZigzagMap(restrict(f.source, c, d), restrict(f.target, a, b),
                     tuple(v - a for v in f.sing[c:d]), f.sslices[c:d], f.rslices[a:b + 1])


class ZigCategory(Category):
    """Zigzags in ``base`` with zigzag maps; globularity is checked separately."""

    def __init__(self, base: Category):
        self.base = base
        self.name = f"Zig({base.name})"

    def _key(self):
        return (self.base,)

    @property
    def thin(self):
        return False

    @property
    def depth(self) -> int:
        return 1 + getattr(self.base, "depth", 0)

    # --- validation

    def validate_zigzag(self, x: Zigzag) -> Zigzag:
        for i in range(len(x)):
            f, g = x.forward[i], x.backward[i]
            if f.source != x.regulars[i] or f.target != x.singulars[i]:
                raise ValidationError(f"forward map at height {i} is ill-typed")
            if g.source != x.regulars[i + 1] or g.target != x.singulars[i]:
                raise ValidationError(f"backward map at height {i} is ill-typed")
        return x

    def diagonals(self, f: ZigzagMap) -> dict:
        """Validate f; return diagonal slices keyed by (j, i)."""
        return _diagonals(self.base, f)

    def validate_map(self, f: ZigzagMap) -> ZigzagMap:
        self.diagonals(f)
        return f

    def is_valid_map(self, f: ZigzagMap) -> bool:
        try:
            self.diagonals(f)
            return True
        except ValidationError:
            return False

    def is_globular(self, f: ZigzagMap) -> bool:
        return all(s.source == s.target and s == self.base.identity(s.source) for s in f.rslices)

    # --- category structure

    def identity(self, x: Zigzag) -> ZigzagMap:
        b = self.base
        return ZigzagMap(x, x, tuple(range(len(x))), tuple(b.identity(o) for o in x.singulars),
                         tuple(b.identity(o) for o in x.regulars))

    def compose(self, g: ZigzagMap, f: ZigzagMap) -> ZigzagMap:
        if f.target != g.source:
            raise ValidationError("cannot compose zigzag maps: middle zigzags differ")
        b = self.base
        g_r = g.reg
        return ZigzagMap(f.source, g.target, tuple(g.sing[v] for v in f.sing),
                         tuple(b.compose(g.sslices[v], s) for v, s in zip(f.sing, f.sslices)),
                         tuple(b.compose(g.rslices[j], f.rslices[g_r[j]]) for j in range(len(g.target) + 1)))

    def is_iso(self, f: ZigzagMap) -> bool:
        return (len(f.source) == len(f.target) and f.sing == tuple(range(len(f.target)))
                and all(self.base.is_iso(s) for s in f.sslices + f.rslices))

    def morphism(self, source, target, sing, sslices, rslices) -> ZigzagMap:
        return self.validate_map(ZigzagMap(source, target, sing, sslices, rslices))

    # --- colimits

    def colimit(self, diagram: Diagram, pick=None) -> Cocone:
        return zigzag_colimit(diagram, pick=pick)

    def is_colimit(self, diagram: Diagram, apex: Zigzag, legs: Mapping) -> bool:
        shape = diagram.shape
        if not shape.is_connected():
            return False
        if not all(self.is_globular(legs[x]) for x in shape):
            return False
        ordd = ord_projection(diagram)
        if not FINORD.is_colimit(ordd, len(apex), {x: Mor(len(diagram.objects[x]), len(apex), legs[x].sing)
                                                  for x in shape}):
            return False
        for i in range(len(apex)):
            exp_shape, g, g_legs = explode_height(self, diagram, legs, i)
            if not self.base.is_colimit(g, apex.singulars[i], g_legs):
                return False
        return True

    # --- factorisation

    def factorise_sink(self, legs, target):
        return factorise_zigzag_sink(self, list(legs), target)

    def orthogonal_lift(self, e_legs, m, tops, bottom):
        return zigzag_orthogonal_lift(self, list(e_legs), m, list(tops), bottom)

    def in_E(self, legs, target) -> bool:
        for k in range(len(target)):
            slices = [f.sslices[j] for f in legs for j in f.preimage(k)]
            if not self.base.in_E(slices, target.singulars[k]):
                return False
        return True

    def in_M(self, m) -> bool:
        return (self.is_globular(m) and m.sing == tuple(range(len(m.target)))
                and all(self.base.in_M(s) for s in m.sslices))

    # --- lifts

    def lifts(self, f: ZigzagMap, leg: ZigzagMap):
        """Globular h with leg . h == f."""
        if f.target != leg.target:
            raise ValidationError("lift: zigzag maps do not share a codomain")
        x, a = f.source, leg.source
        n, k = len(x), len(a)
        for hs in _monotone_maps(n, k):
            if any(leg.sing[hs[i]] != f.sing[i] for i in range(n)):
                continue
            h_r = reg_dual(hs, n, k)
            if any(x.regulars[h_r[j]] != a.regulars[j] for j in range(k + 1)):
                continue
            rs = tuple(self.base.identity(a.regulars[j]) for j in range(k + 1))
            options = [list(self.base.lifts(f.sslices[i], leg.sslices[hs[i]])) for i in range(n)]
            for ss in product(*options):
                h = ZigzagMap(x, a, hs, ss, rs)
                if self.is_valid_map(h) and self.compose(leg, h) == f:
                    yield h

    def extension_anticolimits(self, shape, fixed_objects, fixed_arrows, apex, legs, bound):
        from .anticontract import zigzag_anticolimits
        return zigzag_anticolimits(self, shape, fixed_objects, fixed_arrows, apex, legs, bound)


def _monotone_maps(n: int, k: int):
    def go(prefix, lo):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(lo, k):
            yield from go(prefix + [v], v)
    return go([], 0)


@lru_cache(maxsize=4096)
def _diagonals(base: Category, f: ZigzagMap) -> dict:
    x, y = f.source, f.target
    n, m = len(x), len(y)
    if len(f.sing) != n or not is_monotone_map(f.sing, m):
        raise ValidationError("singular map is not a monotone map of the right type")
    if len(f.sslices) != n or len(f.rslices) != m + 1:
        raise ValidationError("wrong number of slices")
    reg = f.reg
    for i, s in enumerate(f.sslices):
        if s.source != x.singulars[i] or s.target != y.singulars[f.sing[i]]:
            raise ValidationError(f"singular slice {i} is ill-typed")
    for j, r in enumerate(f.rslices):
        if r.source != x.regulars[reg[j]] or r.target != y.regulars[j]:
            raise ValidationError(f"regular slice {j} is ill-typed")
    comp = base.compose
    diag = {}
    for i in range(m):
        pre = f.preimage(i)
        if not pre:
            left = comp(y.forward[i], f.rslices[i])
            right = comp(y.backward[i], f.rslices[i + 1])
            if left != right:
                raise ValidationError(f"triangle at height {i} (empty preimage) does not commute")
            diag[(reg[i], i)] = left
            continue
        a, b = pre[0], pre[-1]
        left = comp(y.forward[i], f.rslices[i])
        if left != comp(f.sslices[a], x.forward[a]):
            raise ValidationError(f"square at height {i}, family 'bottom' does not commute")
        diag[(a, i)] = left
        right = comp(y.backward[i], f.rslices[i + 1])
        if right != comp(f.sslices[b], x.backward[b]):
            raise ValidationError(f"square at height {i}, family 'top' does not commute")
        diag[(b + 1, i)] = right
        for j in range(a, b):
            lo = comp(f.sslices[j], x.backward[j])
            if lo != comp(f.sslices[j + 1], x.forward[j + 1]):
                raise ValidationError(f"diagonal at height {i}, regular {j + 1} does not commute")
            diag[(j + 1, i)] = lo
    return diag


# ------------------------------------------------------------- explosion

def s_(x, i):
    return ("s", x, i)


def r_(x, j):
    return ("r", x, j)


def explode_shape(shape: FinPoset, lengths: Mapping, sing: Mapping) -> FinPoset:
    elems, pairs = [], []
    for x in shape:
        n = lengths[x]
        elems += [r_(x, j) for j in range(n + 1)] + [s_(x, i) for i in range(n)]
        for i in range(n):
            pairs += [(r_(x, i), s_(x, i)), (r_(x, i + 1), s_(x, i))]
    for a, b in shape.strict_pairs():
        f = sing[(a, b)]
        na, nb = lengths[a], lengths[b]
        reg = reg_dual(f, na, nb)
        pairs += [(s_(a, i), s_(b, f[i])) for i in range(na)]
        pairs += [(r_(a, reg[j]), r_(b, j)) for j in range(nb + 1)]
        for i in range(nb):
            pairs += [(r_(a, j), s_(b, i)) for j in range(reg[i], reg[i + 1] + 1)]
    return FinPoset.from_relations(elems, pairs)


def explode(diagram: Diagram):
    """(Exp shape, base diagram) for a diagram of zigzags."""
    zcat = diagram.cat
    shape = diagram.shape
    lengths = {x: len(z) for x, z in diagram.objects.items()}
    sing = {p: f.sing for p, f in diagram.arrows.items()}
    exp = explode_shape(shape, lengths, sing)
    objects, arrows = {}, {}
    for x, z in diagram.objects.items():
        for j, o in enumerate(z.regulars):
            objects[r_(x, j)] = o
        for i, o in enumerate(z.singulars):
            objects[s_(x, i)] = o
            arrows[(r_(x, i), s_(x, i))] = z.forward[i]
            arrows[(r_(x, i + 1), s_(x, i))] = z.backward[i]
    for (a, b), f in diagram.arrows.items():
        reg = f.reg
        for i, sl in enumerate(f.sslices):
            arrows[(s_(a, i), s_(b, f.sing[i]))] = sl
        for j, sl in enumerate(f.rslices):
            arrows[(r_(a, reg[j]), r_(b, j))] = sl
        for (j, i), d in zcat.diagonals(f).items():
            arrows[(r_(a, j), s_(b, i))] = d
    return exp, Diagram.build(zcat.base, exp, objects, arrows)


def unexplode(zcat: ZigCategory, shape: FinPoset, lengths: Mapping, sing: Mapping,
              g: Diagram) -> Diagram:
    objects = {}
    for x in shape:
        n = lengths[x]
        objects[x] = zcat.validate_zigzag(Zigzag(
            [g.objects[r_(x, j)] for j in range(n + 1)], [g.objects[s_(x, i)] for i in range(n)],
            [g.arrow(r_(x, i), s_(x, i)) for i in range(n)],
            [g.arrow(r_(x, i + 1), s_(x, i)) for i in range(n)]))
    arrows = {}
    for a, b in shape.strict_pairs():
        f = tuple(sing[(a, b)])
        reg = reg_dual(f, lengths[a], lengths[b])
        arrows[(a, b)] = zcat.validate_map(ZigzagMap(
            objects[a], objects[b], f,
            [g.arrow(s_(a, i), s_(b, f[i])) for i in range(lengths[a])],
            [g.arrow(r_(a, reg[j]), r_(b, j)) for j in range(lengths[b] + 1)]))
    return Diagram.build(zcat, shape, objects, arrows)


def ord_projection(diagram: Diagram) -> Diagram:
    lengths = {x: len(z) for x, z in diagram.objects.items()}
    return Diagram(FINORD, diagram.shape, lengths,
                   {(a, b): Mor(lengths[a], lengths[b], f.sing) for (a, b), f in diagram.arrows.items()})


def height_restriction(diagram: Diagram, ord_legs: Mapping, i: int, n: int) -> tuple[Diagram, dict]:
    """F^i: each zigzag cut down to the part over height i of ord n; also the offsets."""
    zcat = diagram.cat
    spans = {}
    for x, z in diagram.objects.items():
        reg = reg_dual(ord_legs[x], len(z), n)
        spans[x] = (reg[i], reg[i + 1])
    objects = {x: restrict(z, *spans[x]) for x, z in diagram.objects.items()}
    arrows = {}
    for (a, b), f in diagram.arrows.items():
        arrows[(a, b)] = restrict_map(f, *spans[b])
    return Diagram(zcat, diagram.shape, objects, arrows), spans


def explode_height(zcat: ZigCategory, diagram: Diagram, legs: Mapping, i: int):
    """Explosion of F^i with the cocone into Y(s i) given by singular and diagonal slices."""
    n = len(next(iter(legs.values())).target)
    f_i, spans = height_restriction(diagram, {x: legs[x].sing for x in diagram.shape}, i, n)
    exp, g = explode(f_i)
    g_legs = {}
    for x in diagram.shape:
        c, d = spans[x]
        diag = zcat.diagonals(legs[x])
        for k in range(c, d):
            g_legs[s_(x, k - c)] = legs[x].sslices[k]
        for j in range(c, d + 1):
            g_legs[r_(x, j - c)] = diag[(j, i)]
    return exp, g, g_legs


def zigzag_colimit(diagram: Diagram, pick: Optional[int] = None) -> Cocone:
    """Colimit of a connected diagram of globular zigzag maps.

    Lengths are glued in Ord, then each height is a colimit of an exploded
    diagram in the base. When the Ord colimit is not a total order, ``pick``
    selects one of its linear extensions (the result is then a cocone that
    is biased, not a colimit).
    """
    zcat: ZigCategory = diagram.cat
    shape = diagram.shape
    if not shape.is_connected():
        raise NoColimit("zigzag colimits need a connected shape")
    for (a, b), f in diagram.arrows.items():
        if not zcat.is_globular(f):
            raise ValidationError(f"arrow {a!r} -> {b!r} is not globular")
    cocones = FINORD.linear_cocones(ord_projection(diagram))
    if len(cocones) == 1:
        ord_cocone = cocones[0]
    elif pick is None:
        raise NoColimit(f"heights cannot be ordered uniquely ({len(cocones)} linear extensions); "
                        "choose one with pick")
    elif not 0 <= pick < len(cocones):
        raise NoColimit(f"pick {pick} out of range ({len(cocones)} linear extensions)")
    else:
        ord_cocone = cocones[pick]
    n = ord_cocone.apex
    lam = {x: ord_cocone.legs[x].table for x in shape}
    regs = []
    for j in range(n + 1):
        cands = {diagram.objects[x].regulars[reg_dual(lam[x], len(diagram.objects[x]), n)[j]]
                 for x in shape}
        if len(cands) != 1:
            raise NoColimit(f"regular objects at height {j} disagree")
        regs.append(cands.pop())
    sings, fwd, bwd, slices = [], [], [], {x: {} for x in shape}
    x0 = sorted(shape, key=sort_key)[0]
    for i in range(n):
        f_i, spans = height_restriction(diagram, lam, i, n)
        exp, g = explode(f_i)
        col = (zcat.base.colimit(g, pick=pick) if isinstance(zcat.base, ZigCategory)
               else zcat.base.colimit(g))
        sings.append(col.apex)
        c, d = spans[x0]
        fwd.append(col.legs[r_(x0, 0)])
        bwd.append(col.legs[r_(x0, d - c)])
        for x in shape:
            c, d = spans[x]
            for k in range(c, d):
                slices[x][k] = col.legs[s_(x, k - c)]
    y = zcat.validate_zigzag(Zigzag(regs, sings, fwd, bwd))
    legs = {}
    for x in shape:
        z = diagram.objects[x]
        reg = reg_dual(lam[x], len(z), n)
        legs[x] = zcat.validate_map(ZigzagMap(
            z, y, lam[x], [slices[x][k] for k in range(len(z))],
            [zcat.base.identity(z.regulars[reg[j]]) for j in range(n + 1)]))
    return Cocone(diagram, y, legs)


def contraction(zcat: ZigCategory, x: Zigzag, pick: Optional[int] = None) -> ZigzagMap:
    """The map from x onto a length-1 zigzag whose singular object is colim of x's fence."""
    single = FinPoset.chain(1)
    exp, g = explode(Diagram(zcat, single, {0: x}, {}))
    base = zcat.base
    try:
        col = base.colimit(g, pick=pick) if isinstance(base, ZigCategory) else base.colimit(g)
    except (NoColimit, CapabilityMissing) as err:
        raise NoColimit(f"the contraction is not defined: {err}") from err
    n = len(x)
    first, last = x.regulars[0], x.regulars[n]
    target = zcat.validate_zigzag(Zigzag([first, last], [col.apex],
                                         [col.legs[r_(0, 0)]], [col.legs[r_(0, n)]]))
    return zcat.validate_map(ZigzagMap(
        x, target, (0,) * n, [col.legs[s_(0, i)] for i in range(n)],
        [base.identity(first), base.identity(last)]))


# --------------------------------------------------------- factorisation

def factorise_zigzag_sink(zcat: ZigCategory, legs: list[ZigzagMap], y: Zigzag):
    """(Sing(E), Relab(M)) factorisation of a sink of globular maps into y."""
    base = zcat.base
    for f in legs:
        if f.target != y:
            raise ValidationError("factorise: leg does not land in the target")
        if not zcat.is_globular(f):
            raise ValidationError("factorise: leg is not globular")
    sings, fwd, bwd, msl = [], [], [], []
    e_slices = [dict() for _ in legs]
    for k in range(len(y)):
        pairs = [(t, j) for t, f in enumerate(legs) for j in f.preimage(k)]
        if not pairs:
            sings.append(y.singulars[k])
            msl.append(base.identity(y.singulars[k]))
            fwd.append(y.forward[k])
            bwd.append(y.backward[k])
            continue
        es, m = base.factorise_sink([legs[t].sslices[j] for t, j in pairs], y.singulars[k])
        for (t, j), e in zip(pairs, es):
            e_slices[t][j] = e
        sings.append(m.source)
        msl.append(m)
        t = pairs[0][0]
        pre = legs[t].preimage(k)
        x = legs[t].source
        fwd.append(base.compose(e_slices[t][pre[0]], x.forward[pre[0]]))
        bwd.append(base.compose(e_slices[t][pre[-1]], x.backward[pre[-1]]))
    z = zcat.validate_zigzag(Zigzag(y.regulars, sings, fwd, bwd))
    e_legs = [zcat.validate_map(ZigzagMap(
        f.source, z, f.sing, [e_slices[t][j] for j in range(len(f.source))], f.rslices))
        for t, f in enumerate(legs)]
    m = zcat.validate_map(ZigzagMap(z, y, tuple(range(len(y))), msl,
                                    [base.identity(o) for o in y.regulars]))
    return e_legs, m


def zigzag_orthogonal_lift(zcat: ZigCategory, e_legs, m: ZigzagMap, tops, bottom: ZigzagMap):
    """The unique h : Y -> Z with h . e_i = top_i and m . h = bottom."""
    base = zcat.base
    for e, t in zip(e_legs, tops):
        if zcat.compose(m, t) != zcat.compose(bottom, e):
            raise ValidationError("orthogonal lift: outer square does not commute")
    y = bottom.source
    hs = bottom.sing
    ss = []
    for k in range(len(y)):
        pairs = [(t, j) for t, e in enumerate(e_legs) for j in e.preimage(k)]
        if not pairs:
            # no slice reaches height k: m is monic there, so factor bottom through it
            lift = base.find_lift(bottom.sslices[k], m.sslices[hs[k]])
            if lift is None:
                raise ValidationError(f"orthogonal lift: bottom does not factor through m at height {k}")
            ss.append(lift)
            continue
        ss.append(base.orthogonal_lift([e_legs[t].sslices[j] for t, j in pairs], m.sslices[hs[k]],
                                       [tops[t].sslices[j] for t, j in pairs], bottom.sslices[k]))
    h = zcat.validate_map(ZigzagMap(y, m.source, hs, ss, bottom.rslices))
    if zcat.compose(m, h) != bottom or any(zcat.compose(h, e) != t for e, t in zip(e_legs, tops)):
        raise ValidationError("orthogonal lift: no commuting diagonal")
    return h


def zig_tower(base: Category, n: int) -> Category:
    cat = base
    for _ in range(n):
        cat = ZigCategory(cat)
    return cat
