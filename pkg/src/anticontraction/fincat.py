"""Finite concrete categories and poset-shaped diagrams in them.

Instances: finite sets (``FINSET``), preorders (``FINPRE``), posets
(``FINPOS``), finite ordinals (``FINORD``) and dimension-ordered label posets
(``LabelPoset``). Objects of the concrete ones are ``SetObj``, ``PreObj`` and
plain ints (ordinal ``n`` is ``{0 < ... < n-1}``). Morphisms are ``Mor``
records whose table lists images in carrier order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import CapabilityMissing, NoColimit, NoLimit, ValidationError
from .poset import FinPoset
from .util import UnionFind, sort_key, sorted_ids, transitive_closure


# ------------------------------------------------------------------ objects

@dataclass(frozen=True)
class SetObj:
    elements: tuple

    def __post_init__(self):
        elems = tuple(sorted_ids(set(self.elements)))
        if len(elems) != len(self.elements):
            raise ValidationError("set literal has repeated elements")
        object.__setattr__(self, "elements", elems)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class PreObj:
    elements: tuple
    leq: frozenset

    def __post_init__(self):
        elems = tuple(sorted_ids(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "leq", transitive_closure(elems, self.leq))

    def __len__(self):
        return len(self.elements)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def is_antisymmetric(self) -> bool:
        return all(a == b or (b, a) not in self.leq for a, b in self.leq)

    def is_total(self) -> bool:
        return all((a, b) in self.leq or (b, a) in self.leq
                   for a in self.elements for b in self.elements)

    def __repr__(self):
        rel = ",".join(f"{a}<={b}" for a, b in sorted(self.leq, key=sort_key) if a != b)
        return "{" + ",".join(map(str, self.elements)) + " | " + rel + "}"


def carrier(obj) -> tuple:
    if isinstance(obj, bool):
        raise ValidationError("not a concrete object")
    if isinstance(obj, int):
        return tuple(range(obj))
    if isinstance(obj, (SetObj, PreObj)):
        return obj.elements
    raise ValidationError(f"{obj!r} is not a concrete object")


def order(obj) -> frozenset:
    if isinstance(obj, int):
        return frozenset((i, j) for i in range(obj) for j in range(i, obj))
    if isinstance(obj, PreObj):
        return obj.leq
    return frozenset((x, x) for x in carrier(obj))


@dataclass(frozen=True)
class Mor:
    """A morphism. ``table`` is None in thin categories."""

    source: Any
    target: Any
    table: Optional[tuple] = None

    @cached_property
    def _lookup(self) -> dict:
        return dict(zip(carrier(self.source), self.table))

    def __call__(self, x):
        return self._lookup[x]

    def __repr__(self):
        if self.table is None:
            return f"{self.source}->{self.target}"
        if isinstance(self.source, int):
            return "Mor(" + ord_digits(self.table) + ")"
        return "[" + ", ".join(f"{x}->{y}" for x, y in zip(carrier(self.source), self.table)) + "]"


def ord_digits(table: Sequence[int]) -> str:
    if any(v >= 10 for v in table):
        return ".".join(map(str, table))
    return "".join(map(str, table))


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class Diagram:
    """A functor from a finite poset into a category.

    ``arrows`` holds a morphism for every strict pair a < b.
    """

    cat: Any
    shape: FinPoset
    objects: Mapping = field(hash=False)
    arrows: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", dict(self.objects))
        object.__setattr__(self, "arrows", dict(self.arrows))

    def __eq__(self, other):
        return (isinstance(other, Diagram) and self.shape == other.shape
                and self.objects == other.objects and self.arrows == other.arrows)

    def __hash__(self):
        return hash(self.shape)

    @classmethod
    def build(cls, cat, shape: FinPoset, objects: Mapping, arrows: Mapping) -> "Diagram":
        """Complete arrows given on (at least) the covering pairs.

        Composites are computed along covering chains and every supplied
        arrow must agree with them.
        """
        objects = dict(objects)
        given = dict(arrows)
        for a in shape:
            if a not in objects:
                raise ValidationError(f"diagram has no object at {a!r}")
        full: dict = {}
        for a, b in shape.covers:
            if (a, b) not in given:
                raise ValidationError(f"diagram has no arrow on covering pair ({a!r}, {b!r})")
            f = given[(a, b)]
            if f.source != objects[a] or f.target != objects[b]:
                raise ValidationError(f"arrow ({a!r}, {b!r}) is ill-typed")
            full[(a, b)] = f
        covers_from: dict = {}
        for a, b in shape.covers:
            covers_from.setdefault(a, []).append(b)
        for a in shape.topological(descending=True):
            for b in sorted(shape.upper_set(a) - {a}, key=sort_key):
                composites = []
                for c in covers_from.get(a, []):
                    if c == b:
                        composites.append(full[(a, b)])
                    elif shape.le(c, b):
                        composites.append(cat.compose(full[(c, b)], full[(a, c)]))
                first = composites[0]
                for other in composites[1:]:
                    if other != first:
                        raise ValidationError(f"diagram does not commute between {a!r} and {b!r}")
                if (a, b) in given and given[(a, b)] != first:
                    raise ValidationError(f"arrow ({a!r}, {b!r}) disagrees with the composite")
                full[(a, b)] = first
        return cls(cat, shape, objects, full)

    def arrow(self, a, b):
        if a == b:
            return self.cat.identity(self.objects[a])
        return self.arrows[(a, b)]

    def restrict(self, subset: Iterable) -> "Diagram":
        sub = self.shape.subposet(subset)
        return Diagram(self.cat, sub, {a: self.objects[a] for a in sub},
                       {(a, b): f for (a, b), f in self.arrows.items() if a in sub and b in sub})

    def map_objects(self, cat, fobj, fmor) -> "Diagram":
        return Diagram(cat, self.shape, {a: fobj(x) for a, x in self.objects.items()},
                       {k: fmor(f) for k, f in self.arrows.items()})


@dataclass(frozen=True)
class Sink:
    """Legs into a common apex, indexed by the maximal elements of a shape."""

    apex: Any
    legs: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "legs", dict(self.legs))
        for v, f in self.legs.items():
            if f.target != self.apex:
                raise ValidationError(f"sink leg at {v!r} does not land in the apex")

    def __eq__(self, other):
        return isinstance(other, Sink) and self.apex == other.apex and self.legs == other.legs

    def __hash__(self):
        return hash(tuple(sorted(self.legs, key=sort_key)))

    @property
    def sources(self) -> dict:
        return {v: f.source for v, f in self.legs.items()}


@dataclass(frozen=True)
class Cocone:
    diagram: Diagram
    apex: Any
    legs: Mapping = field(hash=False)  # every element of the shape

    def __post_init__(self):
        object.__setattr__(self, "legs", dict(self.legs))

    def __eq__(self, other):
        return (isinstance(other, Cocone) and self.apex == other.apex
                and self.legs == other.legs and self.diagram == other.diagram)

    def __hash__(self):
        return hash(self.diagram)

    def sink(self) -> Sink:
        return Sink(self.apex, {v: self.legs[v] for v in self.diagram.shape.maximal})


def cocone_legs(diagram: Diagram, sink: Sink) -> Optional[dict]:
    """Extend sink legs to all elements; None if the cocone condition fails."""
    cat = diagram.cat
    shape = diagram.shape
    legs = {}
    for i in shape:
        cands = [cat.compose(sink.legs[j], diagram.arrow(i, j)) for j in sorted(shape.upper_max(i), key=sort_key)]
        if any(c != cands[0] for c in cands[1:]):
            return None
        legs[i] = cands[0]
    return legs


def greatest(shape: FinPoset):
    """The top element of a shape, if it has one."""
    if len(shape.maximal) == 1:
        (top,) = shape.maximal
        if all(shape.le(i, top) for i in shape):
            return top
    return None


# --------------------------------------------------------------- interface

class Category:
    """Uniform interface. Optional constructions raise CapabilityMissing."""

    name = "category"
    thin = False

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        return ()

    def __repr__(self):
        return self.name

    def identity(self, x) -> Mor:
        raise NotImplementedError

    def compose(self, g, f):
        """g after f."""
        raise NotImplementedError

    def is_iso(self, f) -> bool:
        raise NotImplementedError

    def is_epi(self, f) -> bool:
        raise CapabilityMissing(f"{self.name}: epimorphism test")

    def hom(self, a, b) -> Iterator:
        raise CapabilityMissing(f"{self.name}: hom-set enumeration")

    def wide_pullback(self, legs: Sequence):
        raise CapabilityMissing(f"{self.name}: pullbacks")

    def colimit(self, diagram: Diagram, pick=None) -> Cocone:
        raise CapabilityMissing(f"{self.name}: colimits")

    def is_colimit(self, diagram: Diagram, apex, legs: Mapping) -> bool:
        raise CapabilityMissing(f"{self.name}: colimit test")

    def is_jointly_epic(self, legs: Sequence, apex) -> bool:
        raise CapabilityMissing(f"{self.name}: joint epicity")

    def factorise_sink(self, legs: Sequence, target):
        raise CapabilityMissing(f"{self.name}: sink factorisation")

    def orthogonal_lift(self, e_legs: Sequence, m, tops: Sequence, bottom):
        raise CapabilityMissing(f"{self.name}: orthogonal lifts")

    def in_E(self, legs: Sequence, target) -> bool:
        raise CapabilityMissing(f"{self.name}: sink factorisation")

    def in_M(self, m) -> bool:
        raise CapabilityMissing(f"{self.name}: sink factorisation")

    def lifts(self, f, leg) -> Iterator:
        raise CapabilityMissing(f"{self.name}: lift search")

    def cone_candidates(self, targets: Sequence, arrows: Mapping, legs: Mapping, bound):
        """Objects with compatible maps to every object in ``targets``.

        ``targets`` lists (element, object) pairs of an up-closed region,
        ``arrows`` the diagram arrows among them and ``legs`` their cocone
        legs. Yields (object, {element: morphism}).
        """
        raise CapabilityMissing(f"{self.name}: anticolimit enumeration")

    def find_lift(self, f, leg):
        """Some h with leg . h == f, or None."""
        if f.target != leg.target:
            raise ValidationError("find_lift: morphisms do not share a codomain")
        return next(iter(self.lifts(f, leg)), None)


# --------------------------------------------------------- concrete cats

class ConcreteCategory(Category):
    """Categories of finite (pre)ordered sets and order-preserving maps."""

    ordered = True

    def carrier(self, x) -> tuple:
        return carrier(x)

    def order(self, x) -> frozenset:
        return order(x)

    def identity(self, x) -> Mor:
        return Mor(x, x, carrier(x))

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f.target != g.source:
            raise ValidationError(f"cannot compose {g!r} after {f!r}")
        return Mor(f.source, g.target, tuple(g(y) for y in f.table))

    def morphism(self, source, target, mapping) -> Mor:
        """Build and check a morphism from a dict or an image tuple."""
        src = carrier(source)
        if isinstance(mapping, Mapping):
            table = tuple(mapping[x] for x in src)
        else:
            table = tuple(mapping)
        if len(table) != len(src):
            raise ValidationError("function is not total")
        tgt = set(carrier(target))
        if any(y not in tgt for y in table):
            raise ValidationError("function leaves its codomain")
        f = Mor(source, target, table)
        if self.ordered:
            to = order(target)
            for a, b in order(source):
                if (f(a), f(b)) not in to:
                    raise ValidationError(f"map is not monotone on {a}<={b}")
        return f

    def is_monotone(self, f: Mor) -> bool:
        if not self.ordered:
            return True
        to = order(f.target)
        return all((f(a), f(b)) in to for a, b in order(f.source))

    def is_iso(self, f: Mor) -> bool:
        if len(set(f.table)) != len(carrier(f.target)) or len(f.table) != len(carrier(f.target)):
            return False
        if not self.ordered:
            return True
        so, to = order(f.source), order(f.target)
        return all(((a, b) in so) == ((f(a), f(b)) in to)
                   for a in carrier(f.source) for b in carrier(f.source))

    def is_epi(self, f: Mor) -> bool:
        return set(f.table) == set(carrier(f.target))

    def is_mono(self, f: Mor) -> bool:
        return len(set(f.table)) == len(f.table)

    def hom(self, a, b) -> Iterator[Mor]:
        for table in product(carrier(b), repeat=len(carrier(a))):
            f = Mor(a, b, tuple(table))
            if self.is_monotone(f):
                yield f

    def is_jointly_epic(self, legs: Sequence, apex) -> bool:
        hit = set()
        for f in legs:
            hit.update(f.table)
        return hit == set(carrier(apex))

    def lifts(self, f: Mor, leg: Mor) -> Iterator[Mor]:
        if f.target != leg.target:
            raise ValidationError("lift: morphisms do not share a codomain")
        choices = [[a for a in carrier(leg.source) if leg(a) == f(x)] for x in carrier(f.source)]
        for table in product(*choices):
            h = Mor(f.source, leg.source, tuple(table))
            if self.is_monotone(h):
                yield h

    def compatible_families(self, targets: Sequence, arrows: Mapping, legs: Mapping) -> list[tuple]:
        """Tuples (x_j) over ``targets`` commuting with arrows and agreeing in the apex."""
        names = [j for j, _ in targets]
        pos = {j: k for k, j in enumerate(names)}
        out = []

        def go(k, chosen):
            if k == len(names):
                out.append(tuple(chosen))
                return
            j, obj = targets[k]
            for x in carrier(obj):
                if chosen and legs[j](x) != legs[names[0]](chosen[0]):
                    continue
                ok = True
                for a in names[:k]:
                    f = arrows.get((a, j))
                    if f is not None and f(chosen[pos[a]]) != x:
                        ok = False
                        break
                    g = arrows.get((j, a))
                    if g is not None and g(x) != chosen[pos[a]]:
                        ok = False
                        break
                if ok:
                    go(k + 1, chosen + [x])

        go(0, [])
        return out

    def cone_candidates(self, targets, arrows, legs, bound):
        if bound is None:
            raise ValidationError("enumeration in a concrete category needs a size bound")
        fams = self.compatible_families(targets, arrows, legs)
        for obj, members in self._carriers_over(fams, targets, bound):
            maps = {j: Mor(obj, tobj, tuple(m[k] for m in members))
                    for k, (j, tobj) in enumerate(targets)}
            yield obj, maps

    def _carriers_over(self, fams, targets, bound):
        raise CapabilityMissing(f"{self.name}: anticolimit enumeration")

    # Pre-level constructions, finished per category by _finish.

    def _finish(self, elements: list, leq: frozenset):
        """Turn a preorder (elements, leq) into an object of this category.

        Returns (object, renaming) where renaming maps old elements to new.
        """
        raise NotImplementedError

    def wide_pullback(self, legs: Sequence[Mor]):
        legs = list(legs)
        if not legs:
            raise NoLimit("wide pullback of an empty family")
        apex_c = legs[0].target
        if any(f.target != apex_c for f in legs):
            raise ValidationError("pullback legs do not share a codomain")
        elems = [t for t in product(*(carrier(f.source) for f in legs))
                 if all(f(x) == legs[0](t[0]) for f, x in zip(legs, t))]
        orders = [order(f.source) for f in legs]
        leq = frozenset((s, t) for s in elems for t in elems
                        if all((x, y) in o for x, y, o in zip(s, t, orders)))
        obj, rename = self._finish(elems, leq)
        back = {rename[t]: t for t in elems}
        projections = [Mor(obj, f.source, tuple(back[z][k] for z in carrier(obj)))
                       for k, f in enumerate(legs)]
        return obj, projections

    def _pre_colimit(self, diagram: Diagram):
        shape = diagram.shape
        uf = UnionFind()
        for i in shape.topological():
            for x in carrier(diagram.objects[i]):
                uf.add((i, x))
        for a, b in shape.covers:
            f = diagram.arrows[(a, b)]
            for x in carrier(f.source):
                uf.union((a, x), (b, f(x)))
        classes = uf.classes()
        index = {}
        for k, cls in enumerate(classes):
            for node in cls:
                index[node] = k
        pairs = set()
        if self.ordered:
            for i in shape:
                for x, y in order(diagram.objects[i]):
                    pairs.add((index[(i, x)], index[(i, y)]))
        elems = list(range(len(classes)))
        return elems, transitive_closure(elems, pairs), index

    def colimit(self, diagram: Diagram, pick=None) -> Cocone:
        top = greatest(diagram.shape)
        if top is not None:
            return Cocone(diagram, diagram.objects[top],
                          {i: diagram.arrow(i, top) for i in diagram.shape})
        elems, leq, index = self._pre_colimit(diagram)
        apex, rename = self._finish(elems, leq)
        legs = {}
        for i in diagram.shape:
            obj = diagram.objects[i]
            legs[i] = Mor(obj, apex, tuple(rename[index[(i, x)]] for x in carrier(obj)))
        return Cocone(diagram, apex, legs)

    def comparison(self, cocone: Cocone, apex, legs: Mapping) -> Optional[Mor]:
        """Universal map from a colimit cocone to another cocone, if legs factor."""
        image = {}
        for i, f in cocone.legs.items():
            g = legs[i]
            for x in carrier(f.source):
                z = f(x)
                if image.setdefault(z, g(x)) != g(x):
                    return None
        table = []
        for z in carrier(cocone.apex):
            if z not in image:
                return None
            table.append(image[z])
        u = Mor(cocone.apex, apex, tuple(table))
        return u if self.is_monotone(u) else None

    def is_colimit(self, diagram: Diagram, apex, legs: Mapping) -> bool:
        try:
            col = self.colimit(diagram)
        except NoColimit:
            return False
        u = self.comparison(col, apex, legs)
        return u is not None and self.is_iso(u)


class FinSetCat(ConcreteCategory):
    name = "FinSet"
    ordered = False

    def _carriers_over(self, fams, targets, bound):
        from .util import multisets
        for size in range(bound + 1):
            for ms in multisets(fams, size):
                yield SetObj(tuple(range(size))), ms

    def _finish(self, elements, leq):
        return SetObj(tuple(elements)), {x: x for x in elements}

    def in_E(self, legs, target) -> bool:
        return self.is_jointly_epic(legs, target)

    def in_M(self, m) -> bool:
        return self.is_mono(m)

    def factorise_sink(self, legs: Sequence[Mor], target):
        """Image factorisation: jointly surjective sink then an inclusion."""
        hit = set()
        for f in legs:
            if f.target != target:
                raise ValidationError("factorise_sink: leg does not land in the target")
            hit.update(f.table)
        image = SetObj(tuple(hit))
        e_legs = [Mor(f.source, image, f.table) for f in legs]
        m = Mor(image, target, image.elements)
        return e_legs, m

    def orthogonal_lift(self, e_legs, m, tops, bottom):
        b_obj = bottom.source
        h = {}
        for e, top in zip(e_legs, tops):
            if m.source != top.target:
                raise ValidationError("orthogonal_lift: top does not land in the source of m")
            for a in carrier(e.source):
                b = e(a)
                if h.setdefault(b, top(a)) != top(a):
                    raise ValidationError("orthogonal_lift: squares do not commute")
        if set(h) != set(carrier(b_obj)):
            raise ValidationError("orthogonal_lift: sink is not jointly epic")
        lift = Mor(b_obj, m.source, tuple(h[b] for b in carrier(b_obj)))
        if self.compose(m, lift) != bottom:
            raise ValidationError("orthogonal_lift: squares do not commute")
        return lift


class FinPreCat(ConcreteCategory):
    name = "FinPre"

    def _finish(self, elements, leq):
        return PreObj(tuple(elements), leq), {x: x for x in elements}


def linearize_quotient(p: PreObj):
    """Reflection of a preorder into posets: identify a, b when a<=b<=a.

    Returns the poset (a PreObj that is antisymmetric) and the quotient map.
    Classes are named 0..k-1 by first member in carrier order.
    """
    rep: dict = {}
    names: dict = {}
    for a in p.elements:
        for b in p.elements:
            if b in rep and p.le(a, b) and p.le(b, a):
                rep[a] = rep[b]
                break
        else:
            rep[a] = a
            names[a] = len(names)
    cls = {a: names[rep[a]] for a in p.elements}
    leq = frozenset((cls[a], cls[b]) for a, b in p.leq)
    q = PreObj(tuple(range(len(names))), leq)
    return q, Mor(p, q, tuple(cls[a] for a in p.elements))


class FinPosCat(ConcreteCategory):
    name = "FinPos"

    def _finish(self, elements, leq):
        pre = PreObj(tuple(elements), leq)
        if pre.is_antisymmetric():
            return pre, {x: x for x in elements}
        q, quot = linearize_quotient(pre)
        return q, {x: quot(x) for x in elements}


class FinOrdCat(ConcreteCategory):
    """Finite ordinals. Limits and colimits go through posets."""

    name = "FinOrd"

    def _finish(self, elements, leq):
        pos, rename = FINPOS._finish(elements, leq)
        if not pos.is_total():
            raise NoColimit("result is not totally ordered")
        rank = {z: sum(1 for w in pos.elements if pos.le(w, z)) - 1 for z in pos.elements}
        return len(pos.elements), {x: rank[rename[x]] for x in elements}

    def wide_pullback(self, legs):
        try:
            return super().wide_pullback(legs)
        except NoColimit:
            raise NoLimit("poset pullback is not a total order")

    def morphism(self, source, target, mapping) -> Mor:
        return super().morphism(int(source), int(target), mapping)

    def _carriers_over(self, fams, targets, bound):
        # chains in the componentwise order, listed bottom to top
        orders = [order(obj) for _, obj in targets]

        def le(s, t):
            return all((x, y) in o for x, y, o in zip(s, t, orders))

        def go(prefix):
            yield len(prefix), tuple(prefix)
            if len(prefix) == bound:
                return
            for f in fams:
                if not prefix or le(prefix[-1], f):
                    yield from go(prefix + [f])

        yield from go([])

    def pos_image(self, n: int) -> PreObj:
        return PreObj(tuple(range(n)), order(n))

    def linear_cocones(self, diagram: Diagram) -> list[Cocone]:
        """The colimit if it exists, else one cocone per linear extension of
        the poset colimit (in a fixed order)."""
        elems, leq, index = self._pre_colimit(diagram)
        pos, rename = FINPOS._finish(elems, leq)
        exts = linear_extensions(pos)
        out = []
        for ext in exts:
            rank = {z: k for k, z in enumerate(ext)}
            apex = len(ext)
            legs = {i: Mor(diagram.objects[i], apex,
                           tuple(rank[rename[index[(i, x)]]] for x in carrier(diagram.objects[i])))
                    for i in diagram.shape}
            out.append(Cocone(diagram, apex, legs))
        return out


def linear_extensions(p: PreObj) -> list[tuple]:
    """All linear extensions of a poset, lexicographic in element order."""
    out = []

    def go(prefix, remaining):
        if not remaining:
            out.append(tuple(prefix))
            return
        for z in remaining:
            if all(not p.le(w, z) or w == z for w in remaining):
                go(prefix + [z], [w for w in remaining if w != z])

    go([], list(p.elements))
    return out


FINSET = FinSetCat()
FINPRE = FinPreCat()
FINPOS = FinPosCat()
FINORD = FinOrdCat()


# ----------------------------------------------------------- label posets

class LabelPoset(Category):
    """A signature: labels with dimensions, ordered by f < g iff dim f < dim g.

    Seen as a thin category. Pullbacks are meets, colimits joins, and a sink
    factors through the join of its sources.
    """

    thin = True

    def __init__(self, dims: Mapping[str, int]):
        self.dims = dict(dims)
        self.name = "Sig{" + ", ".join(f"{k}:{v}" for k, v in self.dims.items()) + "}"

    def _key(self):
        return tuple(sorted(self.dims.items()))

    @property
    def labels(self) -> list:
        return sorted(self.dims, key=lambda k: (self.dims[k], k))

    def le(self, a, b) -> bool:
        self._check(a)
        self._check(b)
        return a == b or self.dims[a] < self.dims[b]

    def _check(self, a):
        if a not in self.dims:
            raise ValidationError(f"unknown label {a!r}")

    def mor(self, a, b) -> Mor:
        if not self.le(a, b):
            raise ValidationError(f"no morphism {a} -> {b} (dim {self.dims[a]} vs {self.dims[b]})")
        return Mor(a, b)

    def identity(self, x):
        self._check(x)
        return Mor(x, x)

    def compose(self, g, f):
        if f.target != g.source:
            raise ValidationError(f"cannot compose {g!r} after {f!r}")
        return Mor(f.source, g.target)

    def is_iso(self, f):
        return f.source == f.target

    def is_epi(self, f):
        return True

    def is_mono(self, f):
        return True

    def hom(self, a, b):
        if self.le(a, b):
            yield Mor(a, b)

    def meet(self, labels: Iterable):
        labels = list(labels)
        lower = [l for l in self.dims if all(self.le(l, x) for x in labels)]
        best = [l for l in lower if all(self.le(m, l) for m in lower)]
        if len(best) != 1:
            raise NoLimit(f"labels {labels} have no meet")
        return best[0]

    def join(self, labels: Iterable):
        labels = list(labels)
        upper = [l for l in self.dims if all(self.le(x, l) for x in labels)]
        best = [l for l in upper if all(self.le(l, m) for m in upper)]
        if len(best) != 1:
            raise NoColimit(f"labels {sorted(set(labels))} have no join")
        return best[0]

    def wide_pullback(self, legs):
        legs = list(legs)
        if not legs:
            raise NoLimit("wide pullback of an empty family")
        m = self.meet(f.source for f in legs)
        return m, [Mor(m, f.source) for f in legs]

    def colimit(self, diagram, pick=None):
        j = self.join(diagram.objects.values())
        return Cocone(diagram, j, {i: Mor(x, j) for i, x in diagram.objects.items()})

    def is_colimit(self, diagram, apex, legs):
        try:
            return self.join(diagram.objects.values()) == apex
        except NoColimit:
            return False

    def is_jointly_epic(self, legs, apex):
        return True

    def in_E(self, legs, target):
        try:
            return self.join(f.source for f in legs) == target
        except NoColimit:
            return False

    def in_M(self, m):
        return True

    def factorise_sink(self, legs, target):
        j = self.join(f.source for f in legs)
        return [Mor(f.source, j) for f in legs], self.mor(j, target)

    def orthogonal_lift(self, e_legs, m, tops, bottom):
        return self.mor(bottom.source, m.source)

    def lifts(self, f, leg):
        if f.target != leg.target:
            raise ValidationError("lift: morphisms do not share a codomain")
        if self.le(f.source, leg.source):
            yield Mor(f.source, leg.source)

    def cone_candidates(self, targets, arrows, legs, bound):
        for l in self.labels:
            if all(self.le(l, obj) for _, obj in targets):
                yield l, {j: Mor(l, obj) for j, obj in targets}
