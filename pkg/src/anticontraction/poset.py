"""Finite posets, monotone maps and hypergraphs.

Posets here are diagram shapes: small (a dozen elements at most), so the
order relation is stored fully closed and everything else is derived by
brute force.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

from .errors import PosetError
from .util import sort_key, sorted_ids, transitive_closure


@dataclass(frozen=True)
class FinPoset:
    elements: tuple
    leq: frozenset  # closed relation: pairs (a, b) with a <= b

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate element identifiers")
        elems = set(self.elements)
        for a, b in self.leq:
            if a not in elems or b not in elems:
                raise PosetError(f"relation ({a!r}, {b!r}) mentions an unknown element")
        for a in self.elements:
            if (a, a) not in self.leq:
                raise PosetError(f"not reflexive at {a!r}")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise PosetError(f"antisymmetry fails for {a!r}, {b!r}")
        up = self._above
        for a in self.elements:
            for b in up[a]:
                if not up[b] <= up[a]:
                    raise PosetError(f"not transitive through {b!r}")

    @classmethod
    def from_relations(cls, elements: Iterable[Hashable], pairs: Iterable[tuple] = ()) -> "FinPoset":
        """Build a poset from generating relations (closure is applied)."""
        elements = tuple(sorted_ids(elements))
        return cls(elements, transitive_closure(elements, pairs))

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        return cls.from_relations(range(n), [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def discrete(cls, elements: Iterable[Hashable]) -> "FinPoset":
        return cls.from_relations(elements)

    @cached_property
    def _above(self) -> dict:
        up = {a: set() for a in self.elements}
        for a, b in self.leq:
            up[a].add(b)
        return {a: frozenset(s) for a, s in up.items()}

    @cached_property
    def _below(self) -> dict:
        down = {a: set() for a in self.elements}
        for a, b in self.leq:
            down[b].add(a)
        return {a: frozenset(s) for a, s in down.items()}

    def __contains__(self, x) -> bool:
        return x in self._above

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def lt(self, a, b) -> bool:
        return a != b and (a, b) in self.leq

    def _check(self, i):
        if i not in self._above:
            raise PosetError(f"unknown element {i!r}")

    def upper_set(self, i) -> frozenset:
        self._check(i)
        return self._above[i]

    def lower_set(self, i) -> frozenset:
        self._check(i)
        return self._below[i]

    def upper_max(self, i) -> frozenset:
        """Maximal elements above i."""
        return frozenset(j for j in self.upper_set(i) if j in self.maximal)

    @cached_property
    def maximal(self) -> frozenset:
        return frozenset(a for a in self.elements if len(self._above[a]) == 1)

    @cached_property
    def minimal(self) -> frozenset:
        return frozenset(a for a in self.elements if len(self._below[a]) == 1)

    @cached_property
    def covers(self) -> tuple:
        """Covering pairs (a, b), a < b with nothing strictly between, sorted."""
        out = []
        for a in self.elements:
            strict = self._above[a] - {a}
            for b in strict:
                if not any(b in self._above[c] for c in strict if c != b):
                    out.append((a, b))
        return tuple(sorted(out, key=sort_key))

    def is_covered(self, a, b) -> bool:
        return (a, b) in set(self.covers)

    def strict_pairs(self) -> list:
        return sorted(((a, b) for a, b in self.leq if a != b), key=sort_key)

    def is_connected(self, subset: Iterable | None = None) -> bool:
        """Connectivity of the comparability graph restricted to subset."""
        nodes = set(self.elements if subset is None else subset)
        if not nodes:
            return False
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in nodes:
                if b not in seen and (self.le(a, b) or self.le(b, a)):
                    seen.add(b)
                    stack.append(b)
        return seen == nodes

    def is_hypergraph_like(self) -> bool:
        return all(a in self.minimal for a in self.elements if a not in self.maximal)

    def topological(self, descending: bool = False) -> list:
        """Elements in a linear extension (ascending), ties broken by id."""
        order = sorted(self.elements, key=lambda a: (len(self._below[a]), sort_key(a)))
        if descending:
            order = sorted(self.elements, key=lambda a: (len(self._above[a]), sort_key(a)))
        return order

    def subposet(self, subset: Iterable) -> "FinPoset":
        s = set(subset)
        return FinPoset(tuple(a for a in self.elements if a in s),
                        frozenset((a, b) for a, b in self.leq if a in s and b in s))

    def is_up_closed(self, subset: Iterable) -> bool:
        s = set(subset)
        return all(b in s for a in s for b in self._above[a])

    def opposite(self) -> "FinPoset":
        return FinPoset(self.elements, frozenset((b, a) for a, b in self.leq))

    def __repr__(self) -> str:
        rel = ", ".join(f"({a}<{b})" for a, b in self.covers)
        return f"FinPoset([{', '.join(map(str, self.elements))}]; {rel})"


@dataclass(frozen=True)
class MonotoneMap:
    source: FinPoset
    target: FinPoset
    assignment: Mapping = field(hash=False)

    def __post_init__(self):
        a = dict(self.assignment)
        object.__setattr__(self, "assignment", a)
        for x in self.source:
            if x not in a:
                raise PosetError(f"assignment not total: {x!r} missing")
            if a[x] not in self.target:
                raise PosetError(f"{x!r} assigned outside the target")
        for x, y in self.source.leq:
            if not self.target.le(a[x], a[y]):
                raise PosetError(f"not monotone on {x!r} <= {y!r}")

    def __call__(self, x):
        return self.assignment[x]

    @classmethod
    def identity(cls, p: FinPoset) -> "MonotoneMap":
        return cls(p, p, {x: x for x in p})

    def preimage(self, ys: Iterable) -> set:
        ys = set(ys)
        return {x for x in self.source if self.assignment[x] in ys}


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple
    edges: tuple
    incidence: Mapping = field(hash=False)

    def __post_init__(self):
        inc = {e: frozenset(vs) for e, vs in dict(self.incidence).items()}
        object.__setattr__(self, "incidence", inc)
        if set(self.vertices) & set(self.edges):
            raise PosetError("vertex and hyperedge identifiers overlap")
        for e in self.edges:
            if e not in inc or not inc[e]:
                raise PosetError(f"hyperedge {e!r} has empty incidence")
            if not inc[e] <= set(self.vertices):
                raise PosetError(f"hyperedge {e!r} is incident to unknown vertices")

    def __eq__(self, other):
        return (isinstance(other, Hypergraph) and set(self.vertices) == set(other.vertices)
                and set(self.edges) == set(other.edges) and self.incidence == other.incidence)

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(self.edges)))


# ---------------------------------------------------------------- operations

def upper_set(p: FinPoset, i) -> frozenset:
    return p.upper_set(i)


def upper_max(p: FinPoset, i) -> frozenset:
    return p.upper_max(i)


def remove_covering_edge(p: FinPoset, a, b) -> FinPoset:
    """Drop exactly the relation a <= b, which must be a covering pair.

    Since nothing lies strictly between a and b the remaining relation stays
    transitive.
    """
    p._check(a)
    p._check(b)
    if not p.is_covered(a, b):
        raise PosetError(f"({a!r}, {b!r}) is not a covering pair")
    return FinPoset(p.elements, p.leq - {(a, b)})


def is_fair(f: MonotoneMap) -> bool:
    src, tgt = f.source, f.target
    if any(f(i) not in tgt.maximal for i in src.maximal):
        return False
    if {f(i) for i in src.maximal} != set(tgt.maximal):
        return False
    for j in tgt:
        for i1 in src.maximal:
            if not tgt.le(j, f(i1)):
                continue
            for i2 in src.maximal:
                if not tgt.le(j, f(i2)):
                    continue
                if not any(f(i0) == j and src.le(i0, i1) and src.le(i0, i2) for i0 in src):
                    return False
    return True


def is_final(f: MonotoneMap) -> bool:
    src, tgt = f.source, f.target
    for j in tgt:
        pre = f.preimage(tgt.upper_set(j))
        if not src.is_connected(pre):
            return False
    return True


def hypergraph_to_poset(h: Hypergraph) -> FinPoset:
    pairs = [(e, v) for e in h.edges for v in h.incidence[e]]
    return FinPoset.from_relations(list(h.vertices) + list(h.edges), pairs)


def poset_to_hypergraph(p: FinPoset) -> Hypergraph:
    if not p.is_hypergraph_like():
        bad = [a for a in p.elements if a not in p.maximal and a not in p.minimal]
        raise PosetError(f"element {bad[0]!r} is neither maximal nor minimal")
    vertices = tuple(a for a in p.elements if a in p.maximal)
    edges = tuple(a for a in p.elements if a not in p.maximal)
    return Hypergraph(vertices, edges, {e: p.upper_max(e) for e in edges})


def reduce_to_hypergraph_like(p: FinPoset) -> tuple[FinPoset, MonotoneMap]:
    """Strip covering edges a < b with b non-maximal until hypergraph-like.

    Edges are removed in lexicographic order, recomputing covers each time.
    The returned map is the identity on elements.
    """
    q = p
    while True:
        cand = [(a, b) for a, b in q.covers if b not in q.maximal]
        if not cand:
            break
        q = remove_covering_edge(q, *cand[0])
    return q, MonotoneMap(q, p, {x: x for x in p})


def jn_hypergraph(n: int) -> Hypergraph:
    vertices = tuple(range(n + 1))
    edges = tuple(f"e{k}" for k in range(n))
    return Hypergraph(vertices, edges, {f"e{k}": {k, k + 1} for k in range(n)})


def nonempty_subsets_op(n: int) -> FinPoset:
    """P+(n)^op: non-empty subsets of {0..n-1}, larger sets below smaller ones.

    Elements are named by their members, e.g. '01' for {0, 1}.
    """
    from itertools import combinations

    subsets = [c for k in range(1, n + 1) for c in combinations(range(n), k)]
    name = {s: "".join(map(str, s)) for s in subsets}
    pairs = [(name[t], name[s]) for s in subsets for t in subsets if set(s) < set(t)]
    return FinPoset.from_relations(name.values(), pairs)
