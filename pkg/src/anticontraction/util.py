from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Any, Iterable, Iterator


def sort_key(x: Any):
    """Total order on the identifiers used throughout the kernel.

    Ints before strings before tuples; tuples compare componentwise. Anything
    else falls back to its repr.
    """
    try:
        return _cached_key(x)
    except TypeError:  # unhashable
        return _key(x)


@lru_cache(maxsize=1 << 16)
def _cached_key(x):
    return _key(x)


def _key(x: Any):
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted((sort_key(y) for y in x))))
    return (4, repr(x))


def sorted_ids(xs: Iterable) -> list:
    return sorted(xs, key=sort_key)


class UnionFind:
    def __init__(self, items: Iterable = ()):
        self.parent = {}
        for x in items:
            self.add(x)

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self) -> list[list]:
        """Equivalence classes, each in insertion order, ordered by first member."""
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def transitive_closure(elements: Iterable, pairs: Iterable[tuple]) -> frozenset:
    """Reflexive-transitive closure of a relation (Warshall)."""
    elements = list(elements)
    rel = {(a, a) for a in elements} | set(pairs)
    above = {a: {b for (x, b) in rel if x == a} for a in elements}
    for k in elements:
        for i in elements:
            if k in above[i]:
                above[i] |= above[k]
    return frozenset((a, b) for a in elements for b in above[a])


def all_functions(domain: list, codomain: list) -> Iterator[tuple]:
    """Every function domain -> codomain as a tuple of images, lexicographic."""
    return product(codomain, repeat=len(domain))


def multisets(items: list, size: int) -> Iterator[tuple]:
    """Non-decreasing index tuples of the given size (multisets of items)."""

    def go(start, remaining):
        if remaining == 0:
            yield ()
            return
        for i in range(start, len(items)):
            for rest in go(i, remaining - 1):
                yield (items[i],) + rest

    return go(0, size)


def set_partitions(items: list) -> Iterator[list[list]]:
    """Partitions of items into non-empty blocks, the single block first."""
    if not items:
        yield []
        return
    first = items[0]
    for part in set_partitions(items[1:]):
        for n in range(len(part)):
            yield part[:n] + [[first] + part[n]] + part[n + 1:]
        yield [[first]] + part


class LazySeq:
    """A generator whose items are cached as they are first requested."""

    def __init__(self, gen):
        self._gen, self._items, self._done = gen, [], False

    def get(self, k):
        """Item k, or None past the end."""
        while len(self._items) <= k and not self._done:
            try:
                self._items.append(next(self._gen))
            except StopIteration:
                self._done = True
        return self._items[k] if k < len(self._items) else None


def lazy_product(seqs: list, prefix: tuple = ()) -> Iterator[tuple]:
    """itertools.product over LazySeqs, pulling items only when reached."""
    if len(prefix) == len(seqs):
        yield prefix
        return
    k = 0
    while (item := seqs[len(prefix)].get(k)) is not None:
        yield from lazy_product(seqs, prefix + (item,))
        k += 1
