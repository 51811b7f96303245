"""Text literals for objects, morphisms, diagrams and signatures.

Grammar (whitespace is insignificant between tokens)::

    object  := label                          a signature label, e.g. x
             | '{' atoms '}'                  finite set
             | 'ord' INT                      finite ordinal
             | 'poset' body | 'pre' body       finite poset / preorder
             | 'zz[' entry ('|' entry)* ']'   zigzag r0 | s0 | r1 | ...
    body    := '{' 'elems:' '[' atoms ']' ';' 'le:' '[' pairs ']' '}'
    entry   := object                         regular object, or a singular one
             | object '@' map ',' map          singular with its two incoming maps
    map     := '_'                            the unique morphism
             | DIGITS                         ordinal map, e.g. 0122 (1.10.2 past 9)
             | '[' (atom '->' atom),* ']'     function / monotone map
             | '<' DIGITS? '>'                zigzag map over a thin base
             | '<' DIGITS? ':' maps ';' maps '>'   singular slices ; regular slices
    atom    := WORD | '(' atoms ')'

Inside a zigzag, maps may be left out when there is exactly one choice.
Printing always produces a canonical form and omits maps only when the
base is thin; parsing the printed form gives back the same value.
A bare ``[a | b | c]`` is accepted as shorthand for ``zz[a | b | c]``.
"""
from __future__ import annotations

import re
from itertools import combinations_with_replacement, islice
from typing import Optional

from .errors import ParseError, ValidationError
from .fincat import (FINORD, FINPOS, FINPRE, FINSET, Category, ConcreteCategory, LabelPoset, Mor,
                     PreObj, SetObj, carrier, ord_digits)
from .poset import FinPoset
from .util import sort_key
from .zigzag import ZigCategory, Zigzag, ZigzagMap, is_monotone_map, reg_dual, zig_tower

_TOKEN = re.compile(r"\s*(?:(->)|(zz\[)|([\w.]+)|(\S))")


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at offset {pos}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k: int = 0) -> Optional[str]:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, found {got!r}")

    def done(self):
        if self.peek() is not None:
            raise ParseError(f"trailing input starting at {self.peek()!r}")

    # -- terms

    def term(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "zz[":
            self.next()
            return self._zz_rest()
        if tok == "[":
            return self._bracket()
        if tok == "{":
            return ("set", self._atoms("{", "}"))
        if tok == "(":
            return ("tuple", self._atoms("(", ")"))
        if tok == "<":
            return self._zmap()
        if tok == "ord" and self.peek(1) is not None and self.peek(1).isdigit():
            self.next()
            return ("ord", int(self.next()))
        if tok in ("poset", "pre") and self.peek(1) == "{":
            self.next()
            return (tok,) + self._body()
        if re.fullmatch(r"[\w.]+", tok):
            self.next()
            return ("word", tok)
        raise ParseError(f"unexpected token {tok!r}")

    def _zz_rest(self):
        items = [self._entry()]
        while self.peek() == "|":
            self.next()
            items.append(self._entry())
        self.expect("]")
        return ("zz", items)

    def _entry(self):
        obj = self.term()
        if self.peek() == "@":
            self.next()
            f = self.term()
            self.expect(",")
            g = self.term()
            return (obj, f, g)
        return (obj, None, None)

    def _bracket(self):
        self.expect("[")
        if self.peek() == "]":
            self.next()
            return ("fun", [])
        first = self.term()
        if self.peek() == "->":
            pairs = []
            self.next()
            pairs.append((first, self.term()))
            while self.peek() == ",":
                self.next()
                a = self.term()
                self.expect("->")
                pairs.append((a, self.term()))
            self.expect("]")
            return ("fun", pairs)
        items = [(first, None, None)]
        if self.peek() == "@":
            self.next()
            f = self.term()
            self.expect(",")
            items[0] = (first, f, self.term())
        while self.peek() == "|":
            self.next()
            items.append(self._entry())
        self.expect("]")
        return ("zz", items)

    def _atoms(self, open_, close):
        self.expect(open_)
        out = []
        if self.peek() == close:
            self.next()
            return out
        out.append(self.term())
        while self.peek() == ",":
            self.next()
            out.append(self.term())
        self.expect(close)
        return out

    def _body(self):
        self.expect("{")
        self.expect("elems")
        self.expect(":")
        elems = self._atoms("[", "]")
        self.expect(";")
        self.expect("le")
        self.expect(":")
        pairs = self._atoms("[", "]")
        self.expect("}")
        for p in pairs:
            if p[0] != "tuple" or len(p[1]) != 2:
                raise ParseError("order relations are written as pairs (a,b)")
        return elems, [tuple(p[1]) for p in pairs]

    def _zmap(self):
        self.expect("<")
        sing = None
        if self.peek() not in (":", ">"):
            tok = self.next()
            if not re.fullmatch(r"[\d.]+", tok):
                raise ParseError(f"bad singular map {tok!r}")
            sing = tok
        sslices = rslices = None
        if self.peek() == ":":
            self.next()
            sslices = self._seq(";")
            self.expect(";")
            rslices = self._seq(">")
        self.expect(">")
        return ("zmap", sing, sslices, rslices)

    def _seq(self, stop):
        out = []
        if self.peek() == stop:
            return out
        out.append(self.term())
        while self.peek() == ",":
            self.next()
            out.append(self.term())
        return out


def parse_term(text: str):
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


# ------------------------------------------------------------ interpretation

def atom(t):
    kind = t[0]
    if kind == "word":
        w = t[1]
        return int(w) if w.isdigit() else w
    if kind == "tuple":
        return tuple(atom(x) for x in t[1])
    raise ParseError("expected an atom")


def _digits(word: str) -> tuple:
    if word in ("", None):
        return ()
    parts = word.split(".") if "." in word else list(word)
    if not all(p.isdigit() for p in parts):
        raise ParseError(f"bad digit string {word!r}")
    return tuple(int(p) for p in parts)


def poset_from(t) -> FinPoset:
    if t[0] != "poset":
        raise ParseError("expected a poset literal")
    elems = [atom(a) for a in t[1]]
    return FinPoset.from_relations(elems, [(atom(a), atom(b)) for a, b in t[2]])


def build_object(t, cat: Category):
    kind = t[0]
    if isinstance(cat, ZigCategory):
        if kind != "zz":
            raise ParseError(f"expected a zigzag for {cat.name}")
        return _build_zigzag(t[1], cat)
    if kind == "zz":
        raise ParseError(f"zigzag found where an object of {cat.name} was expected")
    if isinstance(cat, LabelPoset):
        if kind != "word":
            raise ParseError("expected a label")
        cat._check(t[1])
        return t[1]
    if cat is FINSET and kind == "set":
        return SetObj(tuple(atom(a) for a in t[1]))
    if cat is FINORD and kind == "ord":
        return t[1]
    if cat in (FINPOS, FINPRE) and kind in ("poset", "pre"):
        obj = PreObj(tuple(atom(a) for a in t[1]), frozenset((atom(a), atom(b)) for a, b in t[2]))
        if cat is FINPOS and not obj.is_antisymmetric():
            raise ValidationError("poset literal is not antisymmetric")
        return obj
    raise ParseError(f"literal of kind {kind!r} is not an object of {cat.name}")


def _build_zigzag(items, cat: ZigCategory) -> Zigzag:
    if len(items) % 2 == 0:
        raise ParseError("a zigzag alternates regular and singular objects and ends on a regular one")
    base = cat.base
    objs = [build_object(o, base) for o, _, _ in items]
    regs, sings = objs[0::2], objs[1::2]
    for k, (_, f, g) in enumerate(items):
        if k % 2 == 0 and f is not None:
            raise ParseError("maps are attached to singular objects only")
    fwd, bwd = [], []
    for i, s in enumerate(sings):
        _, f, g = items[2 * i + 1]
        fwd.append(build_morphism(f, base, regs[i], s) if f is not None else infer_morphism(base, regs[i], s))
        bwd.append(build_morphism(g, base, regs[i + 1], s) if g is not None
                   else infer_morphism(base, regs[i + 1], s))
    return cat.validate_zigzag(Zigzag(regs, sings, fwd, bwd))


def _zig_candidates(cat: ZigCategory, src: Zigzag, tgt: Zigzag):
    """Maps src -> tgt whose slices are forced; only for thin bases."""
    n, m = len(src), len(tgt)
    for sing in combinations_with_replacement(range(m), n):
        reg = reg_dual(sing, n, m)
        try:
            ss = [cat.base.mor(src.singulars[i], tgt.singulars[sing[i]]) for i in range(n)]
            rs = [cat.base.mor(src.regulars[reg[j]], tgt.regulars[j]) for j in range(m + 1)]
            yield cat.validate_map(ZigzagMap(src, tgt, sing, ss, rs))
        except ValidationError:
            continue


def infer_morphism(cat: Category, src, tgt):
    if getattr(cat, "thin", False):
        return cat.mor(src, tgt)
    if isinstance(cat, ConcreteCategory):
        found = list(islice(cat.hom(src, tgt), 2))
        if len(found) == 1:
            return found[0]
        raise ParseError(f"a map must be given: {'several exist' if found else 'none exists'}")
    if isinstance(cat, ZigCategory) and getattr(cat.base, "thin", False):
        found = list(_zig_candidates(cat, src, tgt))
        if len(found) == 1:
            return found[0]
        raise ParseError(f"map must be given: {len(found)} candidates between {src!r} and {tgt!r}")
    raise ParseError("a map must be given here")


def build_morphism(t, cat: Category, src, tgt):
    kind = t[0]
    if kind == "word" and t[1] == "_":
        return infer_morphism(cat, src, tgt)
    if getattr(cat, "thin", False):
        raise ParseError("maps in a signature are written _")
    if isinstance(cat, ConcreteCategory):
        if kind == "fun":
            mapping = {atom(a): atom(b) for a, b in t[1]}
            if len(mapping) != len(t[1]) or set(mapping) != set(carrier(src)):
                raise ValidationError("function literal does not cover its domain exactly once")
            return cat.morphism(src, tgt, mapping)
        if kind == "word" and cat is FINORD:
            return cat.morphism(src, tgt, _digits(t[1]))
        raise ParseError(f"cannot read a morphism of {cat.name} here")
    if isinstance(cat, ZigCategory):
        if kind != "zmap":
            raise ParseError("expected a zigzag map <...>")
        _, sing_word, ss, rs = t
        sing = _digits(sing_word)
        n, m = len(src), len(tgt)
        if len(sing) != n or not is_monotone_map(sing, m):
            raise ValidationError(f"singular map {sing_word or '(empty)'} is not monotone {n} -> {m}")
        reg = reg_dual(sing, n, m)
        base = cat.base
        if ss is None:
            if not getattr(base, "thin", False):
                raise ParseError("slices must be given over a non-thin base")
            sslices = [base.mor(src.singulars[i], tgt.singulars[sing[i]]) for i in range(n)]
            rslices = [base.mor(src.regulars[reg[j]], tgt.regulars[j]) for j in range(m + 1)]
        else:
            if len(ss) != n or len(rs) != m + 1:
                raise ParseError("wrong number of slices")
            sslices = [build_morphism(s, base, src.singulars[i], tgt.singulars[sing[i]])
                       for i, s in enumerate(ss)]
            rslices = [build_morphism(r, base, src.regulars[reg[j]], tgt.regulars[j])
                       for j, r in enumerate(rs)]
        return cat.validate_map(ZigzagMap(src, tgt, sing, sslices, rslices))
    raise ParseError(f"cannot read morphisms of {cat}")


# ------------------------------------------------------------------ printing

def print_atom(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(print_atom(x) for x in a) + ")"
    s = str(a)
    if not re.fullmatch(r"\w+", s):
        raise ValidationError(f"atom {a!r} has no literal form")
    return s


def _pre_body(p: PreObj) -> str:
    strict = [(a, b) for a, b in p.leq if a != b]
    # generating pairs: drop those implied through a third element
    gens = [(a, b) for a, b in strict
            if not any(c not in (a, b) and (a, c) in p.leq and (c, b) in p.leq
                       and (c, a) not in p.leq and (b, c) not in p.leq for c in p.elements)]
    gens.sort(key=sort_key)
    return ("{ elems: [" + ",".join(map(print_atom, p.elements)) + "]; le: ["
            + ",".join(f"({print_atom(a)},{print_atom(b)})" for a, b in gens) + "] }")


def print_poset(p: FinPoset) -> str:
    return ("poset { elems: [" + ",".join(map(print_atom, p.elements)) + "]; le: ["
            + ",".join(f"({print_atom(a)},{print_atom(b)})" for a, b in p.covers) + "] }")


def _thin(m) -> bool:
    return isinstance(m, Mor) and m.table is None


def print_object(x) -> str:
    if isinstance(x, Zigzag):
        parts = [print_object(x.regulars[0])]
        thin = all(_thin(f) for f in x.forward + x.backward)
        for i in range(len(x)):
            s = print_object(x.singulars[i])
            if not thin:
                s += f" @ {print_morphism(x.forward[i])}, {print_morphism(x.backward[i])}"
            parts += [s, print_object(x.regulars[i + 1])]
        return "zz[" + " | ".join(parts) + "]"
    if isinstance(x, bool):
        raise ValidationError("not an object")
    if isinstance(x, int):
        return f"ord {x}"
    if isinstance(x, SetObj):
        return "{" + ",".join(map(print_atom, x.elements)) + "}"
    if isinstance(x, PreObj):
        return ("poset " if x.is_antisymmetric() else "pre ") + _pre_body(x)
    if isinstance(x, FinPoset):
        return print_poset(x)
    if isinstance(x, str):
        return print_atom(x)
    raise ValidationError(f"no literal form for {x!r}")


def print_morphism(f) -> str:
    if isinstance(f, ZigzagMap):
        sing = ord_digits(f.sing)
        if all(_thin(s) for s in f.sslices + f.rslices):
            return f"<{sing}>"
        return (f"<{sing}:" + ",".join(map(print_morphism, f.sslices)) + ";"
                + ",".join(map(print_morphism, f.rslices)) + ">")
    if isinstance(f, Mor):
        if f.table is None:
            return "_"
        if isinstance(f.source, int):
            return ord_digits(f.table) if f.table else "_"
        return "[" + ", ".join(f"{print_atom(a)}->{print_atom(b)}"
                               for a, b in zip(carrier(f.source), f.table)) + "]"
    raise ValidationError(f"no literal form for {f!r}")


# --------------------------------------------------------- entry points

def parse_signature(text: str) -> LabelPoset:
    """``sig { x: 0, a: 2 }`` or just ``x: 0, a: 2``."""
    p = _Parser(text)
    if p.peek() == "sig":
        p.next()
    braced = p.peek() == "{"
    if braced:
        p.next()
    dims = {}
    while p.peek() not in (None, "}"):
        name = p.next()
        p.expect(":")
        d = p.next()
        if not d.isdigit():
            raise ParseError(f"dimension of {name!r} must be a natural number")
        if name in dims:
            raise ParseError(f"label {name!r} declared twice")
        dims[name] = int(d)
        if p.peek() == ",":
            p.next()
    if braced:
        p.expect("}")
    p.done()
    if not dims:
        raise ParseError("empty signature")
    return LabelPoset(dims)


def print_signature(sig: LabelPoset) -> str:
    return "sig { " + ", ".join(f"{k}: {v}" for k, v in sig.dims.items()) + " }"


def zz_depth(t) -> int:
    d = 0
    while t[0] == "zz":
        d += 1
        t = t[1][0][0]
    return d


def leaf_category(t, sig: Optional[LabelPoset] = None) -> Category:
    while t[0] == "zz":
        t = t[1][0][0]
    kind = t[0]
    if kind == "set":
        return FINSET
    if kind == "ord":
        return FINORD
    if kind == "poset":
        return FINPOS
    if kind == "pre":
        return FINPRE
    if kind == "word":
        if sig is None:
            raise ParseError(f"label {t[1]!r} needs a signature")
        return sig
    raise ParseError("cannot tell which category this literal lives in")


def parse_diagram(text: str, sig: Optional[LabelPoset] = None):
    """Parse an object and return (category, value); zz-nesting picks the level."""
    t = parse_term(text)
    cat = zig_tower(leaf_category(t, sig), zz_depth(t))
    return cat, build_object(t, cat)


def parse_object(text: str, cat: Category):
    return build_object(parse_term(text), cat)


def parse_morphism(text: str, cat: Category, src, tgt):
    return build_morphism(parse_term(text), cat, src, tgt)
