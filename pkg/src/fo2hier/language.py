"""Regular languages: a tiny regex dialect, minimal DFAs, syntactic monoids.

Regex grammar (single-character literals, whitespace ignored)::

    alt    := concat ("|" concat)*
    concat := repeat*                 (empty concat is the empty word)
    repeat := atom ("*" | "+" | "?")*
    atom   := literal | "ε" | "(" alt ")"
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import EmptyAlphabet, IndexOutOfRange, ParseError, UnknownLetter
from .monoid import FiniteMonoid, Morphism

METACHARS = set("()|*+?")
EPSILON = "ε"


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    states: int
    initial: int
    accepting: frozenset[int]
    delta: tuple[tuple[int, ...], ...]  # delta[state][letter_index]

    def __post_init__(self):
        if not self.alphabet:
            raise EmptyAlphabet("a DFA needs at least one letter")
        if self.states < 1 or not 0 <= self.initial < self.states:
            raise IndexOutOfRange("initial state out of range")
        if any(not 0 <= q < self.states for q in self.accepting):
            raise IndexOutOfRange("accepting state out of range")
        if len(self.delta) != self.states:
            raise IndexOutOfRange("delta needs one row per state")
        for row in self.delta:
            if len(row) != len(self.alphabet) or any(not 0 <= q < self.states for q in row):
                raise IndexOutOfRange("transition out of range")

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    def run(self, state: int, word) -> int:
        idx = self.letter_index
        for a in word:
            try:
                state = self.delta[state][idx[a]]
            except KeyError:
                raise UnknownLetter(a) from None
        return state

    def accepts(self, word) -> bool:
        return self.run(self.initial, word) in self.accepting

    def minimize(self) -> Dfa:
        """Minimal complete DFA with states numbered breadth-first from the initial state."""
        reach = [self.initial]
        seen = {self.initial}
        for q in reach:
            for r in self.delta[q]:
                if r not in seen:
                    seen.add(r)
                    reach.append(r)
        # Moore refinement on reachable states
        block = {q: int(q in self.accepting) for q in reach}
        while True:
            sigs = {q: (block[q],) + tuple(block[r] for r in self.delta[q]) for q in reach}
            numbering: dict = {}
            new = {q: numbering.setdefault(sigs[q], len(numbering)) for q in reach}
            if len(numbering) == len(set(block.values())):
                break
            block = new
        rep = {}
        for q in reach:
            rep.setdefault(block[q], q)
        order = [block[self.initial]]
        pos = {order[0]: 0}
        for b in order:
            for r in self.delta[rep[b]]:
                if block[r] not in pos:
                    pos[block[r]] = len(order)
                    order.append(block[r])
        delta = tuple(tuple(pos[block[r]] for r in self.delta[rep[b]]) for b in order)
        accepting = frozenset(pos[b] for b in order if rep[b] in self.accepting)
        return Dfa(self.alphabet, len(order), 0, accepting, delta)

    def to_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "states": self.states,
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "delta": [list(row) for row in self.delta],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Dfa:
        return cls(
            tuple(d["alphabet"]),
            int(d["states"]),
            int(d["initial"]),
            frozenset(int(q) for q in d["accepting"]),
            tuple(tuple(int(q) for q in row) for row in d["delta"]),
        )

    @classmethod
    def loads(cls, s: str) -> Dfa:
        return cls.from_dict(json.loads(s))

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


# regex -> NFA -> DFA


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self):
        node = self.alt()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return node

    def alt(self):
        node = self.concat()
        while self.peek() == "|":
            self.pos += 1
            node = ("alt", node, self.concat())
        return node

    def concat(self):
        parts = []
        while (c := self.peek()) is not None and c not in "|)":
            parts.append(self.repeat())
        if not parts:
            return ("eps",)
        node = parts[0]
        for p in parts[1:]:
            node = ("cat", node, p)
        return node

    def repeat(self):
        node = self.atom()
        while (c := self.peek()) is not None and c in "*+?":
            self.pos += 1
            if c == "*":
                node = ("star", node)
            elif c == "+":
                node = ("cat", node, ("star", node))
            else:
                node = ("alt", node, ("eps",))
        return node

    def atom(self):
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            node = self.alt()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return node
        if c in METACHARS:
            raise ParseError(f"unexpected {c!r}", start)
        self.pos += 1
        if c == EPSILON:
            return ("eps",)
        return ("lit", c, start)


def parse_regex(text: str):
    return _Parser(text).parse()


def _literals(node, out):
    kind = node[0]
    if kind == "lit":
        out.setdefault(node[1], node[2])
    elif kind in ("cat", "alt"):
        _literals(node[1], out)
        _literals(node[2], out)
    elif kind == "star":
        _literals(node[1], out)
    return out


def _thompson(node):
    """Epsilon-NFA as (start, end, eps_edges, letter_edges)."""
    eps: dict[int, list[int]] = {}
    edges: dict[int, list[tuple[str, int]]] = {}
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0] - 1

    def build(n):
        kind = n[0]
        s, e = new(), new()
        if kind == "eps":
            eps.setdefault(s, []).append(e)
        elif kind == "lit":
            edges.setdefault(s, []).append((n[1], e))
        elif kind == "cat":
            s1, e1 = build(n[1])
            s2, e2 = build(n[2])
            eps.setdefault(s, []).append(s1)
            eps.setdefault(e1, []).append(s2)
            eps.setdefault(e2, []).append(e)
        elif kind == "alt":
            for child in n[1:]:
                s1, e1 = build(child)
                eps.setdefault(s, []).append(s1)
                eps.setdefault(e1, []).append(e)
        else:  # star
            s1, e1 = build(n[1])
            eps.setdefault(s, []).extend([s1, e])
            eps.setdefault(e1, []).extend([s1, e])
        return s, e

    start, end = build(node)
    return start, end, eps, edges


def _eps_closure(states, eps):
    stack = list(states)
    out = set(states)
    while stack:
        q = stack.pop()
        for r in eps.get(q, ()):
            if r not in out:
                out.add(r)
                stack.append(r)
    return frozenset(out)


def regex_to_dfa(text: str, alphabet: Sequence[str] | None = None) -> Dfa:
    """Subset construction (not minimized).  Alphabet defaults to the sorted literals."""
    tree = parse_regex(text)
    lits = _literals(tree, {})
    if alphabet is None:
        letters = tuple(sorted(lits))
    else:
        letters = tuple(alphabet)
        for c, pos in lits.items():
            if c not in letters:
                raise ParseError(f"letter {c!r} not in declared alphabet", pos)
    if not letters:
        raise EmptyAlphabet("no letters in regex and no alphabet declared")
    start, end, eps, edges = _thompson(tree)
    init = _eps_closure([start], eps)
    index = {init: 0}
    order = [init]
    delta = []
    for S in order:
        row = []
        for a in letters:
            T = _eps_closure([r for q in S for (b, r) in edges.get(q, ()) if b == a], eps)
            if T not in index:
                index[T] = len(order)
                order.append(T)
            row.append(index[T])
        delta.append(tuple(row))
    accepting = frozenset(i for i, S in enumerate(order) if end in S)
    return Dfa(letters, len(order), 0, accepting, tuple(delta))


def compile_language(spec: str | Dfa, alphabet: Sequence[str] | None = None) -> Dfa:
    """Minimal complete DFA for a regex string or an existing DFA."""
    if isinstance(spec, Dfa):
        return spec.minimize()
    return regex_to_dfa(spec, alphabet).minimize()


@dataclass(frozen=True)
class RecognizedLanguage:
    """A surjective morphism onto M(L) plus the accepting subset X with phi^-1(X) = L."""

    monoid: FiniteMonoid
    morphism: Morphism
    accepting: frozenset[int]
    dfa: Dfa
    transformations: tuple[tuple[int, ...], ...]

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.morphism.alphabet

    def recognizes(self, word) -> bool:
        return self.morphism(word) in self.accepting


def syntactic_monoid(d: Dfa) -> RecognizedLanguage:
    """Transition monoid of the minimal DFA, i.e. the syntactic monoid.

    Elements are ordered breadth-first from the identity, letters in alphabet
    order, so each element's name is a shortest (length-lex first) word.
    Products compose left to right: ``x*y`` means apply x, then y.
    """
    d = d.minimize()
    ident = tuple(range(d.states))
    letter_maps = [tuple(d.delta[q][i] for q in range(d.states)) for i in range(len(d.alphabet))]
    index = {ident: 0}
    elems = [ident]
    names = ["1"]
    for x in elems:
        base = names[index[x]]
        for a, f in zip(d.alphabet, letter_maps):
            y = tuple(f[q] for q in x)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                names.append(a if base == "1" else base + a)
    table = tuple(tuple(index[tuple(y[q] for q in x)] for y in elems) for x in elems)
    monoid = FiniteMonoid(table, 0, tuple(names))
    morphism = Morphism(d.alphabet, monoid, tuple(index[f] for f in letter_maps))
    accepting = frozenset(i for i, x in enumerate(elems) if x[d.initial] in d.accepting)
    return RecognizedLanguage(monoid, morphism, accepting, d, tuple(elems))


def recognizes(r: RecognizedLanguage, word) -> bool:
    return r.recognizes(word)


def language_from_spec(regex: str | None = None, dfa: Dfa | None = None, alphabet=None) -> RecognizedLanguage:
    if (regex is None) == (dfa is None):
        raise ValueError("give exactly one of regex or dfa")
    return syntactic_monoid(compile_language(regex if dfa is None else dfa, alphabet))
