"""Rooted Greg trees: canonical forms, relabeling, exhaustive enumeration.

A tree is stored as its root :class:`Vertex`.  White vertices carry a
positive integer label, black vertices carry a color in ``1..n`` and must
have at least two children.  Children are kept sorted, so two trees are equal
as graphs iff the tuples are equal.  The tuple order (white before black,
then key, then the children lexicographically) is the canonical subtree order.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple

WHITE = 0
BLACK = 1


class TreeError(ValueError):
    pass


class Vertex(NamedTuple):
    kind: int
    key: int
    children: tuple

    def __str__(self) -> str:
        return format_tree(self)


GregTree = Vertex


def make(kind: int, key: int, children: Iterable[Vertex] = ()) -> Vertex:
    """Build a vertex whose children are already canonical."""
    return Vertex(kind, key, tuple(sorted(children)))


def W(label: int, *children: Vertex) -> Vertex:
    return canonicalize(Vertex(WHITE, label, tuple(children)))


def B(color: int, *children: Vertex) -> Vertex:
    return canonicalize(Vertex(BLACK, color, tuple(children)))


def canonicalize(t: Vertex) -> Vertex:
    """Validate ``t`` and sort children recursively."""
    labels = white_labels(t)
    if len(labels) != len(set(labels)):
        dup = sorted(k for k, c in Counter(labels).items() if c > 1)
        raise TreeError(f"duplicate white labels {dup}")
    return _canon(t)


def _canon(t: Vertex) -> Vertex:
    if t.kind == BLACK and len(t.children) < 2:
        raise TreeError(f"black vertex b{t.key} has {len(t.children)} children, needs >= 2")
    if t.kind == WHITE and t.key < 1:
        raise TreeError(f"white label must be positive, got {t.key}")
    if t.kind == BLACK and t.key < 1:
        raise TreeError(f"black color must be positive, got {t.key}")
    return Vertex(t.kind, t.key, tuple(sorted(_canon(c) for c in t.children)))


def vertices(t: Vertex) -> Iterator[Vertex]:
    yield t
    for c in t.children:
        yield from vertices(c)


def white_labels(t: Vertex) -> list[int]:
    return [v.key for v in vertices(t) if v.kind == WHITE]


def label_set(t: Vertex) -> frozenset:
    return frozenset(white_labels(t))


def arity(t: Vertex) -> int:
    return sum(1 for v in vertices(t) if v.kind == WHITE)


def weight(t: Vertex) -> int:
    return sum(1 for v in vertices(t) if v.kind == BLACK)


def max_color(t: Vertex) -> int:
    return max((v.key for v in vertices(t) if v.kind == BLACK), default=0)


def relabel(t: Vertex, sigma: Mapping[int, int]) -> Vertex:
    """Rename white labels through ``sigma`` (labels missing from it are kept)."""
    if t.kind == WHITE:
        key = sigma.get(t.key, t.key)
    else:
        key = t.key
    return make(t.kind, key, (relabel(c, sigma) for c in t.children))


def apply_permutation(t: Vertex, sigma: Mapping[int, int]) -> Vertex:
    """Act by a bijection of the white label set of ``t``."""
    labels = label_set(t)
    if set(sigma) != labels or set(sigma.values()) != labels:
        raise TreeError(
            f"permutation domain {sorted(sigma)} does not match labels {sorted(labels)}"
        )
    return relabel(t, sigma)


def recolor(t: Vertex, colors: Mapping[int, int]) -> Vertex:
    key = colors.get(t.key, t.key) if t.kind == BLACK else t.key
    return make(t.kind, key, (recolor(c, colors) for c in t.children))


# -- enumeration -------------------------------------------------------------


@lru_cache(maxsize=None)
def _trees(labels: tuple, colors: int) -> tuple:
    out = []
    for k, root in enumerate(labels):
        rest = labels[:k] + labels[k + 1:]
        for forest in _forests(rest, colors, False):
            out.append(Vertex(WHITE, root, forest))
    if colors and len(labels) >= 2:
        forests = _forests(labels, colors, True)
        for c in range(1, colors + 1):
            for forest in forests:
                out.append(Vertex(BLACK, c, forest))
    return tuple(out)


@lru_cache(maxsize=None)
def _forests(labels: tuple, colors: int, proper: bool) -> tuple:
    # set partitions of ``labels`` with a tree on each block; ``proper``
    # forbids the single-block partition (black roots need >= 2 children)
    if not labels:
        return ((),)
    first, rest = labels[0], labels[1:]
    out = []
    top = len(rest) - 1 if proper else len(rest)
    for size in range(top + 1):
        for extra in combinations(rest, size):
            block = (first,) + extra
            remaining = tuple(l for l in rest if l not in extra)
            for t in _trees(block, colors):
                for f in _forests(remaining, colors, False):
                    out.append(tuple(sorted((t,) + f)))
    return tuple(out)


def enumerate_trees(arity: int, colors: int, labels: Iterable[int] | None = None) -> list[Vertex]:
    """All canonical Greg trees on white labels ``1..arity`` (or ``labels``)."""
    if labels is None:
        if arity < 1:
            raise TreeError("arity must be >= 1")
        labels = range(1, arity + 1)
    if colors < 0:
        raise TreeError("colors must be >= 0")
    return sorted(_trees(tuple(sorted(labels)), colors))


def count_by_weight(arity: int, colors: int) -> dict[int, int]:
    return dict(sorted(Counter(weight(t) for t in enumerate_trees(arity, colors)).items()))


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([wb])(\d+)|(\()|(\))|(,))")


def format_tree(t: Vertex) -> str:
    head = ("w" if t.kind == WHITE else "b") + str(t.key)
    if not t.children:
        return head
    return head + "(" + ",".join(format_tree(c) for c in t.children) + ")"


def parse_tree(text: str) -> Vertex:
    """Parse ``w1(w2,b1(w3,w4))``; whitespace is ignored."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TreeError(f"cannot parse tree at {text[pos:]!r}")
        tokens.append(m.groups())
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def node(i: int) -> tuple[Vertex, int]:
        if i >= len(tokens) or tokens[i][0] is None:
            raise TreeError(f"expected vertex in {text!r}")
        kind = WHITE if tokens[i][0] == "w" else BLACK
        key = int(tokens[i][1])
        i += 1
        children = []
        if i < len(tokens) and tokens[i][2]:
            i += 1
            while True:
                child, i = node(i)
                children.append(child)
                if i < len(tokens) and tokens[i][4]:
                    i += 1
                    continue
                if i < len(tokens) and tokens[i][3]:
                    i += 1
                    break
                raise TreeError(f"unbalanced parentheses in {text!r}")
        return Vertex(kind, key, tuple(children)), i

    t, end = node(0)
    if end != len(tokens):
        raise TreeError(f"trailing input in {text!r}")
    return canonicalize(t)
