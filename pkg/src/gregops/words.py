"""Decorated commutative words: a model of the Koszul dual algebras.

A word is a multiset of letters carrying one decoration: a dot on one letter,
or an arrow between two letters labelled by a dual basis vector ``e*_i``.
Letters commute, reversing an arrow flips the sign, and

    arrow(b -> c) a  =  arrow(a -> c) b  -  arrow(a -> b) c

is used as a rewriting rule whenever ``a`` is smaller than the arrow's
source.  Normal words therefore have their arrow leaving the least letter.

Arrow labels are single basis indices; a general label is a linear
combination of words, so linearity in the label comes for free.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable

from . import linalg
from .coalgebra import Coalgebra, DualProductTable, dual_product
from .linear import Linear
from .textfmt import parse_linear

DOT = "dot"
ARROW = "arrow"


@dataclass(frozen=True, order=True)
class DecoratedWord:
    """``kind`` is DOT or ARROW; ``head`` holds the decorated letter(s)
    (``(a,)`` or ``(source, target)``), ``rest`` the other letters sorted."""

    kind: str
    head: tuple
    rest: tuple = ()
    label: int = 0

    def letters(self) -> tuple:
        return tuple(sorted(self.head + self.rest))

    def __str__(self) -> str:
        return format_word(self)


class WordVector(Linear):
    __slots__ = ()
    fmt = staticmethod(lambda w: format_word(w))


def dot(a: str, *rest: str) -> WordVector:
    return WordVector.of(DecoratedWord(DOT, (a,), tuple(sorted(rest))))


def arrow(src: str, tgt: str, label: int, *rest: str) -> WordVector:
    """The word with an arrow ``src -> tgt`` labelled ``e*_label``, unnormalized."""
    return WordVector.of(DecoratedWord(ARROW, (src, tgt), tuple(sorted(rest)), label))


# -- normal forms -------------------------------------------------------------


def _normal_word(w: DecoratedWord) -> dict:
    """Normal form of a single word as ``{word: coeff}``."""
    if w.kind == DOT:
        return {DecoratedWord(DOT, w.head, tuple(sorted(w.rest))): Fraction(1)}
    src, tgt = w.head
    if src == tgt:
        return {}
    sign = 1
    if tgt < src:
        src, tgt, sign = tgt, src, -1
    rest = sorted(w.rest)
    if not rest or rest[0] >= src:
        return {DecoratedWord(ARROW, (src, tgt), tuple(rest), w.label): Fraction(sign)}
    # smallest letter first: arrow(b->c) a  ->  arrow(a->c) b - arrow(a->b) c
    a = rest.pop(0)
    out: dict = defaultdict(Fraction)
    for head, other, c in (((a, tgt), src, 1), ((a, src), tgt, -1)):
        sub = DecoratedWord(ARROW, head, tuple(sorted(rest + [other])), w.label)
        for nw, d in _normal_word(sub).items():
            out[nw] += sign * c * d
    return {k: v for k, v in out.items() if v}


def normalize(v: WordVector) -> WordVector:
    acc: dict = defaultdict(Fraction)
    for w, c in v.terms.items():
        for nw, d in _normal_word(w).items():
            acc[nw] += c * d
    return WordVector(acc)


def is_normal(w: DecoratedWord) -> bool:
    return normalize(WordVector.of(w)) == WordVector.of(w)


# -- products -----------------------------------------------------------------


def _merge(*parts: Iterable) -> tuple:
    return tuple(sorted(x for p in parts for x in p))


def mult_x(u: WordVector, v: WordVector) -> WordVector:
    """``dot * dot`` keeps the left dot; ``arrow * dot`` keeps the arrow; else 0."""
    acc: dict = defaultdict(Fraction)
    for a, c in u.terms.items():
        for b, d in v.terms.items():
            if b.kind != DOT:
                continue
            w = DecoratedWord(a.kind, a.head, _merge(a.rest, b.head, b.rest), a.label)
            acc[w] += c * d
    return normalize(WordVector(acc))


def mult_g(i: int, u: WordVector, v: WordVector, D: DualProductTable) -> WordVector:
    """``dot *_i dot`` draws an arrow labelled ``e*_i``; ``arrow_l *_i dot``
    relabels the arrow by ``mu(e*_l, e*_i)``; every other pairing is 0."""
    if not 1 <= i <= D.dim:
        raise ValueError(f"color {i} out of range 1..{D.dim}")
    acc: dict = defaultdict(Fraction)
    for a, c in u.terms.items():
        for b, d in v.terms.items():
            if b.kind != DOT:
                continue
            rest = _merge(a.rest, b.rest)
            if a.kind == DOT:
                w = DecoratedWord(ARROW, (a.head[0], b.head[0]), rest, i)
                acc[w] += c * d
            else:
                for k, e in D.product(a.label, i):
                    w = DecoratedWord(ARROW, a.head, _merge(rest, b.head), k)
                    acc[w] += c * d * e
    return normalize(WordVector(acc))


# -- dimensions ---------------------------------------------------------------


def multilinear_words(letters: Iterable[str], colors: int) -> list[DecoratedWord]:
    """Every decorated word using each letter exactly once (not normalized)."""
    letters = sorted(letters)
    out = []
    for a in letters:
        out.append(DecoratedWord(DOT, (a,), tuple(l for l in letters if l != a)))
    for s, t in permutations(letters, 2):
        rest = tuple(l for l in letters if l not in (s, t))
        for k in range(1, colors + 1):
            out.append(DecoratedWord(ARROW, (s, t), rest, k))
    return out


def alphabet(m: int) -> list[str]:
    """``a, b, ..., z, a1, b1, ...``: ``m`` letters whose string order is fixed."""
    base = "abcdefghijklmnopqrstuvwxyz"
    return [base[k % 26] + (str(k // 26) if k >= 26 else "") for k in range(m)]


def multilinear_dimension(m: int, n: int) -> int:
    if m < 1:
        raise ValueError("alphabet size must be >= 1")
    words = multilinear_words(alphabet(m), n)
    return linalg.rank(normalize(WordVector.of(w)).terms for w in words)


def normal_multilinear_words(m: int, n: int) -> list[DecoratedWord]:
    return [w for w in multilinear_words(alphabet(m), n) if is_normal(w)]


# -- the relations of the dual operad, in algebra form ------------------------


def relation_values(a: WordVector, b: WordVector, c: WordVector,
                    D: DualProductTable) -> dict[str, WordVector]:
    """Each relation family evaluated on ``(a, b, c)``; all should vanish."""
    X = mult_x
    out = {
        "x associative": X(X(a, b), c) - X(a, X(b, c)),
        "x permutative": X(X(a, b), c) - X(X(a, c), b),
    }
    for i in range(1, D.dim + 1):
        G = lambda u, v, k=i: mult_g(k, u, v, D)  # noqa: E731
        out[f"g{i} then x"] = X(G(a, b), c) - G(a, X(b, c))
        out[f"g{i} x exchange"] = X(G(a, b), c) - G(X(a, c), b)
        out[f"g{i} cyclic"] = X(G(a, b), c) + X(G(b, c), a) + X(G(c, a), b)
        out[f"x o2 g{i}"] = X(a, G(b, c))
        for j in range(1, D.dim + 1):
            lhs = mult_g(i, mult_g(j, a, b, D), c, D)
            rhs = WordVector()
            for k, e in D.product(j, i):
                rhs = rhs + e * X(mult_g(k, a, b, D), c)
            out[f"g{j} g{i} = x mu"] = out.get(f"g{j} g{i} = x mu", WordVector()) + (lhs - rhs)
    return out


def generators_on(letters: Iterable[str], colors: int) -> list[WordVector]:
    """Normal multilinear words on ``letters``: a basis of that multilinear part."""
    seen = {}
    for w in multilinear_words(letters, colors):
        for nw in normalize(WordVector.of(w)).terms:
            seen[nw] = None
    return [WordVector.of(w) for w in sorted(seen)]


def check_relations(max_length: int, C: Coalgebra) -> list[str]:
    """Relation failures over all multilinear basis words with total length ``<= max_length``."""
    D = dual_product(C)
    failures = []
    letters = alphabet(max_length)
    for sizes in _compositions(max_length):
        pool = iter(letters)
        blocks = [[next(pool) for _ in range(s)] for s in sizes]
        for a in generators_on(blocks[0], C.dim):
            for b in generators_on(blocks[1], C.dim):
                for c in generators_on(blocks[2], C.dim):
                    for name, val in relation_values(a, b, c, D).items():
                        if val:
                            failures.append(f"{name}: a={a} b={b} c={c} gives {val}")
    return failures


def _compositions(total: int) -> list[tuple]:
    return [(p, q, total_ - p - q) for total_ in range(3, total + 1)
            for p in range(1, total_ - 1) for q in range(1, total_ - p)]


# -- text format --------------------------------------------------------------

_DEC = re.compile(r"^([a-z][a-z0-9]*)(?:\.|>([a-z][a-z0-9]*):(\d+))$")


def format_word(w: DecoratedWord) -> str:
    if w.kind == DOT:
        head = f"{w.head[0]}."
    else:
        head = f"{w.head[0]}>{w.head[1]}:{w.label}"
    return " ".join((head,) + w.rest)


def parse_word(text: str) -> DecoratedWord:
    """``a. b c`` (dot on a) or ``a>b:2 c`` (arrow a->b labelled e*_2)."""
    head, rest = None, []
    for tok in text.split():
        m = _DEC.match(tok)
        if m:
            if head is not None:
                raise ValueError(f"more than one decoration in {text!r}")
            if m.group(2) is None:
                head = DecoratedWord(DOT, (m.group(1),))
            else:
                head = DecoratedWord(ARROW, (m.group(1), m.group(2)), (), int(m.group(3)))
        elif re.fullmatch(r"[a-z][a-z0-9]*", tok):
            rest.append(tok)
        else:
            raise ValueError(f"bad letter {tok!r}")
    if head is None:
        raise ValueError(f"no decoration in {text!r}")
    return DecoratedWord(head.kind, head.head, tuple(sorted(rest)), head.label)


def parse_words(text: str) -> WordVector:
    return WordVector((parse_word(body), c) for body, c in parse_linear(text))

