"""Operadic structure on rooted Greg trees deformed by a coalgebra.

Everything is multilinear over :class:`TreeVector`.  The basic operation is
the deformed fall product ``S * T``: graft ``T`` on every vertex of ``S``, and
for every black vertex, split it along each Sweedler term of the coproduct of
its color into two stacked black vertices, the upper one receiving ``T``.
Symmetric braces come from the Oudom-Guin recursion and partial compositions
insert a tree at a white vertex, letting its children fall with a brace.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping

from . import linalg
from .linear import Linear
from .textfmt import parse_linear
from .coalgebra import Coalgebra, zero_coalgebra
from .trees import (BLACK, WHITE, TreeError, Vertex, apply_permutation, format_tree, label_set,
                    make, max_color, parse_tree, relabel, vertices, weight)


class TreeVector(Linear):
    """Finite rational combination of canonical Greg trees."""

    __slots__ = ()
    fmt = staticmethod(format_tree)

    def labels(self) -> frozenset:
        out: frozenset = frozenset()
        for t in self.terms:
            out |= label_set(t)
        return out

    def relabel(self, sigma: Mapping[int, int]) -> "TreeVector":
        return TreeVector([(relabel(t, sigma), c) for t, c in self.terms.items()])

    def permute(self, sigma: Mapping[int, int]) -> "TreeVector":
        return TreeVector([(apply_permutation(t, sigma), c) for t, c in self.terms.items()])


def as_vector(x) -> TreeVector:
    if isinstance(x, TreeVector):
        return x
    if isinstance(x, Vertex):
        return TreeVector.of(x)
    if isinstance(x, str):
        return parse_vector(x)
    raise TypeError(f"cannot read {type(x).__name__} as a tree vector")


# -- fall product -------------------------------------------------------------


def _split_terms(v: Vertex, T: Vertex, C: Coalgebra) -> Iterator[tuple[Vertex, Fraction]]:
    """Second sum of the deformed fall product at the black vertex ``v``."""
    forest = v.children
    idx = range(len(forest))
    for c1, c2, coeff in C.coproduct(v.key):
        for size in range(1, len(forest)):
            for lower_idx in combinations(idx, size):
                lower = [forest[i] for i in lower_idx]
                upper = [forest[i] for i in idx if i not in lower_idx]
                top = make(BLACK, c2, upper + [T])
                yield make(BLACK, c1, lower + [top]), coeff


def _fall_at(v: Vertex, T: Vertex, C: Coalgebra) -> Iterator[tuple[Vertex, Fraction]]:
    one = Fraction(1)
    yield make(v.kind, v.key, v.children + (T,)), one
    if v.kind == BLACK:
        yield from _split_terms(v, T, C)
    for i, child in enumerate(v.children):
        rest = v.children[:i] + v.children[i + 1:]
        for new, c in _fall_at(child, T, C):
            yield make(v.kind, v.key, rest + (new,)), c


def _check_colors(trees: Iterable[Vertex], C: Coalgebra) -> None:
    for t in trees:
        if max_color(t) > C.dim:
            raise TreeError(f"color {max_color(t)} of {format_tree(t)} exceeds dim {C.dim}")


@lru_cache(maxsize=200_000)
def _fall_basis(S: Vertex, T: Vertex, C: Coalgebra) -> tuple:
    acc: dict = defaultdict(Fraction)
    for t, c in _fall_at(S, T, C):
        acc[t] += c
    return tuple((t, c) for t, c in acc.items() if c)


def fall_product(S, T, C: Coalgebra | None = None) -> TreeVector:
    """Deformed fall product ``S *_Delta T`` (plain grafting when Delta = 0)."""
    S, T = as_vector(S), as_vector(T)
    C = C if C is not None else zero_coalgebra(max(_colors(S), _colors(T)))
    if S.labels() & T.labels():
        raise TreeError(f"label sets overlap: {sorted(S.labels() & T.labels())}")
    _check_colors(list(S.terms) + list(T.terms), C)
    acc: dict = defaultdict(Fraction)
    for s, a in S.terms.items():
        for t, b in T.terms.items():
            for u, c in _fall_basis(s, t, C):
                acc[u] += a * b * c
    return TreeVector(acc)


def _colors(v: TreeVector) -> int:
    return max((max_color(t) for t in v.terms), default=0)


# -- symmetric braces ---------------------------------------------------------


@lru_cache(maxsize=200_000)
def _brace_basis(S: Vertex, forest: tuple, C: Coalgebra) -> tuple:
    if not forest:
        return ((S, Fraction(1)),)
    if len(forest) == 1:
        return _fall_basis(S, forest[0], C)
    *head, last = forest
    acc: dict = defaultdict(Fraction)
    for u, a in _brace_basis(S, tuple(head), C):
        for w, b in _fall_basis(u, last, C):
            acc[w] += a * b
    for i, Ti in enumerate(head):
        for merged, a in _fall_basis(Ti, last, C):
            args = tuple(head[:i]) + (merged,) + tuple(head[i + 1:])
            for w, b in _brace_basis(S, args, C):
                acc[w] -= a * b
    return tuple((t, c) for t, c in acc.items() if c)


def brace(S, forest: Iterable, C: Coalgebra | None = None) -> TreeVector:
    """Symmetric brace ``Br(S; T1, ..., Tk)`` via the Oudom-Guin recursion."""
    S = as_vector(S)
    forest = [as_vector(T) for T in forest]
    C = C if C is not None else zero_coalgebra(max([_colors(S)] + [_colors(T) for T in forest]))
    seen = set(S.labels())
    for T in forest:
        if seen & T.labels():
            raise TreeError(f"label sets overlap: {sorted(seen & T.labels())}")
        seen |= T.labels()
        _check_colors(T.terms, C)
    _check_colors(S.terms, C)
    acc: dict = defaultdict(Fraction)
    for s, a in S.terms.items():
        for args in _expand(forest):
            coeff = a
            trees = []
            for t, b in args:
                coeff *= b
                trees.append(t)
            for w, c in _brace_basis(s, tuple(trees), C):
                acc[w] += coeff * c
    return TreeVector(acc)


def _expand(forest: list[TreeVector]) -> Iterator[tuple]:
    if not forest:
        yield ()
        return
    for rest in _expand(forest[1:]):
        for t, c in forest[0].terms.items():
            yield ((t, c),) + rest


# -- partial compositions -----------------------------------------------------


def _find_white(t: Vertex, label: int) -> Vertex | None:
    for v in vertices(t):
        if v.kind == WHITE and v.key == label:
            return v
    return None


def _contains(t: Vertex, label: int) -> bool:
    return _find_white(t, label) is not None


@lru_cache(maxsize=200_000)
def _compose_basis(T: Vertex, i: int, S: Vertex, C: Coalgebra) -> tuple:
    v = _find_white(T, i)
    U = _brace_basis(S, v.children, C)
    return tuple((_replace_vertex(T, i, u), c) for u, c in U)


def _replace_vertex(t: Vertex, label: int, repl: Vertex) -> Vertex:
    # the white vertex ``label`` and its whole subtree are replaced by ``repl``
    if t.kind == WHITE and t.key == label:
        return repl
    new = []
    for c in t.children:
        new.append(_replace_vertex(c, label, repl) if _contains(c, label) else c)
    return make(t.kind, t.key, new)


def compose(T, i: int, S, C: Coalgebra | None = None) -> TreeVector:
    """Partial composition ``T o_i S`` in Greg^C.

    Labels are kept as they are: the result lives on
    ``labels(T) - {i} | labels(S)``.
    """
    T, S = as_vector(T), as_vector(S)
    C = C if C is not None else zero_coalgebra(max(_colors(T), _colors(S)))
    for t in T.terms:
        if i not in label_set(t):
            raise TreeError(f"label {i} is not a white label of {format_tree(t)}")
    clash = (T.labels() - {i}) & S.labels()
    if clash:
        raise TreeError(f"label sets overlap: {sorted(clash)}")
    _check_colors(list(T.terms) + list(S.terms), C)
    acc: dict = defaultdict(Fraction)
    for t, a in T.terms.items():
        for s, b in S.terms.items():
            for w, c in _compose_basis(t, i, s, C):
                acc[w] += a * b * c
    return TreeVector(acc)


def compose_std(T, i: int, S, C: Coalgebra | None = None) -> TreeVector:
    """``T o_i S`` with the usual renumbering: both inputs on ``1..arity``.

    The inputs of ``S`` take the slots ``i .. i+arity(S)-1`` and the inputs
    of ``T`` after ``i`` are shifted up.
    """
    T, S = as_vector(T), as_vector(S)
    p = len(S.labels())
    shift_T = {k: (k if k < i else k + p - 1) for k in T.labels() if k != i}
    shift_S = {k: k + i - 1 for k in S.labels()}
    # move T's i to a free placeholder first, so shifted labels cannot collide
    hole = max(list(T.labels()) + list(S.labels())) + p + 10
    T2 = T.relabel({i: hole}).relabel(shift_T)
    return compose(T2, hole, S.relabel(shift_S), C)


# -- generators ---------------------------------------------------------------


def _w(label: int, *children: Vertex) -> Vertex:
    return make(WHITE, label, children)


def gen_x(a: int = 1, b: int = 2) -> TreeVector:
    """``x``: white ``a`` with child ``b``."""
    return TreeVector.of(_w(a, _w(b)))


def gen_y(a: int = 1, b: int = 2) -> TreeVector:
    return gen_x(b, a)


def gen_l(a: int = 1, b: int = 2) -> TreeVector:
    return gen_x(a, b) - gen_y(a, b)


def gen_mu(a: int = 1, b: int = 2) -> TreeVector:
    return Fraction(1, 2) * (gen_x(a, b) + gen_y(a, b))


def gen_g(k: int, a: int = 1, b: int = 2) -> TreeVector:
    return TreeVector.of(make(BLACK, k, (_w(a), _w(b))))


def corolla_x(m: int) -> TreeVector:
    return TreeVector.of(_w(1, *(_w(j) for j in range(2, m + 1))))


def corolla_g(k: int, m: int) -> TreeVector:
    return TreeVector.of(make(BLACK, k, tuple(_w(j) for j in range(1, m + 1))))


def transpose(v: TreeVector, a: int, b: int) -> TreeVector:
    """Action of the transposition ``(a b)`` on the labels of ``v``."""
    sigma = {k: k for k in v.labels()}
    sigma[a], sigma[b] = b, a
    return v.permute(sigma)


# -- exact rank ---------------------------------------------------------------


def rank(vs: Iterable) -> int:
    return linalg.rank(as_vector(v).terms for v in vs)


def lie_monomials(labels: Iterable[int]) -> list[TreeVector]:
    """Left-normed brackets ``[..[[a1, a_s2], a_s3].., a_sm]`` with ``a1 = min``."""
    labels = sorted(labels)
    first, rest = labels[0], labels[1:]
    out = []
    for perm in permutations(rest):
        out.append(left_normed_bracket((first,) + perm))
    return out


def left_normed_bracket(word: Iterable[int]) -> TreeVector:
    word = list(word)
    acc = TreeVector.of(_w(word[0]))
    hole = max(word) + 1
    for k in word[1:]:
        # [acc, k] = l o_hole acc, with l on (hole, k)
        acc = compose(gen_l(hole, k), hole, acc)
    return acc


def lie_span(m: int, C: Coalgebra | None = None) -> list[TreeVector]:
    """Images of the left-normed Lie monomials of arity ``m`` under ``l -> x - y``.

    Lie brackets of white trees never meet a black vertex, so ``C`` plays no
    role; it is accepted for a uniform signature.
    """
    if m < 1:
        raise ValueError("arity must be >= 1")
    return lie_monomials(range(1, m + 1))


def xn_generators(m: int, n: int) -> list[TreeVector]:
    """The elements ``(g^n o_2 a) o_1 b`` for Lie elements ``a``, ``b``.

    Every distribution of the labels ``1..m`` between ``b`` (first input of
    the symmetric corolla) and ``a`` (second input) is used, so the list spans
    the subspecies generated by these elements.  Computed in Greg^C with
    ``C = delta_max(n)``.
    """
    from .coalgebra import delta_max

    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    C = delta_max(n)
    out = []
    labels = list(range(1, m + 1))
    h1, h2 = m + 1, m + 2
    corolla = gen_g(n, h1, h2)
    for size in range(1, m):
        for b_labels in combinations(labels, size):
            a_labels = [k for k in labels if k not in b_labels]
            for a in lie_monomials(a_labels):
                inner = compose(corolla, h2, a, C)
                for b in lie_monomials(b_labels):
                    out.append(compose(inner, h1, b, C))
    return out


def xn_generator_rank(m: int, n: int) -> int:
    return rank(xn_generators(m, n))


# -- text format --------------------------------------------------------------


def format_vector(v: TreeVector) -> str:
    return str(v)


def parse_vector(text: str) -> TreeVector:
    return TreeVector((parse_tree(body), c) for body, c in parse_linear(text))


def weights(v: TreeVector) -> set[int]:
    return {weight(t) for t in v.terms}
