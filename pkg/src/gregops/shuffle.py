"""Shuffle operads with binary generators: monomials, orders, Groebner bases.

A shuffle monomial is a planar binary tree, written as nested tuples
``(symbol, left, right)`` with integer leaves, such that at every vertex the
smallest leaf on the left is smaller than the smallest leaf on the right.

Symmetric presentations (generators with or without symmetry, arity-3
relations) are turned into shuffle relations by expanding the symmetric group
orbit.  Rewriting, truncated completion and normal form counting then work on
the shuffle side only.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, total_ordering
from itertools import combinations, permutations
from typing import Iterable, Iterator

from .coalgebra import Coalgebra, dual_product
from .linalg import Echelon
from .linear import Linear
from .textfmt import parse_linear

# -- monomials ----------------------------------------------------------------


def is_leaf(t) -> bool:
    return isinstance(t, int)


@lru_cache(maxsize=None)
def tmin(t) -> int:
    return t if is_leaf(t) else tmin(t[1])


@lru_cache(maxsize=None)
def leaves(t) -> tuple:
    return (t,) if is_leaf(t) else leaves(t[1]) + leaves(t[2])


def arity(t) -> int:
    return len(leaves(t))


def internal(t, path: tuple = ()) -> Iterator[tuple]:
    """``(path, vertex)`` for every internal vertex, preorder; path entries are 1 or 2."""
    if is_leaf(t):
        return
    yield path, t
    yield from internal(t[1], path + (1,))
    yield from internal(t[2], path + (2,))


def symbols_of(t) -> list[str]:
    return [v[0] for _, v in internal(t)]


def at(t, path: tuple):
    for k in path:
        t = t[k]
    return t


def replace(t, path: tuple, new):
    if not path:
        return new
    k = path[0]
    child = replace(t[k], path[1:], new)
    return (t[0], child, t[2]) if k == 1 else (t[0], t[1], child)


def is_shuffle(t) -> bool:
    if is_leaf(t):
        return True
    return tmin(t[1]) < tmin(t[2]) and is_shuffle(t[1]) and is_shuffle(t[2])


def relabel(t, sigma) -> object:
    if is_leaf(t):
        return sigma[t]
    return (t[0], relabel(t[1], sigma), relabel(t[2], sigma))


def standardize(t):
    """Relabel leaves to ``1..m`` preserving their order."""
    order = {v: k for k, v in enumerate(sorted(leaves(t)), start=1)}
    return relabel(t, order)


@lru_cache(maxsize=None)
def _monomials(labels: tuple, symbols: tuple) -> tuple:
    if len(labels) == 1:
        return (labels[0],)
    first, rest = labels[0], labels[1:]
    out = []
    for size in range(len(rest)):
        for extra in combinations(rest, size):
            left = (first,) + extra
            right = tuple(v for v in rest if v not in extra)
            lefts = _monomials(left, symbols)
            rights = _monomials(right, symbols)
            for s in symbols:
                for a in lefts:
                    for b in rights:
                        out.append((s, a, b))
    return tuple(out)


def monomials(m: int, symbols: Iterable[str]) -> tuple:
    """All shuffle monomials of arity ``m`` over binary ``symbols``."""
    return _monomials(tuple(range(1, m + 1)), tuple(symbols))


def format_shuffle(t) -> str:
    if is_leaf(t):
        return str(t)
    return f"{t[0]}({format_shuffle(t[1])},{format_shuffle(t[2])})"


_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)\s*\(|(,)|(\)))")


def parse_shuffle(text: str, check: bool = True):
    """Parse ``x(1,g1(2,3))``."""
    pos = 0

    def node():
        nonlocal pos
        m = _TOK.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse monomial at {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            return int(m.group(1))
        if not m.group(2):
            raise ValueError(f"unexpected token in {text!r}")
        left = node()
        m2 = _TOK.match(text, pos)
        if not m2 or not m2.group(3):
            raise ValueError(f"expected ',' in {text!r}")
        pos = m2.end()
        right = node()
        m3 = _TOK.match(text, pos)
        if not m3 or not m3.group(4):
            raise ValueError(f"expected ')' in {text!r}")
        pos = m3.end()
        return (m.group(2), left, right)

    t = node()
    if text[pos:].strip():
        raise ValueError(f"trailing input in {text!r}")
    if check and not is_shuffle(t):
        raise ValueError(f"{text!r} violates the local increasing condition")
    return t


class ShuffleElement(Linear):
    __slots__ = ()
    fmt = staticmethod(format_shuffle)

    def arity(self) -> int:
        arities = {arity(t) for t in self.terms}
        if len(arities) > 1:
            raise ValueError("mixed arities")
        return arities.pop() if arities else 0


def parse_element(text: str) -> ShuffleElement:
    return ShuffleElement((parse_shuffle(body), c) for body, c in parse_linear(text))


def load_relations(text: str) -> list[ShuffleElement]:
    """One shuffle element per line; ``#`` starts a comment."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_element(line))
    return out


def dump_relations(rels: Iterable[ShuffleElement]) -> str:
    return "\n".join(str(r) for r in rels) + "\n"


# -- symmetric presentations --------------------------------------------------

NONE, SYM, SKEW = "none", "sym", "skew"


@dataclass(frozen=True)
class Generator:
    name: str
    symmetry: str = NONE
    transpose: str | None = None  # shuffle name of the (1 2)-image when symmetry is NONE
    arity: int = 2


class SymElement(Linear):
    """Combination of symmetric-operad tree monomials (children in any order)."""

    __slots__ = ()
    fmt = staticmethod(format_shuffle)


@dataclass
class Presentation:
    name: str
    generators: tuple
    relations: list = field(default_factory=list)

    def gen(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def shuffle_symbols(self) -> tuple:
        out = []
        for g in self.generators:
            out.append(g.name)
            if g.symmetry == NONE:
                out.append(g.transpose)
        return tuple(out)


def op(name: str) -> SymElement:
    return SymElement.of((name, 1, 2))


def _shift(t, k: int, start: int):
    if is_leaf(t):
        return t + k if t >= start else t
    return (t[0], _shift(t[1], k, start), _shift(t[2], k, start))


def _subst(t, i: int, s):
    if is_leaf(t):
        return s if t == i else t
    return (t[0], _subst(t[1], i, s), _subst(t[2], i, s))


def comp(a: SymElement, i: int, b: SymElement) -> SymElement:
    """Partial composition ``a o_i b`` with standard renumbering."""
    out = []
    for ta, ca in a:
        for tb, cb in b:
            p = arity(tb)
            shifted = _shift(ta, p - 1, i + 1)
            out.append((_subst(shifted, i, _shift(tb, i - 1, 1)), ca * cb))
    return SymElement(out)


def act(a: SymElement, *cycle: int) -> SymElement:
    """Relabel leaves along the cycle ``(c1 c2 ...)``."""
    sigma = {c: cycle[(k + 1) % len(cycle)] for k, c in enumerate(cycle)}
    return SymElement((relabel(t, _Perm(sigma)), c) for t, c in a)


class _Perm(dict):
    def __missing__(self, k):
        return k


def to_shuffle(t, pres: Presentation) -> tuple[int, object]:
    """Sign and shuffle monomial equal to the symmetric monomial ``t``."""
    if is_leaf(t):
        return 1, t
    sl, left = to_shuffle(t[1], pres)
    sr, right = to_shuffle(t[2], pres)
    sign = sl * sr
    name = t[0]
    transposed = {g.transpose: g.name for g in pres.generators if g.symmetry == NONE}
    if name in transposed:
        name, left, right = transposed[name], right, left
    g = pres.gen(name)
    if g.arity != 2:
        raise ValueError(f"generator {g.name} is not binary")
    if tmin(left) < tmin(right):
        return sign, (name, left, right)
    if g.symmetry == NONE:
        return sign, (g.transpose, right, left)
    if g.symmetry == SKEW:
        sign = -sign
    return sign, (name, right, left)


def shuffle_image(e: SymElement, pres: Presentation) -> ShuffleElement:
    out = []
    for t, c in e:
        s, u = to_shuffle(t, pres)
        out.append((u, s * c))
    return ShuffleElement(out)


def _monic(e: ShuffleElement) -> ShuffleElement:
    first = min(e.terms, key=format_shuffle)
    return e * (1 / e.terms[first])


def expand_symmetric_to_shuffle(pres: Presentation) -> list[ShuffleElement]:
    """Shuffle images of every ``S_3``-translate of every relation, deduplicated up to scale."""
    for g in pres.generators:
        if g.arity != 2:
            raise ValueError(f"generator {g.name} is not binary")
    seen: dict = {}
    for r in pres.relations:
        for perm in permutations((1, 2, 3)):
            sigma = _Perm(dict(zip((1, 2, 3), perm)))
            moved = SymElement((relabel(t, sigma), c) for t, c in r)
            img = shuffle_image(moved, pres)
            if img:
                seen.setdefault(_monic(img), None)
    return list(seen)


def relation_rank(rels: Iterable[ShuffleElement]) -> int:
    ech = Echelon()
    for r in rels:
        ech.add(r.terms)
    return ech.rank


def _x_gen() -> Generator:
    return Generator("x", NONE, "y")


def dual_presentation(C: Coalgebra) -> Presentation:
    """Koszul dual of the Greg^C presentation: ``x`` plain, ``g1..gn`` skew.

    With the zero coproduct of dimension 1 this is the dual of the Greg
    presentation, where ``g o_1 g`` vanishes.
    """
    n = C.dim
    gens = (_x_gen(),) + tuple(Generator(f"g{k}", SKEW) for k in range(1, n + 1))
    x = op("x")
    xx1, xx2 = comp(x, 1, x), comp(x, 2, x)
    rels = [xx1 - xx2, xx1 - act(xx1, 2, 3)]
    D = dual_product(C)
    for k in range(1, n + 1):
        g = op(f"g{k}")
        xg1 = comp(x, 1, g)
        rels += [
            xg1 - comp(g, 2, x),
            xg1 - act(comp(g, 1, x), 2, 3),
            xg1 + act(xg1, 1, 2, 3) + act(xg1, 1, 3, 2),
            comp(x, 2, g),
        ]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r = comp(op(f"g{i}"), 1, op(f"g{j}"))
            for k, c in D.product(i, j):
                r = r - c * comp(x, 1, op(f"g{k}"))
            rels.append(r)
    return Presentation(f"dual({C})", gens, rels)


def greg_presentation(C: Coalgebra) -> Presentation:
    """Quadratic presentation of Greg^C: ``x`` plain, ``g1..gn`` symmetric."""
    n = C.dim
    gens = (_x_gen(),) + tuple(Generator(f"g{k}", SYM) for k in range(1, n + 1))
    x = op("x")
    pl = comp(x, 1, x) - comp(x, 2, x)
    rels = [pl - act(pl, 2, 3)]
    for k in range(1, n + 1):
        g = op(f"g{k}")
        core = comp(x, 1, g) - act(comp(g, 1, x), 2, 3) - comp(g, 2, x)
        r = core - act(core, 2, 3)
        for c1, c2, c in C.coproduct(k):
            t = comp(op(f"g{c1}"), 1, op(f"g{c2}"))
            r = r + c * (t - act(t, 2, 3))
        rels.append(r)
    return Presentation(f"greg({C})", gens, rels)


def prelie_presentation() -> Presentation:
    x = op("x")
    pl = comp(x, 1, x) - comp(x, 2, x)
    return Presentation("prelie", (_x_gen(),), [pl - act(pl, 2, 3)])


# -- monomial orders ----------------------------------------------------------


@total_ordering
class _Desc:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __eq__(self, other):
        return self.k == other.k

    def __lt__(self, other):
        return other.k < self.k

    def __hash__(self):
        return hash(self.k)


@dataclass(frozen=True)
class MonomialOrder:
    """Path-sequence order on shuffle monomials of one arity.

    A monomial maps to (weighted degree, the root-to-leaf symbol words listed
    by leaf number, the planar leaf sequence).  ``precedence`` lists symbols
    from largest to smallest.  Words compare by length then lexicographically
    (``deglex``), or with longer words smaller (``revdeglex``).  The leaf
    sequence compares lexicographically (``lex``) or with the opposite sign
    of every entry (``revlex``).  ``priority`` says which of paths and leaf
    sequence is compared first.  ``reverse`` flips the whole order.
    """

    precedence: tuple
    word_mode: str = "deglex"
    perm_mode: str = "lex"
    priority: str = "paths"
    weights: tuple = ()
    reverse: bool = False
    name: str = ""

    def __post_init__(self):
        if self.word_mode not in ("deglex", "revdeglex"):
            raise ValueError(f"unknown word mode {self.word_mode!r}")
        if self.perm_mode not in ("lex", "revlex"):
            raise ValueError(f"unknown permutation mode {self.perm_mode!r}")
        if self.priority not in ("paths", "perm"):
            raise ValueError(f"unknown priority {self.priority!r}")

    @cached_property
    def _rank(self) -> dict:
        return {s: len(self.precedence) - i for i, s in enumerate(self.precedence)}

    @cached_property
    def _keys(self) -> dict:
        return {}

    def key(self, t):
        k = self._keys.get(t)
        if k is None:
            k = self._raw_key(t, self._rank, dict(self.weights))
            k = self._keys[t] = _Desc(k) if self.reverse else k
        return k

    def _raw_key(self, t, rank: dict, weights: dict) -> tuple:
        paths: dict = {}

        def walk(u, word):
            if is_leaf(u):
                paths[u] = word
                return
            w = word + (rank[u[0]],)
            walk(u[1], w)
            walk(u[2], w)

        walk(t, ())
        sign = 1 if self.word_mode == "deglex" else -1
        words = tuple((sign * len(paths[v]), paths[v]) for v in sorted(paths))
        seq = leaves(t)
        perm = seq if self.perm_mode == "lex" else tuple(-v for v in seq)
        deg = sum(weights.get(s, 0) for s in symbols_of(t))
        if self.priority == "paths":
            return (deg, words, perm)
        return (deg, perm, words)

    def reversed(self) -> "MonomialOrder":
        name = self.name[4:] if self.name.startswith("rev-") else f"rev-{self.name}"
        return MonomialOrder(self.precedence, self.word_mode, self.perm_mode, self.priority,
                             self.weights, not self.reverse, name)

    def leading(self, e: Linear):
        return max(e.terms, key=self.key)


def _g_symbols(n: int) -> tuple:
    return tuple(f"g{k}" for k in range(n, 0, -1))


# Calibrated by scripts/calibrate_orders.py.  ``top`` lists x, y and the g
# block from largest to smallest.  Every preset gives a quadratic basis for
# the dual presentations with (n+1)m-n normal forms; "dlp" has right-comb
# normal forms, and the reversed presets give quadratic bases of Greg^C whose
# leading terms witness: dlp -> leaf 1 at the root, rdlp -> right freeness,
# wprdl -> left freeness, prdl and wprdl -> left combs.
PRESETS = {
    "dlp": dict(top="gyx", word_mode="deglex", perm_mode="lex", priority="paths"),
    "prdl": dict(top="xyg", word_mode="revdeglex", perm_mode="lex", priority="perm"),
    "rdlp": dict(top="gyx", word_mode="revdeglex", perm_mode="lex", priority="paths"),
    "wprdl": dict(top="xyg", word_mode="revdeglex", perm_mode="lex", priority="perm",
                  weighted=True),
}


def preset_order(name: str, n: int, **override) -> MonomialOrder:
    """Named order for the alphabet ``x, y, g1..gn``."""
    if name.startswith("rev-"):
        return preset_order(name[4:], n, **override).reversed()
    if name not in PRESETS:
        raise ValueError(f"unknown order {name!r}; choose from {sorted(PRESETS)}")
    p = {**PRESETS[name], **override}
    gs = _g_symbols(n)
    blocks = {"x": ("x",), "y": ("y",), "g": gs}
    prec = sum((blocks[b] for b in p["top"]), ())
    weights = tuple((g, 1) for g in gs) if p.get("weighted") else ()
    return MonomialOrder(prec, p["word_mode"], p["perm_mode"], p["priority"], weights,
                         name=name)


# -- rewriting ----------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    lead: object
    tail: tuple  # ((monomial, coeff), ...): lead -> sum coeff * monomial

    def element(self) -> ShuffleElement:
        return ShuffleElement([(self.lead, 1)] + [(m, -c) for m, c in self.tail])

    def __str__(self) -> str:
        rhs = ShuffleElement(self.tail)
        return f"{format_shuffle(self.lead)} -> {rhs}"


def _match(pattern, t, binding: dict) -> bool:
    if is_leaf(pattern):
        binding[pattern] = t
        return True
    if is_leaf(t) or t[0] != pattern[0]:
        return False
    return _match(pattern[1], t[1], binding) and _match(pattern[2], t[2], binding)


def match_at(pattern, t) -> dict | None:
    """Hanging subtrees if ``pattern`` occurs with its root at the root of ``t``."""
    binding: dict = {}
    if not _match(pattern, t, binding):
        return None
    mins = [tmin(binding[k]) for k in sorted(binding)]
    if any(a > b for a, b in zip(mins, mins[1:])):
        return None
    return binding


def divides(pattern, t) -> bool:
    return any(match_at(pattern, v) is not None for _, v in internal(t))


def substitute(m, binding: dict):
    if is_leaf(m):
        return binding[m]
    return (m[0], substitute(m[1], binding), substitute(m[2], binding))


@dataclass(frozen=True)
class Occurrence:
    path: tuple
    rule: Rule
    binding: tuple  # ((leaf, subtree), ...)

    def vertices(self) -> frozenset:
        return frozenset(self.path + p for p, _ in internal(self.rule.lead))


class RewriteSystem:
    def __init__(self, order: MonomialOrder, rules: Iterable[Rule] = ()):
        self.order = order
        self.rules: list[Rule] = []
        self._by_root: dict = defaultdict(list)
        self._memo: dict = {}
        self.added: list[Rule] = []
        for r in rules:
            self.add(r)

    def add(self, rule: Rule) -> None:
        self.rules.append(rule)
        self._by_root[rule.lead[0]].append(rule)
        self._memo.clear()

    def add_element(self, e: ShuffleElement) -> Rule:
        rule = rule_from(e, self.order)
        self.add(rule)
        return rule

    @property
    def leads(self) -> list:
        return [r.lead for r in self.rules]

    def is_quadratic(self) -> bool:
        return all(arity(r.lead) == 3 for r in self.rules)

    def occurrences(self, t) -> list[Occurrence]:
        out = []
        for path, v in internal(t):
            for rule in self._by_root.get(v[0], ()):
                b = match_at(rule.lead, v)
                if b is not None:
                    out.append(Occurrence(path, rule, tuple(sorted(b.items()))))
        return out

    def _first(self, t):
        for path, v in internal(t):
            for rule in self._by_root.get(v[0], ()):
                b = match_at(rule.lead, v)
                if b is not None:
                    return path, rule, b
        return None

    def is_normal(self, t) -> bool:
        return self._first(t) is None

    def rewrite(self, t, occ: Occurrence) -> dict:
        """One rewriting step of ``t`` at ``occ``."""
        b = dict(occ.binding)
        return {replace(t, occ.path, substitute(m, b)): c for m, c in occ.rule.tail}

    def _reduce(self, t) -> dict:
        hit = self._memo.get(t)
        if hit is not None:
            return hit
        found = self._first(t)
        if found is None:
            res = {t: Fraction(1)}
        else:
            path, rule, b = found
            acc: dict = defaultdict(Fraction)
            for m, c in rule.tail:
                for u, d in self._reduce(replace(t, path, substitute(m, b))).items():
                    acc[u] += c * d
            res = {u: c for u, c in acc.items() if c}
        self._memo[t] = res
        return res

    def normal_form(self, e) -> ShuffleElement:
        if not isinstance(e, Linear):
            e = ShuffleElement.of(e)
        acc: dict = defaultdict(Fraction)
        for t, c in e.terms.items():
            for u, d in self._reduce(t).items():
                acc[u] += c * d
        return ShuffleElement(acc)

    def symbols(self) -> set:
        out = set()
        for r in self.rules:
            out.update(symbols_of(r.lead))
            for m, _ in r.tail:
                out.update(symbols_of(m))
        return out


def rule_from(e: ShuffleElement, order: MonomialOrder) -> Rule:
    lead = order.leading(e)
    c = e.terms[lead]
    tail = tuple(sorted(((m, -a / c) for m, a in e.terms.items() if m != lead),
                        key=lambda mc: order.key(mc[0]), reverse=True))
    return Rule(lead, tail)


def normal_form(e, R: RewriteSystem) -> ShuffleElement:
    return R.normal_form(e)


def interreduce(rels: Iterable[ShuffleElement], order: MonomialOrder) -> list[Rule]:
    ech = Echelon(pivot_key=order.key)
    for r in rels:
        ech.add(r.terms)
    rows = ech.reduced_rows()
    return [rule_from(ShuffleElement(rows[p]), order)
            for p in sorted(rows, key=order.key, reverse=True)]


# -- completion ---------------------------------------------------------------


def _overlap_bound(rules: list[Rule]) -> int:
    # two occurrences sharing a vertex span at most v1 + v2 - 1 internal vertices
    sizes = [arity(r.lead) - 1 for r in rules]
    if not sizes:
        return 0
    top = sorted(sizes)[-2:] if len(sizes) > 1 else sizes * 2
    return sum(top)  # arity = internal vertices + 1


def critical_pairs(R: RewriteSystem, t) -> Iterator[tuple[Occurrence, Occurrence]]:
    """Pairs of overlapping leading-term occurrences that together cover ``t``."""
    occ = R.occurrences(t)
    if len(occ) < 2:
        return
    everything = frozenset(p for p, _ in internal(t))
    for a, b in combinations(occ, 2):
        va, vb = a.vertices(), b.vertices()
        if va & vb and va | vb == everything:
            yield a, b


def complete(relations: Iterable[ShuffleElement], order: MonomialOrder,
             max_arity: int = 6, symbols: Iterable[str] | None = None) -> RewriteSystem:
    """Interreduce the arity-3 relations, then resolve critical monomials
    arity by arity up to ``max_arity``; unresolved ones become new rules."""
    if max_arity < 4:
        raise ValueError("max_arity must be >= 4")
    relations = list(relations)
    R = RewriteSystem(order, interreduce(relations, order))
    if symbols is None:
        syms = set(R.symbols())
        for r in relations:
            for t in r.terms:
                syms.update(symbols_of(t))
        symbols = syms
    symbols = tuple(sorted(symbols))
    k = 4
    while k <= min(max_arity, _overlap_bound(R.rules)):
        changed = True
        while changed:
            changed = False
            for t in monomials(k, symbols):
                for a, b in critical_pairs(R, t):
                    lhs = R.normal_form(ShuffleElement(R.rewrite(t, a)))
                    rhs = R.normal_form(ShuffleElement(R.rewrite(t, b)))
                    diff = lhs - rhs
                    if diff:
                        R.added.append(R.add_element(diff))
                        changed = True
        k += 1
    return R


# -- normal forms -------------------------------------------------------------


def normal_forms(R: RewriteSystem, m: int, symbols: Iterable[str] | None = None) -> list:
    """Normal monomials of arity ``m``, built bottom-up from normal subtrees."""
    syms = tuple(sorted(symbols if symbols is not None else R.symbols()))
    roots: dict = defaultdict(list)
    for r in R.rules:
        roots[r.lead[0]].append(r.lead)

    @lru_cache(maxsize=None)
    def build(labels: tuple) -> tuple:
        if len(labels) == 1:
            return (labels[0],)
        first, rest = labels[0], labels[1:]
        out = []
        for size in range(len(rest)):
            for extra in combinations(rest, size):
                left = (first,) + extra
                right = tuple(v for v in rest if v not in extra)
                ls, rs = build(left), build(right)
                for s in syms:
                    pats = roots.get(s, ())
                    for a in ls:
                        for b in rs:
                            t = (s, a, b)
                            if not any(match_at(p, t) is not None for p in pats):
                                out.append(t)
        return tuple(out)

    return list(build(tuple(range(1, m + 1))))


def count_normal_forms(R: RewriteSystem, m: int, symbols: Iterable[str] | None = None) -> int:
    return len(normal_forms(R, m, symbols))


def is_dlp_shape(t) -> bool:
    """Right comb ``s1(1, s2(2, ...))`` whose symbols read, from the root,
    some ``y``, at most one ``g``, then ``x``."""
    seq = []
    k = 1
    u = t
    while not is_leaf(u):
        if u[1] != k:
            return False
        seq.append(u[0])
        u = u[2]
        k += 1
    kinds = "".join("g" if s.startswith("g") else s for s in seq)
    return re.fullmatch(r"y*g?x*", kinds) is not None


# -- freeness shapes ----------------------------------------------------------


@dataclass
class FreenessReport:
    left: bool
    right: bool
    ns_root: bool
    ns_comb: bool
    sub_rules: int
    other_rules: int
    counterexamples: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "left": self.left, "right": self.right,
            "ns_root": self.ns_root, "ns_comb": self.ns_comb,
            "sub_rules": self.sub_rules, "other_rules": self.other_rules,
            "counterexamples": {k: [str(r) for r in v] for k, v in self.counterexamples.items()},
        }


def _leaf_parents(t) -> list:
    return [v for _, v in internal(t) if is_leaf(v[1]) and is_leaf(v[2])]


def _is_left_comb(t) -> bool:
    return all(is_leaf(v[2]) for _, v in internal(t))


def check_freeness_shapes(R: RewriteSystem, sub_alphabet: Iterable[str]) -> FreenessReport:
    """Leading-term shape conditions for module freeness and Nielsen-Schreier.

    Rules using only ``sub_alphabet`` form the sub-presentation; for the
    others, the left condition asks for a leading-term root outside it, the
    right condition for every vertex carrying only leaves to be outside it.
    The two Nielsen-Schreier conditions look at all leading terms: leaf 1 is
    a child of the root, resp. the term is a left comb with 1 and 2 siblings.
    """
    E = set(sub_alphabet)
    sub, other = [], []
    for r in R.rules:
        syms = set(symbols_of(r.lead))
        for m, _ in r.tail:
            syms.update(symbols_of(m))
        (sub if syms <= E else other).append(r)
    bad: dict = defaultdict(list)
    for r in other:
        if r.lead[0] in E:
            bad["left"].append(r)
        if any(v[0] in E for v in _leaf_parents(r.lead)):
            bad["right"].append(r)
    for r in R.rules:
        if 1 not in (r.lead[1], r.lead[2]):
            bad["ns_root"].append(r)
        if not (_is_left_comb(r.lead) and any({v[1], v[2]} == {1, 2} for v in _leaf_parents(r.lead))):
            bad["ns_comb"].append(r)
    return FreenessReport(
        left=not bad["left"], right=not bad["right"],
        ns_root=not bad["ns_root"], ns_comb=not bad["ns_comb"],
        sub_rules=len(sub), other_rules=len(other), counterexamples=dict(bad),
    )


def sub_alphabet(n_sub: int) -> tuple:
    """Symbols of the sub-presentation for the coalgebra spanned by ``e_1..e_k``."""
    return ("x", "y") + tuple(f"g{k}" for k in range(1, n_sub + 1))
