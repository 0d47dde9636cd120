"""Named verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of :class:`Check` records.  A check passes or fails
on exact arithmetic; the ``detail`` string carries the observed values or the
first counterexample.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from math import factorial
from typing import Callable

from . import operad as op
from .coalgebra import Coalgebra, coalgebra_from_spec, delta_max, zero_coalgebra
from .series import (N_PARAM, cyclie_egf, decomposition_check, dual_dimension_series, greg_egf,
                     greg_equation_residual, greg_polynomials, lemma_identities, verify_koszul_pair)
from .shuffle import (check_freeness_shapes, complete, count_normal_forms, dual_presentation,
                      expand_symmetric_to_shuffle, greg_presentation, is_dlp_shape, normal_forms,
                      preset_order, sub_alphabet)
from .trees import B, W, count_by_weight, enumerate_trees, format_tree, relabel
from .words import multilinear_dimension

DEFAULT_SEED = 20241015


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class AxiomConfig:
    max_arity: int = 4
    colors: int = 2
    coalgebras: tuple = ("zero", "max")
    random_instances: int = 200
    random_arity: int = 5
    seed: int = DEFAULT_SEED


def make_coalgebra(spec: str, colors: int) -> Coalgebra:
    """``zero``, ``max`` (both of dimension ``colors``) or ``file:PATH``."""
    return coalgebra_from_spec(spec, colors)


def symbols(n: int) -> tuple:
    return ("x", "y") + tuple(f"g{k}" for k in range(1, n + 1))


# -- tree counts --------------------------------------------------------------

TABLE_COLORS_1 = {1: 1, 2: 3, 3: 22, 4: 262}


def dimension_table(max_arity: int = 6, colors: int = 1) -> list[Check]:
    """Enumeration against the counting recursion, and the known small values."""
    polys = greg_polynomials(max_arity)
    out = []
    for m in range(1, max_arity + 1):
        want = int(polys[m - 1](colors))
        got = len(enumerate_trees(m, colors))
        detail = f"enumerated {got}, recursion {want}"
        ok = got == want
        if colors == 1 and m in TABLE_COLORS_1:
            ok = ok and got == TABLE_COLORS_1[m]
            detail += f", table {TABLE_COLORS_1[m]}"
        out.append(Check(f"trees arity {m} colors {colors}", ok, detail))
    return out


def prelie_lie(max_arity: int = 6, lie_arity: int = 5) -> list[Check]:
    out = []
    for m in range(1, max_arity + 1):
        got = count_by_weight(m, 0)
        out.append(Check(f"uncolored trees arity {m}", got == {0: m ** (m - 1)}, f"{got}"))
    for m in range(1, lie_arity + 1):
        r = op.rank(op.lie_span(m))
        out.append(Check(f"lie rank arity {m}", r == factorial(m - 1), f"rank {r}"))
    return out


# -- operad axioms ------------------------------------------------------------


def _shift(t, offset: int):
    return relabel(t, {k: k + offset for k in range(1, 20)})


def _prelie_defect(R, S, T, C):
    f = lambda a, b: op.fall_product(a, b, C)  # noqa: E731
    return (f(f(R, S), T) - f(R, f(S, T))) - (f(f(R, T), S) - f(R, f(T, S)))


def _sequential(T, i, S, j, R, C):
    return op.compose(op.compose(T, i, S, C), j, R, C) - op.compose(T, i, op.compose(S, j, R, C), C)


def _parallel(T, i, S, j, R, C):
    return op.compose(op.compose(T, i, S, C), j, R, C) - op.compose(op.compose(T, j, R, C), i, S, C)


def _sizes(total: int, parts: int, cap: int):
    if parts == 1:
        if 1 <= total <= cap:
            yield (total,)
        return
    for a in range(1, min(cap, total - parts + 1) + 1):
        for rest in _sizes(total - a, parts - 1, cap):
            yield (a,) + rest


class _Tally:
    def __init__(self):
        self.total = 0
        self.failures = 0
        self.example = ""

    def record(self, defect, describe: Callable[[], str]) -> None:
        self.total += 1
        if defect:
            self.failures += 1
            if not self.example:
                self.example = f"{describe()} gives {defect}"

    def check(self, name: str) -> Check:
        detail = f"{self.failures} of {self.total} failed"
        if self.example:
            detail += f"; first: {self.example}"
        return Check(name, self.failures == 0, detail)


def _prelie_instances(sizes, trees):
    a, b, c = sizes
    for R in trees(a):
        for S in trees(b):
            for T in trees(c):
                yield R, _shift(S, 10), _shift(T, 20)


def _compose_instances(sizes, trees, parallel: bool):
    a, b, c = sizes
    for T in trees(a):
        for S in trees(b):
            S1 = _shift(S, 10)
            for R in trees(c):
                R1 = _shift(R, 20)
                for i in range(1, a + 1):
                    js = [j for j in range(1, a + 1) if j != i] if parallel else range(11, 11 + b)
                    for j in js:
                        yield T, i, S1, j, R1


def axioms(cfg: AxiomConfig | None = None) -> list[Check]:
    """Pre-Lie identity of the fall product and the two composition axioms.

    Exhaustive over canonical trees whose checked identity has result arity
    ``<= cfg.max_arity``, then ``cfg.random_instances`` seeded random
    instances of each identity at result arity ``cfg.random_arity``.
    """
    cfg = cfg or AxiomConfig()
    rng = random.Random(cfg.seed)
    pool: dict = {}

    def trees(m):
        if m not in pool:
            pool[m] = enumerate_trees(m, cfg.colors)
        return pool[m]

    def pick(m):
        return rng.choice(trees(m))

    out = []
    for kind in cfg.coalgebras:
        C = make_coalgebra(kind, cfg.colors)
        if C.dim < cfg.colors:
            raise ValueError(f"coalgebra {kind!r} has dimension {C.dim} < {cfg.colors} colors")
        tag = C.name or kind
        pre, seq, par = _Tally(), _Tally(), _Tally()
        for total in range(3, cfg.max_arity + 1):
            for sizes in _sizes(total, 3, total):
                for R, S, T in _prelie_instances(sizes, trees):
                    pre.record(_prelie_defect(R, S, T, C),
                               lambda: f"R={format_tree(R)} S={format_tree(S)} T={format_tree(T)}")
        for total in range(3, cfg.max_arity + 3):
            for sizes in _sizes(total, 3, total):
                for T, i, S, j, R in _compose_instances(sizes, trees, False):
                    seq.record(_sequential(T, i, S, j, R, C),
                               lambda: f"T={format_tree(T)} o{i} S={format_tree(S)} o{j} R={format_tree(R)}")
                if sizes[0] >= 2:
                    for T, i, S, j, R in _compose_instances(sizes, trees, True):
                        par.record(_parallel(T, i, S, j, R, C),
                                   lambda: f"T={format_tree(T)} o{i} S={format_tree(S)} o{j} R={format_tree(R)}")
        out += [pre.check(f"pre-Lie exhaustive {tag}"), seq.check(f"sequential exhaustive {tag}"),
                par.check(f"parallel exhaustive {tag}")]

        # random instances, pieces of arity <= max_arity so the pools stay small
        rpre, rseq, rpar = _Tally(), _Tally(), _Tally()
        pre_sizes = list(_sizes(cfg.random_arity, 3, cfg.max_arity))
        comp_sizes = list(_sizes(cfg.random_arity + 2, 3, cfg.max_arity))
        par_sizes = [s for s in comp_sizes if s[0] >= 2]
        for _ in range(cfg.random_instances):
            a, b, c = rng.choice(pre_sizes)
            R, S, T = pick(a), _shift(pick(b), 10), _shift(pick(c), 20)
            rpre.record(_prelie_defect(R, S, T, C),
                        lambda: f"R={format_tree(R)} S={format_tree(S)} T={format_tree(T)}")
            a, b, c = rng.choice(comp_sizes)
            T, S, R = pick(a), _shift(pick(b), 10), _shift(pick(c), 20)
            i, j = rng.randint(1, a), rng.randint(11, 10 + b)
            rseq.record(_sequential(T, i, S, j, R, C),
                        lambda: f"T={format_tree(T)} o{i} S={format_tree(S)} o{j} R={format_tree(R)}")
            a, b, c = rng.choice(par_sizes)
            T, S, R = pick(a), _shift(pick(b), 10), _shift(pick(c), 20)
            i, j = rng.sample(range(1, a + 1), 2)
            rpar.record(_parallel(T, i, S, j, R, C),
                        lambda: f"T={format_tree(T)} o{i} S={format_tree(S)} o{j} R={format_tree(R)}")
        out += [rpre.check(f"pre-Lie random {tag} seed {cfg.seed}"),
                rseq.check(f"sequential random {tag} seed {cfg.seed}"),
                rpar.check(f"parallel random {tag} seed {cfg.seed}")]
    return out


# -- relations ----------------------------------------------------------------


def prelie_relation() -> op.TreeVector:
    x = op.gen_x()
    assoc = op.compose_std(x, 1, x) - op.compose_std(x, 2, x)
    return assoc - op.transpose(assoc, 2, 3)


def greg_relation(k: int, C: Coalgebra) -> op.TreeVector:
    """The arity-3 relation tying ``x`` to ``g^k`` and the coproduct of ``e_k``."""
    x, g = op.gen_x(), op.gen_g(k)
    core = (op.compose_std(x, 1, g, C) - op.transpose(op.compose_std(g, 1, x, C), 2, 3)
            - op.compose_std(g, 2, x, C))
    rel = core - op.transpose(core, 2, 3)
    for c1, c2, c in C.coproduct(k):
        t = op.compose_std(op.gen_g(c1), 1, op.gen_g(c2), C)
        rel = rel + c * (t - op.transpose(t, 2, 3))
    return rel


def leibniz_expected(deformed: bool) -> op.TreeVector:
    terms = [B(1, W(1, W(3)), W(2)), B(1, W(1), W(2, W(3))), B(1, W(1), W(2), W(3))]
    if deformed:
        terms += [B(1, W(1), B(1, W(2), W(3))), B(1, W(2), B(1, W(1), W(3)))]
    return op.TreeVector((t, 1) for t in terms)


def relations(max_colors: int = 3) -> list[Check]:
    out = []
    pl = prelie_relation()
    out.append(Check("pre-Lie relation", not pl, str(pl)))
    for kind in ("zero", "max"):
        for n in range(1, max_colors + 1):
            C = make_coalgebra(kind, n)
            for k in range(1, n + 1):
                r = greg_relation(k, C)
                out.append(Check(f"greg relation g{k} {kind}({n})", not r, str(r)))
    for deformed, C in ((False, zero_coalgebra(1)), (True, delta_max(1))):
        got = op.compose_std(op.gen_x(), 1, op.gen_g(1), C)
        want = leibniz_expected(deformed)
        name = "x o1 g: five terms, max(1)" if deformed else "x o1 g: three terms, zero"
        out.append(Check(name, got == want, str(got)))
    return out


# -- the dual side ------------------------------------------------------------


def dual_coalgebras(max_colors: int = 3) -> list[Coalgebra]:
    return [zero_coalgebra(0), zero_coalgebra(1)] + [delta_max(n) for n in range(1, max_colors + 1)]


def dual_dimensions(max_arity: int = 6, max_colors: int = 3, order: str = "dlp") -> list[Check]:
    """Normal-form counts, decorated-word dimensions and ``(n+1)m - n`` agree."""
    out = []
    for C in dual_coalgebras(max_colors):
        n = C.dim
        R = complete(expand_symmetric_to_shuffle(dual_presentation(C)), preset_order(order, n),
                     max_arity=max_arity)
        series = dual_dimension_series(max_arity).specialize(n)
        for m in range(1, max_arity + 1):
            a = count_normal_forms(R, m, symbols(n))
            b = multilinear_dimension(m, n)
            c = (n + 1) * m - n
            d = int(series.egf(m).constant())
            out.append(Check(f"dual dim {C.name} arity {m}", a == b == c == d,
                             f"normal forms {a}, words {b}, formula {c}, series {d}"))
    return out


def groebner(order: str = "dlp", arity: int = 4, shape_arity: int = 5, max_colors: int = 3) -> list[Check]:
    out = []
    for C in [zero_coalgebra(1)] + [delta_max(n) for n in range(1, max_colors + 1)]:
        n = C.dim
        R = complete(expand_symmetric_to_shuffle(dual_presentation(C)), preset_order(order, n),
                     max_arity=arity)
        ok = R.is_quadratic() and not R.added
        out.append(Check(f"quadratic basis {C.name} {order}", ok,
                         f"{len(R.rules)} rules, {len(R.added)} added"))
        bad = [t for m in range(1, shape_arity + 1) for t in normal_forms(R, m, symbols(n))
               if not is_dlp_shape(t)]
        out.append(Check(f"normal form shapes {C.name} {order}", not bad,
                         f"{len(bad)} off-shape" + (f", e.g. {bad[0]}" if bad else "")))
    return out


FREENESS_PRESETS = {"left": "wprdl", "right": "rdlp", "ns_root": "dlp", "ns_comb": "prdl"}


def freeness(pairs: tuple = ((2, 1), (3, 1), (3, 2))) -> list[Check]:
    """Leading-term shape conditions on a basis of Greg^C, for sub-coalgebras.

    The basis is completed under the reversal of the named preset, whose
    leading terms are exactly the dual's normal forms.
    """
    out = []
    for cond, preset in FREENESS_PRESETS.items():
        for n, k in pairs:
            R = complete(expand_symmetric_to_shuffle(greg_presentation(delta_max(n))),
                         preset_order(preset, n).reversed(), max_arity=4)
            rep = check_freeness_shapes(R, sub_alphabet(k))
            bad = rep.counterexamples.get(cond, [])
            detail = f"{len(R.added)} added, {rep.sub_rules} sub rules, {rep.other_rules} other"
            if bad:
                detail += f"; counterexample {bad[0]}"
            out.append(Check(f"{cond} max({k}) in max({n}) rev-{preset}",
                             getattr(rep, cond) and not R.added, detail))
    return out


# -- series -------------------------------------------------------------------


def series_identities(order: int = 10) -> list[Check]:
    out = [
        Check("greg functional equation", not any(greg_equation_residual(greg_egf(order)).coeffs),
              f"order {order}"),
        Check("polynomials match series",
              greg_polynomials(order) == greg_egf(order).egf_table()[1:], f"order {order}"),
        Check("h o f = t symbolic", verify_koszul_pair(order), f"order {order}"),
        Check("h o f = t at n=1", verify_koszul_pair(order, n=1), f"order {order}"),
    ]
    dual = dual_dimension_series(order)
    ok = all(dual.egf(k) == (N_PARAM + 1) * k - N_PARAM for k in range(1, order + 1))
    out.append(Check("dual dimension series", ok, f"order {order}"))
    for name, val in lemma_identities(order).items():
        out.append(Check(name, val, f"order {order}"))
    return out


def decomposition(order: int = 8, ns: tuple = (1, 2, 3), cyclie_arity: int = 6) -> list[Check]:
    out = [Check(f"decomposition n={n}", decomposition_check(n, order), f"order {order}") for n in ns]
    cyc = cyclie_egf(max(order, cyclie_arity))
    got = [int(cyc.egf(k).constant()) for k in range(2, cyclie_arity + 1)]
    want = [factorial(k - 2) for k in range(2, cyclie_arity + 1)]
    out.append(Check("cyclic Lie dimensions", got == want, f"{got}"))
    return out


def generator_species(max_arity: int = 5, colors: int = 1) -> list[Check]:
    out = []
    for m in range(2, max_arity + 1):
        r = op.xn_generator_rank(m, colors)
        out.append(Check(f"generator span arity {m}", r == factorial(m - 2),
                         f"rank {r}, expected {factorial(m - 2)}"))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "dimension-table": dimension_table,
    "prelie-lie": prelie_lie,
    "axioms": axioms,
    "relations": relations,
    "dual-dimensions": dual_dimensions,
    "groebner": groebner,
    "freeness": freeness,
    "series": series_identities,
    "decomposition": decomposition,
    "generator-species": generator_species,
}


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.name)]}
