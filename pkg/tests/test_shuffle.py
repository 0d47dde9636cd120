import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gregops.coalgebra import delta_max, zero_coalgebra
from gregops.shuffle import (PRESETS, FreenessReport, Generator, Presentation, Rule, RewriteSystem,
                             ShuffleElement, at, check_freeness_shapes, complete,
                             count_normal_forms, dual_presentation, dump_relations,
                             expand_symmetric_to_shuffle, format_shuffle, greg_presentation,
                             internal, is_dlp_shape, is_shuffle, leaves, load_relations,
                             monomials, normal_form, normal_forms, parse_element, parse_shuffle,
                             prelie_presentation, preset_order, relabel, relation_rank, replace,
                             sub_alphabet)
from gregops.words import multilinear_dimension

DUALS = [zero_coalgebra(1), delta_max(1), delta_max(2), delta_max(3)]


def syms(n):
    return ("x", "y") + tuple(f"g{k}" for k in range(1, n + 1))


def dual_rels(C):
    return expand_symmetric_to_shuffle(dual_presentation(C))


def test_monomial_counts():
    assert len(monomials(2, ("x", "y"))) == 2
    assert len(monomials(2, ("x", "y", "g1"))) == 3
    assert len(monomials(3, ("x", "y"))) == 12
    assert all(is_shuffle(t) for t in monomials(4, ("x", "y", "g1")))
    assert not is_shuffle(("x", 2, 1))


def test_parse_format():
    t = parse_shuffle("x(1,g1(2,3))")
    assert t == ("x", 1, ("g1", 2, 3))
    assert format_shuffle(t) == "x(1,g1(2,3))"
    with pytest.raises(ValueError):
        parse_shuffle("x(2,1)")
    rels = dual_rels(delta_max(1))
    assert load_relations(dump_relations(rels)) == rels


def test_expansion_counts():
    assert len(expand_symmetric_to_shuffle(prelie_presentation())) == 3
    rels = dual_rels(zero_coalgebra(1))
    # recorded: 22 distinct relations of rank 22 (the quoted figure is 25)
    assert (len(rels), relation_rank(rels)) == (22, 22)
    empty = Presentation("empty", (Generator("x", "none", "y"),), [])
    assert expand_symmetric_to_shuffle(empty) == []
    with pytest.raises(ValueError):
        expand_symmetric_to_shuffle(Presentation("bad", (Generator("t", "sym", arity=3),), []))


def test_expansion_dimension_count():
    # quadratic dual: relations + dual relations = all arity-3 monomials
    for C in DUALS:
        n = C.dim
        dual = relation_rank(dual_rels(C))
        primal = relation_rank(expand_symmetric_to_shuffle(greg_presentation(C)))
        assert dual + primal == len(monomials(3, syms(n)))


def test_normal_form_examples():
    R = complete(dual_rels(zero_coalgebra(1)), preset_order("dlp", 1), max_arity=4)
    assert not normal_form(ShuffleElement.of(parse_shuffle("x(1,g1(2,3))")), R)
    assert not normal_form(ShuffleElement.of(parse_shuffle("g1(g1(1,2),3)")), R)
    nf = normal_forms(R, 3, syms(1))[0]
    assert normal_form(ShuffleElement.of(nf), R) == ShuffleElement.of(nf)


@pytest.fixture(scope="module")
def dlp_n2():
    return complete(dual_rels(delta_max(2)), preset_order("dlp", 2), max_arity=4)


@given(st.lists(st.tuples(st.integers(0, 200), st.integers(-4, 4)), min_size=1, max_size=5),
       st.integers(-3, 3))
def test_normal_form_idempotent_linear(dlp_n2, picks, scale):
    pool = monomials(4, syms(2))
    e = ShuffleElement([(pool[i % len(pool)], c) for i, c in picks])
    f = ShuffleElement([(pool[(i * 7) % len(pool)], c) for i, c in picks])
    nf = normal_form(e, dlp_n2)
    assert normal_form(nf, dlp_n2) == nf
    assert normal_form(e * scale + f, dlp_n2) == nf * scale + normal_form(f, dlp_n2)


def test_complete_examples(dlp_n2):
    R = complete(dual_rels(zero_coalgebra(1)), preset_order("dlp", 1), max_arity=4)
    assert R.is_quadratic() and not R.added
    assert count_normal_forms(R, 3, syms(1)) == 5
    assert count_normal_forms(R, 4, syms(1)) == 7
    assert dlp_n2.is_quadratic() and not dlp_n2.added
    assert count_normal_forms(dlp_n2, 4, syms(2)) == 10
    R3 = complete(dual_rels(delta_max(3)), preset_order("dlp", 3), max_arity=4)
    assert count_normal_forms(R3, 4, syms(3)) == 13
    empty = complete([], preset_order("dlp", 1))
    assert empty.rules == [] and count_normal_forms(empty, 2, ("x", "y", "g1")) == 3


@pytest.mark.parametrize("preset", sorted(PRESETS))
@pytest.mark.parametrize("C", DUALS, ids=str)
def test_every_preset_gives_quadratic_basis(preset, C):
    n = C.dim
    R = complete(dual_rels(C), preset_order(preset, n), max_arity=6)
    assert R.is_quadratic() and not R.added
    for m in range(1, 7):
        count = count_normal_forms(R, m, syms(n))
        assert count == (n + 1) * m - n
        if m <= 5:
            assert count == multilinear_dimension(m, n)


@pytest.mark.parametrize("C", DUALS, ids=str)
def test_dlp_normal_forms_are_right_combs(C):
    R = complete(dual_rels(C), preset_order("dlp", C.dim), max_arity=4)
    for m in range(1, 6):
        assert all(is_dlp_shape(t) for t in normal_forms(R, m, syms(C.dim)))


def test_dlp_shape_predicate():
    assert is_dlp_shape(parse_shuffle("y(1,g2(2,x(3,4)))"))
    assert not is_dlp_shape(parse_shuffle("x(1,y(2,3))"))
    assert not is_dlp_shape(parse_shuffle("g1(1,g1(2,3))"))
    assert not is_dlp_shape(parse_shuffle("x(x(1,2),3)"))


@pytest.mark.parametrize("preset", sorted(PRESETS) + ["rev-dlp"])
def test_order_compatible_with_composition(preset):
    rng = random.Random(hash(preset) % 1000)
    order = preset_order(preset, 2)
    small = monomials(3, syms(2))
    contexts = monomials(4, syms(2)) + monomials(5, syms(2))
    for _ in range(300):
        u, v = rng.sample(small, 2)
        c = rng.choice(contexts)
        spots = [p for p, s in internal(c) if len(leaves(s)) == 3]
        if not spots:
            continue
        p = rng.choice(spots)
        block = sorted(leaves(at(c, p)))
        sigma = dict(zip((1, 2, 3), block))
        cu, cv = replace(c, p, relabel(u, sigma)), replace(c, p, relabel(v, sigma))
        assert is_shuffle(cu) and is_shuffle(cv)
        assert (order.key(u) < order.key(v)) == (order.key(cu) < order.key(cv))


def test_rules_dominate_their_tails(dlp_n2):
    key = dlp_n2.order.key
    for r in dlp_n2.rules:
        assert all(key(m) < key(r.lead) for m, _ in r.tail)


def test_freeness_witnesses():
    want = {"left": "wprdl", "right": "rdlp", "ns_root": "dlp", "ns_comb": "prdl"}
    for cond, preset in want.items():
        for n, k in ((2, 1), (3, 2)):
            R = complete(expand_symmetric_to_shuffle(greg_presentation(delta_max(n))),
                         preset_order(preset, n).reversed(), max_arity=4)
            assert not R.added
            assert getattr(check_freeness_shapes(R, sub_alphabet(k)), cond), (cond, n, k)


def test_freeness_counterexample_reported():
    order = preset_order("dlp", 2)
    lead = parse_shuffle("g1(1,g2(2,3))")
    bad = Rule(lead, ((parse_shuffle("g2(1,g2(2,3))"), Fraction(1)),))
    rep = check_freeness_shapes(RewriteSystem(order, [bad]), sub_alphabet(1))
    assert not rep.left and rep.counterexamples["left"] == [bad]
    empty = check_freeness_shapes(RewriteSystem(order), sub_alphabet(1))
    assert isinstance(empty, FreenessReport)
    assert empty.left and empty.right and empty.ns_root and empty.ns_comb


def test_parse_element():
    e = parse_element("x(1,x(2,3)) - 1/2 * y(1,g1(2,3))")
    assert e.terms[("y", 1, ("g1", 2, 3))] == Fraction(-1, 2)
