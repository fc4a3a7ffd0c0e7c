"""Reduction, distributions, and observational comparison."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

import supcalc as sc
from supcalc import rewrite as R
from supcalc import syntax as S
from supcalc.gen import TermGenerator

SR = sc.QNN


def term(src):
    return sc.parse_term(src)


# ---------------------------------------------------------------------------
# step_all


def test_step_unit_elim():
    (step, reduct), = sc.step_all(term("unit_elim(star(2),star(5))"))
    assert step.rule == "unit_elim" and step.weight == F(1)
    assert sc.print_term(reduct) == "scal(2,star(5))"


def test_step_sum_of_stars():
    (step, reduct), = sc.step_all(term("sum(star(1),star(2))"))
    assert step.rule == "sum_star"
    assert reduct == S.Star(F(3))


def test_step_sup_elim_forks():
    steps = sc.step_all(term("sup_elim{1/2,1/2}(sup(star(1),star(2)),x.x,y.y)"))
    assert [(s.rule, s.weight) for s, _ in steps] == [
        ("sup_elim_left", F(1, 2)), ("sup_elim_right", F(1, 2))]
    assert [sc.print_term(r) for _, r in steps] == ["star(1)", "star(2)"]


def test_step_all_finds_nested_redexes():
    t = term("pair(unit_elim(star(1),star(2)),sum(star(1),star(1)))")
    rules = sorted(s.rule for s, _ in sc.step_all(t))
    assert rules == ["sum_star", "unit_elim"]


def test_rule_inventory():
    assert len(sc.BETA_RULES) == 11
    assert len(sc.COMMUTATION_RULES) == 14
    assert len(sc.ALL_RULES) == 25


def test_only_fork_steps_carry_non_unit_weights(corpus_entries):
    forking = {"sup_elim_left", "sup_elim_right"}
    for e in corpus_entries:
        for step, _ in sc.step_all(e.term):
            if step.rule not in forking:
                assert step.weight == F(1), step


# ---------------------------------------------------------------------------
# normalize


def test_normalize_beta():
    assert sc.normalize(term("app(lam(x,x),star(5))")) == S.Star(F(5))


def test_normalize_scal():
    assert sc.normalize(term("scal(2,star(3))")) == S.Star(F(6))


def test_normalize_sum_of_pairs():
    got = sc.normalize(term("sum(pair(star(1),star(2)),pair(star(3),star(4)))"))
    assert got == S.Pair(S.Star(F(4)), S.Star(F(6)))


def test_normalize_refuses_forks():
    with pytest.raises(sc.SupBranchEncountered):
        sc.normalize(term("sup_elim{1/2,1/2}(sup(star(1),star(2)),x.x,y.y)"))


def test_normalize_skips_discarded_forks():
    t = term("fst(pair(star(7),sup_elim{1/2,1/2}(sup(star(1),star(2)),x.x,y.y)))")
    assert sc.normalize(t) == S.Star(F(7))


def test_merge_lams_renames_apart():
    got = sc.normalize(term("sum(lam(x,x),lam(y,scal(2,y)))"))
    assert sc.alpha_eq(got, term("lam(z,sum(z,scal(2,z)))"))


def test_corpus_terminates_within_budget(corpus_entries):
    for e in corpus_entries:
        sc.distribution(e.term)  # raises BudgetExceeded on failure


# ---------------------------------------------------------------------------
# distribution


def test_distribution_of_equal_branches():
    t = term("sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)")
    d = sc.distribution(t)
    assert [(w, sc.print_term(v)) for w, v in d.items] == [
        (F(1, 2), "star(1/2)"), (F(1, 2), "star(1/2)")]
    assert [(w, sc.print_term(v)) for w, v in d.aggregate(SR)] == [
        (F(1), "star(1/2)")]


def test_distribution_of_distinct_branches():
    u = term("sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)")
    d = sc.distribution(u)
    assert sorted((w, sc.print_term(v)) for w, v in d.items) == [
        (F(1, 2), "star(1/4)"), (F(1, 2), "star(3/4)")]


def test_distribution_without_forks_is_singleton():
    t = term("app(lam(x,x),star(5))")
    d = sc.distribution(t)
    assert d.items == ((F(1), S.Star(F(5))),)


def test_path_weights_multiply():
    t = term("sup_elim{1/2,1/2}(sup(sup_elim{1/4,3/4}(sup(star(1),star(2)),"
             "a.a,b.b),star(5)),x.x,y.y)")
    for p in sc.paths(t):
        prod = F(1)
        for step, _ in p.steps:
            prod *= step.weight
        assert prod == p.weight
        assert sc.is_normal(p.value)


def test_mass_conservation_on_corpus(corpus_entries):
    for e in corpus_entries:
        assert sc.distribution(e.term).total(SR) == F(1), e.name


def test_distribution_invariant_under_strategy(corpus_entries):
    """An independent explorer that always contracts the *last* redex in
    preorder must produce the same aggregated distribution."""

    def rightmost_distribution(t):
        out = []
        stack = [(t, F(1))]
        while stack:
            u, w = stack.pop()
            groups = {}
            for step, reduct in sc.step_all(u):
                groups.setdefault(step.pos, []).append((step, reduct))
            if not groups:
                out.append((w, u))
                continue
            pos = max(groups)
            for step, reduct in groups[pos]:
                stack.append((reduct, w * step.weight))
        return out

    def agg(items):
        buckets = {}
        for w, v in items:
            key = sc.print_term(sc.canonical(v))
            buckets[key] = buckets.get(key, F(0)) + w
        return buckets

    for e in corpus_entries:
        base = agg(sc.distribution(e.term).items)
        other = agg(rightmost_distribution(e.term))
        assert base == other, e.name


# ---------------------------------------------------------------------------
# sum_of_distribution


def test_sum_of_distribution_orders_lexicographically():
    u = term("sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)")
    got = sc.sum_of_distribution(sc.distribution(u))
    assert sc.print_term(got) == "sum(scal(1/2,star(1/4)),scal(1/2,star(3/4)))"


def test_sum_of_distribution_singleton():
    d = R.Distribution(((F(1), S.Star(F(5))),))
    assert sc.sum_of_distribution(d) == S.Scal(F(1), S.Star(F(5)))


def test_sum_of_distribution_left_associates():
    d = R.Distribution(((F(1), S.Star(F(1))), (F(1), S.Star(F(2))),
                        (F(1), S.Star(F(3)))))
    got = sc.sum_of_distribution(d)
    assert isinstance(got, S.Sum) and isinstance(got.left, S.Sum)
    assert not isinstance(got.right, S.Sum)


def test_sum_of_empty_distribution():
    with pytest.raises(sc.EmptyDistribution):
        sc.sum_of_distribution(R.Distribution(()))


# ---------------------------------------------------------------------------
# introduction shapes


def test_introduction_shapes_on_corpus(corpus_entries):
    from conftest import shape_of_value_ok

    for e in corpus_entries:
        for _, v in sc.distribution(e.term).items:
            assert shape_of_value_ok(v, e.prop), (e.name, sc.print_term(v))


def test_normal_form_inventory():
    # sums and scalar products survive at tensor and plus types only
    assert sc.is_normal(term("sum(tens(star(1),star(1)),tens(star(2),star(2)))"))
    assert sc.is_normal(term("scal(2,tens(star(1),star(2)))"))
    assert sc.is_normal(term("sum(inl{one}(star(1)),inr{one}(star(2)))"))
    assert not sc.is_normal(term("sum(pair(star(1),star(1)),pair(star(2),star(2)))"))
    assert not sc.is_normal(term("scal(2,lam(x,x))"))
    assert not sc.is_normal(term("sum(unit,unit)"))


# ---------------------------------------------------------------------------
# confluence of the fork-free fragment


def test_confluence_spot_checks():
    gen = TermGenerator(seed=2, allow_sup_elim=False, max_depth=5)
    for i in range(40):
        t, _ = gen.closed()
        n1 = sc.normalize_random(t, random.Random(100 + i))
        n2 = sc.normalize_random(t, random.Random(900 + i))
        n3 = sc.normalize(t)
        assert sc.alpha_eq(n1, n2) and sc.alpha_eq(n1, n3)


# ---------------------------------------------------------------------------
# mixed computational equivalence


def test_mixed_equiv_adequacy_pair():
    t = term("sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)")
    u = term("sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)")
    assert sc.mixed_equiv(t, u, S.One())


def test_mixed_equiv_distinguishes_scalars():
    assert not sc.mixed_equiv(term("star(1)"), term("star(2)"), S.One())


def test_mixed_equiv_reflexive(corpus_entries):
    for e in corpus_entries:
        from supcalc.veccodec import is_vprop

        if is_vprop(e.prop) or isinstance(e.prop, S.Top):
            assert sc.mixed_equiv(e.term, e.term, e.prop), e.name


def test_mixed_equiv_on_vectors():
    a = sc.parse_prop("one & one")
    t = term("pair(star(1),star(2))")
    u = term("sum(pair(star(1),star(0)),pair(star(0),star(2)))")
    assert sc.mixed_equiv(t, u, a)


def test_mixed_equiv_unsupported_type():
    with pytest.raises(sc.UnsupportedType):
        sc.mixed_equiv(term("lam(x,x)"), term("lam(x,x)"),
                       sc.parse_prop("one -o one"))


def test_mixed_equiv_at_top():
    assert sc.mixed_equiv(term("unit"), term("scal(2,unit)"), S.Top())


# ---------------------------------------------------------------------------
# elimination contexts


def test_elim_contexts_at_one():
    for depth in (0, 1, 3):
        ks = sc.enumerate_elim_contexts(S.One(), depth)
        assert [sc.print_term(k) for k in ks] == ["[.]"]


def test_elim_contexts_with_projections():
    ks = sc.enumerate_elim_contexts(sc.parse_prop("one & one"), 1)
    assert [sc.print_term(k) for k in ks] == ["fst([.])", "snd([.])"]


def test_elim_contexts_sup_projections():
    ks = sc.enumerate_elim_contexts(sc.parse_prop("one (o) one"), 1)
    assert [sc.print_term(k) for k in ks] == ["supfst([.])", "supsnd([.])"]


def test_elim_contexts_produce_basic_judgments():
    for src in ["(one & one) & (one (o) one)", "one -o one",
                "one (*) one", "one (+) one"]:
        a = sc.parse_prop(src)
        ks = sc.enumerate_elim_contexts(a, 3)
        assert ks
        filler = R.canonical_inhabitant(a)
        for k in ks:
            assert sc.hole_count(k) == 1
            d = sc.typecheck((), sc.fill(k, filler))
            assert isinstance(d.prop, (S.One, S.Top))


def test_elim_contexts_separate_the_adequacy_pair_targets():
    # plugging the two distribution sums into every basic context yields
    # matching aggregated results
    t = term("sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)")
    u = term("sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)")
    st = sc.sum_of_distribution(sc.distribution(t))
    su = sc.sum_of_distribution(sc.distribution(u))
    for k in sc.enumerate_elim_contexts(S.One(), 2):
        dt = sc.distribution(sc.fill(k, st)).aggregate(SR)
        du = sc.distribution(sc.fill(k, su)).aggregate(SR)
        assert [(w, sc.print_term(v)) for w, v in dt] == \
            [(w, sc.print_term(v)) for w, v in du]
