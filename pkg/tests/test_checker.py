"""Linear type checking, derivations, and subject reduction."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction as F

import pytest

import supcalc as sc
from supcalc import checker as C
from supcalc import syntax as S
from supcalc.gen import TermGenerator


def check(src, type_src=None, ctx_src=""):
    ctx = sc.parse_context(ctx_src)
    expected = sc.parse_prop(type_src) if type_src else None
    return sc.typecheck(ctx, sc.parse_term(src), expected)


# ---------------------------------------------------------------------------
# rule schemas


def test_axiom():
    d = check("x", ctx_src="x:one (+) one")
    assert d.rule == "ax"
    assert d.prop == sc.parse_prop("one (+) one")


def test_star_types_at_one():
    d = check("star(2)")
    assert d.rule == "one_i" and d.prop == S.One()


def test_tensor_cannot_duplicate():
    with pytest.raises(C.LinearViolation):
        check("tens(x,x)", ctx_src="x:one")


def test_additive_sharing_is_fine():
    d = check("pair(x,x)", ctx_src="x:one")
    assert d.prop == sc.parse_prop("one & one")
    d = check("sum(x,x)", ctx_src="x:one")
    assert d.prop == S.One()


def test_unused_variable_rejected():
    with pytest.raises(C.LinearViolation):
        check("star(1)", ctx_src="x:one")
    with pytest.raises(C.LinearViolation):
        check("y", ctx_src="x:one, y:one")


def test_unbound_variable():
    with pytest.raises(C.UnboundVariable):
        check("x")


def test_top_absorbs_everything():
    d = check("unit", ctx_src="x:one, y:one & one")
    assert d.rule == "top_i" and d.prop == S.Top()


def test_zero_elim_absorbs_the_rest():
    d = check("lam(z,zero_elim(z))", "zero -o one")
    assert d.prop == sc.parse_prop("zero -o one")
    d = check("lam(z,lam(w,zero_elim(z)))", "zero -o one -o one")
    assert d.children[0].children[0].rule == "zero_e"


def test_weight_error():
    t = S.SupElim(F(1, 2), F(1, 4),
                  S.SupPair(S.Star(F(1)), S.Star(F(2))),
                  "x", S.Var("x"), "y", S.Var("y"))
    with pytest.raises(sc.WeightError):
        sc.typecheck((), t)


def test_exchange_is_silent_but_recorded():
    d = check("tens(y,x)", ctx_src="x:one, y:one & one")
    assert d.rule == "tens_i"
    assert d.split.left == ("y",) and d.split.right == ("x",)
    assert d.split.perm == (1, 0)


def test_uniqueness_of_inferred_types():
    for src, ctx in [("sum(fst(x),snd(x))", "x:one & one"),
                     ("case(z,a.a,b.scal(2,b))", "z:one (+) one")]:
        d1 = check(src, ctx_src=ctx)
        d2 = check(src, ctx_src=ctx)
        assert d1.prop == d2.prop


# ---------------------------------------------------------------------------
# bidirectional checking and annotations


def test_bare_lam_needs_a_goal():
    with pytest.raises(C.AmbiguousType):
        check("lam(x,x)")
    assert check("lam(x,x)", "one -o one").prop == sc.parse_prop("one -o one")


def test_annotated_lam_infers():
    d = check("lam{one & one}(x,x)")
    assert d.prop == sc.parse_prop("(one & one) -o (one & one)")


def test_annotation_mismatch():
    with pytest.raises(C.TypeMismatch):
        check("lam{one}(x,x)", "(one & one) -o (one & one)")


def test_bare_injection_needs_a_goal():
    with pytest.raises(C.AmbiguousType):
        check("inl(star(1))")
    assert check("inl(star(1))", "one (+) top").prop == \
        sc.parse_prop("one (+) top")
    assert check("inl{top}(star(1))").prop == sc.parse_prop("one (+) top")


def test_redex_application_types_without_annotation():
    d = check("app(lam(x,x),star(5))")
    assert d.prop == S.One()


def test_curried_redex_application():
    d = check("app(app(lam(x,lam(y,unit_elim(x,y))),star(2)),star(3))", "one")
    assert d.prop == S.One()


def test_binder_shadowing_rejected():
    with pytest.raises(C.TypingError):
        check("lam(x,lam(x,unit_elim(x,x)))", "one -o one -o one")


def test_duplicate_context_rejected():
    with pytest.raises(C.TypingError):
        sc.typecheck((("x", S.One()), ("x", S.One())), S.Var("x"))


# ---------------------------------------------------------------------------
# derivation validation


def test_validate_roundtrip(corpus_entries):
    for e in corpus_entries[:25]:
        d = sc.typecheck(e.ctx, e.term, e.prop)
        assert sc.validate(d).ok


def test_validate_rejects_mismatched_additive_contexts():
    d = check("pair(x,x)", ctx_src="x:one")
    wrong_child = replace(d.children[1], ctx=(("y", S.One()),),
                          term=S.Var("y"))
    bad = replace(d, children=(d.children[0], wrong_child))
    report = sc.validate(bad)
    assert not report.ok


def test_validate_rejects_dropped_split_variable():
    d = check("tens(x,y)", ctx_src="x:one, y:one")
    bad_plan = replace(d.split, right=(), perm=(0,))
    bad = replace(d, split=bad_plan)
    report = sc.validate(bad)
    assert not report.ok
    assert any("exhaust" in p or "permutation" in p for p in report.problems)


def test_validate_rejects_wrong_rule_tag():
    d = check("star(1)")
    report = sc.validate(replace(d, rule="top_i"))
    assert not report.ok


# ---------------------------------------------------------------------------
# exact resource use


def _leaf_uses(d, counts):
    if d.rule == "ax":
        counts[d.ctx[0][0]] = counts.get(d.ctx[0][0], 0) + 1
    for c in d.children:
        _leaf_uses(c, counts)


def test_exact_resource_use():
    # in additive branches the same variable may appear in several leaves,
    # but along any single branch each variable is consumed exactly once;
    # with no additive rules the leaf count is exactly one per variable
    d = check("unit_elim(x,scal(2,y))", ctx_src="x:one, y:one")
    counts = {}
    _leaf_uses(d, counts)
    assert counts == {"x": 1, "y": 1}


# ---------------------------------------------------------------------------
# subject reduction


def test_subject_reduction_unit_elim():
    t = sc.parse_term("unit_elim(star(2),star(3))")
    report = sc.check_subject_reduction(t)
    assert report.ok and report.steps == 1
    (step, reduct), = sc.step_all(t)
    assert sc.print_term(reduct) == "scal(2,star(3))"
    assert sc.typecheck((), reduct).prop == S.One()


def test_subject_reduction_normal_form_is_vacuous():
    report = sc.check_subject_reduction(sc.parse_term("star(1)"))
    assert report.ok and report.steps == 0


def test_subject_reduction_sup_branches():
    t = sc.parse_term("sup_elim{1/4,3/4}(sup(star(1),star(2)),x.x,y.y)")
    report = sc.check_subject_reduction(t)
    assert report.ok and report.steps == 2


def test_subject_reduction_on_corpus(corpus_entries):
    for e in corpus_entries:
        report = sc.check_subject_reduction(e.term, (), sc.QNN, expected=e.prop)
        assert report.ok, (e.name, report.findings)


def test_subject_reduction_on_generated_terms():
    gen = TermGenerator(seed=23, max_depth=5)
    for _ in range(60):
        t, a = gen.closed()
        report = sc.check_subject_reduction(t, (), sc.QNN, expected=a)
        assert report.ok, (sc.print_term(t), report.findings)


def test_generated_terms_typecheck_and_validate():
    gen = TermGenerator(seed=31, max_depth=5)
    for _ in range(60):
        t, a = gen.closed()
        d = sc.typecheck((), t, a)
        assert sc.validate(d).ok
