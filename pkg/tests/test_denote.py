"""Matrix interpretation and the executable semantic metatheory."""

from __future__ import annotations

import random
from fractions import Fraction as F

import supcalc as sc
from supcalc import matmodel as M
from supcalc import syntax as S
from supcalc.gen import TermGenerator

SR = sc.QNN


def term(src):
    return sc.parse_term(src)


def prop(src):
    return sc.parse_prop(src)


def mat(rows):
    return M.mat_from_rows([[F(v) for v in row] for row in rows], SR)


def closed_matrix(src, type_src=None):
    expected = prop(type_src) if type_src else None
    return sc.denote_closed(term(src), expected)


# ---------------------------------------------------------------------------
# objects


def test_denote_prop_dims():
    assert sc.denote_prop(S.One()) == 1
    assert sc.denote_prop(S.Top()) == 0
    assert sc.denote_prop(S.Zero()) == 0
    assert sc.denote_prop(prop("(one & one) -o one")) == 2
    assert sc.denote_prop(prop("(one & one) (*) (one (+) one)")) == 4
    assert sc.denote_prop(prop("one (o) one")) == 2


def test_denote_ctx_dims():
    assert sc.denote_ctx(()) == 1
    assert sc.denote_ctx(sc.parse_context("x:one & one")) == 2
    assert sc.denote_ctx(sc.parse_context("x:one & one, y:one & one")) == 4
    assert sc.denote_ctx(sc.parse_context("x:top, y:one")) == 0


# ---------------------------------------------------------------------------
# rule clauses


def test_star_denotes_its_scalar():
    assert closed_matrix("star(2)").equal(mat([[2]]))


def test_adequacy_pair_denotes_one_half():
    t = "sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)"
    u = "sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)"
    assert closed_matrix(t).equal(mat([["1/2"]]))
    assert closed_matrix(u).equal(mat([["1/2"]]))


def test_identity_function_denotes_hom_identity():
    # hom(I,I) is 1-dimensional and the identity is its unit vector
    assert closed_matrix("lam(x,x)", "one -o one").equal(mat([[1]]))
    # at one&one the flattened identity matrix is (1,0,0,1)
    got = closed_matrix("lam(x,x)", "(one & one) -o (one & one)")
    assert got.equal(mat([[1], [0], [0], [1]]))


def test_eta_expansion_same_matrix():
    a = closed_matrix("lam(x,pair(fst(x),snd(x)))", "(one & one) -o (one & one)")
    b = closed_matrix("lam(x,x)", "(one & one) -o (one & one)")
    assert a.equal(b)


def test_open_term_matrix_shape():
    d = sc.typecheck(sc.parse_context("x:one & one"), term("fst(x)"))
    interp = sc.denote(d)
    assert (interp.object_out, interp.object_in) == (1, 2)
    assert interp.matrix.equal(mat([[1, 0]]))


def test_exchange_inserts_a_braiding():
    ctx = sc.parse_context("x:one & one, y:one & one & one")
    d = sc.typecheck(ctx, term("tens(y,x)"))
    interp = sc.denote(d)
    assert (interp.matrix.rows, interp.matrix.cols) == (6, 6)
    assert interp.matrix.equal(M.perm_mat([2, 3], [1, 0], SR))


def test_zero_dimensional_types():
    assert closed_matrix("unit").rows == 0
    got = closed_matrix("tens(unit,star(1))", "top (*) one")
    assert (got.rows, got.cols) == (0, 1)
    got = closed_matrix("lam(x,zero_elim(x))", "zero -o one")
    assert (got.rows, got.cols) == (0, 1)


def test_shape_soundness_on_corpus(corpus_entries):
    for e in corpus_entries:
        d = sc.typecheck(e.ctx, e.term, e.prop)
        interp = sc.denote(d)
        assert interp.matrix.rows == sc.denote_prop(e.prop)
        assert interp.matrix.cols == sc.denote_ctx(e.ctx)


# ---------------------------------------------------------------------------
# substitution identity


def test_substitution_axiom_case():
    tD = sc.typecheck(sc.parse_context("x:one"), term("x"))
    vD = sc.typecheck((), term("star(3)"))
    assert sc.check_substitution(tD, vD)
    assert sc.denote(vD).matrix.equal(mat([[3]]))


def test_substitution_with_additive_sharing():
    tD = sc.typecheck(sc.parse_context("x:one & one"),
                      term("pair(snd(x),fst(x))"))
    vD = sc.typecheck(sc.parse_context("d:one & one"),
                      term("pair(snd(d),fst(d))"))
    assert sc.check_substitution(tD, vD)


def test_substitution_with_leading_context():
    tD = sc.typecheck(sc.parse_context("g:one, x:one"),
                      term("sum(unit_elim(g,x),unit_elim(x,g))"))
    vD = sc.typecheck(sc.parse_context("d:one"), term("scal(2,d)"))
    assert sc.check_substitution(tD, vD)


def test_substitution_on_generated_pairs():
    gen = TermGenerator(seed=41, max_depth=4)
    done = 0
    for _ in range(200):
        if done >= 40:
            break
        a = gen.random_prop(1)
        b = gen.random_prop(1)
        body = gen.generate((("x", a),), b, 3)
        if "x" not in sc.free_vars(body):
            continue
        v, _ = gen.closed(a, 3)
        tD = sc.typecheck((("x", a),), body)
        vD = sc.typecheck((), v)
        assert sc.check_substitution(tD, vD), (
            sc.print_term(body), sc.print_term(v))
        done += 1
    assert done >= 40


# ---------------------------------------------------------------------------
# per-step soundness


def test_step_soundness_unit_elim():
    rep = sc.check_step_soundness(term("unit_elim(star(2),star(3))"))
    assert rep.ok and len(rep.checks) == 1
    assert closed_matrix("unit_elim(star(2),star(3))").equal(mat([[6]]))


def test_step_soundness_probabilistic_fork():
    t = "sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)"
    rep = sc.check_step_soundness(term(t))
    assert rep.ok
    (check,) = rep.checks
    assert check.rules == ("sup_elim_left", "sup_elim_right")
    # the mixing identity evaluates to [1/2] on both sides
    mix = M.weighted_codiag((F(1, 2), F(1, 2)), 1, SR)
    sides = M.compose(mix, M.compose(
        M.biproduct_mat(mat([["1/2"]]), mat([["1/2"]])), M.diag(1, SR)))
    assert sides.equal(mat([["1/2"]]))


def test_step_soundness_normal_form_vacuous():
    rep = sc.check_step_soundness(term("star(4)"))
    assert rep.ok and rep.checks == []


def test_step_soundness_whole_corpus(corpus_entries):
    for e in corpus_entries:
        rep = sc.check_step_soundness(e.term, SR, expected=e.prop)
        assert rep.ok, (e.name, [c for c in rep.checks if not c.ok])


def test_step_soundness_along_reduction_graphs(corpus_entries):
    # soundness holds not only at the root but at every reachable term
    for e in corpus_entries[:20]:
        seen = set()
        frontier = [e.term]
        while frontier and len(seen) < 60:
            t = frontier.pop()
            key = sc.print_term(sc.canonical(t))
            if key in seen:
                continue
            seen.add(key)
            rep = sc.check_step_soundness(t, SR, expected=e.prop)
            assert rep.ok, (e.name, sc.print_term(t))
            frontier.extend(r for _, r in sc.step_all(t))


# ---------------------------------------------------------------------------
# whole-run soundness


def test_global_soundness_examples():
    assert sc.check_global_soundness(
        term("sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)"))
    assert sc.check_global_soundness(
        term("sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)"))
    assert sc.check_global_soundness(term("app(lam(x,x),star(5))"))


def test_global_soundness_whole_corpus(corpus_entries):
    for e in corpus_entries:
        assert sc.check_global_soundness(e.term, SR, expected=e.prop), e.name


# ---------------------------------------------------------------------------
# adequacy comparison


def test_adequacy_on_the_probabilistic_pair():
    t = term("sup_elim{1/2,1/2}(sup(star(1/2),star(1/2)),x.x,y.y)")
    u = term("sup_elim{1/2,1/2}(sup(star(3/4),star(1/4)),x.x,y.y)")
    v = sc.adequacy_compare(t, u, S.One())
    assert v.denotations_equal and v.mixed_equivalent and v.note == "consistent"


def test_adequacy_on_the_eta_gap():
    a = prop("(one & one) -o (one & one)")
    t = term("lam(x,pair(fst(x),snd(x)))")
    u = term("lam(x,x)")
    # no reduction relates them, yet the matrices agree
    assert sc.is_normal(t) and sc.is_normal(u)
    assert not sc.alpha_eq(t, u)
    v = sc.adequacy_compare(t, u, a)
    assert v.denotations_equal
    assert v.mixed_equivalent is None  # outside the decidable fragment


def test_adequacy_distinct_denotations():
    v = sc.adequacy_compare(term("star(1)"), term("star(2)"), S.One())
    assert not v.denotations_equal and v.note == "distinct denotations"


# ---------------------------------------------------------------------------
# linearity on the semimodule fragment


def test_linearity_of_encoded_maps():
    rng = random.Random(6)
    a = prop("one & one")
    b = prop("(one & one) & one")
    for _ in range(10):
        m = [[F(rng.randrange(5)) for _ in range(2)] for _ in range(3)]
        t = sc.encode_matrix(m, a, b)
        u1 = sc.from_vector(sc.SVector((F(rng.randrange(5)), F(rng.randrange(5))), a))
        u2 = sc.from_vector(sc.SVector((F(rng.randrange(5)), F(rng.randrange(5))), a))
        s = F(rng.randrange(5))
        lhs = sc.normalize(S.App(t, S.Sum(u1, u2)))
        rhs = sc.normalize(S.Sum(S.App(t, u1), S.App(t, u2)))
        assert sc.alpha_eq(lhs, rhs)
        lhs = sc.normalize(S.App(t, S.Scal(s, u1)))
        rhs = sc.normalize(S.Scal(s, S.App(t, u1)))
        assert sc.alpha_eq(lhs, rhs)
        # the interpretations add as matrices as well
        m_sum = sc.denote_closed(S.App(t, S.Sum(u1, u2)), b)
        m1 = sc.denote_closed(S.App(t, u1), b)
        m2 = sc.denote_closed(S.App(t, u2), b)
        assert m_sum.equal(M.add(m1, m2))
