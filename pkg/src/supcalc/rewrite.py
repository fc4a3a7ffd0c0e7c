"""Small-step reduction, normalization, and probabilistic runs.

There are 25 contraction rules: 11 value/redex contractions and 14
commutations that push sums and scalar products toward introductions.
Every rule is closed under arbitrary term contexts.  The two sup-elim
contractions carry their branch weights; all other steps have weight 1.

The base strategy everywhere is leftmost-outermost: the first redex in a
preorder traversal.  Strong normalization of well-typed terms makes
exhaustive branch exploration terminating, so ``distribution`` enumerates
the full multiset of (probability, normal form) leaves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import syntax as S
from .semiring import QNN, Semiring
from .syntax import Term

DEFAULT_BUDGET = 100_000

BETA_RULES = (
    "unit_elim", "tens_elim", "apply", "fst", "snd", "case_inl", "case_inr",
    "supfst", "supsnd", "sup_elim_left", "sup_elim_right",
)
COMMUTATION_RULES = (
    "sum_star", "sum_tens_elim", "sum_lam", "sum_unit", "sum_pair",
    "sum_case", "sum_sup",
    "scal_star", "scal_tens_elim", "scal_lam", "scal_unit", "scal_pair",
    "scal_case", "scal_sup",
)
ALL_RULES = BETA_RULES + COMMUTATION_RULES


class ReductionError(Exception):
    pass


class SupBranchEncountered(ReductionError):
    """Normalization hit a probabilistic fork; use distribution() instead."""


class BudgetExceeded(ReductionError):
    pass


class EmptyDistribution(ReductionError):
    pass


class UnsupportedType(ReductionError):
    """The observational comparison is only decidable on the semimodule
    fragment (propositions built from one and &) and on top."""


@dataclass(frozen=True)
class Step:
    pos: tuple[int, ...]
    rule: str
    weight: object


def _merge_lams(a: S.Lam, b: S.Lam, make) -> Term:
    """Combine two abstractions under a shared binder, renaming apart."""
    ann = a.ann if a.ann is not None else b.ann
    if a.var == b.var:
        return S.Lam(a.var, make(a.body, b.body), ann)
    if a.var not in S.free_vars(b.body):
        nb = S.substitute(S.Var(a.var), b.var, b.body)
        return S.Lam(a.var, make(a.body, nb), ann)
    taken = S.free_vars(a.body) | S.free_vars(b.body)
    z = S.fresh_name(a.var, taken)
    na = S.substitute(S.Var(z), a.var, a.body)
    nb = S.substitute(S.Var(z), b.var, b.body)
    return S.Lam(z, make(na, nb), ann)


def contract(t: Term, semiring: Semiring) -> list[tuple[str, object, Term]]:
    """Root redex patterns: (rule, weight, contractum) triples.

    Deterministic redexes give one triple; a sup-elimination of a sup-pair
    gives both branches.
    """
    sr = semiring
    one = sr.one

    if isinstance(t, S.UnitElim) and isinstance(t.unit, S.Star):
        return [("unit_elim", one, S.Scal(t.unit.scalar, t.body))]

    if isinstance(t, S.TensElim):
        scrut = t.pair
        if isinstance(scrut, S.Tens):
            out = S.subst_parallel(t.body, {t.left_var: scrut.left,
                                            t.right_var: scrut.right})
            return [("tens_elim", one, out)]
        if isinstance(scrut, S.Sum):
            return [("sum_tens_elim", one, S.Sum(
                S.TensElim(scrut.left, t.left_var, t.right_var, t.body),
                S.TensElim(scrut.right, t.left_var, t.right_var, t.body)))]
        if isinstance(scrut, S.Scal):
            return [("scal_tens_elim", one, S.Scal(
                scrut.scalar,
                S.TensElim(scrut.body, t.left_var, t.right_var, t.body)))]
        return []

    if isinstance(t, S.App) and isinstance(t.fn, S.Lam):
        return [("apply", one, S.substitute(t.arg, t.fn.var, t.fn.body))]

    if isinstance(t, S.Fst) and isinstance(t.pair, S.Pair):
        return [("fst", one, t.pair.left)]
    if isinstance(t, S.Snd) and isinstance(t.pair, S.Pair):
        return [("snd", one, t.pair.right)]

    if isinstance(t, S.Case):
        scrut = t.scrutinee
        if isinstance(scrut, S.Inl):
            return [("case_inl", one,
                     S.substitute(scrut.body, t.left_var, t.left_body))]
        if isinstance(scrut, S.Inr):
            return [("case_inr", one,
                     S.substitute(scrut.body, t.right_var, t.right_body))]
        if isinstance(scrut, S.Sum):
            return [("sum_case", one, S.Sum(
                S.Case(scrut.left, t.left_var, t.left_body,
                       t.right_var, t.right_body),
                S.Case(scrut.right, t.left_var, t.left_body,
                       t.right_var, t.right_body)))]
        if isinstance(scrut, S.Scal):
            return [("scal_case", one, S.Scal(
                scrut.scalar,
                S.Case(scrut.body, t.left_var, t.left_body,
                       t.right_var, t.right_body)))]
        return []

    if isinstance(t, S.SupFst) and isinstance(t.pair, S.SupPair):
        return [("supfst", one, t.pair.left)]
    if isinstance(t, S.SupSnd) and isinstance(t.pair, S.SupPair):
        return [("supsnd", one, t.pair.right)]

    if isinstance(t, S.SupElim) and isinstance(t.scrutinee, S.SupPair):
        scrut = t.scrutinee
        return [
            ("sup_elim_left", t.p,
             S.substitute(scrut.left, t.left_var, t.left_body)),
            ("sup_elim_right", t.q,
             S.substitute(scrut.right, t.right_var, t.right_body)),
        ]

    if isinstance(t, S.Sum):
        a, b = t.left, t.right
        if isinstance(a, S.Star) and isinstance(b, S.Star):
            return [("sum_star", one, S.Star(sr.add(a.scalar, b.scalar)))]
        if isinstance(a, S.Lam) and isinstance(b, S.Lam):
            return [("sum_lam", one, _merge_lams(a, b, S.Sum))]
        if isinstance(a, S.Unit) and isinstance(b, S.Unit):
            return [("sum_unit", one, S.Unit())]
        if isinstance(a, S.Pair) and isinstance(b, S.Pair):
            return [("sum_pair", one, S.Pair(S.Sum(a.left, b.left),
                                             S.Sum(a.right, b.right)))]
        if isinstance(a, S.SupPair) and isinstance(b, S.SupPair):
            return [("sum_sup", one, S.SupPair(S.Sum(a.left, b.left),
                                               S.Sum(a.right, b.right)))]
        return []

    if isinstance(t, S.Scal):
        s, a = t.scalar, t.body
        if isinstance(a, S.Star):
            return [("scal_star", one, S.Star(sr.mul(s, a.scalar)))]
        if isinstance(a, S.Lam):
            return [("scal_lam", one, S.Lam(a.var, S.Scal(s, a.body), a.ann))]
        if isinstance(a, S.Unit):
            return [("scal_unit", one, S.Unit())]
        if isinstance(a, S.Pair):
            return [("scal_pair", one, S.Pair(S.Scal(s, a.left),
                                              S.Scal(s, a.right)))]
        if isinstance(a, S.SupPair):
            return [("scal_sup", one, S.SupPair(S.Scal(s, a.left),
                                                S.Scal(s, a.right)))]
        return []

    return []


def step_all(t: Term, semiring: Semiring = QNN) -> list[tuple[Step, Term]]:
    """Every redex at every position, paired with the rewritten whole term."""
    out = []
    for pos, sub in S.subterms(t):
        for rule, weight, contractum in contract(sub, semiring):
            out.append((Step(pos, rule, weight),
                        S.replace_at(t, pos, contractum)))
    return out


def _leftmost(t: Term, semiring: Semiring):
    for pos, sub in S.subterms(t):
        entries = contract(sub, semiring)
        if entries:
            return pos, entries
    return None


def is_normal(t: Term, semiring: Semiring = QNN) -> bool:
    return _leftmost(t, semiring) is None


def normalize(t: Term, semiring: Semiring = QNN,
              budget: int = DEFAULT_BUDGET) -> Term:
    """Leftmost-outermost normal form of a term without reachable
    probabilistic forks."""
    for _ in range(budget):
        found = _leftmost(t, semiring)
        if found is None:
            return t
        pos, entries = found
        if len(entries) > 1:
            raise SupBranchEncountered(
                f"probabilistic fork at position {pos}; use distribution()")
        _, _, contractum = entries[0]
        t = S.replace_at(t, pos, contractum)
    raise BudgetExceeded(f"no normal form within {budget} steps")


def normalize_random(t: Term, rng: random.Random, semiring: Semiring = QNN,
                     budget: int = DEFAULT_BUDGET) -> Term:
    """Normalize picking a uniformly random redex at each step (forks are
    refused, as in normalize)."""
    for _ in range(budget):
        redexes = []
        for pos, sub in S.subterms(t):
            entries = contract(sub, semiring)
            if entries:
                redexes.append((pos, entries))
        if not redexes:
            return t
        pos, entries = rng.choice(redexes)
        if len(entries) > 1:
            raise SupBranchEncountered(
                f"probabilistic fork at position {pos}; use distribution()")
        t = S.replace_at(t, pos, entries[0][2])
    raise BudgetExceeded(f"no normal form within {budget} steps")


# ---------------------------------------------------------------------------
# Probabilistic runs


@dataclass(frozen=True)
class Path:
    """One maximal reduction sequence; weight is the product of step weights."""

    source: Term
    steps: tuple[tuple[Step, Term], ...]
    weight: object

    @property
    def value(self) -> Term:
        return self.steps[-1][1] if self.steps else self.source


@dataclass(frozen=True)
class Distribution:
    """The multiset of (probability, normal form) leaves of a term's
    reduction tree under the base strategy; duplicates are kept."""

    items: tuple[tuple[object, Term], ...]

    def total(self, semiring: Semiring):
        return semiring.sum([w for w, _ in self.items])

    def aggregate(self, semiring: Semiring) -> list[tuple[object, Term]]:
        """Merge duplicate values (up to alpha) by summing their weights."""
        buckets: dict[str, list] = {}
        for w, v in self.items:
            key = S.print_term(S.canonical(v))
            if key in buckets:
                buckets[key][0] = semiring.add(buckets[key][0], w)
            else:
                buckets[key] = [w, v]
        return sorted(((w, v) for w, v in buckets.values()),
                      key=lambda it: S.print_term(S.canonical(it[1])))


def paths(t: Term, semiring: Semiring = QNN,
          budget: int = DEFAULT_BUDGET) -> list[Path]:
    """All maximal leftmost-outermost reduction paths, left branch first."""
    out: list[Path] = []
    stack = [(t, (), semiring.one)]
    steps_used = 0
    while stack:
        term, trail, weight = stack.pop()
        found = _leftmost(term, semiring)
        if found is None:
            out.append(Path(source=t, steps=trail, weight=weight))
            continue
        pos, entries = found
        steps_used += len(entries)
        if steps_used > budget:
            raise BudgetExceeded(f"reduction tree larger than {budget} steps")
        # push right branch first so the left branch is explored first
        for rule, w, contractum in reversed(entries):
            nxt = S.replace_at(term, pos, contractum)
            stack.append((nxt, trail + ((Step(pos, rule, w), nxt),),
                          semiring.mul(weight, w)))
    return out


def distribution(t: Term, semiring: Semiring = QNN,
                 budget: int = DEFAULT_BUDGET) -> Distribution:
    """Exhaustively enumerate spdv(t): reduce leftmost-outermost, forking
    at each sup-elimination with the two branch weights."""
    items = [(p.weight, p.value) for p in paths(t, semiring, budget)]
    return Distribution(tuple(items))


def sum_of_distribution(d: Distribution, semiring: Semiring = QNN) -> Term:
    """The weighted-sum term of a distribution: each element contributes
    scal(weight, value); elements are ordered lexicographically by their
    printed form and summed left-associated."""
    if not d.items:
        raise EmptyDistribution("cannot sum an empty distribution")
    pieces = [S.Scal(w, v) for w, v in d.items]
    pieces.sort(key=lambda u: S.print_term(S.canonical(u)))
    acc = pieces[0]
    for piece in pieces[1:]:
        acc = S.Sum(acc, piece)
    return acc


# ---------------------------------------------------------------------------
# Observational comparison on the semimodule fragment


def mixed_equiv(t: Term, u: Term, a: S.Prop, semiring: Semiring = QNN) -> bool:
    """Whether two closed terms of type a are indistinguishable after
    aggregating their value distributions.

    Decidable on the semimodule fragment (one/& propositions), where it
    amounts to comparing the weighted sums of the value vectors, and on
    top, where all terms collapse.
    """
    from . import checker as TC
    from . import veccodec

    if isinstance(a, S.Top):
        TC.typecheck((), t, a, semiring)
        TC.typecheck((), u, a, semiring)
        return True
    if not veccodec.is_vprop(a):
        raise UnsupportedType(
            f"{S.print_prop(a)} is outside the decidable fragment")

    def vec(term: Term):
        n = veccodec.dim_v(a)
        total = [semiring.zero] * n
        for w, v in distribution(term, semiring).items:
            entries = veccodec.to_vector(v, a, semiring).entries
            total = [semiring.add(acc, semiring.mul(w, e))
                     for acc, e in zip(total, entries)]
        return total

    vt, vu = vec(t), vec(u)
    return all(semiring.eq(x, y) for x, y in zip(vt, vu))


# ---------------------------------------------------------------------------
# Elimination contexts


def basic(a: S.Prop) -> bool:
    return isinstance(a, (S.One, S.Top))


def canonical_inhabitant(a: S.Prop, semiring: Semiring = QNN) -> Term | None:
    """A closed proof of a, if this constructor-only search finds one."""
    sr = semiring
    if isinstance(a, S.One):
        return S.Star(sr.one)
    if isinstance(a, S.Top):
        return S.Unit()
    if isinstance(a, S.Zero):
        return None
    if isinstance(a, S.Tensor):
        l, r = (canonical_inhabitant(x, sr) for x in (a.left, a.right))
        return S.Tens(l, r) if l is not None and r is not None else None
    if isinstance(a, (S.With, S.Sup)):
        l, r = (canonical_inhabitant(x, sr) for x in (a.left, a.right))
        cls = S.Pair if isinstance(a, S.With) else S.SupPair
        return cls(l, r) if l is not None and r is not None else None
    if isinstance(a, S.Plus):
        l = canonical_inhabitant(a.left, sr)
        if l is not None:
            return S.Inl(l, a.right)
        r = canonical_inhabitant(a.right, sr)
        if r is not None:
            return S.Inr(r, a.left)
        return None
    if isinstance(a, S.Lollipop):
        x = "x"
        body = _consume_to(S.Var(x), a.left, a.right, sr)
        return S.Lam(x, body, a.left) if body is not None else None
    return None


def consume_to_one(expr: Term, a: S.Prop, sr: Semiring, depth: int = 0) -> Term | None:
    """A term of type one consuming expr : a linearly, if one exists."""
    if depth > 32 or isinstance(a, S.Top):
        return None
    if isinstance(a, S.One):
        return expr
    if isinstance(a, S.Zero):
        return S.ZeroElim(expr, S.One())
    if isinstance(a, S.With):
        got = consume_to_one(S.Fst(expr), a.left, sr, depth + 1)
        return got if got is not None else consume_to_one(
            S.Snd(expr), a.right, sr, depth + 1)
    if isinstance(a, S.Sup):
        got = consume_to_one(S.SupFst(expr), a.left, sr, depth + 1)
        return got if got is not None else consume_to_one(
            S.SupSnd(expr), a.right, sr, depth + 1)
    if isinstance(a, S.Tensor):
        x, y = f"_t{depth}l", f"_t{depth}r"
        l = consume_to_one(S.Var(x), a.left, sr, depth + 1)
        r = consume_to_one(S.Var(y), a.right, sr, depth + 1)
        if l is None or r is None:
            return None
        return S.TensElim(expr, x, y, S.UnitElim(l, r))
    if isinstance(a, S.Lollipop):
        arg = canonical_inhabitant(a.left, sr)
        if arg is None:
            return None
        return consume_to_one(S.App(expr, arg), a.right, sr, depth + 1)
    if isinstance(a, S.Plus):
        x, y = f"_c{depth}l", f"_c{depth}r"
        l = consume_to_one(S.Var(x), a.left, sr, depth + 1)
        r = consume_to_one(S.Var(y), a.right, sr, depth + 1)
        if l is None or r is None:
            return None
        return S.Case(expr, x, l, y, r)
    return None


def _consume_to(expr: Term, a: S.Prop, target: S.Prop, sr: Semiring) -> Term | None:
    """A term of type target that consumes expr : a."""
    if isinstance(target, S.Top):
        return S.Unit()
    used = consume_to_one(expr, a, sr)
    if used is None:
        return None
    if isinstance(target, S.One):
        return used
    filler = canonical_inhabitant(target, sr)
    if filler is None:
        return None
    return S.UnitElim(used, filler)


def enumerate_elim_contexts(a: S.Prop, depth: int,
                            semiring: Semiring = QNN) -> list[Term]:
    """All destructor-only contexts from a down to a basic proposition,
    with branch and argument positions filled by canonical closed terms,
    up to the given nesting depth."""
    sr = semiring
    out: list[Term] = []
    if basic(a):
        out.append(S.Hole())
    if depth <= 0:
        return out

    def extend(inner: S.Prop, wrap) -> list[Term]:
        return [S.fill(k, wrap) for k in enumerate_elim_contexts(
            inner, depth - 1, sr)]

    if isinstance(a, S.With):
        out += extend(a.left, S.Fst(S.Hole()))
        out += extend(a.right, S.Snd(S.Hole()))
    elif isinstance(a, S.Sup):
        out += extend(a.left, S.SupFst(S.Hole()))
        out += extend(a.right, S.SupSnd(S.Hole()))
    elif isinstance(a, S.Lollipop):
        arg = canonical_inhabitant(a.left, sr)
        if arg is not None:
            out += extend(a.right, S.App(S.Hole(), arg))
    elif isinstance(a, S.Tensor):
        x, y = "el_", "er_"
        body = None
        l = consume_to_one(S.Var(x), a.left, sr)
        r = consume_to_one(S.Var(y), a.right, sr)
        if l is not None and r is not None:
            body = S.UnitElim(l, r)
            out.append(S.TensElim(S.Hole(), x, y, body))
        else:
            out.append(S.TensElim(S.Hole(), x, y, S.Unit()))
    elif isinstance(a, S.Plus):
        x, y = "cl_", "cr_"
        l = consume_to_one(S.Var(x), a.left, sr)
        r = consume_to_one(S.Var(y), a.right, sr)
        if l is not None and r is not None:
            out.append(S.Case(S.Hole(), x, l, y, r))
        else:
            out.append(S.Case(S.Hole(), x, S.Unit(), y, S.Unit()))
    return out
