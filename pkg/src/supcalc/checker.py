"""Linear type checking with explicit derivations.

The checker is bidirectional: most forms synthesize their type, while
``lam``, ``inl``, ``inr`` and ``zero_elim`` need either a ``{type}``
annotation or an expected type flowing in.  Checking is deterministic and
syntax directed; when a judgment holds, its type is unique.

Multiplicative rules split the ambient context by free-variable use.  A
variable used by neither premise is routed to the leftmost premise that can
absorb it (a subterm whose typing ends in the rule for ``unit`` with
arbitrary context, or in zero-elimination, can absorb unused variables);
anything else is a linearity violation.  Each split records the partition
and the permutation taking the ambient order to the premise order, which
the denotational interpreter replays as a braiding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import syntax as S
from .semiring import QNN, Semiring, WeightError
from .syntax import Prop, Term

Context = tuple[tuple[str, Prop], ...]


class TypingError(Exception):
    pass


class UnboundVariable(TypingError):
    pass


class LinearViolation(TypingError):
    pass


class TypeMismatch(TypingError):
    pass


class AmbiguousType(TypingError):
    """The form needs an annotation or an expected type to check against."""


@dataclass(frozen=True)
class SplitPlan:
    """Partition of the ambient context for a multiplicative rule.

    ``left``/``right`` are the variable names routed to the first/second
    premise group, in ambient order; ``perm`` lists ambient indices in the
    order left + right, i.e. the permutation that reorders the ambient
    context into the premise contexts.
    """

    left: tuple[str, ...]
    right: tuple[str, ...]
    perm: tuple[int, ...]


@dataclass(frozen=True)
class Derivation:
    rule: str
    ctx: Context
    term: Term
    prop: Prop
    children: tuple["Derivation", ...] = ()
    split: Optional[SplitPlan] = None

    def pretty(self, indent: int = 0) -> str:
        pad = "  " * indent
        ctx = ", ".join(f"{x}:{S.print_prop(a)}" for x, a in self.ctx)
        line = f"{pad}[{self.rule}] {ctx} |- {S.print_term(self.term)} : {S.print_prop(self.prop)}"
        return "\n".join([line] + [c.pretty(indent + 1) for c in self.children])


RULE_TAGS = (
    "ax", "one_i", "sum", "scal", "one_e", "tens_i", "tens_e",
    "lolli_i", "lolli_e", "top_i", "zero_e", "with_i", "with_e1", "with_e2",
    "plus_i1", "plus_i2", "plus_e", "sup_i", "sup_e1", "sup_e2", "sup_e",
)


def can_absorb(t: Term) -> bool:
    """Whether a typing of t can consume context variables it never uses."""
    if isinstance(t, S.Unit):
        return True
    if isinstance(t, S.ZeroElim):
        return True
    if isinstance(t, (S.Sum, S.Pair, S.SupPair)):
        return can_absorb(t.left) and can_absorb(t.right)
    if isinstance(t, S.Scal):
        return can_absorb(t.body)
    if isinstance(t, S.Lam):
        return can_absorb(t.body)
    if isinstance(t, (S.Fst, S.Snd)):
        return can_absorb(t.pair)
    if isinstance(t, (S.SupFst, S.SupSnd)):
        return can_absorb(t.pair)
    if isinstance(t, (S.Inl, S.Inr)):
        return can_absorb(t.body)
    if isinstance(t, S.Tens):
        return can_absorb(t.left) or can_absorb(t.right)
    if isinstance(t, S.App):
        return can_absorb(t.fn) or can_absorb(t.arg)
    if isinstance(t, S.UnitElim):
        return can_absorb(t.unit) or can_absorb(t.body)
    if isinstance(t, S.TensElim):
        return can_absorb(t.pair) or can_absorb(t.body)
    if isinstance(t, (S.Case, S.SupElim)):
        return can_absorb(t.scrutinee) or (
            can_absorb(t.left_body) and can_absorb(t.right_body))
    return False


class _Checker:
    def __init__(self, semiring: Semiring):
        self.sr = semiring

    # -- context splitting ------------------------------------------------

    def split(self, ctx: Context, term: Term, fv_left: frozenset[str],
              fv_right: frozenset[str], absorb_left: bool, absorb_right: bool
              ) -> tuple[Context, Context, SplitPlan]:
        left_idx: list[int] = []
        right_idx: list[int] = []
        for i, (x, _) in enumerate(ctx):
            in_l, in_r = x in fv_left, x in fv_right
            if in_l and in_r:
                raise LinearViolation(
                    f"variable {x} is used by both sides of a context split "
                    f"in {S.print_term(term)}")
            if in_l:
                left_idx.append(i)
            elif in_r:
                right_idx.append(i)
            elif absorb_left:
                left_idx.append(i)
            elif absorb_right:
                right_idx.append(i)
            else:
                raise LinearViolation(
                    f"variable {x} is never used in {S.print_term(term)}")
        mk = lambda idx: tuple(ctx[i] for i in idx)
        plan = SplitPlan(
            left=tuple(ctx[i][0] for i in left_idx),
            right=tuple(ctx[i][0] for i in right_idx),
            perm=tuple(left_idx + right_idx),
        )
        return mk(left_idx), mk(right_idx), plan

    def split_for(self, ctx: Context, term: Term, left_term: Term,
                  right_term: Term, bound_right: tuple[str, ...] = ()
                  ) -> tuple[Context, Context, SplitPlan]:
        fv_l = S.free_vars(left_term)
        fv_r = S.free_vars(right_term) - set(bound_right)
        return self.split(ctx, term, fv_l, fv_r,
                          can_absorb(left_term),
                          can_absorb(right_term))

    # -- bidirectional checking -------------------------------------------

    def infer(self, ctx: Context, t: Term) -> Derivation:
        return self._typecheck(ctx, t, None)

    def check(self, ctx: Context, t: Term, a: Prop) -> Derivation:
        return self._typecheck(ctx, t, a)

    def _mismatch(self, t: Term, got: Prop, want: Prop):
        raise TypeMismatch(
            f"{S.print_term(t)} has type {S.print_prop(got)}, "
            f"expected {S.print_prop(want)}")

    def _typecheck(self, ctx: Context, t: Term, want: Optional[Prop]) -> Derivation:
        d = self._go(ctx, t, want)
        if want is not None and d.prop != want:
            self._mismatch(t, d.prop, want)
        return d

    def _go(self, ctx: Context, t: Term, want: Optional[Prop]) -> Derivation:
        sr = self.sr

        if isinstance(t, S.Var):
            if all(x != t.name for x, _ in ctx):
                raise UnboundVariable(f"unbound variable {t.name}")
            if len(ctx) != 1:
                extra = [x for x, _ in ctx if x != t.name]
                raise LinearViolation(
                    f"variable(s) {', '.join(extra)} unused at occurrence of {t.name}")
            return Derivation("ax", ctx, t, ctx[0][1])

        if isinstance(t, S.Star):
            if ctx:
                raise LinearViolation(
                    f"variable(s) {', '.join(x for x, _ in ctx)} unused at "
                    f"{S.print_term(t)}")
            return Derivation("one_i", ctx, t, S.One())

        if isinstance(t, S.Unit):
            return Derivation("top_i", ctx, t, S.Top())

        if isinstance(t, S.Sum):
            d1 = self._typecheck(ctx, t.left, want)
            d2 = self._typecheck(ctx, t.right, d1.prop)
            return Derivation("sum", ctx, t, d1.prop, (d1, d2))

        if isinstance(t, S.Scal):
            d1 = self._typecheck(ctx, t.body, want)
            return Derivation("scal", ctx, t, d1.prop, (d1,))

        if isinstance(t, S.UnitElim):
            lctx, rctx, plan = self.split_for(ctx, t, t.unit, t.body)
            d1 = self.check(lctx, t.unit, S.One())
            d2 = self._typecheck(rctx, t.body, want)
            return Derivation("one_e", ctx, t, d2.prop, (d1, d2), plan)

        if isinstance(t, S.Lam):
            ann = t.ann
            if ann is None:
                if want is None:
                    raise AmbiguousType(
                        f"cannot infer the argument type of {S.print_term(t)}; "
                        f"annotate as lam{{A}}(x, t) or check against a type")
                if not isinstance(want, S.Lollipop):
                    raise TypeMismatch(
                        f"{S.print_term(t)} is a function but the expected "
                        f"type is {S.print_prop(want)}")
                ann = want.left
            elif want is not None:
                if not isinstance(want, S.Lollipop) or want.left != ann:
                    raise TypeMismatch(
                        f"annotation {S.print_prop(ann)} does not match "
                        f"expected {S.print_prop(want)}")
            if any(x == t.var for x, _ in ctx):
                raise TypingError(f"binder {t.var} shadows a context variable")
            body_want = want.right if isinstance(want, S.Lollipop) else None
            d1 = self._typecheck(ctx + ((t.var, ann),), t.body, body_want)
            return Derivation("lolli_i", ctx, t, S.Lollipop(ann, d1.prop), (d1,))

        if isinstance(t, S.App):
            lctx, rctx, plan = self.split_for(ctx, t, t.fn, t.arg)
            try:
                d1 = self.infer(lctx, t.fn)
            except AmbiguousType:
                # redex-style application: type the argument first
                d2 = self.infer(rctx, t.arg)
                if want is not None:
                    d1 = self.check(lctx, t.fn, S.Lollipop(d2.prop, want))
                elif isinstance(t.fn, S.Lam) and t.fn.ann is None:
                    fn = t.fn
                    if any(x == fn.var for x, _ in lctx):
                        raise TypingError(
                            f"binder {fn.var} shadows a context variable")
                    dbody = self.infer(lctx + ((fn.var, d2.prop),), fn.body)
                    d1 = Derivation("lolli_i", lctx, fn,
                                    S.Lollipop(d2.prop, dbody.prop), (dbody,))
                else:
                    raise
            else:
                if not isinstance(d1.prop, S.Lollipop):
                    raise TypeMismatch(
                        f"{S.print_term(t.fn)} has type {S.print_prop(d1.prop)}, "
                        f"which is not a function type")
                d2 = self.check(rctx, t.arg, d1.prop.left)
            return Derivation("lolli_e", ctx, t, d1.prop.right, (d1, d2), plan)

        if isinstance(t, S.Tens):
            lctx, rctx, plan = self.split_for(ctx, t, t.left, t.right)
            lw = want.left if isinstance(want, S.Tensor) else None
            rw = want.right if isinstance(want, S.Tensor) else None
            d1 = self._typecheck(lctx, t.left, lw)
            d2 = self._typecheck(rctx, t.right, rw)
            return Derivation("tens_i", ctx, t, S.Tensor(d1.prop, d2.prop),
                              (d1, d2), plan)

        if isinstance(t, S.TensElim):
            lctx, rctx, plan = self.split_for(
                ctx, t, t.pair, t.body, bound_right=(t.left_var, t.right_var))
            d1 = self.infer(lctx, t.pair)
            if not isinstance(d1.prop, S.Tensor):
                raise TypeMismatch(
                    f"{S.print_term(t.pair)} has type {S.print_prop(d1.prop)}, "
                    f"expected a tensor")
            if t.left_var == t.right_var:
                raise TypingError("tensor eliminator binders must be distinct")
            for b in (t.left_var, t.right_var):
                if any(x == b for x, _ in rctx):
                    raise TypingError(f"binder {b} shadows a context variable")
            body_ctx = rctx + ((t.left_var, d1.prop.left),
                               (t.right_var, d1.prop.right))
            d2 = self._typecheck(body_ctx, t.body, want)
            return Derivation("tens_e", ctx, t, d2.prop, (d1, d2), plan)

        if isinstance(t, S.ZeroElim):
            ann = t.ann if t.ann is not None else want
            if ann is None:
                raise AmbiguousType(
                    f"cannot infer the result type of {S.print_term(t)}; "
                    f"annotate as zero_elim{{C}}(t)")
            fv = S.free_vars(t.absurd)
            lctx, rctx, plan = self.split(ctx, t, fv, frozenset(),
                                          can_absorb(t.absurd), True)
            d1 = self.check(lctx, t.absurd, S.Zero())
            return Derivation("zero_e", ctx, t, ann, (d1,), plan)

        if isinstance(t, S.Pair):
            lw = want.left if isinstance(want, S.With) else None
            rw = want.right if isinstance(want, S.With) else None
            d1 = self._typecheck(ctx, t.left, lw)
            d2 = self._typecheck(ctx, t.right, rw)
            return Derivation("with_i", ctx, t, S.With(d1.prop, d2.prop), (d1, d2))

        if isinstance(t, S.Fst):
            d1 = self.infer(ctx, t.pair)
            if not isinstance(d1.prop, S.With):
                raise TypeMismatch(
                    f"{S.print_term(t.pair)} has type {S.print_prop(d1.prop)}, "
                    f"expected a with-pair")
            return Derivation("with_e1", ctx, t, d1.prop.left, (d1,))

        if isinstance(t, S.Snd):
            d1 = self.infer(ctx, t.pair)
            if not isinstance(d1.prop, S.With):
                raise TypeMismatch(
                    f"{S.print_term(t.pair)} has type {S.print_prop(d1.prop)}, "
                    f"expected a with-pair")
            return Derivation("with_e2", ctx, t, d1.prop.right, (d1,))

        if isinstance(t, S.Inl):
            right = t.ann
            if right is None:
                if not isinstance(want, S.Plus):
                    raise AmbiguousType(
                        f"cannot infer the right component of {S.print_term(t)}; "
                        f"annotate as inl{{B}}(t)")
                right = want.right
            lw = want.left if isinstance(want, S.Plus) else None
            d1 = self._typecheck(ctx, t.body, lw)
            return Derivation("plus_i1", ctx, t, S.Plus(d1.prop, right), (d1,))

        if isinstance(t, S.Inr):
            left = t.ann
            if left is None:
                if not isinstance(want, S.Plus):
                    raise AmbiguousType(
                        f"cannot infer the left component of {S.print_term(t)}; "
                        f"annotate as inr{{A}}(t)")
                left = want.left
            rw = want.right if isinstance(want, S.Plus) else None
            d1 = self._typecheck(ctx, t.body, rw)
            return Derivation("plus_i2", ctx, t, S.Plus(left, d1.prop), (d1,))

        if isinstance(t, S.Case):
            return self._branching(ctx, t, want, "plus_e", S.Plus)

        if isinstance(t, S.SupPair):
            lw = want.left if isinstance(want, S.Sup) else None
            rw = want.right if isinstance(want, S.Sup) else None
            d1 = self._typecheck(ctx, t.left, lw)
            d2 = self._typecheck(ctx, t.right, rw)
            return Derivation("sup_i", ctx, t, S.Sup(d1.prop, d2.prop), (d1, d2))

        if isinstance(t, S.SupFst):
            d1 = self.infer(ctx, t.pair)
            if not isinstance(d1.prop, S.Sup):
                raise TypeMismatch(
                    f"{S.print_term(t.pair)} has type {S.print_prop(d1.prop)}, "
                    f"expected a sup-pair")
            return Derivation("sup_e1", ctx, t, d1.prop.left, (d1,))

        if isinstance(t, S.SupSnd):
            d1 = self.infer(ctx, t.pair)
            if not isinstance(d1.prop, S.Sup):
                raise TypeMismatch(
                    f"{S.print_term(t.pair)} has type {S.print_prop(d1.prop)}, "
                    f"expected a sup-pair")
            return Derivation("sup_e2", ctx, t, d1.prop.right, (d1,))

        if isinstance(t, S.SupElim):
            if not sr.eq(sr.add(t.p, t.q), sr.one):
                raise WeightError(
                    f"sup-elimination weights do not sum to 1 in {sr.name}")
            return self._branching(ctx, t, want, "sup_e", S.Sup)

        raise TypingError(f"cannot type {t!r}")

    def _branching(self, ctx: Context, t, want, rule: str, conn) -> Derivation:
        branch_fv = (S.free_vars(t.left_body) - {t.left_var}) | (
            S.free_vars(t.right_body) - {t.right_var})
        scrut_fv = S.free_vars(t.scrutinee)
        branches_absorb = can_absorb(t.left_body) and can_absorb(t.right_body)
        lctx, rctx, plan = self.split(ctx, t, scrut_fv, branch_fv,
                                      can_absorb(t.scrutinee), branches_absorb)
        d1 = self.infer(lctx, t.scrutinee)
        if not isinstance(d1.prop, conn):
            raise TypeMismatch(
                f"{S.print_term(t.scrutinee)} has type {S.print_prop(d1.prop)}, "
                f"which cannot be eliminated by {S.print_term(t)[:20]}...")
        for b in (t.left_var, t.right_var):
            if any(x == b for x, _ in rctx):
                raise TypingError(f"binder {b} shadows a context variable")
        d2 = self._typecheck(((t.left_var, d1.prop.left),) + rctx,
                             t.left_body, want)
        d3 = self._typecheck(((t.right_var, d1.prop.right),) + rctx,
                             t.right_body, d2.prop)
        return Derivation(rule, ctx, t, d2.prop, (d1, d2, d3), plan)


def typecheck(ctx: Context, t: Term, expected: Optional[Prop] = None,
              semiring: Semiring = QNN) -> Derivation:
    """Type-check t in ctx, optionally against an expected proposition."""
    ctx = tuple(ctx)
    names = [x for x, _ in ctx]
    if len(set(names)) != len(names):
        raise TypingError(f"duplicate context variables in {names}")
    return _Checker(semiring)._typecheck(ctx, t, expected)


# ---------------------------------------------------------------------------
# Derivation validation


@dataclass
class ValidationReport:
    ok: bool
    problems: list[str]

    def __bool__(self) -> bool:
        return self.ok


def validate(d: Derivation, semiring: Semiring = QNN) -> ValidationReport:
    """Re-check that every node instantiates its rule schema and that all
    split plans are coherent partitions of their ambient contexts."""
    problems: list[str] = []
    _validate(d, semiring, problems)
    return ValidationReport(not problems, problems)


def _ctx_names(ctx: Context) -> list[str]:
    return [x for x, _ in ctx]


def _validate(d: Derivation, sr: Semiring, problems: list[str]) -> None:
    names = _ctx_names(d.ctx)
    if len(set(names)) != len(names):
        problems.append(f"duplicate context variables in {names}")
    if d.split is not None:
        plan = d.split
        if sorted(plan.perm) != list(range(len(d.ctx))):
            problems.append(f"split permutation {plan.perm} is not a "
                            f"permutation of the context")
        else:
            reordered = [names[i] for i in plan.perm]
            if tuple(reordered) != plan.left + plan.right:
                problems.append("split permutation does not reorder the "
                                "context into left + right")
        if set(plan.left) & set(plan.right):
            problems.append("split parts are not disjoint")
        if set(plan.left) | set(plan.right) != set(names):
            problems.append("split parts do not exhaust the context")
    try:
        redone = typecheck(d.ctx, d.term, d.prop, sr)
    except TypingError as exc:
        problems.append(f"node does not re-check: {exc}")
        return
    if redone.rule != d.rule:
        problems.append(f"rule tag {d.rule} does not match schema {redone.rule}")
    if redone.prop != d.prop:
        problems.append("conclusion type does not match the schema")
    # additive rules must share the ambient context across children
    if d.rule in ("sum", "scal", "with_i", "sup_i"):
        for c in d.children:
            if c.ctx != d.ctx:
                problems.append(
                    f"additive rule {d.rule} child context differs from parent")
    expected_children = {
        "ax": 0, "one_i": 0, "top_i": 0,
        "scal": 1, "with_e1": 1, "with_e2": 1, "sup_e1": 1, "sup_e2": 1,
        "plus_i1": 1, "plus_i2": 1, "lolli_i": 1, "zero_e": 1,
        "sum": 2, "one_e": 2, "tens_i": 2, "tens_e": 2, "lolli_e": 2,
        "with_i": 2, "sup_i": 2,
        "plus_e": 3, "sup_e": 3,
    }
    want_n = expected_children.get(d.rule)
    if want_n is None:
        problems.append(f"unknown rule tag {d.rule}")
    elif len(d.children) != want_n:
        problems.append(f"rule {d.rule} has {len(d.children)} children, "
                        f"wants {want_n}")
    for i, c in enumerate(d.children):
        want_c = redone.children[i] if i < len(redone.children) else None
        if want_c is not None and (c.ctx, c.term, c.prop) != (
                want_c.ctx, want_c.term, want_c.prop):
            problems.append(
                f"child {i} of {d.rule} concludes a different judgment "
                f"than the schema requires")
        _validate(c, sr, problems)


# ---------------------------------------------------------------------------
# Subject reduction


@dataclass
class SRFinding:
    rule: str
    position: tuple[int, ...]
    reduct: Term
    problem: str


@dataclass
class SRReport:
    term: Term
    prop: Prop
    steps: int
    findings: list[SRFinding]

    @property
    def ok(self) -> bool:
        return not self.findings


def check_subject_reduction(t: Term, ctx: Context = (),
                            semiring: Semiring = QNN,
                            expected: Optional[Prop] = None) -> SRReport:
    """Every one-step reduct must re-check at the same type."""
    from . import rewrite

    d = typecheck(ctx, t, expected, semiring)
    findings: list[SRFinding] = []
    steps = rewrite.step_all(t, semiring)
    for step, reduct in steps:
        try:
            typecheck(ctx, reduct, d.prop, semiring)
        except TypingError as exc:
            findings.append(SRFinding(step.rule, step.pos, reduct, str(exc)))
    return SRReport(t, d.prop, len(steps), findings)
