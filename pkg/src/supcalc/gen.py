"""Goal-directed random generation of well-typed terms.

Generation is type- and context-driven: every context variable is routed to
exactly one premise (or shared by additive forms), so the output always
checks.  Generated propositions avoid ``top`` and ``zero`` so that every
context variable can be consumed down to ``one``; the fallback at depth 0
spends the remaining context deterministically.
"""

from __future__ import annotations

import random

from . import syntax as S
from .rewrite import canonical_inhabitant, consume_to_one
from .semiring import QNN, Semiring
from .syntax import Prop, Term

Ctx = tuple[tuple[str, Prop], ...]


class TermGenerator:
    def __init__(self, seed: int = 0, semiring: Semiring = QNN,
                 allow_sup_elim: bool = True, max_depth: int = 6):
        self.rng = random.Random(seed)
        self.sr = semiring
        self.allow_sup_elim = allow_sup_elim
        self.max_depth = max_depth
        self._counter = 0

    def _fresh(self) -> str:
        self._counter += 1
        return f"g{self._counter}"

    def _scalar(self):
        return self.rng.choice(self.sr.test_pool)

    def random_prop(self, depth: int = 2) -> Prop:
        if depth <= 0 or self.rng.random() < 0.4:
            return S.One()
        ctor = self.rng.choice((S.With, S.Plus, S.Tensor, S.Lollipop, S.Sup))
        return ctor(self.random_prop(depth - 1), self.random_prop(depth - 1))

    def closed(self, prop: Prop | None = None,
               depth: int | None = None) -> tuple[Term, Prop]:
        a = prop if prop is not None else self.random_prop(2)
        d = depth if depth is not None else self.max_depth
        return self.generate((), a, d), a

    # -- helpers -----------------------------------------------------------

    def _split_ctx(self, ctx: Ctx) -> tuple[Ctx, Ctx]:
        left, right = [], []
        for entry in ctx:
            (left if self.rng.random() < 0.5 else right).append(entry)
        return tuple(left), tuple(right)

    def _spend(self, ctx: Ctx, a: Prop) -> Term:
        """Deterministic fallback: consume every context variable to one,
        then inhabit the goal."""
        if not ctx:
            t = canonical_inhabitant(a, self.sr)
            if t is None:
                raise ValueError(f"uninhabitable goal {S.print_prop(a)}")
            return t
        (x, ax), rest = ctx[0], ctx[1:]
        used = consume_to_one(S.Var(x), ax, self.sr)
        if used is None:
            raise ValueError(f"cannot consume {S.print_prop(ax)}")
        return S.UnitElim(used, self._spend(rest, a))

    # -- generation --------------------------------------------------------

    def generate(self, ctx: Ctx, a: Prop, depth: int) -> Term:
        rng = self.rng
        if depth <= 0:
            if len(ctx) == 1 and ctx[0][1] == a and rng.random() < 0.5:
                return S.Var(ctx[0][0])
            return self._spend(ctx, a)

        options: list[str] = []
        if len(ctx) == 1 and ctx[0][1] == a:
            options += ["var"] * 3
        if isinstance(a, S.One) and not ctx:
            options += ["star"] * 2
        if isinstance(a, S.Tensor):
            options += ["tens"] * 2
        if isinstance(a, S.Lollipop):
            options += ["lam"] * 3
        if isinstance(a, S.With):
            options += ["pair"] * 2
        if isinstance(a, S.Sup):
            options += ["sup"] * 2
        if isinstance(a, S.Plus):
            options += ["inl", "inr"]
        options += ["sum", "scal"]
        options += ["unit_elim", "app", "fst", "snd", "case", "let_tens",
                    "supfst", "supsnd"]
        if self.allow_sup_elim:
            options += ["sup_elim", "sup_elim"]

        pick = rng.choice(options)
        d = depth - 1

        if pick == "var":
            return S.Var(ctx[0][0])
        if pick == "star":
            return S.Star(self._scalar())
        if pick == "tens":
            c1, c2 = self._split_ctx(ctx)
            return S.Tens(self.generate(c1, a.left, d),
                          self.generate(c2, a.right, d))
        if pick == "lam":
            x = self._fresh()
            return S.Lam(x, self.generate(ctx + ((x, a.left),), a.right, d),
                         a.left)
        if pick == "pair":
            return S.Pair(self.generate(ctx, a.left, d),
                          self.generate(ctx, a.right, d))
        if pick == "sup":
            return S.SupPair(self.generate(ctx, a.left, d),
                             self.generate(ctx, a.right, d))
        if pick == "inl":
            return S.Inl(self.generate(ctx, a.left, d), a.right)
        if pick == "inr":
            return S.Inr(self.generate(ctx, a.right, d), a.left)
        if pick == "sum":
            return S.Sum(self.generate(ctx, a, d), self.generate(ctx, a, d))
        if pick == "scal":
            return S.Scal(self._scalar(), self.generate(ctx, a, d))
        if pick == "unit_elim":
            c1, c2 = self._split_ctx(ctx)
            return S.UnitElim(self.generate(c1, S.One(), d),
                              self.generate(c2, a, d))
        if pick == "app":
            c1, c2 = self._split_ctx(ctx)
            arg_t = self.random_prop(1)
            return S.App(self.generate(c1, S.Lollipop(arg_t, a), d),
                         self.generate(c2, arg_t, d))
        if pick in ("fst", "snd"):
            other = self.random_prop(1)
            pairtype = S.With(a, other) if pick == "fst" else S.With(other, a)
            cls = S.Fst if pick == "fst" else S.Snd
            return cls(self.generate(ctx, pairtype, d))
        if pick in ("supfst", "supsnd"):
            other = self.random_prop(1)
            pairtype = S.Sup(a, other) if pick == "supfst" else S.Sup(other, a)
            cls = S.SupFst if pick == "supfst" else S.SupSnd
            return cls(self.generate(ctx, pairtype, d))
        if pick == "let_tens":
            c1, c2 = self._split_ctx(ctx)
            t1, t2 = self.random_prop(1), self.random_prop(1)
            x, y = self._fresh(), self._fresh()
            scrut = self.generate(c1, S.Tensor(t1, t2), d)
            body = self.generate(c2 + ((x, t1), (y, t2)), a, d)
            return S.TensElim(scrut, x, y, body)
        if pick in ("case", "sup_elim"):
            c1, c2 = self._split_ctx(ctx)
            t1, t2 = self.random_prop(1), self.random_prop(1)
            x, y = self._fresh(), self._fresh()
            conn = S.Plus if pick == "case" else S.Sup
            scrut = self.generate(c1, conn(t1, t2), d)
            left = self.generate(((x, t1),) + c2, a, d)
            right = self.generate(((y, t2),) + c2, a, d)
            if pick == "case":
                return S.Case(scrut, x, left, y, right)
            p, q = rng.choice(self.sr.weight_pool)
            return S.SupElim(p, q, scrut, x, left, y, right)
        raise AssertionError(pick)
