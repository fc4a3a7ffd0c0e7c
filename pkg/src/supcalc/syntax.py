"""Abstract and concrete syntax for the calculus.

Terms are immutable trees; scalar fields hold carrier values of the ambient
semiring (exact rationals by default).  The concrete grammar is keyword
based and whitespace insensitive; see the package README for the full
grammar.  ``lam``, ``inl``, ``inr`` and ``zero_elim`` accept an optional
``{type}`` annotation, which the bidirectional checker uses where a type
cannot be synthesized from the term alone.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Iterator, Optional

from .semiring import QNN, Semiring, format_scalar, make_weight_pair

# weighted-sum terms over large run distributions are left-associated chains
# whose depth is the number of run results; give the recursive AST walks room
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))

# ---------------------------------------------------------------------------
# Propositions


class Prop:
    __slots__ = ()

    def __str__(self) -> str:
        return print_prop(self)


@dataclass(frozen=True)
class One(Prop):
    pass


@dataclass(frozen=True)
class Top(Prop):
    pass


@dataclass(frozen=True)
class Zero(Prop):
    pass


@dataclass(frozen=True)
class Tensor(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True)
class Lollipop(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True)
class With(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True)
class Plus(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True)
class Sup(Prop):
    left: Prop
    right: Prop


# ---------------------------------------------------------------------------
# Terms


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Sum(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Scal(Term):
    scalar: object
    body: Term


@dataclass(frozen=True)
class Star(Term):
    scalar: object


@dataclass(frozen=True)
class UnitElim(Term):
    unit: Term
    body: Term


@dataclass(frozen=True)
class Lam(Term):
    var: str
    body: Term
    ann: Optional[Prop] = None


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Tens(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class TensElim(Term):
    pair: Term
    left_var: str
    right_var: str
    body: Term


@dataclass(frozen=True)
class Unit(Term):
    pass


@dataclass(frozen=True)
class ZeroElim(Term):
    absurd: Term
    ann: Optional[Prop] = None


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst(Term):
    pair: Term


@dataclass(frozen=True)
class Snd(Term):
    pair: Term


@dataclass(frozen=True)
class Inl(Term):
    body: Term
    ann: Optional[Prop] = None  # type of the absent right component


@dataclass(frozen=True)
class Inr(Term):
    body: Term
    ann: Optional[Prop] = None  # type of the absent left component


@dataclass(frozen=True)
class Case(Term):
    scrutinee: Term
    left_var: str
    left_body: Term
    right_var: str
    right_body: Term


@dataclass(frozen=True)
class SupPair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class SupFst(Term):
    pair: Term


@dataclass(frozen=True)
class SupSnd(Term):
    pair: Term


@dataclass(frozen=True)
class SupElim(Term):
    p: object
    q: object
    scrutinee: Term
    left_var: str
    left_body: Term
    right_var: str
    right_body: Term


@dataclass(frozen=True)
class Hole(Term):
    """The distinguished hole of a term context."""


def sup_elim(p, q, scrutinee, left_var, left_body, right_var, right_body,
             semiring: Semiring = QNN) -> SupElim:
    """Weight-validated constructor for the probabilistic pair destructor."""
    make_weight_pair(p, q, semiring)
    return SupElim(p, q, scrutinee, left_var, left_body, right_var, right_body)


# Child accessors: (field names of subterms, binder structure). Binders maps
# each subterm field to the names bound inside it.
_BINDERS = {
    Lam: {"body": ("var",)},
    TensElim: {"body": ("left_var", "right_var")},
    Case: {"left_body": ("left_var",), "right_body": ("right_var",)},
    SupElim: {"left_body": ("left_var",), "right_body": ("right_var",)},
}


def subterm_fields(t: Term) -> list[str]:
    return [f.name for f in fields(t) if isinstance(getattr(t, f.name), Term)]


def children(t: Term) -> list[Term]:
    return [getattr(t, name) for name in subterm_fields(t)]


def bound_names(t: Term, field: str) -> tuple[str, ...]:
    spec = _BINDERS.get(type(t), {})
    return tuple(getattr(t, v) for v in spec.get(field, ()))


def subterms(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    """All subterms with their positions, outermost first, left to right."""
    stack = [((), t)]
    while stack:
        pos, u = stack.pop(0)
        yield pos, u
        stack[0:0] = [(pos + (i,), c) for i, c in enumerate(children(u))]


def replace_at(t: Term, pos: tuple[int, ...], new: Term) -> Term:
    if not pos:
        return new
    names = subterm_fields(t)
    name = names[pos[0]]
    child = getattr(t, name)
    return replace(t, **{name: replace_at(child, pos[1:], new)})


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    acc: set[str] = set()
    for field in subterm_fields(t):
        sub = free_vars(getattr(t, field))
        acc |= sub - set(bound_names(t, field))
    return frozenset(acc)


def fresh_name(base: str, taken: frozenset[str] | set[str]) -> str:
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def subst_parallel(t: Term, mapping: dict[str, Term]) -> Term:
    """Capture-avoiding simultaneous substitution of free variables."""
    mapping = {x: v for x, v in mapping.items() if v != Var(x)}
    if not mapping:
        return t
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Hole):
        return t
    relevant = {x: v for x, v in mapping.items() if x in free_vars(t)}
    if not relevant:
        return t
    updates: dict[str, object] = {}
    binder_spec = _BINDERS.get(type(t), {})
    renames: dict[str, str] = {}
    for field in subterm_fields(t):
        body = getattr(t, field)
        bvars = binder_spec.get(field, ())
        local = {x: v for x, v in relevant.items()
                 if x not in {getattr(t, b) for b in bvars}}
        local = {x: v for x, v in local.items() if x in free_vars(body)}
        # rename binders that would capture free variables of the images
        for b in bvars:
            bname = renames.get(b, getattr(t, b))
            clash = any(bname in free_vars(v) for v in local.values())
            if clash:
                taken = set(free_vars(body)) | set(local)
                taken |= {getattr(t, b2) for b2 in bvars}
                taken |= set(renames.values())
                for v in local.values():
                    taken |= free_vars(v)
                new_name = fresh_name(bname, taken)
                renames[b] = new_name
                body = subst_parallel(body, {getattr(t, b): Var(new_name)})
                local = {x: v for x, v in local.items() if x in free_vars(body)}
        new_body = subst_parallel(body, local) if local else body
        if new_body is not body or body is not getattr(t, field):
            updates[field] = new_body
    for b, new_name in renames.items():
        updates[b] = new_name
    return replace(t, **updates) if updates else t


def substitute(v: Term, x: str, t: Term) -> Term:
    """The substitution of x by v in t, written (v/x)t."""
    return subst_parallel(t, {x: v})


# ---------------------------------------------------------------------------
# Term contexts


def hole_count(t: Term) -> int:
    if isinstance(t, Hole):
        return 1
    return sum(hole_count(c) for c in children(t))


def fill(context: Term, t: Term) -> Term:
    """Plug t into the hole, textually: the hole is not a binder, so no
    renaming happens and capture is intended."""
    if isinstance(context, Hole):
        return t
    updates = {}
    for field in subterm_fields(context):
        child = getattr(context, field)
        if hole_count(child):
            updates[field] = fill(child, t)
    return replace(context, **updates) if updates else context


def compose_contexts(outer: Term, inner: Term) -> Term:
    """Plug the inner context into the outer one's hole."""
    return fill(outer, inner)


# ---------------------------------------------------------------------------
# Alpha equivalence and canonical renaming


def alpha_eq(t: Term, u: Term) -> bool:
    return _alpha(t, u, {}, {}, 0)


def _alpha(t: Term, u: Term, envt: dict, envu: dict, depth: int) -> bool:
    if type(t) is not type(u):
        return False
    if isinstance(t, Var):
        return envt.get(t.name, t.name) == envu.get(u.name, u.name)
    for f in fields(t):
        a, b = getattr(t, f.name), getattr(u, f.name)
        if isinstance(a, Term):
            bt = bound_names(t, f.name)
            bu = bound_names(u, f.name)
            et, eu = envt, envu
            d = depth
            for x, y in zip(bt, bu):
                et = {**et, x: d}
                eu = {**eu, y: d}
                d += 1
            if not _alpha(a, b, et, eu, d):
                return False
        elif isinstance(a, str) and f.name in _binder_fields(t):
            continue  # binder names are compared via the environment
        else:
            if a != b:
                return False
    return True


def _binder_fields(t: Term) -> set[str]:
    spec = _BINDERS.get(type(t), {})
    return {v for vs in spec.values() for v in vs}


def canonical(t: Term) -> Term:
    """Rename every binder to v0, v1, ... in traversal order.

    Alpha-equivalent terms have identical canonical forms, so the printed
    canonical form is a valid multiset key for closed values.
    """
    counter = [0]

    def go(u: Term, env: dict[str, str]) -> Term:
        if isinstance(u, Var):
            return Var(env.get(u.name, u.name))
        updates: dict[str, object] = {}
        spec = _BINDERS.get(type(u), {})
        for field in subterm_fields(u):
            body = getattr(u, field)
            local = dict(env)
            for b in spec.get(field, ()):
                new = f"v{counter[0]}"
                counter[0] += 1
                local[getattr(u, b)] = new
                updates[b] = new
            updates[field] = go(body, local)
        return replace(u, **updates) if updates else u

    return go(t, {})


# ---------------------------------------------------------------------------
# Concrete syntax: tokenizer


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        hint = f" (expected one of: {', '.join(self.expected)})" if expected else ""
        super().__init__(f"{line}:{col}: {message}{hint}")


TERM_KEYWORDS = {
    "sum", "scal", "star", "unit_elim", "lam", "app", "tens", "let_tens",
    "unit", "zero_elim", "pair", "fst", "snd", "inl", "inr", "case",
    "sup", "supfst", "supsnd", "sup_elim",
}
PROP_KEYWORDS = {"one", "top", "zero"}
KEYWORDS = TERM_KEYWORDS | PROP_KEYWORDS

_PUNCT = {"(", ")", "{", "}", ",", ".", ":", "/", "&", "-o", "(*)", "(+)", "(o)"}


@dataclass(frozen=True)
class Token:
    kind: str  # 'name', 'int', 'punct', 'eof'
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("-o", i):
            toks.append(Token("punct", "-o", line, col))
            i += 2
            col += 2
            continue
        if c == "(" and i + 2 < n and text[i + 1] in "*+o" and text[i + 2] == ")":
            toks.append(Token("punct", text[i:i + 3], line, col))
            i += 3
            col += 3
            continue
        if c in "(){},.:/&":
            toks.append(Token("punct", c, line, col))
            i += 1
            col += 1
            continue
        if c == "-" or c.isdigit():
            j = i + 1 if c == "-" else i
            if j >= n or not text[j].isdigit():
                raise ParseError(f"stray {c!r}", line, col)
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    toks.append(Token("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# Concrete syntax: parser


class _Parser:
    def __init__(self, text: str, semiring: Semiring):
        self.toks = tokenize(text)
        self.pos = 0
        self.sr = semiring

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> ParseError:
        tok = self.peek()
        got = tok.text or "end of input"
        return ParseError(f"unexpected {got!r}", tok.line, tok.col, expected)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind == "punct" and tok.text == text:
            return self.next()
        raise self.fail((text,))

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def name(self) -> str:
        tok = self.peek()
        if tok.kind == "name" and tok.text not in KEYWORDS:
            return self.next().text
        raise self.fail(("variable name",))

    def scalar(self):
        tok = self.peek()
        if tok.kind != "int":
            raise self.fail(("scalar literal",))
        self.next()
        num = int(tok.text)
        if self.at("/"):
            self.next()
            dtok = self.peek()
            if dtok.kind != "int":
                raise self.fail(("denominator",))
            self.next()
            den = int(dtok.text)
            if den == 0:
                raise ParseError("zero denominator", dtok.line, dtok.col)
            frac = Fraction(num, den)
        else:
            frac = Fraction(num)
        try:
            return self.sr.from_literal(frac)
        except Exception as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    # -- propositions: -o is right associative and loosest; then (+) and (o),
    # then &, then (*); all left associative.

    def prop(self) -> Prop:
        left = self.prop_additive()
        if self.at("-o"):
            self.next()
            return Lollipop(left, self.prop())
        return left

    def prop_additive(self) -> Prop:
        left = self.prop_with()
        while self.at("(+)") or self.at("(o)"):
            op = self.next().text
            right = self.prop_with()
            left = Plus(left, right) if op == "(+)" else Sup(left, right)
        return left

    def prop_with(self) -> Prop:
        left = self.prop_tensor()
        while self.at("&"):
            self.next()
            left = With(left, self.prop_tensor())
        return left

    def prop_tensor(self) -> Prop:
        left = self.prop_atom()
        while self.at("(*)"):
            self.next()
            left = Tensor(left, self.prop_atom())
        return left

    def prop_atom(self) -> Prop:
        tok = self.peek()
        if tok.kind == "name":
            if tok.text == "one":
                self.next()
                return One()
            if tok.text == "top":
                self.next()
                return Top()
            if tok.text == "zero":
                self.next()
                return Zero()
        if self.at("("):
            self.next()
            inner = self.prop()
            self.expect(")")
            return inner
        raise self.fail(("one", "top", "zero", "("))

    # -- terms

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind != "name":
            raise self.fail(("term",))
        word = tok.text
        if word not in KEYWORDS:
            self.next()
            return Var(word)
        handler = getattr(self, f"_kw_{word}", None)
        if handler is None:
            raise self.fail(("term keyword",))
        self.next()
        return handler()

    def _ann(self) -> Optional[Prop]:
        if self.at("{"):
            self.next()
            ann = self.prop()
            self.expect("}")
            return ann
        return None

    def _args(self, *parsers):
        self.expect("(")
        out = []
        for i, p in enumerate(parsers):
            if i:
                self.expect(",")
            out.append(p())
        self.expect(")")
        return out

    def _binder_clause(self):
        x = self.name()
        self.expect(".")
        return x, self.term()

    def _kw_sum(self):
        t, u = self._args(self.term, self.term)
        return Sum(t, u)

    def _kw_scal(self):
        s, t = self._args(self.scalar, self.term)
        return Scal(s, t)

    def _kw_star(self):
        (s,) = self._args(self.scalar)
        return Star(s)

    def _kw_unit_elim(self):
        t, u = self._args(self.term, self.term)
        return UnitElim(t, u)

    def _kw_lam(self):
        ann = self._ann()
        x, t = self._args(self.name, self.term)
        return Lam(x, t, ann)

    def _kw_app(self):
        t, u = self._args(self.term, self.term)
        return App(t, u)

    def _kw_tens(self):
        t, u = self._args(self.term, self.term)
        return Tens(t, u)

    def _kw_let_tens(self):
        t, x, y, u = self._args(self.term, self.name, self.name, self.term)
        return TensElim(t, x, y, u)

    def _kw_unit(self):
        return Unit()

    def _kw_zero_elim(self):
        ann = self._ann()
        (t,) = self._args(self.term)
        return ZeroElim(t, ann)

    def _kw_pair(self):
        t, u = self._args(self.term, self.term)
        return Pair(t, u)

    def _kw_fst(self):
        (t,) = self._args(self.term)
        return Fst(t)

    def _kw_snd(self):
        (t,) = self._args(self.term)
        return Snd(t)

    def _kw_inl(self):
        ann = self._ann()
        (t,) = self._args(self.term)
        return Inl(t, ann)

    def _kw_inr(self):
        ann = self._ann()
        (t,) = self._args(self.term)
        return Inr(t, ann)

    def _kw_case(self):
        self.expect("(")
        t = self.term()
        self.expect(",")
        x, u = self._binder_clause()
        self.expect(",")
        y, v = self._binder_clause()
        self.expect(")")
        return Case(t, x, u, y, v)

    def _kw_sup(self):
        t, u = self._args(self.term, self.term)
        return SupPair(t, u)

    def _kw_supfst(self):
        (t,) = self._args(self.term)
        return SupFst(t)

    def _kw_supsnd(self):
        (t,) = self._args(self.term)
        return SupSnd(t)

    def _kw_sup_elim(self):
        tok = self.peek()
        self.expect("{")
        p = self.scalar()
        self.expect(",")
        q = self.scalar()
        self.expect("}")
        self.expect("(")
        t = self.term()
        self.expect(",")
        x, u = self._binder_clause()
        self.expect(",")
        y, v = self._binder_clause()
        self.expect(")")
        try:
            return sup_elim(p, q, t, x, u, y, v, self.sr)
        except Exception as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    def done(self):
        tok = self.peek()
        if tok.kind != "eof":
            raise self.fail(("end of input",))


def parse_term(text: str, semiring: Semiring = QNN) -> Term:
    p = _Parser(text, semiring)
    t = p.term()
    p.done()
    return t


def parse_prop(text: str, semiring: Semiring = QNN) -> Prop:
    p = _Parser(text, semiring)
    a = p.prop()
    p.done()
    return a


def parse_context(text: str, semiring: Semiring = QNN) -> tuple[tuple[str, Prop], ...]:
    """Parse a typing context written as ``x:A, y:B``."""
    text = text.strip()
    if not text:
        return ()
    p = _Parser(text, semiring)
    out = []
    while True:
        x = p.name()
        p.expect(":")
        out.append((x, p.prop()))
        if p.at(","):
            p.next()
            continue
        break
    p.done()
    return tuple(out)


# ---------------------------------------------------------------------------
# Printer

_PROP_LEVEL = {Lollipop: 0, Plus: 1, Sup: 1, With: 2, Tensor: 3}


def print_prop(a: Prop) -> str:
    return _pp(a, 0)


def _pp(a: Prop, level: int) -> str:
    if isinstance(a, One):
        return "one"
    if isinstance(a, Top):
        return "top"
    if isinstance(a, Zero):
        return "zero"
    my = _PROP_LEVEL[type(a)]
    op = {Lollipop: " -o ", Plus: " (+) ", Sup: " (o) ",
          With: " & ", Tensor: " (*) "}[type(a)]
    if isinstance(a, Lollipop):
        s = _pp(a.left, my + 1) + op + _pp(a.right, my)  # right associative
    else:
        s = _pp(a.left, my) + op + _pp(a.right, my + 1)
    return f"({s})" if my < level else s


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Hole):
        return "[.]"
    if isinstance(t, Sum):
        return f"sum({print_term(t.left)},{print_term(t.right)})"
    if isinstance(t, Scal):
        return f"scal({format_scalar(t.scalar)},{print_term(t.body)})"
    if isinstance(t, Star):
        return f"star({format_scalar(t.scalar)})"
    if isinstance(t, UnitElim):
        return f"unit_elim({print_term(t.unit)},{print_term(t.body)})"
    if isinstance(t, Lam):
        ann = "{" + print_prop(t.ann) + "}" if t.ann is not None else ""
        return f"lam{ann}({t.var},{print_term(t.body)})"
    if isinstance(t, App):
        return f"app({print_term(t.fn)},{print_term(t.arg)})"
    if isinstance(t, Tens):
        return f"tens({print_term(t.left)},{print_term(t.right)})"
    if isinstance(t, TensElim):
        return (f"let_tens({print_term(t.pair)},{t.left_var},{t.right_var},"
                f"{print_term(t.body)})")
    if isinstance(t, Unit):
        return "unit"
    if isinstance(t, ZeroElim):
        ann = "{" + print_prop(t.ann) + "}" if t.ann is not None else ""
        return f"zero_elim{ann}({print_term(t.absurd)})"
    if isinstance(t, Pair):
        return f"pair({print_term(t.left)},{print_term(t.right)})"
    if isinstance(t, Fst):
        return f"fst({print_term(t.pair)})"
    if isinstance(t, Snd):
        return f"snd({print_term(t.pair)})"
    if isinstance(t, Inl):
        ann = "{" + print_prop(t.ann) + "}" if t.ann is not None else ""
        return f"inl{ann}({print_term(t.body)})"
    if isinstance(t, Inr):
        ann = "{" + print_prop(t.ann) + "}" if t.ann is not None else ""
        return f"inr{ann}({print_term(t.body)})"
    if isinstance(t, Case):
        return (f"case({print_term(t.scrutinee)},{t.left_var}."
                f"{print_term(t.left_body)},{t.right_var}."
                f"{print_term(t.right_body)})")
    if isinstance(t, SupPair):
        return f"sup({print_term(t.left)},{print_term(t.right)})"
    if isinstance(t, SupFst):
        return f"supfst({print_term(t.pair)})"
    if isinstance(t, SupSnd):
        return f"supsnd({print_term(t.pair)})"
    if isinstance(t, SupElim):
        return (f"sup_elim{{{format_scalar(t.p)},{format_scalar(t.q)}}}"
                f"({print_term(t.scrutinee)},{t.left_var}."
                f"{print_term(t.left_body)},{t.right_var}."
                f"{print_term(t.right_body)})")
    raise TypeError(f"not a term: {t!r}")
