"""Quantifier-free terms and formulas for the two-sorted and ac-valued languages.

Text syntax is an S-expression::

    (= (res (* x y)) (* (res x) (res y)))
    (implies (Theta1 x) (= (res (S1 x a)) a))
    (<= (v x) (v (+ x y)))

Variables carry their sort either inline (``x:A``) or through the ``sorts``
mapping given to :func:`parse_formula`.  Integer numerals denote n * 1 and take
their sort from the surrounding term or from a suffix (``1:k``).  Quoted literals need a sort suffix:
``"t+1":k`` is a field element, ``"t,1":A`` a Witt vector given by digits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, SortError


# -- sorts -----------------------------------------------------------------------------
@dataclass(frozen=True)
class Sort:
    tag: str
    n: int = 0

    def __str__(self) -> str:
        return f"R{self.n}" if self.tag == "R" else self.tag

    @property
    def is_ring(self) -> bool:
        return self.tag in ("A", "k", "K", "R")


A = Sort("A")
k = Sort("k")
K = Sort("K")
GAMMA = Sort("G")


def R(n: int) -> Sort:
    """The sort R_n; R_1 is the residue-field sort k."""
    if n < 1:
        raise SortError(f"R_{n} does not exist")
    return k if n == 1 else Sort("R", n)


def parse_sort(text: str) -> Sort:
    text = text.strip()
    if text in ("A", "k", "K"):
        return Sort(text)
    if text in ("G", "Gamma", "Γ"):
        return GAMMA
    m = re.fullmatch(r"R_?(\d+)", text)
    if m:
        return R(int(m.group(1)))
    raise SortError(f"unknown sort {text!r}")


def ring_level(s: Sort) -> int | None:
    """n for R_n (1 for k), None otherwise."""
    if s == k:
        return 1
    if s.tag == "R":
        return s.n
    return None


# -- terms -----------------------------------------------------------------------------
class Term:
    sort: Sort | None

    def free_vars(self) -> dict[str, Sort]:
        out: dict[str, Sort] = {}
        self._collect(out)
        return out

    def _collect(self, out):
        pass


@dataclass(frozen=True)
class Var(Term):
    name: str
    sort: Sort

    def _collect(self, out):
        if out.get(self.name, self.sort) != self.sort:
            raise SortError(f"variable {self.name} used with sorts {out[self.name]} and {self.sort}")
        out[self.name] = self.sort

    def __str__(self) -> str:
        return f"{self.name}:{self.sort}"


@dataclass(frozen=True)
class Num(Term):
    value: int
    sort: Sort | None = None

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Lit(Term):
    text: str
    sort: Sort

    def __str__(self) -> str:
        return f'"{self.text}":{self.sort}'


RING_OPS = {"+", "-", "*", "neg"}
FIELD_OPS = {"/", "inv"}


def _symbol_kind(fn: str):
    """(kind, parameters) for a function symbol name."""
    if fn in RING_OPS or fn in FIELD_OPS:
        return "ring", ()
    if fn == "res":
        return "res", ()
    if fn == "v":
        return "v", ()
    m = re.fullmatch(r"S(\d+)", fn)
    if m:
        return "S", (int(m.group(1)),)
    m = re.fullmatch(r"r(\d+)", fn)
    if m:
        return "r", (int(m.group(1)),)
    m = re.fullmatch(r"ac(\d+)", fn)
    if m:
        return "ac", (int(m.group(1)),)
    m = re.fullmatch(r"res(\d+)_(\d+)", fn)
    if m:
        return "resnm", (int(m.group(1)), int(m.group(2)))
    raise SortError(f"unknown function symbol {fn!r}")


def _result_sort(fn: str, args) -> Sort:
    kind, params = _symbol_kind(fn)
    sorts = [a.sort for a in args]

    def want(i, s):
        if sorts[i] != s:
            raise SortError(f"argument {i + 1} of {fn} has sort {sorts[i]}, expected {s}")

    if kind == "ring":
        arity = (1,) if fn in ("neg", "inv") else (2, None)
        if len(args) < 1 or (arity == (1,) and len(args) != 1) or (arity != (1,) and len(args) < 2):
            raise SortError(f"{fn} applied to {len(args)} arguments")
        s = sorts[0]
        if s is None:
            raise SortError(f"cannot infer the sort of {fn}")
        if fn in FIELD_OPS and s not in (k, K):
            raise SortError(f"{fn} needs a field sort, got {s}")
        if not s.is_ring and not (s == GAMMA and fn in ("+", "-", "neg")):
            raise SortError(f"{fn} is not defined on sort {s}")
        for i in range(len(args)):
            want(i, s)
        return s
    if kind == "res":
        if len(args) != 1:
            raise SortError("res is unary")
        want(0, A)
        return k
    if kind == "v":
        if len(args) != 1:
            raise SortError("v is unary")
        want(0, K)
        return GAMMA
    if kind == "S":
        (r,) = params
        if len(args) != r + 1:
            raise SortError(f"S{r} takes {r + 1} arguments, got {len(args)}")
        for i in range(r):
            want(i, A)
        want(r, k)
        return A
    if kind in ("r", "ac"):
        (n,) = params
        if len(args) != 1:
            raise SortError(f"{fn} is unary")
        want(0, A if kind == "r" else K)
        return R(n)
    if kind == "resnm":
        n, m = params
        if not 1 <= m <= n:
            raise SortError(f"{fn} needs 1 <= m <= n")
        if len(args) != 1:
            raise SortError(f"{fn} is unary")
        want(0, R(n))
        return R(m)
    raise SortError(fn)  # pragma: no cover


def _expected_args(fn: str, nargs: int) -> list:
    kind, params = _symbol_kind(fn)
    if kind == "res":
        return [A] * nargs
    if kind == "S":
        return [A] * (nargs - 1) + [k]
    if kind == "r":
        return [A] * nargs
    if kind in ("v", "ac"):
        return [K] * nargs
    if kind == "resnm":
        return [R(params[0])] * nargs
    return [None] * nargs


@dataclass(frozen=True)
class App(Term):
    fn: str
    args: tuple
    sort: Sort | None = None

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        s = _result_sort(self.fn, self.args)
        if self.sort is not None and self.sort != s:
            raise SortError(f"{self.fn} has sort {s}, not {self.sort}")
        object.__setattr__(self, "sort", s)

    def _collect(self, out):
        for a in self.args:
            a._collect(out)

    def __str__(self) -> str:
        return f"({self.fn} {' '.join(map(str, self.args))})"


# -- formulas --------------------------------------------------------------------------
class Formula:
    def free_vars(self) -> dict[str, Sort]:
        out: dict[str, Sort] = {}
        self._collect(out)
        return out


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def _collect(self, out):
        pass

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.lhs.sort is None or self.lhs.sort != self.rhs.sort:
            raise SortError(f"= between sorts {self.lhs.sort} and {self.rhs.sort}")

    def _collect(self, out):
        self.lhs._collect(out)
        self.rhs._collect(out)

    def __str__(self) -> str:
        return f"(= {self.lhs} {self.rhs})"


@dataclass(frozen=True)
class Rel(Formula):
    """Theta_r on A^r, or the order relations on Gamma."""

    name: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        m = re.fullmatch(r"Theta(\d+)", self.name)
        if m:
            r = int(m.group(1))
            if len(self.args) != r:
                raise SortError(f"Theta{r} takes {r} arguments, got {len(self.args)}")
            for a in self.args:
                if a.sort != A:
                    raise SortError(f"Theta{r} needs arguments of sort A, got {a.sort}")
        elif self.name in ("<=", "<"):
            if len(self.args) != 2 or any(a.sort != GAMMA for a in self.args):
                raise SortError(f"{self.name} relates two terms of sort G")
        else:
            raise SortError(f"unknown relation {self.name!r}")

    def _collect(self, out):
        for a in self.args:
            a._collect(out)

    def __str__(self) -> str:
        return f"({self.name} {' '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def _collect(self, out):
        self.body._collect(out)

    def __str__(self) -> str:
        return f"(not {self.body})"


@dataclass(frozen=True)
class Conn(Formula):
    """and / or / implies / iff."""

    op: str
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.op not in ("and", "or", "implies", "iff"):
            raise ParseError(f"unknown connective {self.op!r}")
        if self.op in ("implies", "iff") and len(self.parts) != 2:
            raise ParseError(f"{self.op} is binary")

    def _collect(self, out):
        for f in self.parts:
            f._collect(out)

    def __str__(self) -> str:
        return f"({self.op} {' '.join(map(str, self.parts))})"


# -- parser ----------------------------------------------------------------------------
_TOKEN = re.compile(r'\s*(?:("[^"]*"(?::[^\s()]+)?)|(\()|(\))|([^\s()"]+))')
QUANTIFIERS = {"forall", "exists", "∀", "∃"}


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


def _read(tokens: list[str], i: int):
    if i >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[i]
    if tok == ")":
        raise ParseError("unbalanced ')'")
    if tok != "(":
        return tok, i + 1
    items = []
    i += 1
    while True:
        if i >= len(tokens):
            raise ParseError("missing ')'")
        if tokens[i] == ")":
            return items, i + 1
        item, i = _read(tokens, i)
        items.append(item)


def _sexpr(text: str):
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    expr, i = _read(tokens, 0)
    if i != len(tokens):
        raise ParseError("trailing input after expression")
    return expr


def _with_sort(t: Term, s: Sort) -> Term:
    """Assign ``s`` to sort-free numerals inside ``t``."""
    if isinstance(t, Num) and t.sort is None:
        if not (s.is_ring or s == GAMMA):
            raise SortError(f"numeral of sort {s}")
        return Num(t.value, s)
    return t


def _untyped(t: Term) -> bool:
    return isinstance(t, Num) and t.sort is None


class _Builder:
    def __init__(self, sorts: dict[str, Sort]):
        self.sorts = sorts

    def term(self, e, expected: Sort | None = None) -> Term:
        if isinstance(e, str):
            return self.atom(e, expected)
        if not e:
            raise ParseError("empty application")
        head = e[0]
        if not isinstance(head, str):
            raise ParseError("function position must be a symbol")
        if head in QUANTIFIERS:
            raise ParseError("quantifiers are not supported: only quantifier-free formulas are evaluated")
        args = [self.term(a) for a in e[1:]]
        kind, _ = _symbol_kind(head)
        if kind == "ring":
            s = next((a.sort for a in args if a.sort is not None), expected)
            if s is None:
                raise SortError(f"cannot infer the sort of ({head} ...)")
            args = [_with_sort(a, s) for a in args]
        else:
            args = [_with_sort(a, s) if s is not None else a
                    for a, s in zip(args, _expected_args(head, len(args)))]
        if any(_untyped(a) for a in args):
            raise SortError(f"numeral argument of {head} has no sort")
        return App(head, tuple(args))

    def atom(self, tok: str, expected: Sort | None) -> Term:
        if tok.startswith('"'):
            body, _, sort = tok[1:].partition('"')
            if not sort.startswith(":"):
                raise SortError(f"literal {tok} needs a sort suffix")
            return Lit(body, parse_sort(sort[1:]))
        m = re.fullmatch(r"(-?\d+):(\S+)", tok)
        if m:
            return _with_sort(Num(int(m.group(1))), parse_sort(m.group(2)))
        if re.fullmatch(r"-?\d+", tok):
            return _with_sort(Num(int(tok)), expected) if expected else Num(int(tok))
        if tok == "inf":
            return Lit("inf", GAMMA)
        name, colon, sort = tok.partition(":")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise ParseError(f"bad variable name {name!r}")
        if colon:
            s = parse_sort(sort)
            if name in self.sorts and self.sorts[name] != s:
                raise SortError(f"variable {name} declared with sort {self.sorts[name]}, used as {s}")
            self.sorts[name] = s
            return Var(name, s)
        if name not in self.sorts:
            raise SortError(f"variable {name} has no sort")
        return Var(name, self.sorts[name])

    def formula(self, e) -> Formula:
        if isinstance(e, str):
            if e in ("true", "false"):
                return Const(e == "true")
            raise ParseError(f"expected a formula, got {e!r}")
        if not e or not isinstance(e[0], str):
            raise ParseError("malformed formula")
        head = e[0]
        if head in QUANTIFIERS:
            raise ParseError("quantifiers are not supported: only quantifier-free formulas are evaluated")
        if head == "not":
            if len(e) != 2:
                raise ParseError("not is unary")
            return Not(self.formula(e[1]))
        if head in ("and", "or", "implies", "iff"):
            return Conn(head, tuple(self.formula(x) for x in e[1:]))
        if head == "=":
            if len(e) != 3:
                raise ParseError("= is binary")
            lhs, rhs = self.term(e[1]), self.term(e[2])
            if lhs.sort is None and rhs.sort is None:
                raise SortError("cannot infer the sort of an equation between numerals")
            lhs = _with_sort(lhs, rhs.sort) if lhs.sort is None else lhs
            rhs = _with_sort(rhs, lhs.sort) if rhs.sort is None else rhs
            return Eq(lhs, rhs)
        if head in ("<=", "<"):
            return Rel(head, tuple(self.term(x, GAMMA) for x in e[1:]))
        if re.fullmatch(r"Theta\d+", head):
            return Rel(head, tuple(self.term(x) for x in e[1:]))
        raise ParseError(f"unknown formula head {head!r}")


def _coerce_sorts(sorts) -> dict[str, Sort]:
    return {name: (s if isinstance(s, Sort) else parse_sort(s)) for name, s in (sorts or {}).items()}


def parse_term(text: str, sorts=None) -> Term:
    return _Builder(_coerce_sorts(sorts)).term(_sexpr(text))


def parse_formula(text: str, sorts=None) -> Formula:
    return _Builder(_coerce_sorts(sorts)).formula(_sexpr(text))


__all__ = [
    "A",
    "App",
    "Conn",
    "Const",
    "Eq",
    "Formula",
    "GAMMA",
    "K",
    "Lit",
    "Not",
    "Num",
    "R",
    "Rel",
    "Sort",
    "Term",
    "Var",
    "k",
    "parse_formula",
    "parse_sort",
    "parse_term",
    "ring_level",
]
