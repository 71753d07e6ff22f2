"""Concrete syntax: an s-expression reader, the term parser and the printer.

Grammar (binders are bracketed)::

    (arr A B) (prd A B) bool (notb r) S1
    (lam [a M]) (app M N) (pair M N) (fst M) (snd M)
    true false (if A M T F) (not M) (notel r M)
    base (loop r) (S1-elim A M P [x L])
    (coe [x A] r r' M) (hcom r A r0 r1 M [y N0] [y N1])

Dimensions are ``0``, ``1`` or an identifier.  A file may start with a
``(dim x y ...)`` header; when present, every free dimension name must be
declared there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from chtt.syntax import (
    BASE, BOOL, FALSE, S1_TY, TRUE, App, Arr, Base, Bool, Coe, Ff, Fst, Hcom, If, Lam,
    Loop, NotB, NotEl, Pair, Prd, S1, S1Elim, Snd, Term, Tt, Var, dsubst, expand_not, fd,
    fresh_name, ftv, is_name,
)

KEYWORDS = frozenset(
    "arr prd bool S1 not notb notel lam app pair fst snd true false if base loop "
    "S1-elim coe hcom dim eq".split()
)
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9'_-]*")
_TOKEN = re.compile(r"\s+|;[^\n]*|[()\[\]]|[^\s()\[\];]+")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    col_start: int
    col_end: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col_start}"

    def join(self, other: "SourceSpan") -> "SourceSpan":
        end = other.col_end if other.line == self.line else self.col_end
        return SourceSpan(self.file, self.line, self.col_start, end)


class ParseError(Exception):
    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        super().__init__(f"{span}: {message}" if span else message)
        self.message = message
        self.span = span


# ---------------------------------------------------------------------------
# reader


@dataclass(frozen=True)
class Atom:
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class SList:
    items: tuple
    bracket: str  # "(" or "["
    span: SourceSpan


Sexpr = Atom | SList


def _tokens(text: str, file: str):
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        tok = mt.group()
        col = pos - line_start + 1
        if not tok[0].isspace() and tok[0] != ";":
            yield tok, SourceSpan(file, line, col, col + len(tok) - 1)
        for i, ch in enumerate(tok):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = mt.end()


def read_all(text: str, file: str = "<input>") -> list:
    """Read every s-expression in ``text``."""
    stack: list = []
    out: list = []
    for tok, span in _tokens(text, file):
        if tok in "([":
            stack.append((tok, span, []))
        elif tok in ")]":
            if not stack:
                raise ParseError(f"unexpected '{tok}'", span)
            opener, start, items = stack.pop()
            if (opener, tok) not in (("(", ")"), ("[", "]")):
                raise ParseError(f"'{opener}' closed by '{tok}'", span)
            node = SList(tuple(items), opener, start.join(span))
            (stack[-1][2] if stack else out).append(node)
        else:
            node = Atom(tok, span)
            (stack[-1][2] if stack else out).append(node)
    if stack:
        raise ParseError(f"unclosed '{stack[-1][0]}'", stack[-1][1])
    return out


# ---------------------------------------------------------------------------
# parser


def _ident(sx: Sexpr, what: str) -> str:
    if not isinstance(sx, Atom):
        raise ParseError(f"expected {what}", sx.span)
    if sx.text in KEYWORDS or not _IDENT.fullmatch(sx.text):
        raise ParseError(f"expected {what}, got '{sx.text}'", sx.span)
    return sx.text


class _Parser:
    def __init__(self, dims: Optional[frozenset], term_vars: Optional[frozenset]):
        self.dims = dims
        self.term_vars = term_vars

    def dim(self, sx: Sexpr, bound: frozenset):
        if isinstance(sx, Atom) and sx.text in ("0", "1"):
            return int(sx.text)
        name = _ident(sx, "a dimension")
        if self.dims is not None and name not in bound and name not in self.dims:
            raise ParseError(f"undeclared dimension name '{name}'", sx.span)
        return name

    def binder(self, sx: Sexpr, what: str):
        if not (isinstance(sx, SList) and sx.bracket == "[" and len(sx.items) == 2):
            raise ParseError(f"expected a binder [{what} BODY]", sx.span)
        return _ident(sx.items[0], what), sx.items[1]

    def term(self, sx: Sexpr, dbound: frozenset, tbound: frozenset) -> Term:
        if isinstance(sx, Atom):
            match sx.text:
                case "bool":
                    return BOOL
                case "S1":
                    return S1_TY
                case "true":
                    return TRUE
                case "false":
                    return FALSE
                case "base":
                    return BASE
            name = _ident(sx, "a term")
            if self.term_vars is not None and name not in tbound and name not in self.term_vars:
                raise ParseError(f"unbound variable '{name}'", sx.span)
            return Var(name)
        if sx.bracket != "(" or not sx.items:
            raise ParseError("expected a term", sx.span)
        head, *args = sx.items
        if not isinstance(head, Atom):
            raise ParseError("expected a keyword in head position", head.span)
        kw = head.text

        def arity(n: int):
            if len(args) != n:
                raise ParseError(f"'{kw}' expects {n} arguments, got {len(args)}", sx.span)

        def t(a):
            return self.term(a, dbound, tbound)

        def d(a):
            return self.dim(a, dbound)

        match kw:
            case "arr" | "prd" | "app" | "pair":
                arity(2)
                ctor = {"arr": Arr, "prd": Prd, "app": App, "pair": Pair}[kw]
                return ctor(t(args[0]), t(args[1]))
            case "fst" | "snd" | "not":
                arity(1)
                return {"fst": Fst, "snd": Snd, "not": expand_not}[kw](t(args[0]))
            case "notb" | "loop":
                arity(1)
                return (NotB if kw == "notb" else Loop)(d(args[0]))
            case "notel":
                arity(2)
                return NotEl(d(args[0]), t(args[1]))
            case "lam":
                arity(1)
                a, body = self.binder(args[0], "variable")
                return Lam(a, self.term(body, dbound, tbound | {a}))
            case "if":
                arity(4)
                return If(*(t(a) for a in args))
            case "S1-elim":
                arity(4)
                x, line = self.binder(args[3], "dimension")
                return S1Elim(t(args[0]), t(args[1]), t(args[2]), x, self.term(line, dbound | {x}, tbound))
            case "coe":
                arity(4)
                x, ty = self.binder(args[0], "dimension")
                return Coe(x, self.term(ty, dbound | {x}, tbound), d(args[1]), d(args[2]), t(args[3]))
            case "hcom":
                arity(7)
                y0, body0 = self.binder(args[5], "dimension")
                y1, body1 = self.binder(args[6], "dimension")
                n0 = self.term(body0, dbound | {y0}, tbound)
                n1 = self.term(body1, dbound | {y1}, tbound)
                y = y0
                if y1 != y0:
                    # unify the two tube binders under one name
                    y = y0 if y0 not in fd(n1) else fresh_name(y0, fd(n0) | fd(n1) | {y1})
                    n0, n1 = dsubst(n0, y, y0), dsubst(n1, y, y1)
                return Hcom(d(args[0]), t(args[1]), d(args[2]), d(args[3]), t(args[4]), y, n0, n1)
        raise ParseError(f"unknown form '{kw}'", head.span)


def parse_sexpr(sx: Sexpr, dims: Optional[frozenset] = None,
                term_vars: Optional[frozenset] = None) -> Term:
    """Convert one s-expression to a term.

    ``dims``/``term_vars`` of ``None`` accept any free name; otherwise free
    names must come from the given sets.
    """
    return _Parser(dims, term_vars).term(sx, frozenset(), frozenset())


def parse_dim(sx: Sexpr, dims: Optional[frozenset] = None):
    return _Parser(dims, None).dim(sx, frozenset())


def parse(text: str, file: str = "<input>") -> Term:
    """Parse a single term; free names are allowed."""
    sxs = read_all(text, file)
    if len(sxs) != 1:
        span = sxs[1].span if sxs else SourceSpan(file, 1, 1, 1)
        raise ParseError(f"expected exactly one term, found {len(sxs)}", span)
    return parse_sexpr(sxs[0])


@dataclass(frozen=True)
class SourceFile:
    dims: Optional[tuple]  # declared context, or None without a header
    forms: tuple


def read_file_text(text: str, file: str = "<input>") -> SourceFile:
    sxs = read_all(text, file)
    dims = None
    if sxs and isinstance(sxs[0], SList) and sxs[0].items and isinstance(sxs[0].items[0], Atom) \
            and sxs[0].items[0].text == "dim":
        names = [_ident(a, "a dimension name") for a in sxs[0].items[1:]]
        if len(set(names)) != len(names):
            raise ParseError("duplicate dimension name in header", sxs[0].span)
        dims = tuple(names)
        sxs = sxs[1:]
    return SourceFile(dims, tuple(sxs))


def parse_terms(text: str, file: str = "<input>"):
    """Parse a term file: ``(dims, [terms])``.  Terms must be closed for term variables."""
    src = read_file_text(text, file)
    allowed = frozenset(src.dims) if src.dims is not None else None
    terms = [parse_sexpr(sx, allowed, frozenset()) for sx in src.forms]
    if not terms:
        raise ParseError("no term in file", SourceSpan(file, 1, 1, 1))
    return src.dims, terms


# ---------------------------------------------------------------------------
# printer


def _dimtext(r) -> str:
    return str(r)


def _ok_name(name: str) -> bool:
    return name not in KEYWORDS and _IDENT.fullmatch(name) is not None


def _pick(name: str, taken: frozenset) -> str:
    if _ok_name(name) and name not in taken:
        return name
    base = name if _ok_name(name) else "v"
    return fresh_name(base if base not in ("0", "1") else "v", taken | KEYWORDS)


def pretty(m: Term) -> str:
    """Canonical rendering.  Bound names that shadow a name in scope are freshened."""
    return _pp(m, frozenset(fd(m)), frozenset(ftv(m)), {}, {})


def _pp(m: Term, dscope: frozenset, tscope: frozenset, dren: dict, tren: dict) -> str:
    def p(n):
        return _pp(n, dscope, tscope, dren, tren)

    def dm(r):
        return _dimtext(dren.get(r, r) if is_name(r) else r)

    def dbind(x: str, bodies):
        x2 = _pick(x, dscope)
        inner = dict(dren)
        inner[x] = x2
        return x2, [_pp(b, dscope | {x2}, tscope, inner, tren) for b in bodies]

    match m:
        case Bool():
            return "bool"
        case S1():
            return "S1"
        case Tt():
            return "true"
        case Ff():
            return "false"
        case Base():
            return "base"
        case Var(a):
            return tren.get(a, a)
        case Arr(a, b):
            return f"(arr {p(a)} {p(b)})"
        case Prd(a, b):
            return f"(prd {p(a)} {p(b)})"
        case NotB(r):
            return f"(notb {dm(r)})"
        case Loop(r):
            return f"(loop {dm(r)})"
        case NotEl(r, a):
            return f"(notel {dm(r)} {p(a)})"
        case Lam(a, body):
            a2 = _pick(a, tscope)
            inner = dict(tren)
            inner[a] = a2
            return f"(lam [{a2} {_pp(body, dscope, tscope | {a2}, dren, inner)}])"
        case App(f, a):
            return f"(app {p(f)} {p(a)})"
        case Pair(a, b):
            return f"(pair {p(a)} {p(b)})"
        case Fst(a):
            return f"(fst {p(a)})"
        case Snd(a):
            return f"(snd {p(a)})"
        case If(a, s, t, f):
            return f"(if {p(a)} {p(s)} {p(t)} {p(f)})"
        case S1Elim(a, s, pt, x, line):
            x2, (body,) = dbind(x, (line,))
            return f"(S1-elim {p(a)} {p(s)} {p(pt)} [{x2} {body}])"
        case Coe(x, ty, r, r2, a):
            x2, (body,) = dbind(x, (ty,))
            return f"(coe [{x2} {body}] {dm(r)} {dm(r2)} {p(a)})"
        case Hcom(e, ty, r, r2, cap, y, t0, t1):
            y2, (b0, b1) = dbind(y, (t0, t1))
            return f"(hcom {dm(e)} {p(ty)} {dm(r)} {dm(r2)} {p(cap)} [{y2} {b0}] [{y2} {b1}])"
    raise TypeError(f"not a term: {m!r}")
