"""Terms, dimensions, dimension substitutions and binder handling.

Dimensions are ``0``, ``1`` or a name (a plain ``str``).  Term variables are
also strings; the two namespaces never mix because every position in a term
is either a dimension position or a term position.

Binders are named.  Substitution renames a binder whenever it would capture
a free name of the substituted material, so every operation here is
capture-avoiding and the observable contract is :func:`alpha_eq`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

Dim = Union[int, str]
DimCtx = tuple  # ordered tuple of distinct dimension names


def is_name(r: Dim) -> bool:
    return isinstance(r, str)


def is_const(r: Dim) -> bool:
    return not isinstance(r, str)


def opposite(e: int) -> int:
    if e not in (0, 1):
        raise ValueError(f"not a dimension constant: {e!r}")
    return 1 - e


def dim_ctx(*names: str) -> DimCtx:
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate names in dimension context {names}")
    return tuple(names)


_SUFFIX = re.compile(r"^(.*?)(\d*)$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Return ``base`` or a numbered variant of it that is not in ``avoid``."""
    avoid = set(avoid)
    if base not in avoid:
        return base
    stem = _SUFFIX.match(base).group(1) or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        from chtt.parse import pretty

        return pretty(self)


@dataclass(frozen=True, slots=True)
class Arr(Term):
    dom: Term
    cod: Term


@dataclass(frozen=True, slots=True)
class Prd(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Bool(Term):
    pass


@dataclass(frozen=True, slots=True)
class NotB(Term):
    r: Dim


@dataclass(frozen=True, slots=True)
class S1(Term):
    pass


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Lam(Term):
    var: str
    body: Term


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Tt(Term):
    pass


@dataclass(frozen=True, slots=True)
class Ff(Term):
    pass


@dataclass(frozen=True, slots=True)
class If(Term):
    motive: Term
    scrut: Term
    tt: Term
    ff: Term


@dataclass(frozen=True, slots=True)
class NotEl(Term):
    r: Dim
    arg: Term


@dataclass(frozen=True, slots=True)
class Base(Term):
    pass


@dataclass(frozen=True, slots=True)
class Loop(Term):
    r: Dim


@dataclass(frozen=True, slots=True)
class S1Elim(Term):
    """``S1-elim`` with motive, scrutinee, point case and a ``x.line`` case."""

    motive: Term
    scrut: Term
    point: Term
    x: str
    line: Term


@dataclass(frozen=True, slots=True)
class Coe(Term):
    """Coercion along the type line ``x.ty`` from ``src`` to ``dst``."""

    x: str
    ty: Term
    src: Dim
    dst: Dim
    arg: Term


@dataclass(frozen=True, slots=True)
class Hcom(Term):
    """Homogeneous composition; ``y`` binds in both tubes."""

    extent: Dim
    ty: Term
    src: Dim
    dst: Dim
    cap: Term
    y: str
    tube0: Term
    tube1: Term

    def tube(self, e: int) -> Term:
        return self.tube0 if e == 0 else self.tube1


BOOL = Bool()
S1_TY = S1()
TRUE = Tt()
FALSE = Ff()
BASE = Base()


def expand_not(m: Term) -> Term:
    return If(BOOL, m, FALSE, TRUE)


# ---------------------------------------------------------------------------
# free names


def fd(m: Term) -> frozenset:
    """Free dimension names of ``m``."""
    out: set = set()
    _fd(m, out)
    return frozenset(out)


def _fd(m: Term, out: set) -> None:
    match m:
        case NotB(r) | Loop(r):
            if is_name(r):
                out.add(r)
        case NotEl(r, a):
            if is_name(r):
                out.add(r)
            _fd(a, out)
        case Arr(a, b) | Prd(a, b) | App(a, b) | Pair(a, b):
            _fd(a, out)
            _fd(b, out)
        case Lam(_, a) | Fst(a) | Snd(a):
            _fd(a, out)
        case If(a, s, t, f):
            for sub in (a, s, t, f):
                _fd(sub, out)
        case S1Elim(a, s, p, x, line):
            _fd(a, out)
            _fd(s, out)
            _fd(p, out)
            out.update(fd(line) - {x})
        case Coe(x, ty, r, r2, a):
            out.update(fd(ty) - {x})
            out.update(d for d in (r, r2) if is_name(d))
            _fd(a, out)
        case Hcom(e, ty, r, r2, cap, y, t0, t1):
            out.update(d for d in (e, r, r2) if is_name(d))
            _fd(ty, out)
            _fd(cap, out)
            out.update((fd(t0) | fd(t1)) - {y})
        case _:
            pass


def ftv(m: Term) -> frozenset:
    """Free term variables of ``m``."""
    match m:
        case Var(a):
            return frozenset((a,))
        case Lam(a, body):
            return ftv(body) - {a}
        case Arr(a, b) | Prd(a, b) | App(a, b) | Pair(a, b):
            return ftv(a) | ftv(b)
        case Fst(a) | Snd(a) | NotEl(_, a):
            return ftv(a)
        case If(a, s, t, f):
            return ftv(a) | ftv(s) | ftv(t) | ftv(f)
        case S1Elim(a, s, p, _, line):
            return ftv(a) | ftv(s) | ftv(p) | ftv(line)
        case Coe(_, ty, _, _, a):
            return ftv(ty) | ftv(a)
        case Hcom(_, ty, _, _, cap, _, t0, t1):
            return ftv(ty) | ftv(cap) | ftv(t0) | ftv(t1)
        case _:
            return frozenset()


def size(m: Term) -> int:
    """Number of term nodes (dimensions are not counted)."""
    match m:
        case Arr(a, b) | Prd(a, b) | App(a, b) | Pair(a, b):
            return 1 + size(a) + size(b)
        case Lam(_, a) | Fst(a) | Snd(a) | NotEl(_, a):
            return 1 + size(a)
        case If(a, s, t, f):
            return 1 + size(a) + size(s) + size(t) + size(f)
        case S1Elim(a, s, p, _, line):
            return 1 + size(a) + size(s) + size(p) + size(line)
        case Coe(_, ty, _, _, a):
            return 1 + size(ty) + size(a)
        case Hcom(_, ty, _, _, cap, _, t0, t1):
            return 1 + size(ty) + size(cap) + size(t0) + size(t1)
        case _:
            return 1


def subterms(m: Term):
    """Immediate subterms, binder bodies included."""
    match m:
        case Arr(a, b) | Prd(a, b) | App(a, b) | Pair(a, b):
            return (a, b)
        case Lam(_, a) | Fst(a) | Snd(a) | NotEl(_, a):
            return (a,)
        case If(a, s, t, f):
            return (a, s, t, f)
        case S1Elim(a, s, p, _, line):
            return (a, s, p, line)
        case Coe(_, ty, _, _, a):
            return (ty, a)
        case Hcom(_, ty, _, _, cap, _, t0, t1):
            return (ty, cap, t0, t1)
        case _:
            return ()


# ---------------------------------------------------------------------------
# dimension substitution


def _dim(r: Dim, s: Mapping[str, Dim]) -> Dim:
    if is_name(r):
        return s.get(r, r)
    return r


def _under_dim_binder(x: str, bodies: tuple, s: Mapping[str, Dim]):
    """Push ``s`` under the dimension binder ``x`` scoping ``bodies``."""
    inner = {k: v for k, v in s.items() if k != x}
    if not inner:
        return x, bodies
    if x in inner.values():
        free = frozenset().union(*(fd(b) for b in bodies)) - {x}
        if any(inner.get(k) == x for k in free):
            avoid = set(free) | {v for v in inner.values() if is_name(v)} | set(inner)
            x2 = fresh_name(x, avoid)
            inner[x] = x2
            return x2, tuple(_sd(b, inner) for b in bodies)
    return x, tuple(_sd(b, inner) for b in bodies)


def _sd(m: Term, s: Mapping[str, Dim]) -> Term:
    match m:
        case NotB(r):
            return NotB(_dim(r, s))
        case Loop(r):
            return Loop(_dim(r, s))
        case NotEl(r, a):
            return NotEl(_dim(r, s), _sd(a, s))
        case Arr(a, b):
            return Arr(_sd(a, s), _sd(b, s))
        case Prd(a, b):
            return Prd(_sd(a, s), _sd(b, s))
        case App(a, b):
            return App(_sd(a, s), _sd(b, s))
        case Pair(a, b):
            return Pair(_sd(a, s), _sd(b, s))
        case Lam(v, a):
            return Lam(v, _sd(a, s))
        case Fst(a):
            return Fst(_sd(a, s))
        case Snd(a):
            return Snd(_sd(a, s))
        case If(a, c, t, f):
            return If(_sd(a, s), _sd(c, s), _sd(t, s), _sd(f, s))
        case S1Elim(a, c, p, x, line):
            x2, (line2,) = _under_dim_binder(x, (line,), s)
            return S1Elim(_sd(a, s), _sd(c, s), _sd(p, s), x2, line2)
        case Coe(x, ty, r, r2, a):
            x2, (ty2,) = _under_dim_binder(x, (ty,), s)
            return Coe(x2, ty2, _dim(r, s), _dim(r2, s), _sd(a, s))
        case Hcom(e, ty, r, r2, cap, y, t0, t1):
            y2, (u0, u1) = _under_dim_binder(y, (t0, t1), s)
            return Hcom(_dim(e, s), _sd(ty, s), _dim(r, s), _dim(r2, s), _sd(cap, s), y2, u0, u1)
        case _:
            return m


def subst_dims(m: Term, s: Mapping[str, Dim]) -> Term:
    """Simultaneous capture-avoiding substitution; unmapped names are kept."""
    if not s:
        return m
    return _sd(m, s)


def dsubst(m: Term, r: Dim, x: str) -> Term:
    """``m`` with ``r`` for the free dimension name ``x``."""
    if r == x:
        return m
    return _sd(m, {x: r})


# ---------------------------------------------------------------------------
# term substitution


def _under_term_binder(a: str, body: Term, s: Mapping[str, Term]):
    inner = {k: v for k, v in s.items() if k != a}
    if not inner:
        return a, body
    free = ftv(body)
    inner = {k: v for k, v in inner.items() if k in free}
    if not inner:
        return a, body
    captured = frozenset().union(*(ftv(v) for v in inner.values()))
    if a in captured:
        a2 = fresh_name(a, captured | free | set(inner))
        inner[a] = Var(a2)
        return a2, _st(body, inner)
    return a, _st(body, inner)


def _st_dim_binder(x: str, bodies: tuple, s: Mapping[str, Term]):
    # term substitution crossing a dimension binder must not capture the
    # substituted terms' free dimension names
    relevant = frozenset().union(*(ftv(b) for b in bodies)) & set(s)
    if not relevant:
        return x, bodies
    names = frozenset().union(*(fd(s[k]) for k in relevant))
    if x in names:
        free = frozenset().union(*(fd(b) for b in bodies))
        x2 = fresh_name(x, names | free)
        bodies = tuple(dsubst(b, x2, x) for b in bodies)
        x = x2
    return x, tuple(_st(b, s) for b in bodies)


def _st(m: Term, s: Mapping[str, Term]) -> Term:
    match m:
        case Var(a):
            return s.get(a, m)
        case Lam(a, body):
            a2, body2 = _under_term_binder(a, body, s)
            return Lam(a2, body2)
        case Arr(a, b):
            return Arr(_st(a, s), _st(b, s))
        case Prd(a, b):
            return Prd(_st(a, s), _st(b, s))
        case App(a, b):
            return App(_st(a, s), _st(b, s))
        case Pair(a, b):
            return Pair(_st(a, s), _st(b, s))
        case Fst(a):
            return Fst(_st(a, s))
        case Snd(a):
            return Snd(_st(a, s))
        case NotEl(r, a):
            return NotEl(r, _st(a, s))
        case If(a, c, t, f):
            return If(_st(a, s), _st(c, s), _st(t, s), _st(f, s))
        case S1Elim(a, c, p, x, line):
            x2, (line2,) = _st_dim_binder(x, (line,), s)
            return S1Elim(_st(a, s), _st(c, s), _st(p, s), x2, line2)
        case Coe(x, ty, r, r2, a):
            x2, (ty2,) = _st_dim_binder(x, (ty,), s)
            return Coe(x2, ty2, r, r2, _st(a, s))
        case Hcom(e, ty, r, r2, cap, y, t0, t1):
            y2, (u0, u1) = _st_dim_binder(y, (t0, t1), s)
            return Hcom(e, _st(ty, s), r, r2, _st(cap, s), y2, u0, u1)
        case _:
            return m


def subst_terms(m: Term, s: Mapping[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution of terms for variables."""
    if not s:
        return m
    return _st(m, s)


def tsubst(m: Term, n: Term, a: str) -> Term:
    """``m`` with ``n`` for the free term variable ``a``."""
    return _st(m, {a: n})


# ---------------------------------------------------------------------------
# alpha-equivalence


def alpha_key(m: Term):
    """A hashable key that identifies ``m`` up to renaming of bound names."""
    return _key(m, (), ())


def _dkey(r: Dim, denv: tuple):
    if is_name(r):
        for i in range(len(denv) - 1, -1, -1):
            if denv[i] == r:
                return ("b", len(denv) - 1 - i)
        return ("f", r)
    return r


def _key(m: Term, tenv: tuple, denv: tuple):
    match m:
        case Var(a):
            for i in range(len(tenv) - 1, -1, -1):
                if tenv[i] == a:
                    return ("var", len(tenv) - 1 - i)
            return ("fvar", a)
        case Lam(a, body):
            return ("lam", _key(body, tenv + (a,), denv))
        case NotB(r):
            return ("notb", _dkey(r, denv))
        case Loop(r):
            return ("loop", _dkey(r, denv))
        case NotEl(r, a):
            return ("notel", _dkey(r, denv), _key(a, tenv, denv))
        case S1Elim(a, c, p, x, line):
            return ("s1elim", _key(a, tenv, denv), _key(c, tenv, denv), _key(p, tenv, denv),
                    _key(line, tenv, denv + (x,)))
        case Coe(x, ty, r, r2, a):
            return ("coe", _key(ty, tenv, denv + (x,)), _dkey(r, denv), _dkey(r2, denv),
                    _key(a, tenv, denv))
        case Hcom(e, ty, r, r2, cap, y, t0, t1):
            inner = denv + (y,)
            return ("hcom", _dkey(e, denv), _key(ty, tenv, denv), _dkey(r, denv), _dkey(r2, denv),
                    _key(cap, tenv, denv), _key(t0, tenv, inner), _key(t1, tenv, inner))
        case _:
            subs = subterms(m)
            if not subs:
                return type(m).__name__
            return (type(m).__name__,) + tuple(_key(t, tenv, denv) for t in subs)


def alpha_eq(m: Term, n: Term) -> bool:
    return m is n or alpha_key(m) == alpha_key(n)


# ---------------------------------------------------------------------------
# total dimension substitutions


class SubstitutionError(ValueError):
    pass


@dataclass(frozen=True)
class DimSubst:
    """A total substitution ``source -> target``: each source name gets a dimension
    that is ``0``, ``1`` or a name of ``target``."""

    source: DimCtx
    target: DimCtx
    pairs: tuple

    @classmethod
    def make(cls, source: Iterable[str], target: Iterable[str], mapping: Mapping[str, Dim]) -> "DimSubst":
        source = dim_ctx(*source)
        target = dim_ctx(*target)
        if set(mapping) != set(source):
            raise SubstitutionError(f"substitution must map exactly {source}, got {sorted(mapping)}")
        for k, v in mapping.items():
            if is_name(v):
                if v not in target:
                    raise SubstitutionError(f"image {v} of {k} is not in target {target}")
            elif v not in (0, 1):
                raise SubstitutionError(f"bad dimension {v!r}")
        return cls(source, target, tuple((k, mapping[k]) for k in source))

    @classmethod
    def identity(cls, ctx: Iterable[str]) -> "DimSubst":
        ctx = dim_ctx(*ctx)
        return cls(ctx, ctx, tuple((x, x) for x in ctx))

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def __call__(self, r: Dim) -> Dim:
        if is_name(r):
            for k, v in self.pairs:
                if k == r:
                    return v
            raise SubstitutionError(f"{r} is not in the source {self.source}")
        return r

    def is_identity(self) -> bool:
        return self.source == self.target and all(k == v for k, v in self.pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "-"
        return ",".join(f"{k}={v}" for k, v in self.pairs)


def apply_subst(m: Term, psi: DimSubst) -> Term:
    extra = fd(m) - set(psi.source)
    if extra:
        raise SubstitutionError(f"free names {sorted(extra)} are not mapped by {psi}")
    return subst_dims(m, {k: v for k, v in psi.pairs if k != v})


def compose_subst(psi1: DimSubst, psi2: DimSubst) -> DimSubst:
    """Diagrammatic composite: first ``psi1``, then ``psi2``."""
    if psi1.target != psi2.source and set(psi1.target) != set(psi2.source):
        raise SubstitutionError(f"cannot compose: {psi1.target} vs {psi2.source}")
    return DimSubst(psi1.source, psi2.target, tuple((k, psi2(v)) for k, v in psi1.pairs))
