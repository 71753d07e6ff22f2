"""Deterministic weak-head small-step evaluation.

Every transition carries a rule id (see :data:`RULES`).  Rules can be switched
off with :func:`disabled_rules`, which the mutation tests use to show that the
law suites constrain the evaluator.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from typing import Optional

from chtt.syntax import (
    BASE, BOOL, App, Arr, Base, Bool, Coe, Ff, Fst, Hcom, If, Lam, Loop, NotB, NotEl,
    Pair, Prd, S1, S1Elim, Snd, Term, Tt, Var, dsubst, expand_not, fd, fresh_name, ftv,
    is_const, is_name, tsubst,
)

DEFAULT_FUEL = 100_000

RULES = (
    "notb-eps",
    "coe-ty-cong", "hcom-ty-cong",
    "app-cong", "app-beta", "hcom-arr", "coe-arr",
    "fst-cong", "snd-cong", "fst-beta", "snd-beta", "hcom-prd", "coe-prd",
    "hcom-bool-eps", "hcom-bool-cap", "if-cong", "if-true", "if-false", "if-hcom", "coe-bool",
    "hcom-s1-eps", "hcom-s1-cap", "loop-eps", "s1elim-cong", "s1elim-base", "s1elim-loop",
    "s1elim-hcom", "coe-s1",
    "notel-0", "notel-1", "coe-not-flip", "coe-not-refl", "coe-not-0x", "coe-not-1x",
    "coe-not-cong", "coe-not-notel", "coe-not-other", "hcom-not",
)

_disabled: frozenset = frozenset()


@contextlib.contextmanager
def disabled_rules(*rules: str):
    """Temporarily remove rules from the evaluator."""
    global _disabled
    unknown = set(rules) - set(RULES)
    if unknown:
        raise ValueError(f"unknown rules {sorted(unknown)}")
    saved = _disabled
    _disabled = saved | frozenset(rules)
    try:
        yield
    finally:
        _disabled = saved


def active_mutations() -> frozenset:
    return _disabled


@dataclass(frozen=True)
class Stepped:
    next: Term
    rule: str


@dataclass(frozen=True)
class IsValue:
    pass


@dataclass(frozen=True)
class Stuck:
    reason: str


StepResult = Stepped | IsValue | Stuck


class EvalError(Exception):
    pass


class EvalStuck(EvalError):
    def __init__(self, term: Term, reason: str):
        super().__init__(f"stuck: {reason}")
        self.term = term
        self.reason = reason


class FuelExhausted(EvalError):
    def __init__(self, prefix: list, fuel: int):
        super().__init__(f"fuel exhausted after {fuel} steps")
        self.prefix = prefix
        self.fuel = fuel


class _StuckAt(Exception):
    pass


def is_val(m: Term) -> bool:
    match m:
        case Arr() | Prd() | Bool() | S1() | Lam() | Pair() | Tt() | Ff() | Base():
            return True
        case NotB(r) | Loop(r) | NotEl(r, _):
            return is_name(r)
        case Hcom(e, ty, r, r2):
            return is_name(e) and r != r2 and isinstance(ty, (Bool, S1))
        case _:
            return False


def _fire(rule: str, result: Term):
    if rule in _disabled:
        raise _StuckAt(f"rule {rule} is disabled")
    return result, rule


def _head(m: Term) -> str:
    return type(m).__name__


def _sub(m: Term, where: str):
    """Step a principal argument; values in principal position are stuck."""
    if is_val(m):
        raise _StuckAt(f"{where}: no rule for value with head {_head(m)}")
    return _step(m)


def _fresh_var(*terms: Term) -> str:
    return fresh_name("a", frozenset().union(*(ftv(t) for t in terms)))


def _avoiding(y: str, tubes: tuple, avoid: frozenset):
    """Rename the tube binder ``y`` away from ``avoid``."""
    if y not in avoid:
        return y, tubes
    y2 = fresh_name(y, avoid | frozenset().union(*(fd(t) for t in tubes)))
    return y2, tuple(dsubst(t, y2, y) for t in tubes)


def _step(m: Term):
    match m:
        case NotB(r) if is_const(r):
            return _fire("notb-eps", BOOL)
        case Loop(r) if is_const(r):
            return _fire("loop-eps", BASE)
        case NotEl(0, a):
            return _fire("notel-0", expand_not(a))
        case NotEl(1, a):
            return _fire("notel-1", a)

        case App(Lam(a, body), arg):
            return _fire("app-beta", tsubst(body, arg, a))
        case App(f, arg):
            f2, rule = _sub(f, "app")
            return _fire("app-cong", App(f2, arg))

        case Fst(Pair(left, _)):
            return _fire("fst-beta", left)
        case Fst(p):
            p2, _ = _sub(p, "fst")
            return _fire("fst-cong", Fst(p2))
        case Snd(Pair(_, right)):
            return _fire("snd-beta", right)
        case Snd(p):
            p2, _ = _sub(p, "snd")
            return _fire("snd-cong", Snd(p2))

        case If(_, Tt(), t, _):
            return _fire("if-true", t)
        case If(_, Ff(), _, f):
            return _fire("if-false", f)
        case If(a, Hcom(x, Bool(), r, r2, cap, y, n0, n1) as h, t, f) if is_val(h):
            avoid = fd(a) | fd(t) | fd(f)
            y, (n0, n1) = _avoiding(y, (n0, n1), avoid)
            return _fire("if-hcom", Hcom(x, a, r, r2, If(a, cap, t, f), y, If(a, n0, t, f), If(a, n1, t, f)))
        case If(a, s, t, f):
            s2, _ = _sub(s, "if")
            return _fire("if-cong", If(a, s2, t, f))

        case S1Elim(_, Base(), p, _, _):
            return _fire("s1elim-base", p)
        case S1Elim(_, Loop(w), _, z, line) if is_name(w):
            return _fire("s1elim-loop", dsubst(line, w, z))
        case S1Elim(a, Hcom(x, S1(), r, r2, cap, y, n0, n1) as h, p, z, line) if is_val(h):
            rest = S1Elim(a, BASE, p, z, line)
            y, (n0, n1) = _avoiding(y, (n0, n1), fd(rest))

            def elim(s):
                return S1Elim(a, s, p, z, line)

            return _fire("s1elim-hcom", Hcom(x, a, r, r2, elim(cap), y, elim(n0), elim(n1)))
        case S1Elim(a, s, p, z, line):
            s2, _ = _sub(s, "S1-elim")
            return _fire("s1elim-cong", S1Elim(a, s2, p, z, line))

        case Coe(x, ty, r, r2, arg):
            return _step_coe(m, x, ty, r, r2, arg)
        case Hcom(e, ty, r, r2, cap, y, n0, n1):
            return _step_hcom(m, e, ty, r, r2, cap, y, n0, n1)

        case Var(a):
            raise _StuckAt(f"free term variable {a}")
        case _:
            raise _StuckAt(f"no rule for {_head(m)}")


def _step_coe(m, x, ty, r, r2, arg):
    if not is_val(ty):
        ty2, _ = _step(ty)
        return _fire("coe-ty-cong", Coe(x, ty2, r, r2, arg))
    match ty:
        case Arr(a, b):
            v = _fresh_var(m)
            return _fire("coe-arr", Lam(v, Coe(x, b, r, r2, App(arg, Coe(x, a, r2, r, Var(v))))))
        case Prd(a, b):
            return _fire("coe-prd", Pair(Coe(x, a, r, r2, Fst(arg)), Coe(x, b, r, r2, Snd(arg))))
        case Bool():
            return _fire("coe-bool", arg)
        case S1():
            return _fire("coe-s1", arg)
        case NotB(w) if w != x:
            return _fire("coe-not-other", arg)
        case NotB(_):
            if is_const(r) and is_const(r2):
                if r == r2:
                    return _fire("coe-not-refl", arg)
                return _fire("coe-not-flip", expand_not(arg))
            if r == 0:
                return _fire("coe-not-0x", NotEl(r2, expand_not(arg)))
            if r == 1:
                return _fire("coe-not-1x", NotEl(r2, arg))
            # the starting dimension is a name: the argument is principal
            if not is_val(arg):
                arg2, _ = _step(arg)
                return _fire("coe-not-cong", Coe(x, ty, r, r2, arg2))
            if isinstance(arg, NotEl) and arg.r == r:
                return _fire("coe-not-notel", NotEl(r2, arg.arg))
            raise _StuckAt(f"coe along notb from {r}: argument {_head(arg)} is not notel {r}")
        case _:
            raise _StuckAt(f"coe along a non-type {_head(ty)}")


def _step_hcom(m, e, ty, r, r2, cap, y, n0, n1):
    if not is_val(ty):
        ty2, _ = _step(ty)
        return _fire("hcom-ty-cong", Hcom(e, ty2, r, r2, cap, y, n0, n1))
    match ty:
        case Arr(_, b):
            v = _fresh_var(m)
            a = Var(v)
            return _fire("hcom-arr", Lam(v, Hcom(e, b, r, r2, App(cap, a), y, App(n0, a), App(n1, a))))
        case Prd(a, b):
            return _fire("hcom-prd", Pair(
                Hcom(e, a, r, r2, Fst(cap), y, Fst(n0), Fst(n1)),
                Hcom(e, b, r, r2, Snd(cap), y, Snd(n0), Snd(n1)),
            ))
        case Bool() | S1():
            kind = "bool" if isinstance(ty, Bool) else "s1"
            if is_const(e):
                return _fire(f"hcom-{kind}-eps", dsubst(n0 if e == 0 else n1, r2, y))
            if r == r2:
                return _fire(f"hcom-{kind}-cap", cap)
            raise _StuckAt("hcom value")  # unreachable: is_val catches it
        case NotB(w):
            y, (n0, n1) = _avoiding(y, (n0, n1), frozenset((w,)))

            def back(t):
                return Coe("x", NotB("x"), w, 1, t)

            return _fire("hcom-not", NotEl(w, Hcom(e, BOOL, r, r2, back(cap), y, back(n0), back(n1))))
        case _:
            raise _StuckAt(f"hcom at a non-type {_head(ty)}")


def step(m: Term) -> StepResult:
    if is_val(m):
        return IsValue()
    try:
        nxt, rule = _step(m)
    except _StuckAt as exc:
        return Stuck(str(exc))
    return Stepped(nxt, rule)


def eval_term(m: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Evaluate to a value; raise :class:`EvalStuck` or :class:`FuelExhausted`."""
    prefix = []
    cur = m
    for _ in range(fuel):
        if is_val(cur):
            return cur
        if len(prefix) < 16:
            prefix.append(cur)
        try:
            cur, _ = _step(cur)
        except _StuckAt as exc:
            raise EvalStuck(cur, str(exc)) from None
    if is_val(cur):
        return cur
    raise FuelExhausted(prefix, fuel)


VALUE, FUEL, STUCK = "value", "fuel-exhausted", "stuck"


@dataclass
class Trace:
    steps: list
    verdict: str
    rules: list = field(default_factory=list)
    reason: Optional[str] = None

    @property
    def final(self) -> Term:
        return self.steps[-1]


def trace(m: Term, fuel: int = DEFAULT_FUEL) -> Trace:
    steps, rules = [m], []
    for _ in range(fuel + 1):
        res = step(steps[-1])
        match res:
            case IsValue():
                return Trace(steps, VALUE, rules)
            case Stuck(reason):
                return Trace(steps, STUCK, rules, reason)
            case Stepped(nxt, rule):
                if len(rules) == fuel:
                    return Trace(steps, FUEL, rules, f"no value within {fuel} steps")
                steps.append(nxt)
                rules.append(rule)
    raise AssertionError("unreachable")
