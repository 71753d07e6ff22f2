"""Random generation of well-typed terms, Kan instances, and a shrinker.

Terms are built goal-first by reading the typing rules backwards:
introductions, eliminations with generated sub-derivations, coercions along
constant lines or ``x.notb(x)``, and compositions whose tubes meet the cap by
construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from chtt.syntax import (
    BASE, BOOL, FALSE, S1_TY, TRUE, App, Arr, Base, Bool, Coe, Ff, Fst, Hcom, If, Lam, Loop,
    NotB, NotEl, Pair, Prd, S1, S1Elim, Snd, Term, Tt, Var, alpha_key, dsubst, fresh_name,
    is_const, is_name, size, subterms,
)

DEFAULT_WEIGHTS = {"intro": 3, "var": 3, "elim": 3, "coe": 2, "hcom": 2}


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    size: int = 20
    dim_budget: int = 2
    type_weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))


class GenError(Exception):
    pass


def normalize_type(a: Term) -> Term:
    """Replace ``notb(0)``/``notb(1)`` by ``bool``, the pretype they name."""
    match a:
        case NotB(r) if is_const(r):
            return BOOL
        case Prd(l, r):
            return Prd(normalize_type(l), normalize_type(r))
        case Arr(l, r):
            return Arr(normalize_type(l), normalize_type(r))
    return a


def _same(a: Term, b: Term) -> bool:
    return alpha_key(normalize_type(a)) == alpha_key(normalize_type(b))


def intro(goal: Term) -> Term:
    """The smallest canonical inhabitant of ``goal``."""
    match normalize_type(goal):
        case Bool():
            return TRUE
        case S1():
            return BASE
        case NotB(w):
            return NotEl(w, TRUE)
        case Prd(a, b):
            return Pair(intro(a), intro(b))
        case Arr(_, b):
            return Lam("a", intro(b))
    raise GenError(f"no introduction for {goal}")


class Generator:
    def __init__(self, cfg: GenConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)

    # -- helpers ------------------------------------------------------------

    def _dim(self, ctx: tuple):
        return self.rng.choice((0, 1) + ctx)

    def _small_type(self, ctx: tuple) -> Term:
        opts = [BOOL, BOOL, S1_TY, Prd(BOOL, BOOL), Arr(BOOL, BOOL), Prd(S1_TY, BOOL)]
        opts += [NotB(w) for w in ctx]
        return self.rng.choice(opts)

    def _schema(self, goal: Term, gamma: tuple, budget: int) -> str:
        weights = dict(self.cfg.type_weights)
        if budget <= 2:
            weights = {k: w for k, w in weights.items() if k in ("intro", "var")}
        if not any(_same(t, goal) for _, t in gamma):
            weights.pop("var", None)
        names = list(weights)
        if not names or sum(weights.values()) <= 0:
            return "intro"
        return self.rng.choices(names, [weights[n] for n in names])[0]

    # -- entry --------------------------------------------------------------

    def term(self, goal: Term, ctx: tuple = (), gamma: tuple = ()) -> Term:
        for _ in range(20):
            m = self._gen(normalize_type(goal), tuple(ctx), tuple(gamma), self.cfg.size)
            if size(m) <= self.cfg.size:
                return m
        return intro(goal)

    def _gen(self, goal: Term, ctx: tuple, gamma: tuple, budget: int) -> Term:
        match self._schema(goal, gamma, budget):
            case "var":
                return Var(self.rng.choice([v for v, t in gamma if _same(t, goal)]))
            case "elim":
                return self._elim(goal, ctx, gamma, budget - 1)
            case "coe":
                return self._coe(goal, ctx, gamma, budget - 1)
            case "hcom":
                return self._hcom(goal, ctx, gamma, budget - 1)
        return self._intro(goal, ctx, gamma, budget - 1)

    def _intro(self, goal: Term, ctx, gamma, budget) -> Term:
        half = max(budget // 2, 1)
        match goal:
            case Bool():
                return self.rng.choice((TRUE, FALSE))
            case S1():
                if self.rng.random() < 0.5:
                    return BASE
                return Loop(self._dim(ctx))
            case NotB(w):
                return NotEl(w, self._gen(BOOL, ctx, gamma, budget))
            case Prd(a, b):
                return Pair(self._gen(a, ctx, gamma, half), self._gen(normalize_type(b), ctx, gamma, half))
            case Arr(a, b):
                var = fresh_name("a", {v for v, _ in gamma})
                return Lam(var, self._gen(b, ctx, gamma + ((var, a),), budget))
        raise GenError(f"cannot introduce {goal}")

    def _elim(self, goal: Term, ctx, gamma, budget) -> Term:
        third = max(budget // 3, 1)
        kinds = ["app", "fst", "snd", "if", "s1elim"]
        if isinstance(goal, Bool):
            kinds.append("notel")
        kind = self.rng.choice(kinds)
        match kind:
            case "app":
                a = self._small_type(ctx)
                return App(self._gen(Arr(a, goal), ctx, gamma, budget // 2), self._gen(normalize_type(a), ctx, gamma, budget // 2))
            case "fst":
                return Fst(self._gen(Prd(goal, self._small_type(ctx)), ctx, gamma, budget))
            case "snd":
                return Snd(self._gen(Prd(self._small_type(ctx), goal), ctx, gamma, budget))
            case "notel":
                return NotEl(self.rng.choice((0, 1)), self._gen(BOOL, ctx, gamma, budget))
            case "if":
                return If(goal, self._gen(BOOL, ctx, gamma, third), self._gen(goal, ctx, gamma, third),
                          self._gen(goal, ctx, gamma, third))
            case _:
                scrut = self._gen(S1_TY, ctx, gamma, third)
                point = self._gen(goal, ctx, gamma, third)
                z = fresh_name("z", set(ctx))
                if isinstance(goal, S1) and isinstance(point, Base) and self.rng.random() < 0.5:
                    line = Loop(z)
                elif self.rng.random() < 0.5:
                    y = fresh_name("y", set(ctx) | {z})
                    line = Hcom(z, goal, 0, 1, point, y, point, point)
                else:
                    line = point
                return S1Elim(goal, scrut, point, z, line)

    def _coe(self, goal: Term, ctx, gamma, budget) -> Term:
        u = fresh_name("u", set(ctx))
        if isinstance(goal, Bool) and self.rng.random() < 0.6:
            # along x.notb(x) into a constant end
            r2 = self.rng.choice((0, 1))
            r = self._dim(ctx)
            src = BOOL if is_const(r) else NotB(r)
            return Coe(u, NotB(u), r, r2, self._gen(src, ctx, gamma, budget))
        if isinstance(goal, NotB) and self.rng.random() < 0.6:
            r = self._dim(ctx)
            src = BOOL if is_const(r) else NotB(r)
            return Coe(u, NotB(u), r, goal.r, self._gen(src, ctx, gamma, budget))
        return Coe(u, goal, self._dim(ctx), self._dim(ctx), self._gen(goal, ctx, gamma, budget))

    def _hcom(self, goal: Term, ctx, gamma, budget) -> Term:
        ext = self._dim(ctx)
        r, r2 = self._dim(ctx), self._dim(ctx)
        cap = self._gen(goal, ctx, gamma, max(budget // 2, 1))
        y = fresh_name("y", set(ctx))
        tubes = []
        for e in (0, 1):
            face = dsubst(cap, e, ext) if is_name(ext) else cap
            face_ty = dsubst(goal, e, ext) if is_name(ext) else goal
            style = self.rng.random()
            if is_const(r) and style < 0.3 and isinstance(face, (Base, Loop)) and isinstance(goal, S1) \
                    and is_const(getattr(face, "r", 0)):
                tubes.append(Loop(y))
            elif is_const(r) and style < 0.6:
                z = fresh_name("z", set(ctx) | {y})
                tubes.append(Hcom(y, normalize_type(face_ty), 0, 1, face, z, face, face))
            else:
                tubes.append(face)
        return Hcom(ext, goal, r, r2, cap, y, tubes[0], tubes[1])


def gen_term(goal, ctx=(), cfg: Optional[GenConfig] = None, gamma=()) -> Term:
    """A well-typed term of type ``goal`` (a type term or a type value)."""
    from chtt.semantics import type_term

    cfg = cfg or GenConfig()
    if not isinstance(goal, Term):
        goal = type_term(goal)
    if len(ctx) > cfg.dim_budget:
        raise GenError(f"context {ctx} exceeds the dimension budget {cfg.dim_budget}")
    return Generator(cfg).term(goal, tuple(ctx), tuple(gamma))


def gen_terms(goal, count: int, ctx=(), cfg: Optional[GenConfig] = None) -> list:
    """``count`` terms from one seeded stream."""
    cfg = cfg or GenConfig()
    g = Generator(cfg)
    return [g.term(normalize_type(goal), tuple(ctx)) for _ in range(count)]


def gen_kan_instance(type_expr: Term, ctx=(), cfg: Optional[GenConfig] = None, condition: int = 1,
                     attempts: int = 10):
    """A Kan instance whose hypotheses pass the checker."""
    from chtt.laws import KanInstance, kan_judgments, make_kan_instance
    from chtt.semantics import Checker, HOLDS, enumerate_elements, eval_type
    from chtt.laws import check_judgment
    from chtt.syntax import DimSubst, apply_subst

    cfg = cfg or GenConfig()
    rng = random.Random(cfg.seed)
    ctx = tuple(ctx)
    chk = Checker()
    for _ in range(attempts):
        x = fresh_name("x", set(ctx))
        extra = ctx[: max(cfg.dim_budget - 1, 0)]
        target = (x,) + tuple(n for n in extra if n != x)
        psi = DimSubst(ctx, target, tuple((w, rng.choice(target + (0, 1))) for w in ctx))
        a = apply_subst(type_expr, psi)
        rest = tuple(n for n in target if n != x)
        if condition == 4:
            r, r2 = rng.choice((0, 1) + rest), rng.choice((0, 1) + rest)
            start = normalize_type(dsubst(a, r, x))
            cap = rng.choice(enumerate_elements(eval_type(start), rest, 1))
            inst = KanInstance(type_expr, psi, x, r, r2, cap, "y", cap, cap,
                               other_cap=Coe("q", start, 0, 1, cap))
        else:
            cap = rng.choice(enumerate_elements(eval_type(a), target, 1))
            r = rng.choice((0, 1, x))
            r2 = r if condition == 2 else rng.choice((0, 1) + target)
            style = rng.choice(("degenerate", "filler")) if is_const(r) else "degenerate"
            eps = rng.choice((0, 1)) if condition == 3 else None
            inst = make_kan_instance(type_expr, psi, x, cap, r, r2, style, eps)
        hyps, _ = kan_judgments(inst, condition)
        if all(check_judgment(h, chk).verdict == HOLDS for h in hyps):
            return inst
    raise GenError(f"no valid Kan instance for {type_expr} after {attempts} attempts")


# ---------------------------------------------------------------------------
# syntactic types and shrinking


def synth(m: Term, env: Optional[dict] = None) -> Optional[Term]:
    """The type of a generated term, read off its annotations; ``None`` if unknown."""
    env = env or {}
    match m:
        case Tt() | Ff():
            return BOOL
        case Base() | Loop():
            return S1_TY
        case Var(a):
            return env.get(a)
        case Pair(l, r):
            tl, tr = synth(l, env), synth(r, env)
            return Prd(tl, tr) if tl is not None and tr is not None else None
        case App(Lam(a, body), n):
            tn = synth(n, env)
            return None if tn is None else synth(body, {**env, a: tn})
        case App(f, _):
            tf = synth(f, env)
            return tf.cod if isinstance(tf, Arr) else None
        case Fst(p) | Snd(p):
            tp = synth(p, env)
            if isinstance(tp, Prd):
                return tp.left if isinstance(m, Fst) else tp.right
            return None
        case If(a, _, _, _) | S1Elim(a, _, _, _, _):
            return normalize_type(a)
        case NotEl(r, _):
            return normalize_type(NotB(r))
        case Coe(x, ty, _, r2, _):
            return normalize_type(dsubst(ty, r2, x))
        case Hcom(_, ty, _, _, _, _, _, _):
            return normalize_type(ty)
    return None


def _positions(m: Term, path=()):
    yield path, m
    for i, s in enumerate(subterms(m)):
        yield from _positions(s, path + (i,))


def _replace(m: Term, path: tuple, new: Term) -> Term:
    if not path:
        return new
    i, rest = path[0], path[1:]
    subs = list(subterms(m))
    subs[i] = _replace(subs[i], rest, new)
    match m:
        case Arr() | Prd() | App() | Pair():
            return type(m)(*subs)
        case Lam(a, _):
            return Lam(a, subs[0])
        case Fst() | Snd():
            return type(m)(subs[0])
        case NotEl(r, _):
            return NotEl(r, subs[0])
        case If():
            return If(*subs)
        case S1Elim(_, _, _, x, _):
            return S1Elim(subs[0], subs[1], subs[2], x, subs[3])
        case Coe(x, _, r, r2, _):
            return Coe(x, subs[0], r, r2, subs[1])
        case Hcom(e, _, r, r2, _, y, _, _):
            return Hcom(e, subs[0], r, r2, subs[1], y, subs[2], subs[3])
    raise TypeError(m)


def shrink(m: Term, failing: Callable[[Term], bool], max_rounds: int = 200) -> Term:
    """Greedily shrink ``m`` while ``failing`` keeps holding."""
    if not failing(m):
        raise ValueError("shrink needs a failing term")
    for _ in range(max_rounds):
        improved = False
        for path, s in list(_positions(m)):
            ty = synth(s)
            if ty is None:
                continue
            cands = []
            try:
                cands.append(intro(ty))
            except GenError:
                pass
            if isinstance(ty, Bool):
                cands.append(FALSE)
            cands += [t for t in subterms(s) if synth(t) is not None and _same(synth(t), ty)]
            for c in sorted(cands, key=size):
                if size(c) >= size(s):
                    continue
                cand = _replace(m, path, c)
                if failing(cand):
                    m, improved = cand, True
                    break
            if improved:
                break
        if not improved:
            return m
    return m
