"""Bounded decision procedures for the judgments of the meaning explanation.

The quantifier "for any substitution" is realized by enumerating total
dimension substitutions up to renaming of target names.  Evaluation is
oblivious to names, so a representative of every renaming class suffices.

Value PERs are checked by structural recursion.  Recursion through the
composite clauses of ``bool`` and ``S1`` is the only non-structural part; it
is bounded by ``CheckConfig.depth`` and reports ``inconclusive`` when the
bound is hit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Optional

from chtt.opsem import DEFAULT_FUEL, EvalStuck, FuelExhausted, eval_term, trace
from chtt.syntax import (
    BOOL, FALSE, S1_TY, TRUE, App, Arr, BASE, Base, Bool, DimSubst, Ff, Hcom, Lam, Loop, NotB,
    NotEl, Pair, Prd, S1, SubstitutionError, Term, Tt, Var, alpha_key, apply_subst,
    compose_subst, dsubst, expand_not, fd, fresh_name, ftv, is_name, subst_terms, tsubst,
)

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"


@dataclass(frozen=True)
class CheckConfig:
    fuel: int = DEFAULT_FUEL
    fresh_budget: int = 1
    depth: int = 3
    probe_count: int = 4

    def __post_init__(self):
        if self.fuel < 1 or self.depth < 1 or self.fresh_budget < 0 or self.probe_count < 1:
            raise ValueError(f"invalid check budgets {self}")


@dataclass(frozen=True)
class Witness:
    """Where a check went wrong: the clause, the substitutions and the values involved."""

    clause: str
    psi1: Optional[DimSubst] = None
    psi2: Optional[DimSubst] = None
    values: tuple = ()
    cause: Optional["Witness"] = None

    def lines(self, indent: str = "") -> list:
        out = [f"{indent}clause: {self.clause}"]
        if self.psi1 is not None:
            out.append(f"{indent}psi1: {self.psi1}")
        if self.psi2 is not None:
            out.append(f"{indent}psi2: {self.psi2}")
        out.extend(f"{indent}value: {v}" for v in self.values)
        if self.cause is not None:
            out.append(f"{indent}because:")
            out.extend(self.cause.lines(indent + "  "))
        return out


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    witness: Optional[Witness] = None
    substitutions: int = 0
    evaluations: int = 0
    modulo_probes: bool = False
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def serialize(self) -> str:
        head = self.verdict + (" (modulo probes)" if self.modulo_probes and self.holds else "")
        lines = [f"verdict: {head}"]
        if self.note:
            lines.append(f"note: {self.note}")
        if self.witness is not None:
            lines.extend(self.witness.lines())
        lines.append(f"substitutions: {self.substitutions}")
        lines.append(f"evaluations: {self.evaluations}")
        return "\n".join(lines)


_HOLD = CheckReport(HOLDS)


def _fail(clause: str, *values: Term, psi1=None, psi2=None, cause=None) -> CheckReport:
    return CheckReport(FAILS, Witness(clause, psi1, psi2, tuple(values), cause))


def _unknown(clause: str, note: str, *values: Term) -> CheckReport:
    return CheckReport(INCONCLUSIVE, Witness(clause, values=tuple(values)), note=note)


class _Acc:
    """Conjunction of sub-reports: the first failure wins, inconclusive is sticky."""

    def __init__(self):
        self.pending: Optional[CheckReport] = None
        self.modulo = False

    def add(self, rep: CheckReport) -> Optional[CheckReport]:
        self.modulo |= rep.modulo_probes
        if rep.verdict == FAILS:
            return rep
        if rep.verdict == INCONCLUSIVE and self.pending is None:
            self.pending = rep
        return None

    def result(self) -> CheckReport:
        if self.pending is not None:
            return replace(self.pending, modulo_probes=self.modulo)
        return CheckReport(HOLDS, modulo_probes=self.modulo)


# ---------------------------------------------------------------------------
# type values


class NotAType(Exception):
    def __init__(self, value: Term):
        super().__init__(f"not a type: {value}")
        self.value = value


@dataclass(frozen=True)
class BoolType:
    pass


@dataclass(frozen=True)
class CircleType:
    pass


@dataclass(frozen=True)
class NotLine:
    r: object


@dataclass(frozen=True)
class ProdType:
    left: Term
    right: Term


@dataclass(frozen=True)
class ArrowType:
    dom: Term
    cod: Term


TypeValue = BoolType | CircleType | NotLine | ProdType | ArrowType


def classify(v: Term) -> TypeValue:
    match v:
        case Bool():
            return BoolType()
        case S1():
            return CircleType()
        case NotB(r) if is_name(r):
            return NotLine(r)
        case Prd(a, b):
            return ProdType(a, b)
        case Arr(a, b):
            return ArrowType(a, b)
    raise NotAType(v)


def eval_type(a: Term, fuel: int = DEFAULT_FUEL) -> TypeValue:
    return classify(eval_term(a, fuel))


def type_term(t: TypeValue) -> Term:
    match t:
        case BoolType():
            return BOOL
        case CircleType():
            return S1_TY
        case NotLine(r):
            return NotB(r)
        case ProdType(a, b):
            return Prd(a, b)
        case ArrowType(a, b):
            return Arr(a, b)
    raise TypeError(t)


def _type_key(t: TypeValue):
    return alpha_key(type_term(t))


# ---------------------------------------------------------------------------
# substitution enumeration


def _partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def _fresh_targets(avoid, count: int) -> tuple:
    out: list = []
    taken = set(avoid)
    for _ in range(count):
        z = fresh_name("z", taken)
        taken.add(z)
        out.append(z)
    return tuple(out)


def enumerate_substs(ctx, cfg: Optional[CheckConfig] = None) -> list:
    """Representatives of all total substitutions out of ``ctx``, up to renaming.

    Each name goes to 0, 1 or a block of a partition of the names sent to
    names; a block is named after its first member.  Targets carry
    ``fresh_budget`` extra unused names.  The identity comes first.
    """
    cfg = cfg or CheckConfig()
    ctx = tuple(ctx)
    out = []
    for k in range(len(ctx), -1, -1):
        for named in itertools.combinations(ctx, k):
            consts = [x for x in ctx if x not in named]
            for part in _partitions(list(named)):
                image = {x: blk[0] for blk in part for x in blk}
                blocks = tuple(x for x in ctx if x in image.values())
                target = blocks + _fresh_targets(ctx, cfg.fresh_budget)
                for bits in itertools.product((0, 1), repeat=len(consts)):
                    mapping = dict(image)
                    mapping.update(zip(consts, bits))
                    out.append(DimSubst(ctx, target, tuple((x, mapping[x]) for x in ctx)))
    return out


# ---------------------------------------------------------------------------
# the checker


def _sorted_names(*terms: Term) -> tuple:
    return tuple(sorted(frozenset().union(*(fd(t) for t in terms))))


class Checker:
    """A memoizing checker.  One instance should not outlive a change of evaluator rules."""

    def __init__(self, cfg: Optional[CheckConfig] = None):
        self.cfg = cfg or CheckConfig()
        self.evaluations = 0
        self.substitutions = 0
        self._evals: dict = {}
        self._substs: dict = {}
        self._tm: dict = {}
        self._per: dict = {}
        self._ty: dict = {}

    # -- plumbing ------------------------------------------------------------

    def _stats(self, rep: CheckReport) -> CheckReport:
        return replace(rep, substitutions=self.substitutions, evaluations=self.evaluations)

    def ev(self, m: Term):
        """``("ok", value)``, ``("stuck", reason)`` or ``("fuel", reason)``."""
        hit = self._evals.get(m)
        if hit is None:
            self.evaluations += 1
            try:
                hit = ("ok", eval_term(m, self.cfg.fuel))
            except EvalStuck as exc:
                hit = ("stuck", exc.reason)
            except FuelExhausted as exc:
                hit = ("fuel", str(exc))
            self._evals[m] = hit
        return hit

    def substs(self, ctx: tuple) -> list:
        hit = self._substs.get(ctx)
        if hit is None:
            hit = self._substs[ctx] = enumerate_substs(ctx, self.cfg)
        return hit

    def substs_over(self, source: tuple, used: frozenset) -> list:
        """Substitutions out of ``source`` that differ only on ``used``; the rest go to 0."""
        active = tuple(x for x in source if x in used)
        idle = tuple((x, 0) for x in source if x not in used)
        if not idle:
            return self.substs(active)
        return [DimSubst(source, p.target, tuple(sorted(p.pairs + idle, key=lambda kv: source.index(kv[0]))))
                for p in self.substs(active)]

    def _eval_or_report(self, m: Term, clause: str, psi1=None, psi2=None):
        status, val = self.ev(m)
        if status == "ok":
            return val, None
        if status == "stuck":
            return None, _fail(f"{clause}: evaluation stuck ({val})", m, psi1=psi1, psi2=psi2)
        return None, CheckReport(INCONCLUSIVE, Witness(f"{clause}: fuel", psi1, psi2, (m,)), note=val)

    def type_of(self, a: Term, clause: str, psi1=None, psi2=None):
        v, bad = self._eval_or_report(a, clause, psi1, psi2)
        if bad is not None:
            return None, bad
        try:
            return classify(v), None
        except NotAType:
            return None, _fail(f"{clause}: not a type", v, psi1=psi1, psi2=psi2)

    # -- exact equality ------------------------------------------------------

    def ceqtm(self, a: Term, m: Term, n: Term, depth: Optional[int] = None) -> CheckReport:
        """Exact equality at ``a``, over the context of names free in the inputs."""
        depth = self.cfg.depth if depth is None else depth
        key = (alpha_key(a), alpha_key(m), alpha_key(n), depth)
        hit = self._tm.get(key)
        if hit is None:
            hit = self._tm[key] = self._ceqtm(a, m, n, depth)
        return hit

    def _ceqtm(self, a: Term, m: Term, n: Term, depth: int) -> CheckReport:
        ctx = _sorted_names(a, m, n)
        acc = _Acc()
        for psi1 in self.substs(ctx):
            a1, m1s, n1s = (apply_subst(t, psi1) for t in (a, m, n))
            m1, bad = self._eval_or_report(m1s, "eval m<psi1>", psi1)
            if bad is not None and acc.add(bad):
                return bad
            n1, bad2 = self._eval_or_report(n1s, "eval n<psi1>", psi1)
            if bad2 is not None and acc.add(bad2):
                return bad2
            if bad is not None or bad2 is not None:
                continue
            used = fd(a1) | fd(m1s) | fd(n1s)
            for psi2 in self.substs_over(psi1.target, used):
                self.substitutions += 1
                rep = self._diamond(a, m, n, m1, n1, psi1, psi2, depth)
                if acc.add(rep):
                    return rep
        return acc.result()

    def _diamond(self, a, m, n, m1, n1, psi1, psi2, depth) -> CheckReport:
        psi12 = compose_subst(psi1, psi2)
        vals = {}
        for label, t in (("m2", apply_subst(m1, psi2)), ("m12", apply_subst(m, psi12)),
                         ("n2", apply_subst(n1, psi2)), ("n12", apply_subst(n, psi12))):
            v, bad = self._eval_or_report(t, f"eval {label}", psi1, psi2)
            if bad is not None:
                return bad
            vals[label] = v
        ty, bad = self.type_of(apply_subst(a, psi12), "type at psi1psi2", psi1, psi2)
        if bad is not None:
            return bad
        acc = _Acc()
        # m12 ~ n12 makes both members, so alpha-equal pairs need no further check
        for left, right in (("m12", "n12"), ("m2", "m12"), ("n2", "n12")):
            u, v = vals[left], vals[right]
            if (left, right) != ("m12", "n12") and alpha_key(u) == alpha_key(v):
                continue
            rep = self.vinper(ty, u, v, depth)
            if rep.verdict != HOLDS:
                wrapped = replace(rep, witness=Witness(f"{left}~{right}", psi1, psi2, (u, v), rep.witness))
                if acc.add(wrapped):
                    return wrapped
            else:
                acc.add(rep)
        return acc.result()

    # -- value PERs ----------------------------------------------------------

    def vinper(self, ty: TypeValue, u: Term, v: Term, depth: Optional[int] = None) -> CheckReport:
        depth = self.cfg.depth if depth is None else depth
        key = (_type_key(ty), alpha_key(u), alpha_key(v), depth)
        hit = self._per.get(key)
        if hit is None:
            hit = self._per[key] = self._vinper(ty, u, v, depth)
        return hit

    def _vinper(self, ty: TypeValue, u: Term, v: Term, depth: int) -> CheckReport:
        match ty, u, v:
            case BoolType(), Tt(), Tt():
                return _HOLD
            case BoolType(), Ff(), Ff():
                return _HOLD
            case BoolType(), Hcom(_, Bool()), Hcom(_, Bool()):
                return self._hcom_clause("bool", u, v, depth)
            case CircleType(), Base(), Base():
                return _HOLD
            case CircleType(), Loop(x), Loop(x2) if x == x2 and is_name(x):
                return _HOLD
            case CircleType(), Hcom(_, S1()), Hcom(_, S1()):
                return self._hcom_clause("S1", u, v, depth)
            case NotLine(x), NotEl(x1, m), NotEl(x2, n) if x == x1 == x2:
                return self._sub("notb:notel", self.ceqtm(BOOL, m, n, depth))
            case ProdType(a, b), Pair(m, n), Pair(m2, n2):
                acc = _Acc()
                for tag, t, p, q in (("fst", a, m, m2), ("snd", b, n, n2)):
                    rep = self._sub(f"prd:{tag}", self.ceqtm(t, p, q, depth))
                    if acc.add(rep):
                        return rep
                return acc.result()
            case ArrowType(a, b), Lam(), Lam():
                return self._probe(a, b, u, v, depth)
        name = type(ty).__name__
        return _fail(f"{name}: no clause relates these values", u, v)

    def _sub(self, clause: str, rep: CheckReport) -> CheckReport:
        if rep.verdict == HOLDS:
            return rep
        return replace(rep, witness=Witness(clause, cause=rep.witness))

    def _hcom_clause(self, kind: str, u: Hcom, v: Hcom, depth: int) -> CheckReport:
        x = u.extent
        if not (x == v.extent and is_name(x) and u.src == v.src and u.dst == v.dst and u.src != u.dst):
            return _fail(f"{kind}:hcom shapes differ", u, v)
        if depth <= 0:
            return _unknown(f"{kind}:hcom", "depth budget exhausted", u, v)
        d = depth - 1
        ty = u.ty
        acc = _Acc()
        rep = self._sub(f"{kind}:hcom(a) caps", self.ceqtm(ty, u.cap, v.cap, d))
        if acc.add(rep):
            return rep
        ystar = fresh_name("y", fd(u) | fd(v))
        for e in (0, 1):
            ne = dsubst(dsubst(u.tube(e), ystar, u.y), e, x)
            pe = dsubst(dsubst(v.tube(e), ystar, v.y), e, x)
            rep = self._sub(f"{kind}:hcom(b) tubes at {x}={e}", self.ceqtm(ty, ne, pe, d))
            if acc.add(rep):
                return rep
            adj = dsubst(dsubst(u.tube(e), u.src, u.y), e, x)
            rep = self._sub(f"{kind}:hcom(c) adjacency at {x}={e}", self.ceqtm(ty, adj, dsubst(u.cap, e, x), d))
            if acc.add(rep):
                return rep
        return acc.result()

    def _probe(self, a: Term, b: Term, f: Lam, g: Lam, depth: int) -> CheckReport:
        dom, bad = self.type_of(a, "arrow domain")
        if bad is not None:
            return bad
        probes = enumerate_elements(dom, _sorted_names(a, f, g), 1)[: self.cfg.probe_count]
        acc = _Acc()
        for e in probes:
            rep = self.ceqtm(b, tsubst(f.body, e, f.var), tsubst(g.body, e, g.var), depth)
            rep = self._sub(f"arr:probe {e}", rep)
            if acc.add(rep):
                return rep
        out = acc.result()
        return replace(out, modulo_probes=True)

    # -- pretypes ------------------------------------------------------------

    def ceqpretype(self, a: Term, b: Term, depth: Optional[int] = None) -> CheckReport:
        depth = self.cfg.depth if depth is None else depth
        key = (alpha_key(a), alpha_key(b), depth)
        hit = self._ty.get(key)
        if hit is None:
            hit = self._ty[key] = self._ceqpretype(a, b, depth)
        return hit

    def _ceqpretype(self, a: Term, b: Term, depth: int) -> CheckReport:
        acc = _Acc()
        for psi1 in self.substs(_sorted_names(a, b)):
            a1s, b1s = apply_subst(a, psi1), apply_subst(b, psi1)
            a1, bad = self._eval_or_report(a1s, "eval A<psi1>", psi1)
            if bad is None:
                b1, bad = self._eval_or_report(b1s, "eval B<psi1>", psi1)
            if bad is not None:
                if acc.add(bad):
                    return bad
                continue
            for psi2 in self.substs_over(psi1.target, fd(a1s) | fd(b1s)):
                self.substitutions += 1
                psi12 = compose_subst(psi1, psi2)
                tys = []
                for label, t in (("A2", apply_subst(a1, psi2)), ("A12", apply_subst(a, psi12)),
                                 ("B2", apply_subst(b1, psi2)), ("B12", apply_subst(b, psi12))):
                    ty, bad = self.type_of(t, f"eval {label}", psi1, psi2)
                    if bad is not None:
                        return bad
                    tys.append(ty)
                for i, j in ((1, 3), (0, 1), (2, 3)):
                    rep = self._same_per(tys[i], tys[j], depth)
                    if rep.verdict != HOLDS:
                        rep = replace(rep, witness=Witness(
                            "pretype aspects", psi1, psi2, (type_term(tys[i]), type_term(tys[j])), rep.witness))
                    if acc.add(rep):
                        return rep
        return acc.result()

    def _same_per(self, s: TypeValue, t: TypeValue, depth: int) -> CheckReport:
        match s, t:
            case BoolType(), BoolType():
                return _HOLD
            case CircleType(), CircleType():
                return _HOLD
            case NotLine(x), NotLine(y) if x == y:
                return _HOLD
            case ProdType(a, b), ProdType(a2, b2):
                pass
            case ArrowType(a, b), ArrowType(a2, b2):
                pass
            case _:
                return _fail("different type heads", type_term(s), type_term(t))
        acc = _Acc()
        for p, q in ((a, a2), (b, b2)):
            if acc.add(self.ceqpretype(p, q, depth)):
                return _fail("component types differ", p, q)
        return acc.result()


# ---------------------------------------------------------------------------
# element stocks


def enumerate_elements(ty: TypeValue, ctx, depth: int = 1) -> list:
    """A finite stock of canonical members of ``ty`` in context ``ctx``."""
    ctx = tuple(ctx)
    match ty:
        case BoolType():
            out = [TRUE, FALSE]
            if depth >= 1:
                for x in ctx:
                    y = fresh_name("y", ctx)
                    out += [
                        Hcom(x, BOOL, 0, 1, TRUE, y, TRUE, TRUE),
                        Hcom(x, BOOL, 0, 1, FALSE, y, FALSE, FALSE),
                        Hcom(x, BOOL, 1, 0, TRUE, y, TRUE, TRUE),
                    ]
            return out
        case CircleType():
            out = [BASE] + [Loop(x) for x in ctx]
            if depth >= 1:
                for x in ctx:
                    y = fresh_name("y", ctx)
                    out += [
                        Hcom(x, S1_TY, 0, 1, BASE, y, BASE, BASE),
                        Hcom(x, S1_TY, 0, 1, BASE, y, Loop(y), BASE),
                        Hcom(x, S1_TY, 0, 1, Loop(x), y, BASE, BASE),
                    ]
            return out
        case NotLine(r):
            return [NotEl(r, b) for b in enumerate_elements(BoolType(), ctx, depth)]
        case ProdType(a, b):
            ls = enumerate_elements(eval_type(a), ctx, depth)
            rs = enumerate_elements(eval_type(b), ctx, depth)
            pairs = [(i, j) for i in range(len(ls)) for j in range(len(rs))]
            pairs.sort(key=lambda ij: (max(ij), ij))
            return [Pair(ls[i], rs[j]) for i, j in pairs]
        case ArrowType(a, b):
            dom, cod = eval_type(a), eval_type(b)
            var = "a"
            out = []
            if alpha_key(type_term(dom)) == alpha_key(type_term(cod)):
                out.append(Lam(var, Var(var)))
            if isinstance(dom, BoolType) and isinstance(cod, BoolType):
                out.append(Lam(var, expand_not(Var(var))))
            out += [Lam(var, c) for c in enumerate_elements(cod, ctx, max(depth - 1, 0))]
            return out
    raise TypeError(ty)


# ---------------------------------------------------------------------------
# public entry points


def _check_ctx(ctx, *terms: Term) -> tuple:
    ctx = tuple(ctx)
    if len(set(ctx)) != len(ctx):
        raise SubstitutionError(f"duplicate names in {ctx}")
    extra = frozenset().union(*(fd(t) for t in terms)) - set(ctx)
    if extra:
        raise SubstitutionError(f"free dimension names {sorted(extra)} are not in the context {ctx}")
    return ctx


def vinper(ty: TypeValue, m0: Term, n0: Term, ctx=(), cfg: Optional[CheckConfig] = None) -> CheckReport:
    _check_ctx(ctx, m0, n0, type_term(ty))
    chk = Checker(cfg)
    return chk._stats(chk.vinper(ty, m0, n0))


def ceqtm(a: Term, m: Term, n: Term, ctx=(), cfg: Optional[CheckConfig] = None) -> CheckReport:
    _check_ctx(ctx, a, m, n)
    chk = Checker(cfg)
    return chk._stats(chk.ceqtm(a, m, n))


def coherence_diamond(m: Term, a: Term, ctx=(), cfg: Optional[CheckConfig] = None) -> CheckReport:
    return ceqtm(a, m, m, ctx, cfg)


def ceqpretype(a: Term, b: Term, ctx=(), cfg: Optional[CheckConfig] = None) -> CheckReport:
    _check_ctx(ctx, a, b)
    chk = Checker(cfg)
    return chk._stats(chk.ceqpretype(a, b))


def cubical(a: Term, ctx=(), cfg: Optional[CheckConfig] = None, checker: Optional[Checker] = None) -> CheckReport:
    """Pretype plus: every stock member of every aspect has coherent aspects."""
    ctx = _check_ctx(ctx, a)
    chk = checker or Checker(cfg)
    rep = chk.ceqpretype(a, a)
    if rep.verdict != HOLDS:
        return chk._stats(rep)
    acc = _Acc()
    for psi in chk.substs(ctx):
        aspect = apply_subst(a, psi)
        ty = classify(eval_term(aspect, chk.cfg.fuel))
        for v in enumerate_elements(ty, tuple(x for x in psi.target if x in ctx)):
            rep = chk.ceqtm(aspect, v, v)
            if rep.verdict != HOLDS:
                rep = replace(rep, witness=Witness("cubical", psi, None, (v,), rep.witness))
            if acc.add(rep):
                return chk._stats(rep)
    return chk._stats(acc.result())


def eq_open(gamma, m: Term, n: Term, a: Term, ctx=(), cfg: Optional[CheckConfig] = None,
            checker: Optional[Checker] = None) -> CheckReport:
    """Open equality: check every closing instance drawn from the hypothesis stocks."""
    gamma = list(gamma)
    ctx = _check_ctx(ctx, a, m, n, *(t for _, t in gamma))
    bound = {v for v, _ in gamma}
    stray = (ftv(m) | ftv(n) | ftv(a)) - bound
    if stray:
        raise ValueError(f"free term variables {sorted(stray)} are not declared")
    chk = checker or Checker(cfg)
    acc = _Acc()
    for psi in chk.substs(ctx):
        stocks = []
        for var, t in gamma:
            ty, bad = chk.type_of(apply_subst(t, psi), f"hypothesis {var}", psi)
            if bad is not None:
                return chk._stats(bad)
            stocks.append(enumerate_elements(ty, psi.target, 1))
        if any(not s for s in stocks):
            acc.add(_unknown("eq_open", "empty hypothesis stock"))
            continue
        for inst in itertools.product(*stocks):
            s = {var: e for (var, _), e in zip(gamma, inst)}
            mm, nn, aa = (subst_terms(apply_subst(t, psi), s) for t in (m, n, a))
            rep = chk.ceqtm(aa, mm, nn)
            if rep.verdict != HOLDS:
                label = ", ".join(f"{v}:={e}" for v, e in s.items())
                rep = replace(rep, witness=Witness(f"instance {label}", psi, None, (mm, nn), rep.witness))
            if acc.add(rep):
                return chk._stats(rep)
    return chk._stats(acc.result())


@dataclass(frozen=True)
class CanonicityResult:
    verdict: str  # "true" | "false" | "violation"
    trace: object = field(repr=False, default=None)

    @property
    def ok(self) -> bool:
        return self.verdict in ("true", "false")


def canonicity_check(m: Term, fuel: int = DEFAULT_FUEL) -> CanonicityResult:
    if ftv(m) or fd(m):
        raise ValueError("canonicity applies to closed terms without dimension names")
    tr = trace(m, fuel)
    if tr.verdict == "value":
        match tr.final:
            case Tt():
                return CanonicityResult("true", tr)
            case Ff():
                return CanonicityResult("false", tr)
    return CanonicityResult("violation", tr)
