"""Command-line front end.  Exit status: 0 success, 1 check failure, 2 usage or parse error."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from chtt.gen import GenConfig, Generator, shrink, synth
from chtt.laws import manifest, run_suite
from chtt.opsem import FUEL, STUCK, trace
from chtt.parse import Atom, ParseError, SList, parse_sexpr, parse_terms, pretty, read_file_text
from chtt.semantics import (
    HOLDS, CheckConfig, canonicity_check, ceqpretype, ceqtm, enumerate_substs,
)
from chtt.syntax import BOOL, Bool, SubstitutionError, apply_subst, fd

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _config(ns) -> CheckConfig:
    try:
        return CheckConfig(fuel=ns.fuel, fresh_budget=ns.fresh_budget, depth=ns.depth,
                           probe_count=ns.probe_count)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _report(rep, out) -> int:
    print(rep.serialize(), file=out)
    if rep.verdict == HOLDS:
        return OK
    return FAILED


def cmd_eval(ns, out) -> int:
    _, terms = parse_terms(_read(ns.file), ns.file)
    status = OK
    for m in terms:
        tr = trace(m, ns.fuel)
        if tr.verdict == FUEL or tr.verdict == STUCK:
            print(f"error: {tr.reason}", file=out)
            status = FAILED
        else:
            print(pretty(tr.final), file=out)
    return status


def cmd_trace(ns, out) -> int:
    _, terms = parse_terms(_read(ns.file), ns.file)
    status = OK
    for m in terms:
        tr = trace(m, ns.fuel)
        print(f"  {pretty(tr.steps[0])}", file=out)
        for rule, nxt in zip(tr.rules, tr.steps[1:]):
            print(f"{rule}: {pretty(nxt)}", file=out)
        print(f"-- {tr.verdict}" + (f" ({tr.reason})" if tr.reason else ""), file=out)
        if tr.verdict != "value":
            status = FAILED
    return status


def _eq_form(text: str, file: str):
    src = read_file_text(text, file)
    dims = src.dims or ()
    if len(src.forms) != 1:
        raise UsageError("expected exactly one (eq TYPE TERM TERM) form")
    sx = src.forms[0]
    if not (isinstance(sx, SList) and len(sx.items) == 4 and isinstance(sx.items[0], Atom)
            and sx.items[0].text == "eq"):
        raise ParseError("expected (eq TYPE TERM TERM)", sx.span)
    allowed = frozenset(dims)
    a, m, n = (parse_sexpr(s, allowed, frozenset()) for s in sx.items[1:])
    return dims, a, m, n


def cmd_check_eq(ns, out) -> int:
    dims, a, m, n = _eq_form(_read(ns.file), ns.file)
    return _report(ceqtm(a, m, n, dims, _config(ns)), out)


def cmd_check_pretype(ns, out) -> int:
    dims, types = parse_terms(_read(ns.file), ns.file)
    if len(types) > 2:
        raise UsageError("check-pretype takes one type, or two types to compare")
    a, b = types[0], types[-1]
    return _report(ceqpretype(a, b, dims or (), _config(ns)), out)


def cmd_canonicity(ns, out) -> int:
    dims, terms = parse_terms(_read(ns.file), ns.file)
    status = OK
    for m in terms:
        if fd(m):
            raise UsageError(f"{pretty(m)} mentions dimension names")
        ty = synth(m)
        if not isinstance(ty, Bool):
            raise UsageError(f"{pretty(m)} is not a bool term")
        res = canonicity_check(m, ns.fuel)
        if res.ok:
            print(res.verdict, file=out)
        else:
            print(f"violation: {pretty(res.trace.final)} ({res.trace.verdict})", file=out)
            status = FAILED
    return status


def _fuzz_failure(m, fuel):
    """A short description of what went wrong with ``m``, or ``None``."""
    tr = trace(m, fuel)
    names = fd(m)
    for s in tr.steps:
        if not fd(s) <= names:
            return f"step introduced dimension names {sorted(fd(s) - names)}"
    if tr.verdict != "value":
        return f"{tr.verdict}: {tr.reason}"
    if trace(tr.final, 1).rules:
        return "a value steps"
    if not canonicity_check(m, fuel).ok:
        return f"non-canonical value {pretty(tr.final)}"
    return None


def cmd_fuzz(ns, out) -> int:
    if ns.count < 0 or ns.size < 1:
        raise UsageError("--count must be non-negative and --size positive")
    gen = Generator(GenConfig(seed=ns.seed, size=ns.size))
    bad = 0
    for i in range(ns.count):
        m = gen.term(BOOL)
        why = _fuzz_failure(m, ns.fuel)
        if why is None:
            continue
        bad += 1
        small = shrink(m, lambda t: _fuzz_failure(t, ns.fuel) is not None)
        dest = Path(ns.out)
        dest.mkdir(parents=True, exist_ok=True)
        path = dest / f"fail-{ns.seed}-{i}.chtt"
        path.write_text(f"; {why}\n{pretty(small)}\n", encoding="utf-8")
        print(f"failure {i}: {why} -> {path}", file=out)
    print(f"terms: {ns.count}  failures: {bad}", file=out)
    return FAILED if bad else OK


def cmd_laws(ns, out) -> int:
    ids = None
    if ns.case:
        known = set(manifest())
        missing = [c for c in ns.case if c not in known]
        if missing:
            raise UsageError(f"unknown case id(s): {', '.join(missing)}")
        ids = ns.case
    if ns.list:
        for cid in manifest():
            print(cid, file=out)
        return OK
    summary = run_suite(_config(ns), ids)
    print(summary.render(), file=out)
    return OK if summary.ok else FAILED


def cmd_aspects(ns, out) -> int:
    dims, terms = parse_terms(_read(ns.file), ns.file)
    cfg = _config(ns)
    status = OK
    for m in terms:
        ctx = dims if dims is not None else tuple(sorted(fd(m)))
        print(f"term: {pretty(m)}", file=out)
        for psi in enumerate_substs(ctx, cfg):
            face = apply_subst(m, psi)
            tr = trace(face, cfg.fuel)
            shown = pretty(tr.final) if tr.verdict == "value" else f"<{tr.verdict}: {tr.reason}>"
            print(f"  [{psi}] {pretty(face)} => {shown}", file=out)
            if tr.verdict != "value":
                status = FAILED
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chtt", description="Cubical evaluator and semantic checker.")
    p.add_argument("--fuel", type=int, default=CheckConfig.fuel, help="evaluation step budget")
    p.add_argument("--depth", type=int, default=CheckConfig.depth, help="hcom unfolding depth")
    p.add_argument("--fresh-budget", type=int, default=CheckConfig.fresh_budget,
                   help="extra fresh names in enumerated substitutions")
    p.add_argument("--probe-count", type=int, default=CheckConfig.probe_count,
                   help="domain elements probed at function types")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, hlp in [
        ("eval", cmd_eval, "evaluate each term to a value"),
        ("trace", cmd_trace, "print every step with its rule"),
        ("check-eq", cmd_check_eq, "check (eq TYPE M N) under the declared dimensions"),
        ("check-pretype", cmd_check_pretype, "check a pretype, or equality of two pretypes"),
        ("canonicity", cmd_canonicity, "check closed bool terms evaluate to true or false"),
        ("aspects", cmd_aspects, "evaluate each term at every enumerated substitution"),
    ]:
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("file")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("fuzz", help="generate closed bool terms and check canonicity")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--size", type=int, default=40)
    sp.add_argument("--out", default="fuzz-failures", help="directory for shrunk failing terms")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("laws", help="run the rule, Kan and lemma suites")
    sp.add_argument("--case", action="append", help="run only this case id (repeatable)")
    sp.add_argument("--list", action="store_true", help="list case ids and exit")
    sp.set_defaults(func=cmd_laws)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return ns.func(ns, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (UsageError, SubstitutionError) as e:
        print(f"error: {e}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
