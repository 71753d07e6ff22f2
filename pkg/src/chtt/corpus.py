"""A fixed corpus of well-typed terms at observable types, spanning every constructor."""

from __future__ import annotations

from dataclasses import dataclass

from chtt.parse import parse


@dataclass(frozen=True)
class Entry:
    name: str
    ctx: tuple
    type_text: str
    term_text: str

    @property
    def ty(self):
        return parse(self.type_text)

    @property
    def term(self):
        return parse(self.term_text)


_H = "(hcom x bool 0 1 true [y true] [y true])"

_ENTRIES = [
    ("true", "", "bool", "true"),
    ("false", "", "bool", "false"),
    ("not-true", "", "bool", "(not true)"),
    ("not-not", "x", "bool", f"(not (not {_H}))"),
    ("if-hcom", "x", "bool", f"(if bool {_H} false true)"),
    ("if-motive-S1", "x", "S1", "(if S1 true (loop x) base)"),
    ("hcom-bool", "x", "bool", _H),
    ("hcom-bool-down", "x", "bool", "(hcom x bool 1 0 false [y false] [y false])"),
    ("hcom-bool-eps", "", "bool", "(hcom 0 bool 0 1 true [y true] [y false])"),
    ("hcom-bool-cap", "x", "bool", "(hcom x bool 1 1 true [y true] [y true])"),
    ("hcom-bool-open-end", "x z", "bool", "(hcom x bool 0 z false [y false] [y false])"),
    ("hcom-bool-filler", "x", "bool",
     "(hcom x bool 0 1 true [y (hcom y bool 0 1 true [w true] [w true])] [y true])"),
    ("base", "", "S1", "base"),
    ("loop", "x", "S1", "(loop x)"),
    ("loop-eps", "", "S1", "(loop 1)"),
    ("hcom-S1-loop-tube", "x", "S1", "(hcom x S1 0 1 base [y (loop y)] [y base])"),
    ("hcom-S1-loop-cap", "x", "S1", "(hcom x S1 0 1 (loop x) [y base] [y base])"),
    ("hcom-S1-eps", "z", "S1", "(hcom 1 S1 0 z base [y base] [y (loop y)])"),
    ("S1-elim-loop", "x", "S1", "(S1-elim S1 (loop x) base [z (loop z)])"),
    ("S1-elim-base", "", "bool", "(S1-elim bool base true [z true])"),
    ("S1-elim-hcom", "x", "S1", "(S1-elim S1 (hcom x S1 0 1 base [y (loop y)] [y base]) base [z (loop z)])"),
    ("S1-elim-hcom-line", "x", "bool",
     "(S1-elim bool (loop x) false [z (hcom z bool 0 1 false [y false] [y false])])"),
    ("notel-name", "x", "(notb x)", "(notel x true)"),
    ("notel-0", "", "bool", "(notel 0 true)"),
    ("notel-1", "x", "bool", f"(notel 1 {_H})"),
    ("coe-bool", "x", "bool", f"(coe [u bool] 0 x {_H})"),
    ("coe-S1", "x", "S1", "(coe [u S1] x 0 (loop x))"),
    ("coe-not-flip", "", "bool", "(coe [u (notb u)] 0 1 true)"),
    ("coe-not-refl", "", "bool", "(coe [u (notb u)] 1 1 false)"),
    ("coe-not-0x", "x", "(notb x)", "(coe [u (notb u)] 0 x true)"),
    ("coe-not-1x", "x", "(notb x)", "(coe [u (notb u)] 1 x false)"),
    ("coe-not-from-name", "x", "bool", "(coe [u (notb u)] x 1 (notel x true))"),
    ("coe-not-name-name", "x z", "(notb z)", "(coe [u (notb u)] x z (notel x false))"),
    ("coe-not-other", "x", "(notb x)", "(coe [u (notb x)] 0 1 (notel x true))"),
    ("hcom-notb", "x", "(notb x)", "(hcom x (notb x) 0 1 (notel x true) [y false] [y true])"),
    ("hcom-notb-other", "x z", "(notb z)",
     "(hcom x (notb z) 0 1 (notel z false) [y (notel z false)] [y (notel z false)])"),
    ("pair", "x", "(prd bool S1)", "(pair true (loop x))"),
    ("fst", "x", "S1", "(fst (pair (loop x) true))"),
    ("snd", "", "bool", "(snd (pair base false))"),
    ("hcom-prd", "x", "(prd bool S1)",
     "(hcom x (prd bool S1) 0 1 (pair true base) [y (pair true (loop y))] [y (pair true base)])"),
    ("coe-prd", "x", "(prd bool (notb x))", "(coe [u (prd bool (notb u))] 0 x (pair false true))"),
    ("app-id", "", "bool", "(app (lam [a a]) true)"),
    ("app-not", "x", "bool", f"(app (lam [a (not a)]) {_H})"),
    ("app-loop", "x", "S1", "(app (lam [a (if S1 a (loop x) base)]) true)"),
    ("app-coe-arr", "x", "bool", "(app (coe [u (arr bool bool)] 0 x (lam [a (not a)])) false)"),
    ("app-hcom-arr", "x", "bool",
     "(app (hcom x (arr bool bool) 0 1 (lam [a a]) [y (lam [a a])] [y (lam [a a])]) true)"),
    ("fst-coe-prd", "", "S1", "(fst (coe [u (prd S1 bool)] 1 0 (pair base true)))"),
    ("snd-hcom-prd", "x", "bool",
     "(snd (hcom x (prd S1 bool) 0 1 (pair base false) [y (pair base false)] [y (pair base false)]))"),
    ("if-on-coe-not", "x", "S1", "(if S1 (coe [u (notb u)] 0 1 false) (loop x) base)"),
    ("nested", "x z", "bool",
     "(if bool (S1-elim bool (loop z) true [w true]) (notel 0 (coe [u (notb u)] z 1 (notel z false))) false)"),
]

CORPUS = tuple(Entry(name, tuple(ctx.split()), ty, tm) for name, ctx, ty, tm in _ENTRIES)
