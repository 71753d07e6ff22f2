"""Hand-derived one-step expectations: (rule, source, successor)."""

GOLDEN = [
    ("notb-eps", "(notb 0)", "bool"),
    ("coe-ty-cong", "(coe [x (notb 1)] 0 1 true)", "(coe [x bool] 0 1 true)"),
    ("hcom-ty-cong", "(hcom z (notb 0) 0 1 true [y true] [y true])",
     "(hcom z bool 0 1 true [y true] [y true])"),
    ("app-cong", "(app (fst (pair (lam [a a]) true)) false)", "(app (lam [a a]) false)"),
    ("app-beta", "(app (lam [a (pair a a)]) true)", "(pair true true)"),
    ("hcom-arr", "(hcom z (arr bool S1) 0 1 (lam [b base]) [y (lam [b base])] [y (lam [b (loop y)])])",
     "(lam [c (hcom z S1 0 1 (app (lam [b base]) c) [y (app (lam [b base]) c)] [y (app (lam [b (loop y)]) c)])])"),
    ("coe-arr", "(coe [x (arr bool (notb x))] 0 1 (lam [b b]))",
     "(lam [c (coe [x (notb x)] 0 1 (app (lam [b b]) (coe [x bool] 1 0 c)))])"),
    ("fst-cong", "(fst (app (lam [a a]) (pair true false)))", "(fst (pair true false))"),
    ("snd-cong", "(snd (app (lam [a a]) (pair true false)))", "(snd (pair true false))"),
    ("fst-beta", "(fst (pair true base))", "true"),
    ("snd-beta", "(snd (pair true base))", "base"),
    ("hcom-prd", "(hcom z (prd bool S1) 0 1 (pair true base) [y (pair true base)] [y (pair true (loop y))])",
     "(pair (hcom z bool 0 1 (fst (pair true base)) [y (fst (pair true base))] [y (fst (pair true (loop y)))])"
     " (hcom z S1 0 1 (snd (pair true base)) [y (snd (pair true base))] [y (snd (pair true (loop y)))]))"),
    ("coe-prd", "(coe [x (prd bool (notb x))] 0 1 (pair true false))",
     "(pair (coe [x bool] 0 1 (fst (pair true false))) (coe [x (notb x)] 0 1 (snd (pair true false))))"),
    ("hcom-bool-eps", "(hcom 1 bool 0 z true [y false] [y (hcom y bool 0 1 true [w true] [w true])])",
     "(hcom z bool 0 1 true [w true] [w true])"),
    ("hcom-bool-cap", "(hcom z bool w w false [y false] [y false])", "false"),
    ("if-cong", "(if S1 (fst (pair true false)) base base)", "(if S1 true base base)"),
    ("if-true", "(if S1 true base (loop z))", "base"),
    ("if-false", "(if S1 false base (loop z))", "(loop z)"),
    ("if-hcom", "(if S1 (hcom z bool 0 1 true [y true] [y true]) base (loop y))",
     "(hcom z S1 0 1 (if S1 true base (loop y)) [w (if S1 true base (loop y))] [w (if S1 true base (loop y))])"),
    ("coe-bool", "(coe [x bool] 0 z false)", "false"),
    ("hcom-s1-eps", "(hcom 0 S1 0 z base [y (loop y)] [y base])", "(loop z)"),
    ("hcom-s1-cap", "(hcom z S1 1 1 (loop z) [y base] [y base])", "(loop z)"),
    ("loop-eps", "(loop 1)", "base"),
    ("s1elim-cong", "(S1-elim bool (snd (pair true base)) true [u false])", "(S1-elim bool base true [u false])"),
    ("s1elim-base", "(S1-elim bool base true [u false])", "true"),
    ("s1elim-loop", "(S1-elim S1 (loop z) base [u (loop u)])", "(loop z)"),
    ("s1elim-hcom", "(S1-elim bool (hcom z S1 0 1 base [y (loop y)] [y base]) true [u true])",
     "(hcom z bool 0 1 (S1-elim bool base true [u true]) [y (S1-elim bool (loop y) true [u true])]"
     " [y (S1-elim bool base true [u true])])"),
    ("coe-s1", "(coe [x S1] 1 0 (loop z))", "(loop z)"),
    ("notel-0", "(notel 0 true)", "(if bool true false true)"),
    ("notel-1", "(notel 1 true)", "true"),
    ("coe-not-flip", "(coe [x (notb x)] 1 0 false)", "(if bool false false true)"),
    ("coe-not-refl", "(coe [x (notb x)] 0 0 true)", "true"),
    ("coe-not-0x", "(coe [x (notb x)] 0 z true)", "(notel z (if bool true false true))"),
    ("coe-not-1x", "(coe [x (notb x)] 1 z true)", "(notel z true)"),
    ("coe-not-cong", "(coe [x (notb x)] z 1 (fst (pair (notel z true) base)))",
     "(coe [x (notb x)] z 1 (notel z true))"),
    ("coe-not-notel", "(coe [x (notb x)] z w (notel z false))", "(notel w false)"),
    ("coe-not-other", "(coe [x (notb z)] 0 1 (notel z true))", "(notel z true)"),
    ("hcom-not", "(hcom u (notb z) 0 1 (notel z true) [y (notel z true)] [y (notel z true)])",
     "(notel z (hcom u bool 0 1 (coe [x (notb x)] z 1 (notel z true)) [y (coe [x (notb x)] z 1 (notel z true))]"
     " [y (coe [x (notb x)] z 1 (notel z true))]))"),
]
