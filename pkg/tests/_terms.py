"""Shared hypothesis strategies: raw (possibly ill-typed) terms and generated well-typed ones."""

from hypothesis import strategies as st

from chtt.gen import GenConfig, Generator
from chtt.parse import parse
from chtt.syntax import (
    Arr, Base, Bool, Coe, Ff, Fst, Hcom, If, Lam, Loop, NotB, NotEl, Pair, Prd, S1, S1Elim, Snd, Tt, Var, App,
)

# small name pools make shadowing and capture likely
DIM_NAMES = ["x", "y", "z"]
VAR_NAMES = ["a", "b"]

dims = st.sampled_from([0, 1] + DIM_NAMES)
names = st.sampled_from(DIM_NAMES)
leaves = st.one_of(
    st.just(Tt()), st.just(Ff()), st.just(Base()), st.just(Bool()), st.just(S1()),
    st.builds(Var, st.sampled_from(VAR_NAMES)), st.builds(Loop, dims), st.builds(NotB, dims),
)


def _extend(t):
    return st.one_of(
        st.builds(Arr, t, t), st.builds(Prd, t, t), st.builds(Pair, t, t),
        st.builds(App, t, t), st.builds(Fst, t), st.builds(Snd, t),
        st.builds(Lam, st.sampled_from(VAR_NAMES), t),
        st.builds(If, t, t, t, t), st.builds(NotEl, dims, t),
        st.builds(S1Elim, t, t, t, names, t),
        st.builds(Coe, names, t, dims, dims, t),
        st.builds(Hcom, dims, t, dims, dims, t, names, t, t),
    )


raw_terms = st.recursive(leaves, _extend, max_leaves=12)

GOALS = [parse(s) for s in ("bool", "S1", "(prd bool S1)", "(arr bool bool)", "(arr S1 (prd S1 bool))")]


@st.composite
def typed_terms(draw, ctx=("x", "y"), size=20):
    seed = draw(st.integers(0, 2**31))
    goal = draw(st.sampled_from(GOALS + [parse(f"(notb {n})") for n in ctx]))
    return Generator(GenConfig(seed=seed, size=size)).term(goal, ctx)


def generated(count, seed=0, ctx=("x", "y"), size=20):
    """A deterministic list of ``count`` generated terms cycling through the goal types."""
    g = Generator(GenConfig(seed=seed, size=size))
    goals = GOALS + [parse(f"(notb {n})") for n in ctx]
    return [g.term(goals[i % len(goals)], ctx) for i in range(count)]
