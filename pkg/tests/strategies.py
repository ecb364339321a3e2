"""Hypothesis strategies for formulas, words and enumerated models."""
from hypothesis import strategies as st

from icl.enumeration import SearchBound, canonical_suite, enumerate_rmodels
from icl.formula import BOT, ONE, ZERO, And, Imp, IntNeg, NegKind, NWord, Or, PerpNeg, Variable

ROOTED_MODELS = list(enumerate_rmodels(SearchBound(4)))
PSEUDO_MODELS = [ctx.model for ctx in canonical_suite() if ctx.model.pseudo]


def nwords(max_len=8):
    return st.lists(st.sampled_from(list(NegKind)), max_size=max_len).map(lambda negs: NWord(tuple(negs)))


def formulas(max_leaves=12, num_vars=1):
    leaves = st.sampled_from([Variable(i) for i in range(1, num_vars + 1)] + [ZERO, ONE, BOT])

    def extend(children):
        return st.one_of(
            children.map(IntNeg),
            children.map(PerpNeg),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def rooted_models():
    return st.sampled_from(ROOTED_MODELS)


def any_models():
    return st.sampled_from(ROOTED_MODELS + PSEUDO_MODELS)


@st.composite
def model_and_world(draw, models=any_models()):
    m = draw(models)
    return m, draw(st.sampled_from(m.worlds))
