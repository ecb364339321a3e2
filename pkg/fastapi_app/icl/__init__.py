"""Negation-words of Intuitionistic Control Logic: semantics, classes and order."""
from icl.appendix import AppendixFixture, Mismatch, find_mismatches, load_fixture
from icl.classifier import (
    EquivClass, NormalizationError, Signature, census, equivalent, formula_signature,
    normalize, normalize_semantic, preceq, signature, verify_signature_criterion,
)
from icl.enumeration import (
    DEFAULT_BOUND, EvalContext, SearchBound, canonical_suite, check_validity,
    enumerate_rmodels, find_countermodel,
)
from icl.formula import (
    FormulaSyntaxError, NegKind, NWord, nword_to_formula, parse_formula, parse_nword, render,
)
from icl.kripke import (
    ModelDefect, ModelDefectError, RModel, UnknownWorldError, forces, generated_submodel,
    imaginary_part, load_model, model_to_spec, valid_in, validate_model,
)
from icl.poset import Poset, PosetNode, build_poset, emit_dot, hasse_edges


def clear_caches() -> None:
    """Drop memoized evaluation results (models, truth sets, signatures)."""
    from icl import classifier, enumeration, kripke

    kripke.truth_set.cache_clear()
    enumeration._rmodels.cache_clear()
    classifier.signature.cache_clear()
    classifier.formula_signature.cache_clear()
    classifier.representative_map.cache_clear()
