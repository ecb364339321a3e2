import time

import pytest
from hypothesis import given

from icl import clear_caches
from icl.classifier import (
    EVEN_IMPLICATIONS, ODD_IMPLICATIONS, REPRESENTATIVES, NormalizationError, Signature,
    census, equivalent, formula_signature, is_irreducible, normalize, normalize_semantic,
    preceq, signature, verify_signature_criterion,
)
from icl.enumeration import DEFAULT_BOUND
from icl.formula import ONE, ZERO, all_nwords, parse_formula, parse_nword, render
from strategies import nwords

W = parse_nword

SIGNATURES = {
    "p": "-+--+--+-",
    "~p": "+-+---+--",
    "!p": "+-++-++++",
    "~~p": "-+-++--+-",
    "~!p": "-+-------",
    "!~p": "-+-++++++",
    "!!p": "-+--+-+++",
    "~~!p": "+-+++++++",
    "~!!p": "+--------",
    "!~~p": "+-+--++++",
    "!!~p": "+-+---+++",
    "~~!!p": "-++++++++",
    "!~~!p": "-+----+++",
    "!!~~p": "-+-++-+++",
    "!~~!!p": "+-----+++",
}


@pytest.mark.parametrize("word,cells", SIGNATURES.items())
def test_representative_signatures(word, cells):
    assert str(signature(W(word))) == cells
    assert signature(W(word)) == Signature.from_string(cells)


def test_signature_access():
    sig = signature(W("!p"))
    assert sig["c0"] and not sig["c1"] and sig["i01"]
    assert sig.valid_contexts() == ("c0", "m00", "m01", "V", "i0", "i1", "i01")
    assert sig.as_dict()["m11"] is False
    with pytest.raises(ValueError):
        Signature.from_string("+-+")
    with pytest.raises(ValueError):
        Signature.from_string("+-+-+-+-x")


def test_constant_signatures():
    assert str(formula_signature(ONE)) == "+" * 9
    assert str(formula_signature(ZERO)) == "-" * 9
    assert str(formula_signature(parse_formula("bot"))) == "------+++"
    with pytest.raises(ValueError):
        formula_signature(parse_formula("p2"))


def test_fifteen_distinct_classes():
    assert len({signature(r) for r in REPRESENTATIVES}) == 15


def test_short_words_are_pairwise_distinct():
    words = all_nwords(2)
    assert len({signature(w) for w in words}) == len(words)


def test_preceq_and_equivalent():
    assert preceq(W("~p"), W("!p"))
    assert not preceq(W("!p"), W("~p"))
    assert preceq(W("~!p"), W("p"))
    assert equivalent(W("!!!p"), W("!p"))
    assert equivalent(W("~~~p"), W("~p"))
    assert not equivalent(W("!!p"), W("p"))


@pytest.mark.parametrize("a,b", EVEN_IMPLICATIONS + ODD_IMPLICATIONS, ids=lambda w: str(w))
def test_proper_implications(a, b):
    assert preceq(a, b)
    assert not preceq(b, a)


def test_implications_respect_parity():
    assert all(a.parity == b.parity == 0 for a, b in EVEN_IMPLICATIONS)
    assert all(a.parity == b.parity == 1 for a, b in ODD_IMPLICATIONS)


@pytest.mark.parametrize("word,normal", [
    ("~~~~~p", "~p"),
    ("~!~~p", "~!p"),
    ("!!~~!p", "~~!p"),
    ("!~~!~p", "!~~!!p"),
    ("~!~!p", "~!p"),
    ("!!!!!p", "!p"),
    ("~~!~p", "~~!!p"),
    ("p", "p"),
])
def test_normalize(word, normal):
    assert normalize(W(word)) == W(normal)
    assert normalize_semantic(W(word)) == W(normal)


def test_representatives_are_fixed_points():
    for r in REPRESENTATIVES:
        assert normalize(r) == r
        assert normalize_semantic(r) == r


@given(nwords(10))
def test_normalizers_agree(w):
    assert normalize(w) == normalize_semantic(w)


@pytest.mark.slow
def test_normalizers_agree_on_every_word_up_to_twelve():
    clear_caches()
    start = time.perf_counter()
    disagreements = [w for w in all_nwords(12) if normalize(w) != normalize_semantic(w)]
    assert disagreements == []
    assert time.perf_counter() - start < 30.0


def test_normalization_error_is_a_runtime_error():
    assert issubclass(NormalizationError, RuntimeError)


def test_irreducibility():
    assert is_irreducible(W("!~~!!p"))
    assert not is_irreducible(W("~~~p"))
    assert not is_irreducible(W("!!~~!p"))


def test_census_of_single_negations():
    classes = census(1)
    assert [render(c.representative) for c in classes] == ["p", "~p", "!p"]
    assert all(c.member_count == 1 for c in classes)


def test_census_reaches_fifteen_classes():
    classes = census(5)
    assert [c.representative for c in classes] == list(REPRESENTATIVES)
    assert sum(c.member_count for c in classes) == len(all_nwords(5))
    longest = next(c for c in classes if render(c.representative) == "!~~!!p")
    assert [render(m) for m in longest.irreducible_members] == ["!~~!!p"]


def test_census_is_stable():
    assert [c.signature for c in census(8)] == [c.signature for c in census(5)]


def test_census_rejects_negative_length():
    with pytest.raises(ValueError):
        census(-1)


def test_class_to_dict():
    record = census(2)[0].to_dict()
    assert record == {"representative": "p", "signature": "-+--+--+-", "member_count": 1, "irreducible_members": ["p"]}


def test_signature_criterion_on_empty_word():
    report = verify_signature_criterion(0, DEFAULT_BOUND)
    assert report.pairs_checked == 1 and report.ok


def test_signature_criterion_up_to_three():
    report = verify_signature_criterion(3, DEFAULT_BOUND)
    assert report.pairs_checked == 15 * 15
    assert report.ok


@pytest.mark.slow
def test_signature_criterion_up_to_six():
    assert verify_signature_criterion(6, DEFAULT_BOUND).ok


@pytest.mark.parametrize("max_len,budget", [(5, 1.0), (8, 5.0)])
def test_census_time_budget(max_len, budget):
    clear_caches()
    start = time.perf_counter()
    census(max_len)
    assert time.perf_counter() - start < budget
