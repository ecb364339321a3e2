import pytest

from icl.appendix import (
    EXPECTED_ERRATA, JUSTIFICATIONS, PRINTED_ROWS, errata_as_expected, find_mismatches, load_fixture,
)
from icl.formula import all_nwords, parse_nword, render


def test_fixture_covers_every_word_up_to_five():
    fixture = load_fixture()
    assert len(fixture.rows) == 63
    assert [w for w, _ in fixture.rows] == all_nwords(5)


def test_fixture_requires_all_rows():
    with pytest.raises(ValueError):
        load_fixture(PRINTED_ROWS[:-1])


def test_printed_lookup():
    fixture = load_fixture()
    assert str(fixture.printed(parse_nword("~!p"))) == "-+-------"
    with pytest.raises(KeyError):
        fixture.printed(parse_nword("~~~~~~p"))


def test_exactly_the_known_errata():
    mismatches = find_mismatches()
    assert len(mismatches) == 7
    assert {(render(m.word), m.context) for m in mismatches} == EXPECTED_ERRATA
    assert errata_as_expected(mismatches)
    assert all(m.expected and m.justification for m in mismatches)


def test_remaining_cells_match():
    assert 63 * 9 - len(find_mismatches()) == 560


def test_double_negation_cell():
    cell = next(m for m in find_mismatches() if render(m.word) == "p")
    assert cell.context == "i01"
    assert cell.printed is True and cell.computed is False
    assert cell.justification == JUSTIFICATIONS["p"]
    assert cell.to_dict() == {
        "word": "p", "context": "i01", "printed": "+", "computed": "-", "justification": JUSTIFICATIONS["p"],
    }


def test_five_bot_negations_row_collapses_to_one():
    cells = [m for m in find_mismatches() if render(m.word) == "!!!!!p"]
    assert [m.context for m in cells] == ["c0", "c1", "m00", "m01", "m11", "V"]
    assert all(m.printed != m.computed for m in cells)


def test_partly_corrected_table_is_not_as_expected():
    rows = tuple((w, "-+--+--+-") if w == "p" else (w, cells) for w, cells in PRINTED_ROWS)
    mismatches = find_mismatches(load_fixture(rows))
    assert len(mismatches) == 6
    assert not errata_as_expected(mismatches)
