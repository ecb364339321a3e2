"""
The printed validity tables for all words up to length 5, kept exactly as
published, and the audit that recomputes every cell.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from icl.classifier import Signature, signature
from icl.enumeration import CONTEXT_IDS
from icl.formula import NWord, parse_nword, render

logger = logging.getLogger(__name__)

# (word, cells in column order c0 c1 m00 m01 m11 V i0 i1 i01), as printed.
PRINTED_ROWS: tuple[tuple[str, str], ...] = (
    ("p", "-+--+--++"),
    ("~p", "+-+---+--"),
    ("!p", "+-++-++++"),
    ("~~p", "-+-++--+-"),
    ("~!p", "-+-------"),
    ("!~p", "-+-++++++"),
    ("!!p", "-+--+-+++"),
    ("~~~p", "+-+---+--"),
    ("~~!p", "+-+++++++"),
    ("~!~p", "+--------"),
    ("~!!p", "+--------"),
    ("!~~p", "+-+--++++"),
    ("!~!p", "+-+++++++"),
    ("!!~p", "+-+---+++"),
    ("!!!p", "+-++-++++"),
    ("~~~~p", "-+-++--+-"),
    ("~~~!p", "-+-------"),
    ("~~!~p", "-++++++++"),
    ("~~!!p", "-++++++++"),
    ("~!~~p", "-+-------"),
    ("~!~!p", "-+-------"),
    ("~!!~p", "-+-------"),
    ("~!!!p", "-+-------"),
    ("!~~~p", "-+-++++++"),
    ("!~~!p", "-+----+++"),
    ("!~!~p", "-++++++++"),
    ("!~!!p", "-++++++++"),
    ("!!~~p", "-+-++-+++"),
    ("!!~!p", "-+----+++"),
    ("!!!~p", "-+-++++++"),
    ("!!!!p", "-+--+-+++"),
    ("~~~~~p", "+-+---+--"),
    ("~~~~!p", "+-+++++++"),
    ("~~~!~p", "+--------"),
    ("~~~!!p", "+--------"),
    ("~~!~~p", "+-+++++++"),
    ("~~!~!p", "+-+++++++"),
    ("~~!!~p", "+-+++++++"),
    ("~~!!!p", "+-+++++++"),
    ("~!~~~p", "+--------"),
    ("~!~~!p", "+--------"),
    ("~!~!~p", "+--------"),
    ("~!~!!p", "+--------"),
    ("~!!~~p", "+--------"),
    ("~!!~!p", "+--------"),
    ("~!!!~p", "+--------"),
    ("~!!!!p", "+--------"),
    ("!~~~~p", "+-+--++++"),
    ("!~~~!p", "+-+++++++"),
    ("!~~!~p", "+-----+++"),
    ("!~~!!p", "+-----+++"),
    ("!~!~~p", "+-+++++++"),
    ("!~!~!p", "+-+++++++"),
    ("!~!!~p", "+-+++++++"),
    ("!~!!!p", "+-+++++++"),
    ("!!~~~p", "+-+---+++"),
    ("!!~~!p", "+-+++++++"),
    ("!!~!~p", "+-----+++"),
    ("!!~!!p", "+-----+++"),
    ("!!!~~p", "+-+--++++"),
    ("!!!~!p", "+-+++++++"),
    ("!!!!~p", "+-+---+++"),
    ("!!!!!p", "-+--+-+++"),
)

# The cells that contradict results proved alongside the table.
EXPECTED_ERRATA: frozenset[tuple[str, str]] = frozenset(
    {("p", "i01")} | {("!!!!!p", cid) for cid in ("c0", "c1", "m00", "m01", "m11", "V")}
)

JUSTIFICATIONS = {
    "p": "p -> ~~p is valid, yet ~~p is printed invalid in i(○,●)",
    "!!!!!p": "odd runs of ! collapse, so !!!!!p ≡ !p, yet the row is printed as !!!!p",
}


@dataclass(frozen=True)
class AppendixFixture:
    rows: tuple[tuple[NWord, Signature], ...]

    def __post_init__(self):
        if len(self.rows) != 63:
            raise ValueError(f"the printed table has 63 rows, got {len(self.rows)}")

    def printed(self, w: NWord) -> Signature:
        for word, cells in self.rows:
            if word == w:
                return cells
        raise KeyError(render(w))


def load_fixture(rows: tuple[tuple[str, str], ...] = PRINTED_ROWS) -> AppendixFixture:
    return AppendixFixture(tuple((parse_nword(w), Signature.from_string(cells)) for w, cells in rows))


@dataclass(frozen=True)
class Mismatch:
    word: NWord
    context: str
    printed: bool
    computed: bool
    justification: Optional[str] = None

    @property
    def expected(self) -> bool:
        return (render(self.word), self.context) in EXPECTED_ERRATA

    def to_dict(self) -> dict:
        return {
            "word": render(self.word),
            "context": self.context,
            "printed": "+" if self.printed else "-",
            "computed": "+" if self.computed else "-",
            "justification": self.justification,
        }


def find_mismatches(fixture: Optional[AppendixFixture] = None) -> list[Mismatch]:
    """Every printed cell that differs from direct evaluation."""
    fixture = fixture or load_fixture()
    mismatches = []
    for word, printed in fixture.rows:
        computed = signature(word)
        for cid, a, b in zip(CONTEXT_IDS, printed, computed):
            if a != b:
                key = (render(word), cid)
                justification = JUSTIFICATIONS.get(key[0]) if key in EXPECTED_ERRATA else None
                if justification is None:
                    logger.warning(f"unexplained mismatch at {key[0]}, {cid}: printed {a}, computed {b}")
                mismatches.append(Mismatch(word, cid, a, b, justification))
    return mismatches


def errata_as_expected(mismatches: list[Mismatch]) -> bool:
    return {(render(m.word), m.context) for m in mismatches} == EXPECTED_ERRATA
