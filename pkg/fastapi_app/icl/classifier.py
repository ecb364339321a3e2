"""
Signatures, equivalence and the fifteen classes of negation-words.

A word's signature is its validity row over the nine canonical contexts.
Two words are equivalent iff their signatures agree, and a ⪯ b iff a's
signature implies b's bitwise.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional

from icl.enumeration import CONTEXT_IDS, SearchBound, canonical_suite, check_validity
from icl.formula import Formula, Imp, NWord, all_nwords, nword_to_formula, parse_nword, render, variables_of
from icl.kripke import valid_in

logger = logging.getLogger(__name__)


class NormalizationError(RuntimeError):
    """Raised when a word cannot be brought to one of the fifteen representatives."""


@dataclass(frozen=True)
class Signature:
    bits: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(bool(b) for b in self.bits))
        if len(self.bits) != len(CONTEXT_IDS):
            raise ValueError(f"a signature has {len(CONTEXT_IDS)} bits, got {len(self.bits)}")

    @classmethod
    def from_string(cls, text: str) -> "Signature":
        cells = text.replace(" ", "").replace("−", "-")
        if set(cells) - {"+", "-"}:
            raise ValueError(f"signature cells must be + or -: {text!r}")
        return cls(tuple(c == "+" for c in cells))

    def __iter__(self) -> Iterator[bool]:
        return iter(self.bits)

    def __getitem__(self, cid: str) -> bool:
        return self.bits[CONTEXT_IDS.index(cid)]

    def __str__(self) -> str:
        return "".join("+" if b else "-" for b in self.bits)

    def implies(self, other: "Signature") -> bool:
        return all(b for a, b in zip(self.bits, other.bits) if a)

    def valid_contexts(self) -> tuple[str, ...]:
        return tuple(cid for cid, b in zip(CONTEXT_IDS, self.bits) if b)

    def as_dict(self) -> dict[str, bool]:
        return dict(zip(CONTEXT_IDS, self.bits))


def _words(*texts: str) -> tuple[NWord, ...]:
    return tuple(parse_nword(t) for t in texts)


REPRESENTATIVES = _words(
    "p", "~p", "!p",
    "~~p", "~!p", "!~p", "!!p",
    "~~!p", "~!!p", "!~~p", "!!~p",
    "~~!!p", "!~~!p", "!!~~p",
    "!~~!!p",
)

# Implications proved valid with invalid converses, as (antecedent, consequent).
EVEN_IMPLICATIONS = tuple(
    (parse_nword(a), parse_nword(b))
    for a, b in [
        ("~!p", "p"),
        ("p", "!!p"),
        ("!!p", "!!~~p"),
        ("!!~~p", "!~p"),
        ("!~p", "~~!!p"),
        ("~!p", "!~~!p"),
        ("!~~!p", "!!p"),
        ("p", "~~p"),
        ("~~p", "!!~~p"),
    ]
)

ODD_IMPLICATIONS = tuple(
    (parse_nword(a), parse_nword(b))
    for a, b in [
        ("~!!p", "~p"),
        ("~p", "!!~p"),
        ("!!~p", "!~~p"),
        ("!~~p", "!p"),
        ("!p", "~~!p"),
        ("~!!p", "!~~!!p"),
        ("!~~!!p", "!!~p"),
    ]
)


@lru_cache(maxsize=4096)
def formula_signature(f: Formula) -> Signature:
    """Validity row of a formula in p alone (constants allowed)."""
    if variables_of(f) - {1}:
        raise ValueError(f"signatures are defined for formulas in p only: {render(f)}")
    return Signature(tuple(valid_in(ctx.model, f) for ctx in canonical_suite()))


@lru_cache(maxsize=2**16)
def signature(w: NWord) -> Signature:
    return formula_signature(nword_to_formula(w))


def preceq(a: NWord, b: NWord) -> bool:
    return signature(a).implies(signature(b))


def equivalent(a: NWord, b: NWord) -> bool:
    return signature(a) == signature(b)


# --- Rewrite normalizer ---

@dataclass(frozen=True)
class RewriteRule:
    name: str
    apply: Callable[[str], Optional[str]]


def _substring(pattern: str, replacement: str) -> RewriteRule:
    def apply(s: str) -> Optional[str]:
        i = s.find(pattern)
        if i < 0:
            return None
        return s[:i] + replacement + s[i + len(pattern):]

    return RewriteRule(f"{pattern}->{replacement}", apply)


def _absorb(s: str) -> Optional[str]:
    # ~!v.p reduces to ~!p for even |v| and to ~!!p for odd |v|
    start = 0
    while (i := s.find("~!", start)) >= 0:
        rest = len(s) - i - 2
        if rest >= 1:
            result = s[:i] + ("~!" if rest % 2 == 0 else "~!!")
            if result != s:
                return result
        start = i + 1
    return None


REWRITE_RULES = (
    _substring("~~~", "~"),
    _substring("!!!", "!"),
    RewriteRule("absorb", _absorb),
    _substring("!!~~!", "~~!"),
    _substring("!~!", "~~!"),
    _substring("~!~", "~!!"),
    _substring("~~!~", "~~!!"),
    _substring("!!~!", "!~~!"),
    _substring("!~~!~", "!~~!!"),
)


def _reduce(s: str) -> str:
    seen = {s}
    while True:
        for rule in REWRITE_RULES:
            rewritten = rule.apply(s)
            if rewritten is not None and rewritten != s:
                break
        else:
            return s
        if rewritten in seen:
            raise NormalizationError(f"rewrite cycle at {s}p via {rule.name}")
        seen.add(rewritten)
        s = rewritten


def _as_word(s: str) -> NWord:
    return parse_nword(s + "p")


def normalize(w: NWord) -> NWord:
    """Rewrite w to its representative, folding negations on from the inside."""
    s = ""
    for kind in reversed(w.negs):
        s = _reduce(kind.value + s)
    result = _as_word(s)
    if result not in _REPRESENTATIVE_SET:
        raise NormalizationError(f"{render(w)} rewrote to {render(result)}, which is not a representative")
    return result


_REPRESENTATIVE_SET = frozenset(REPRESENTATIVES)


@lru_cache(maxsize=1)
def representative_map() -> dict[Signature, NWord]:
    return {signature(r): r for r in REPRESENTATIVES}


def normalize_semantic(w: NWord) -> NWord:
    try:
        return representative_map()[signature(w)]
    except KeyError:
        raise NormalizationError(
            f"signature {signature(w)} of {render(w)} matches none of the fifteen classes"
        ) from None


# --- Census ---

@dataclass(frozen=True)
class EquivClass:
    representative: NWord
    members: tuple[NWord, ...]
    signature: Signature

    @property
    def member_count(self) -> int:
        return len(self.members)

    @property
    def irreducible_members(self) -> tuple[NWord, ...]:
        shortest = min(len(m) for m in self.members)
        return tuple(m for m in self.members if len(m) == shortest)

    def to_dict(self) -> dict:
        return {
            "representative": render(self.representative),
            "signature": str(self.signature),
            "member_count": self.member_count,
            "irreducible_members": [render(m) for m in self.irreducible_members],
        }


def is_irreducible(w: NWord) -> bool:
    """No shorter word is equivalent to w."""
    return len(normalize_semantic(w)) == len(w)


def census(max_len: int) -> list[EquivClass]:
    """Partition every word up to max_len by signature."""
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    groups: dict[Signature, list[NWord]] = {}
    for w in all_nwords(max_len):
        groups.setdefault(signature(w), []).append(w)

    classes = []
    for sig, members in groups.items():
        members.sort(key=NWord.sort_key)
        representative = normalize(members[0])
        if representative not in members:
            raise NormalizationError(f"representative {render(representative)} missing from its class")
        classes.append(EquivClass(representative, tuple(members), sig))
    classes.sort(key=lambda c: c.representative.sort_key())
    logger.info(f"census up to length {max_len}: {len(classes)} classes")
    return classes


# --- Oracle cross-check ---

@dataclass
class CriterionReport:
    max_len: int
    bound: SearchBound
    pairs_checked: int = 0
    disagreements: list[tuple[NWord, NWord, bool, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def verify_signature_criterion(
    max_len: int, bound: SearchBound, words: Optional[Iterable[NWord]] = None
) -> CriterionReport:
    """Compare signature-subset ⪯ with bounded countermodel search on every ordered pair."""
    pool = list(words) if words is not None else all_nwords(max_len)
    report = CriterionReport(max_len, bound)
    for a in pool:
        for b in pool:
            by_signature = preceq(a, b)
            by_search = check_validity(Imp(nword_to_formula(a), nword_to_formula(b)), bound)
            report.pairs_checked += 1
            if by_signature != by_search:
                logger.warning(
                    f"criterion disagreement on {render(a)} -> {render(b)}: "
                    f"signature says {by_signature}, search says {by_search}"
                )
                report.disagreements.append((a, b, by_signature, by_search))
    return report
