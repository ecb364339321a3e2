"""
Formulas of Intuitionistic Control Logic and negation-words.

The full language has variables p, p2, p3, ..., the constants 0, 1 and bot,
the connectives &, |, -> and two primitive negations: ~ (intuitionistic,
A -> 0) and ! (bot-negation, A -> bot). A <-> B is sugar for
(A -> B) & (B -> A) and never survives parsing.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError


class FormulaSyntaxError(ValueError):
    """Raised when a formula or negation-word does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


# --- Abstract syntax tree ---
# Node hashes include the node class: IntNeg(x) and PerpNeg(x) must not
# collide, or every word of one length shares a bucket in the caches.

@dataclass(frozen=True)
class Variable:
    index: int = 1

    def __hash__(self) -> int:
        return hash(("Variable", self.index))


@dataclass(frozen=True)
class ConstZero:
    def __hash__(self) -> int:
        return hash("ConstZero")


@dataclass(frozen=True)
class ConstOne:
    def __hash__(self) -> int:
        return hash("ConstOne")


@dataclass(frozen=True)
class ConstBot:
    def __hash__(self) -> int:
        return hash("ConstBot")


@dataclass(frozen=True)
class _Unary:
    child: "Formula"
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.child)))

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True)
class _Binary:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((type(self).__name__, self.left, self.right))
        )

    def __hash__(self) -> int:
        return self._hash


@dataclass(frozen=True, eq=False)
class IntNeg(_Unary):
    pass


@dataclass(frozen=True, eq=False)
class PerpNeg(_Unary):
    pass


@dataclass(frozen=True, eq=False)
class And(_Binary):
    pass


@dataclass(frozen=True, eq=False)
class Or(_Binary):
    pass


@dataclass(frozen=True, eq=False)
class Imp(_Binary):
    pass


Formula = Union[Variable, ConstZero, ConstOne, ConstBot, IntNeg, PerpNeg, And, Or, Imp]

P = Variable(1)
ZERO = ConstZero()
ONE = ConstOne()
BOT = ConstBot()


class NegKind(enum.Enum):
    INT = "~"
    PERP = "!"

    @property
    def rank(self) -> int:
        # Int sorts before Perp
        return 0 if self is NegKind.INT else 1


@dataclass(frozen=True)
class NWord:
    """A sequence of negations applied to p, outermost first."""

    negs: tuple[NegKind, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "negs", tuple(self.negs))

    def __len__(self) -> int:
        return len(self.negs)

    def __iter__(self) -> Iterator[NegKind]:
        return iter(self.negs)

    @property
    def parity(self) -> int:
        return len(self.negs) % 2

    def prefixed(self, prefix: "NWord | Iterable[NegKind]") -> "NWord":
        """The word prefix·self (prefix applied outside)."""
        return NWord(tuple(prefix) + self.negs)

    def sort_key(self) -> tuple:
        return (len(self.negs), tuple(n.rank for n in self.negs))

    def __str__(self) -> str:
        return render(self)


def all_nwords(max_len: int) -> list[NWord]:
    """Every word of length <= max_len, by length then Int < Perp."""
    words = [NWord()]
    layer = [NWord()]
    for _ in range(max_len):
        layer = [NWord(w.negs + (kind,)) for w in layer for kind in NegKind]
        words.extend(layer)
    return sorted(words, key=NWord.sort_key)


def variables_of(formula: Formula) -> frozenset[int]:
    match formula:
        case Variable(index=index):
            return frozenset({index})
        case IntNeg(child=child) | PerpNeg(child=child):
            return variables_of(child)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return variables_of(left) | variables_of(right)
        case _:
            return frozenset()


def nword_to_formula(word: NWord, defined: bool = False) -> Formula:
    """Fold the word over p; with defined=True use A -> 0 and A -> bot."""
    formula: Formula = P
    for kind in reversed(word.negs):
        if defined:
            formula = Imp(formula, ZERO if kind is NegKind.INT else BOT)
        elif kind is NegKind.INT:
            formula = IntNeg(formula)
        else:
            formula = PerpNeg(formula)
    return formula


# --- Parsing ---

ICL_GRAMMAR = r"""
    ?formula: imp

    ?imp: disj
        | disj "->" imp                 -> implies
        | disj "<->" imp                -> iff

    ?disj: conj
         | disj "|" conj                -> or_

    ?conj: unary
         | conj "&" unary               -> and_

    ?unary: "~" unary                   -> int_neg
          | PERP unary                  -> perp_neg
          | atom

    ?atom: VAR                          -> var
         | "0"                          -> zero
         | "1"                          -> one
         | BOT                          -> bot
         | "(" formula ")"

    PERP: "!" | "¬"
    BOT: "bot" | "⊥"
    VAR: /p([1-9][0-9]*)?/

    %import common.WS
    %ignore WS
"""

NWORD_GRAMMAR = r"""
    start: NEG* "p"

    NEG: "~" | "!" | "¬"

    %import common.WS
    %ignore WS
"""


@v_args(inline=True)
class _ToFormula(Transformer):
    def var(self, token):
        digits = str(token)[1:]
        return Variable(int(digits) if digits else 1)

    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def bot(self, _token):
        return BOT

    def int_neg(self, child):
        return IntNeg(child)

    def perp_neg(self, _token, child):
        return PerpNeg(child)

    def and_(self, left, right):
        return And(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def implies(self, left, right):
        return Imp(left, right)

    def iff(self, left, right):
        return And(Imp(left, right), Imp(right, left))

    def start(self, *tokens):
        return NWord(tuple(NegKind.INT if str(t) == "~" else NegKind.PERP for t in tokens))


_formula_parser = Lark(ICL_GRAMMAR, start="formula", parser="lalr", transformer=_ToFormula())
_nword_parser = Lark(NWORD_GRAMMAR, parser="lalr", transformer=_ToFormula())


def _parse(parser: Lark, text: str, what: str):
    if not text.strip():
        raise FormulaSyntaxError(f"empty {what}", 0)
    try:
        return parser.parse(text)
    except UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        if position is None or position < 0:
            position = len(text)
        raise FormulaSyntaxError(f"invalid {what} {text!r}", position) from e
    except VisitError as e:
        raise FormulaSyntaxError(f"invalid {what} {text!r}: {e.orig_exc}", 0) from e


def parse_formula(text: str) -> Formula:
    return _parse(_formula_parser, text, "formula")


def parse_nword(text: str) -> NWord:
    return _parse(_nword_parser, text, "negation-word")


# --- Rendering ---

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


def _precedence(formula: Formula) -> int:
    match formula:
        case Imp():
            return _PREC_IMP
        case Or():
            return _PREC_OR
        case And():
            return _PREC_AND
        case _:
            return _PREC_UNARY


def _render(formula: Formula, context: int, pretty: bool) -> str:
    match formula:
        case Variable(index=1):
            text = "p"
        case Variable(index=index):
            text = f"p{index}"
        case ConstZero():
            text = "0"
        case ConstOne():
            text = "1"
        case ConstBot():
            text = "⊥" if pretty else "bot"
        case IntNeg(child=child):
            text = "~" + _render(child, _PREC_UNARY, pretty)
        case PerpNeg(child=child):
            text = ("¬" if pretty else "!") + _render(child, _PREC_UNARY, pretty)
        case And(left, right):
            text = f"{_render(left, _PREC_AND, pretty)} & {_render(right, _PREC_UNARY, pretty)}"
        case Or(left, right):
            text = f"{_render(left, _PREC_OR, pretty)} | {_render(right, _PREC_AND, pretty)}"
        case Imp(left, right):
            text = f"{_render(left, _PREC_OR, pretty)} -> {_render(right, _PREC_IMP, pretty)}"
        case _:
            raise TypeError(f"not a formula: {formula!r}")
    return f"({text})" if _precedence(formula) < context else text


def render(x: Formula | NWord, pretty: bool = False) -> str:
    """Canonical text of a formula or word; pretty=True uses ¬ and ⊥."""
    if isinstance(x, NWord):
        negs = "".join(("¬" if pretty and n is NegKind.PERP else n.value) for n in x.negs)
        return negs + "p"
    return _render(x, 0, pretty)
