"""
Finite Kripke r-models and pseudosubmodels, and the forcing relation.

A rooted model has a least world, the root; every other world is imaginary
and forces bot. A pseudosubmodel has no root and every world is imaginary.
"""
from __future__ import annotations

import enum
import json
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Mapping, Optional, Union

import networkx as nx
from pydantic import BaseModel, ValidationError

from icl.formula import (
    And, ConstBot, ConstOne, ConstZero, Formula, Imp, IntNeg, Or, PerpNeg, Variable,
)

logger = logging.getLogger(__name__)

ATOM_PATTERN = re.compile(r"^p([1-9][0-9]*)?$")


class UnknownWorldError(KeyError):
    """Raised when a world identifier is not in the model."""

    def __init__(self, world: str):
        super().__init__(world)
        self.world = world

    def __str__(self) -> str:
        return f"unknown world: {self.world!r}"


class DefectKind(str, enum.Enum):
    NOT_REFLEXIVE = "NotReflexive"
    NOT_TRANSITIVE = "NotTransitive"
    NO_LEAST_ROOT = "NoLeastRoot"
    NON_MONOTONE_VALUATION = "NonMonotoneValuation"
    EMPTY_WORLD_SET = "EmptyWorldSet"
    UNKNOWN_WORLD = "UnknownWorld"
    UNEXPECTED_ROOT = "UnexpectedRoot"
    BAD_ATOM = "BadAtom"
    MALFORMED = "Malformed"


@dataclass(frozen=True)
class ModelDefect:
    kind: DefectKind
    witness: Any = None

    def __str__(self) -> str:
        if self.witness is None:
            return self.kind.value
        return f"{self.kind.value}: {self.witness}"

    def to_dict(self) -> dict:
        witness = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return {"kind": self.kind.value, "witness": witness}


class ModelDefectError(ValueError):
    """Raised by load_model when the description does not validate."""

    def __init__(self, defects: list[ModelDefect]):
        super().__init__("; ".join(str(d) for d in defects))
        self.defects = defects


class ModelSpec(BaseModel):
    """Raw JSON description of a model, before validation."""

    worlds: list[str]
    root: Optional[str] = None
    order: list[tuple[str, str]] = []
    valuation: dict[str, list[str]] = {}
    pseudo: bool = False
    close_order: bool = True


def atom_index(atom: str) -> int:
    digits = atom[1:]
    return int(digits) if digits else 1


def atom_name(index: int) -> str:
    return "p" if index == 1 else f"p{index}"


@dataclass(frozen=True)
class RModel:
    """
    A validated finite model.

    leq holds the reflexive-transitive closure of the order. valuation is a
    sorted tuple of (world, atoms) pairs so the model can key caches.
    """

    worlds: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    valuation: tuple[tuple[str, frozenset[int]], ...]
    root: Optional[str] = None
    pseudo: bool = False
    _up: dict = field(init=False, compare=False, repr=False)
    _val: dict = field(init=False, compare=False, repr=False)
    _hash: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        up = {u: frozenset(v for (x, v) in self.leq if x == u) for u in self.worlds}
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_val", dict(self.valuation))
        object.__setattr__(
            self, "_hash", hash((self.worlds, self.leq, self.valuation, self.root, self.pseudo))
        )

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def of(
        cls,
        worlds,
        leq,
        valuation: Mapping[str, frozenset[int]],
        root: Optional[str] = None,
        pseudo: bool = False,
    ) -> "RModel":
        ordered = tuple(sorted(worlds))
        return cls(
            worlds=ordered,
            leq=frozenset(leq),
            valuation=tuple((w, frozenset(valuation.get(w, ()))) for w in ordered),
            root=root,
            pseudo=pseudo,
        )

    def up(self, u: str) -> frozenset[str]:
        try:
            return self._up[u]
        except KeyError:
            raise UnknownWorldError(u) from None

    def atoms(self, u: str) -> frozenset[int]:
        try:
            return self._val[u]
        except KeyError:
            raise UnknownWorldError(u) from None

    def is_imaginary(self, u: str) -> bool:
        return self.pseudo or u != self.root

    @property
    def imaginary_worlds(self) -> frozenset[str]:
        return frozenset(u for u in self.worlds if self.is_imaginary(u))

    @property
    def height(self) -> int:
        """Number of worlds on the longest chain."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.worlds)
        graph.add_edges_from((u, v) for (u, v) in self.leq if u != v and (v, u) not in self.leq)
        return nx.dag_longest_path_length(graph) + 1

    def maximal_worlds(self) -> tuple[str, ...]:
        return tuple(u for u in self.worlds if all((v, u) in self.leq for v in self._up[u]))

    def variables(self) -> frozenset[int]:
        return frozenset().union(*self._val.values())


def _closure(worlds: list[str], order: list[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    graph = nx.DiGraph()
    graph.add_nodes_from(worlds)
    graph.add_edges_from(order)
    closed = nx.transitive_closure(graph, reflexive=True)
    return frozenset(closed.edges())


def validate_model(raw: Union[ModelSpec, Mapping[str, Any]]) -> Union[RModel, list[ModelDefect]]:
    """Validate a raw model description; returns the model or every defect found."""
    if not isinstance(raw, ModelSpec):
        try:
            raw = ModelSpec.model_validate(raw)
        except ValidationError as e:
            return [ModelDefect(DefectKind.MALFORMED, str(e.errors()[0]["msg"]))]

    worlds = sorted(set(raw.worlds))
    if not worlds:
        return [ModelDefect(DefectKind.EMPTY_WORLD_SET)]

    defects: list[ModelDefect] = []
    known = set(worlds)
    for pair in raw.order:
        for w in pair:
            if w not in known:
                defects.append(ModelDefect(DefectKind.UNKNOWN_WORLD, w))
    if raw.root is not None and raw.root not in known:
        defects.append(ModelDefect(DefectKind.UNKNOWN_WORLD, raw.root))
    for w, atoms in raw.valuation.items():
        if w not in known:
            defects.append(ModelDefect(DefectKind.UNKNOWN_WORLD, w))
        for atom in atoms:
            if not ATOM_PATTERN.match(atom):
                defects.append(ModelDefect(DefectKind.BAD_ATOM, atom))
    if raw.pseudo and raw.root is not None:
        defects.append(ModelDefect(DefectKind.UNEXPECTED_ROOT, raw.root))
    if defects:
        return defects

    order = [tuple(pair) for pair in raw.order]
    if raw.close_order:
        leq = _closure(worlds, order)
    else:
        leq = frozenset(order)
        for u in worlds:
            if (u, u) not in leq:
                defects.append(ModelDefect(DefectKind.NOT_REFLEXIVE, u))
        for (u, v) in sorted(leq):
            for (x, w) in sorted(leq):
                if x == v and (u, w) not in leq:
                    defects.append(ModelDefect(DefectKind.NOT_TRANSITIVE, (u, w)))
        leq = _closure(worlds, order)

    root = raw.root
    if not raw.pseudo:
        least = [u for u in worlds if all((u, v) in leq for v in worlds)]
        if root is None and len(least) == 1:
            root = least[0]
        if root is None:
            minimal = tuple(u for u in worlds if all((v, u) not in leq or (u, v) in leq for v in worlds))
            defects.append(ModelDefect(DefectKind.NO_LEAST_ROOT, minimal))
        elif least != [root]:
            # either a world not above the root or a second least world
            above = [v for v in worlds if (root, v) not in leq]
            others = [u for u in least if u != root]
            defects.append(ModelDefect(DefectKind.NO_LEAST_ROOT, (above or others)[0]))

    valuation = {w: frozenset(atom_index(a) for a in raw.valuation.get(w, [])) for w in worlds}
    for (u, v) in sorted(leq):
        if not valuation[u] <= valuation[v]:
            defects.append(ModelDefect(DefectKind.NON_MONOTONE_VALUATION, (u, v)))

    if defects:
        logger.debug(f"model rejected with {len(defects)} defects")
        return defects
    return RModel.of(worlds, leq, valuation, root=None if raw.pseudo else root, pseudo=raw.pseudo)


def load_model(source: Union[str, Path, ModelSpec, Mapping[str, Any]]) -> RModel:
    """Validate a description given as a mapping or a JSON file path; raise on defects."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as f:
            source = json.load(f)
    result = validate_model(source)
    if isinstance(result, list):
        raise ModelDefectError(result)
    return result


def model_to_spec(m: RModel) -> dict:
    """JSON description of a model; validate_model(model_to_spec(m)) == m."""
    spec: dict[str, Any] = {"worlds": list(m.worlds)}
    if not m.pseudo:
        spec["root"] = m.root
    spec["order"] = [[u, v] for (u, v) in sorted(m.leq) if u != v]
    spec["valuation"] = {
        w: [atom_name(i) for i in sorted(atoms)] for (w, atoms) in m.valuation if atoms
    }
    spec["pseudo"] = m.pseudo
    spec["close_order"] = True
    return spec


# --- Forcing ---

@lru_cache(maxsize=2**18)
def truth_set(m: RModel, f: Formula) -> frozenset[str]:
    """The set of worlds of m forcing f."""
    worlds = frozenset(m.worlds)
    match f:
        case Variable(index=index):
            return frozenset(u for u in m.worlds if index in m.atoms(u))
        case ConstZero():
            return frozenset()
        case ConstOne():
            return worlds
        case ConstBot():
            return m.imaginary_worlds
        case And(left, right):
            return truth_set(m, left) & truth_set(m, right)
        case Or(left, right):
            return truth_set(m, left) | truth_set(m, right)
        case Imp(left, right):
            a, b = truth_set(m, left), truth_set(m, right)
            return frozenset(u for u in m.worlds if (m.up(u) & a) <= b)
        case IntNeg(child):
            a = truth_set(m, child)
            return frozenset(u for u in m.worlds if not (m.up(u) & a))
        case PerpNeg(child):
            # only the root can witness a bot-negation failing
            a = truth_set(m, child) - m.imaginary_worlds
            return frozenset(u for u in m.worlds if not (m.up(u) & a))
        case _:
            raise TypeError(f"not a formula: {f!r}")


def forces(m: RModel, u: str, f: Formula) -> bool:
    if u not in m.worlds:
        raise UnknownWorldError(u)
    return u in truth_set(m, f)


def valid_in(m: RModel, f: Formula) -> bool:
    return len(truth_set(m, f)) == len(m.worlds)


def generated_submodel(m: RModel, u: str) -> RModel:
    """Restriction of m to the worlds above u; pseudo iff u is imaginary."""
    above = m.up(u)
    pseudo = m.is_imaginary(u)
    return RModel.of(
        above,
        {(x, y) for (x, y) in m.leq if x in above and y in above},
        {w: m.atoms(w) for w in above},
        root=None if pseudo else u,
        pseudo=pseudo,
    )


def imaginary_part(m: RModel) -> Optional[RModel]:
    """The pseudosubmodel of all worlds strictly above the root, or None."""
    if m.pseudo:
        raise ValueError("imaginary_part expects a rooted model")
    rest = [w for w in m.worlds if w != m.root]
    if not rest:
        return None
    return RModel.of(
        rest,
        {(x, y) for (x, y) in m.leq if x != m.root and y != m.root},
        {w: m.atoms(w) for w in rest},
        pseudo=True,
    )
