"""
The implication order on class representatives, optionally with 0, bot and 1.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Union

import networkx as nx

from icl.classifier import REPRESENTATIVES, Signature, formula_signature, preceq
from icl.enumeration import DEFAULT_BOUND, SearchBound, check_validity
from icl.formula import BOT, ONE, ZERO, Formula, Imp, NWord, nword_to_formula, render

logger = logging.getLogger(__name__)

CONSTANTS: dict[str, Formula] = {"0": ZERO, "bot": BOT, "1": ONE}
PRETTY_CONSTANTS = {"0": "0", "bot": "⊥", "1": "1"}

# Covers of the published diagram of the 15 classes with 0, bot and 1.
FIGURE_COVERS: frozenset[tuple[str, str]] = frozenset({
    ("~!p", "p"), ("p", "!!p"), ("!!p", "!!~~p"), ("!!~~p", "!~p"), ("!~p", "~~!!p"),
    ("~!p", "!~~!p"), ("!~~!p", "!!p"), ("p", "~~p"), ("~~p", "!!~~p"),
    ("~!!p", "~p"), ("~p", "!!~p"), ("!!~p", "!~~p"), ("!~~p", "!p"), ("!p", "~~!p"),
    ("~!!p", "!~~!!p"), ("!~~!!p", "!!~p"),
    ("~~!!p", "1"), ("~~!p", "1"),
    ("0", "~!p"), ("0", "bot"), ("0", "~!!p"),
    ("bot", "!~~!p"), ("bot", "!~~!!p"),
})


@dataclass(frozen=True)
class PosetNode:
    label: Union[NWord, str]
    signature: Signature

    @property
    def name(self) -> str:
        return render(self.label) if isinstance(self.label, NWord) else self.label

    @property
    def pretty(self) -> str:
        if isinstance(self.label, NWord):
            return render(self.label, pretty=True)
        return PRETTY_CONSTANTS[self.label]

    @property
    def formula(self) -> Formula:
        if isinstance(self.label, NWord):
            return nword_to_formula(self.label)
        return CONSTANTS[self.label]

    @property
    def is_constant(self) -> bool:
        return not isinstance(self.label, NWord)


@dataclass(frozen=True)
class Poset:
    nodes: tuple[PosetNode, ...]
    order: frozenset[tuple[str, str]]
    hasse: frozenset[tuple[str, str]] = frozenset()
    # constant pairs where signature subset and bounded search disagree
    discrepancies: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def node(self, name: str) -> PosetNode:
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(name)

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.order


def build_poset(
    include_constants: bool,
    bound: SearchBound = DEFAULT_BOUND,
    words: Optional[Iterable[NWord]] = None,
) -> Poset:
    """Order the representatives (or the given words) by ⪯; constants go through the oracle."""
    nodes = [PosetNode(w, formula_signature(nword_to_formula(w))) for w in (REPRESENTATIVES if words is None else words)]
    if include_constants:
        nodes += [PosetNode(name, formula_signature(f)) for name, f in CONSTANTS.items()]

    order = set()
    discrepancies = []
    for a in nodes:
        for b in nodes:
            if not a.is_constant and not b.is_constant:
                holds = preceq(a.label, b.label)
            else:
                holds = check_validity(Imp(a.formula, b.formula), bound)
                if holds != a.signature.implies(b.signature):
                    logger.warning(f"constant edge {a.name} -> {b.name}: search says {holds}, signatures disagree")
                    discrepancies.append((a.name, b.name))
            if holds:
                order.add((a.name, b.name))

    poset = Poset(tuple(nodes), frozenset(order), discrepancies=tuple(discrepancies))
    poset = replace(poset, hasse=frozenset(hasse_edges(poset)))
    logger.info(f"poset with {len(nodes)} nodes, {len(poset.order)} order pairs, {len(poset.hasse)} covers")
    return poset


def hasse_edges(p: Poset) -> set[tuple[str, str]]:
    """Covering pairs (lower, upper) of the order."""
    graph = nx.DiGraph()
    graph.add_nodes_from(n.name for n in p.nodes)
    graph.add_edges_from((a, b) for (a, b) in p.order if a != b)
    return set(nx.transitive_reduction(graph).edges())


def ranks(p: Poset) -> dict[str, int]:
    """Longest chain of covers from a minimal node."""
    graph = nx.DiGraph()
    graph.add_nodes_from(n.name for n in p.nodes)
    graph.add_edges_from(p.hasse)
    rank: dict[str, int] = {}
    for v in nx.topological_sort(graph):
        rank[v] = max((rank[u] + 1 for u in graph.predecessors(v)), default=0)
    return rank


def emit_dot(p: Poset) -> str:
    rank = ranks(p)
    lines = [
        "digraph poset {",
        "  rankdir=BT;",
        "  node [shape=plaintext];",
        "  edge [arrowhead=none];",
    ]
    for n in p.nodes:
        lines.append(f'  "{n.name}" [label="{n.pretty}"];')
    for level in sorted(set(rank.values())):
        members = " ".join(f'"{n.name}";' for n in p.nodes if rank[n.name] == level)
        lines.append(f"  {{ rank=same; {members} }}")
    for a, b in sorted(p.hasse):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_json(p: Poset) -> dict:
    return {
        "nodes": [{"label": n.name, "signature": str(n.signature)} for n in p.nodes],
        "covers": [[a, b] for a, b in sorted(p.hasse)],
    }
