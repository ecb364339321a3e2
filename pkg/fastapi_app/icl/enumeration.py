"""
The nine evaluation contexts and bounded enumeration of rooted models.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from icl.formula import Formula, variables_of
from icl.kripke import RModel, load_model, truth_set

logger = logging.getLogger(__name__)

CONTEXT_IDS = ("c0", "c1", "m00", "m01", "m11", "V", "i0", "i1", "i01")

CONTEXT_LABELS = {
    "c0": "○",
    "c1": "●",
    "m00": "○/○",
    "m01": "●/○",
    "m11": "●/●",
    "V": "V",
    "i0": "i(○)",
    "i1": "i(●)",
    "i01": "i(○,●)",
}

ROOTED_CONTEXT_IDS = CONTEXT_IDS[:6]


@dataclass(frozen=True)
class SearchBound:
    max_worlds: int
    max_height: Optional[int] = None

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError(f"max_worlds must be positive, got {self.max_worlds}")
        if self.max_height is not None and self.max_height < 1:
            raise ValueError(f"max_height must be positive or None, got {self.max_height}")

    def __str__(self) -> str:
        height = "unbounded" if self.max_height is None else self.max_height
        return f"({self.max_worlds} worlds, height {height})"


DEFAULT_BOUND = SearchBound(4, 3)


@dataclass(frozen=True)
class EvalContext:
    id: str
    model: RModel

    @property
    def label(self) -> str:
        return CONTEXT_LABELS[self.id]

    @property
    def rooted(self) -> bool:
        return not self.model.pseudo


_SUITE_SPECS = {
    "c0": {"worlds": ["r"], "root": "r"},
    "c1": {"worlds": ["r"], "root": "r", "valuation": {"r": ["p"]}},
    "m00": {"worlds": ["r", "a"], "root": "r", "order": [["r", "a"]]},
    "m01": {"worlds": ["r", "a"], "root": "r", "order": [["r", "a"]], "valuation": {"a": ["p"]}},
    "m11": {"worlds": ["r", "a"], "root": "r", "order": [["r", "a"]], "valuation": {"r": ["p"], "a": ["p"]}},
    "V": {"worlds": ["r", "a", "b"], "root": "r", "order": [["r", "a"], ["r", "b"]], "valuation": {"b": ["p"]}},
    "i0": {"worlds": ["a"], "pseudo": True},
    "i1": {"worlds": ["b"], "valuation": {"b": ["p"]}, "pseudo": True},
    "i01": {"worlds": ["a", "b"], "valuation": {"b": ["p"]}, "pseudo": True},
}


@lru_cache(maxsize=None)
def canonical_suite() -> tuple[EvalContext, ...]:
    """c0, c1, m00, m01, m11, V, i0, i1, i01 in column order."""
    return tuple(EvalContext(cid, load_model(_SUITE_SPECS[cid])) for cid in CONTEXT_IDS)


def context(cid: str) -> EvalContext:
    try:
        return canonical_suite()[CONTEXT_IDS.index(cid)]
    except ValueError:
        raise KeyError(f"unknown context id: {cid!r}") from None


# --- Isomorphism ---

def canonical_form(m: RModel) -> tuple:
    """Least encoding of m over all relabelings; equal iff isomorphic."""
    if m.pseudo:
        movable, fixed = list(m.worlds), []
    else:
        movable, fixed = [w for w in m.worlds if w != m.root], [m.root]
    best = None
    for perm in itertools.permutations(movable):
        index = {w: i for i, w in enumerate(fixed + list(perm))}
        encoding = (
            m.pseudo,
            len(m.worlds),
            tuple(sorted((index[u], index[v]) for (u, v) in m.leq)),
            tuple(tuple(sorted(m.atoms(w))) for w in fixed + list(perm)),
        )
        if best is None or encoding < best:
            best = encoding
    return best


def isomorphic(a: RModel, b: RModel) -> bool:
    return canonical_form(a) == canonical_form(b)


# --- Enumeration ---

def _frames(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    """Strict orders on 1..n-1 compatible with the natural order, root 0 below all."""
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    for k in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, k):
            strict = set(chosen)
            if all((i, l) in strict for (i, j) in strict for (x, l) in strict if x == j):
                yield frozenset(strict | {(0, j) for j in range(1, n)})


def _height(n: int, strict: frozenset[tuple[int, int]]) -> int:
    longest = [1] * n
    for j in range(n):
        for i in range(j):
            if (i, j) in strict:
                longest[j] = max(longest[j], longest[i] + 1)
    return max(longest)


def _atom_sets(num_vars: int) -> list[frozenset[int]]:
    atoms = range(1, num_vars + 1)
    return [frozenset(c) for k in range(num_vars + 1) for c in itertools.combinations(atoms, k)]


def _encode(n: int, strict, vals, perm) -> tuple:
    # perm maps old index to new index, root stays 0
    return (
        tuple(sorted((perm[i], perm[j]) for (i, j) in strict)),
        tuple(tuple(sorted(vals[perm.index(k)])) for k in range(n)),
    )


@lru_cache(maxsize=32)
def _rmodels(max_worlds: int, max_height: Optional[int], num_vars: int) -> tuple[RModel, ...]:
    models: list[RModel] = []
    atom_sets = _atom_sets(num_vars)
    for n in range(1, max_worlds + 1):
        seen: set[tuple] = set()
        perms = [(0,) + p for p in itertools.permutations(range(1, n))]
        names = ["r"] + [f"w{i}" for i in range(1, n)]
        for strict in _frames(n):
            if max_height is not None and _height(n, strict) > max_height:
                continue
            for vals in itertools.product(atom_sets, repeat=n):
                if any(not vals[i] <= vals[j] for (i, j) in strict):
                    continue
                key = min(_encode(n, strict, vals, p) for p in perms)
                if key in seen:
                    continue
                seen.add(key)
                leq = {(names[i], names[j]) for (i, j) in strict} | {(w, w) for w in names}
                models.append(RModel.of(names, leq, {names[i]: vals[i] for i in range(n)}, root="r"))
    logger.info(
        f"enumerated {len(models)} rooted models up to {max_worlds} worlds, "
        f"height {max_height}, {num_vars} variable(s)"
    )
    return tuple(models)


def enumerate_rmodels(bound: SearchBound, num_vars: int = 1) -> Iterator[RModel]:
    """Every rooted model within bound, up to isomorphism, in a fixed order."""
    if num_vars < 1:
        raise ValueError(f"num_vars must be positive, got {num_vars}")
    yield from _rmodels(bound.max_worlds, bound.max_height, num_vars)


def find_countermodel(f: Formula, bound: SearchBound) -> Optional[tuple[RModel, str]]:
    """The first enumerated model refuting f, with its root as refuting world."""
    num_vars = max(variables_of(f), default=1)
    for m in enumerate_rmodels(bound, num_vars):
        if m.root not in truth_set(m, f):
            logger.debug(f"countermodel with {len(m.worlds)} worlds")
            return m, m.root
    return None


def check_validity(f: Formula, bound: SearchBound) -> bool:
    return find_countermodel(f, bound) is None


def suite_countermodel(f: Formula) -> Optional[EvalContext]:
    """The first rooted canonical context refuting f."""
    for ctx in canonical_suite():
        if ctx.rooted and ctx.model.root not in truth_set(ctx.model, f):
            return ctx
    return None
