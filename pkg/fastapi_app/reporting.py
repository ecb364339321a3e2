"""
Text and JSON renderings shared by the CLI, the API and the dashboard.
"""
import json
import logging
from typing import Iterable

import pandas as pd

from icl.appendix import Mismatch
from icl.classifier import EquivClass, is_irreducible, normalize, normalize_semantic, signature
from icl.enumeration import CONTEXT_IDS, CONTEXT_LABELS
from icl.formula import Formula, NWord, all_nwords, render
from icl.kripke import RModel, model_to_spec, truth_set, valid_in

logger = logging.getLogger(__name__)

TABLE_FORMATS = ("csv", "markdown", "json")


def _cell(value: bool) -> str:
    return "+" if value else "-"


def validity_table(max_len: int) -> pd.DataFrame:
    """One row per word up to max_len, one +/- column per context id."""
    words = all_nwords(max_len)
    rows = [[_cell(b) for b in signature(w)] for w in words]
    frame = pd.DataFrame(rows, columns=list(CONTEXT_IDS), index=[render(w) for w in words])
    frame.index.name = "word"
    return frame


def _markdown(headers: list[str], rows: Iterable[list[str]]) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def format_table(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return frame.to_csv(lineterminator="\n")
    if fmt == "json":
        return frame.reset_index().to_json(orient="records", force_ascii=False, indent=2) + "\n"
    if fmt == "markdown":
        headers = ["word"] + [CONTEXT_LABELS[c] for c in frame.columns]
        rows = (
            [word.replace("!", "¬")] + [str(v) for v in values]
            for word, values in zip(frame.index, frame.itertuples(index=False))
        )
        return _markdown(headers, rows)
    raise ValueError(f"unknown table format: {fmt!r} (expected one of {', '.join(TABLE_FORMATS)})")


def census_records(classes: list[EquivClass]) -> list[dict]:
    return [c.to_dict() for c in classes]


def format_census(classes: list[EquivClass], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(census_records(classes), ensure_ascii=False, indent=2) + "\n"
    frame = pd.DataFrame(census_records(classes))
    frame["irreducible_members"] = frame["irreducible_members"].map(", ".join)
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    if fmt == "markdown":
        rows = (
            [render(c.representative, pretty=True), str(c.signature), str(c.member_count),
             ", ".join(render(m, pretty=True) for m in c.irreducible_members)]
            for c in classes
        )
        return _markdown(["representative", "signature", "members", "irreducible"], rows)
    raise ValueError(f"unknown census format: {fmt!r}")


def format_errata(mismatches: list[Mismatch], fmt: str) -> str:
    records = [m.to_dict() for m in mismatches]
    if fmt == "json":
        return json.dumps(records, ensure_ascii=False, indent=2) + "\n"
    frame = pd.DataFrame(records, columns=["word", "context", "printed", "computed", "justification"])
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    rows = (
        [r["word"].replace("!", "¬"), CONTEXT_LABELS[r["context"]], r["printed"], r["computed"], r["justification"] or "unexplained"]
        for r in records
    )
    return _markdown(["word", "context", "printed", "computed", "justification"], rows)


def classify_report(w: NWord) -> dict:
    return {
        "word": render(w),
        "normalized": render(normalize(w)),
        "normalized_semantic": render(normalize_semantic(w)),
        "signature": str(signature(w)),
        "irreducible": is_irreducible(w),
    }


def eval_report(m: RModel, f: Formula) -> dict:
    forced = truth_set(m, f)
    return {
        "formula": render(f),
        "worlds": {u: u in forced for u in m.worlds},
        "valid": valid_in(m, f),
    }


def format_eval(report: dict) -> str:
    lines = [f"{u}:{_cell(v)}" for u, v in report["worlds"].items()]
    lines.append("valid" if report["valid"] else "invalid")
    return "\n".join(lines) + "\n"


def describe_model(m: RModel) -> str:
    """Short picture of a model: worlds with ○/● for p, then the covering order."""
    marks = " ".join(f"{u}{'●' if 1 in m.atoms(u) else '○'}" for u in m.worlds)
    covers = [
        f"{u}<{v}" for (u, v) in sorted(m.leq)
        if u != v and not any((u, w) in m.leq and (w, v) in m.leq for w in m.worlds if w not in (u, v))
    ]
    kind = "pseudo" if m.pseudo else f"root {m.root}"
    return f"{marks} [{kind}; {', '.join(covers) or 'no order'}]"


def countermodel_record(m: RModel, world: str) -> dict:
    return {"model": model_to_spec(m), "world": world, "picture": describe_model(m)}
