"""Precision-at-N evaluation of an alignment against a gold test dictionary.

Each test source word is scored a hit at N when any of its gold targets
appears among its top-N retrieved target words; retrieval ranks the full
target vocabulary by the neighborhood-penalized similarity under the mapping.
Source words with several gold targets count as one evaluation unit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import csls
from .embeddings import EmbeddingSet, SeedDictionary

DEFAULT_NS = (1, 5, 10)


@dataclass
class EvalReport:
    direction: str
    p_at: dict[int, float]  # N -> accuracy percentage
    n_evaluated: int
    n_skipped: int
    method_tag: str = ""


def evaluate(
    w: np.ndarray,
    src: EmbeddingSet,
    tgt: EmbeddingSet,
    test_dict: SeedDictionary,
    ns: tuple[int, ...] = DEFAULT_NS,
    csls_k: int = 10,
    method_tag: str = "",
    direction: str = "",
) -> EvalReport:
    """Score the mapping on test pairs; OOV pairs are skipped and counted."""
    ns = tuple(sorted(set(int(n) for n in ns)))
    if not ns or ns[0] < 1:
        raise ValueError("ns must be positive candidate counts")
    gold: dict[str, set[int]] = {}
    skipped = 0
    for s, t in test_dict.pairs:
        if s in src.index and t in tgt.index:
            gold.setdefault(s, set()).add(tgt.index[t])
        else:
            skipped += 1
    if not gold:
        raise ValueError("no test pairs resolve against the vocabularies")

    index = csls.build_index(
        csls.normalize_rows(src.vectors @ w.T), tgt.vectors, csls_k
    )
    rows = np.asarray([src.index[s] for s in gold], dtype=np.int64)
    top = csls.top_targets_for_rows(index, rows, max(ns))
    hits = {n: 0 for n in ns}
    for r, targets in enumerate(gold.values()):
        retrieved = top[r]
        for n in ns:
            if targets.intersection(retrieved[:n].tolist()):
                hits[n] += 1
    p_at = {n: 100.0 * hits[n] / len(gold) for n in ns}
    return EvalReport(
        direction=direction or f"{src.lang}-{tgt.lang}",
        p_at=p_at,
        n_evaluated=len(gold),
        n_skipped=skipped,
        method_tag=method_tag,
    )


def render_report(reports: list[EvalReport]) -> str:
    """Text table: method rows, direction column groups, one P@N per column."""
    if not reports:
        raise ValueError("no reports to render")
    ns = sorted({n for r in reports for n in r.p_at})
    directions = list(dict.fromkeys(r.direction for r in reports))
    methods = list(dict.fromkeys(r.method_tag for r in reports))
    cells: dict[tuple[str, str], EvalReport] = {
        (r.method_tag, r.direction): r for r in reports
    }

    method_width = max(12, max(len(m) for m in methods) + 2)
    col_width = 8
    group_width = col_width * len(ns)
    lines = []
    header1 = " " * method_width + "".join(
        f"{d:<{group_width}}" for d in directions
    )
    header2 = " " * method_width + "".join(
        f"{'P@' + str(n):<{col_width}}" for _ in directions for n in ns
    )
    lines.append(header1.rstrip())
    lines.append(header2.rstrip())
    for m in methods:
        row = f"{m:<{method_width}}"
        for d in directions:
            report = cells.get((m, d))
            for n in ns:
                value = "-" if report is None else f"{report.p_at[n]:.1f}"
                row += f"{value:<{col_width}}"
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def write_reports(reports: list[EvalReport], path: str | Path) -> None:
    """Machine-readable record with stable key order; round-trips exactly."""
    payload = {
        "reports": [
            {
                "direction": r.direction,
                "method_tag": r.method_tag,
                "n_evaluated": r.n_evaluated,
                "n_skipped": r.n_skipped,
                "p_at": {str(n): r.p_at[n] for n in sorted(r.p_at)},
            }
            for r in reports
        ]
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_reports(path: str | Path) -> list[EvalReport]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return [
        EvalReport(
            direction=r["direction"],
            p_at={int(n): float(v) for n, v in r["p_at"].items()},
            n_evaluated=int(r["n_evaluated"]),
            n_skipped=int(r["n_skipped"]),
            method_tag=r["method_tag"],
        )
        for r in payload["reports"]
    ]
