"""CSV and JSON emission for distributions, ranges, popularity tables and collisions.

Every CSV starts with ``#`` comment lines carrying the run parameters, then
a header row:

* distribution: ``t,count`` (every admissible t, zeros included)
* range: ``size,achieved`` (achieved is 1 or 0)
* popular: ``h,rank,size,count,predicted,match`` (rank 1 is the largest size)
* collisions: ``index,elements,count_eq2,count_ge3``

JSON output carries the same content under the domain field names.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, TextIO

from . import __version__
from .experiments import CollisionReport, ExperimentSpec, PopularRow, SizeDistribution
from .ranges import RangeResult


def _spec_comment(spec: ExperimentSpec) -> str:
    n = spec.n_samples if spec.mode == "sampled" else ""
    seed = f"{spec.seed:#x}" if spec.mode == "sampled" else ""
    return (
        f"# h={spec.h} k={spec.k} q={spec.q} mode={spec.mode} n={n} seed={seed} "
        f"tool-version={__version__}"
    )


def _spec_dict(spec: ExperimentSpec) -> dict:
    return {
        "h": spec.h,
        "k": spec.k,
        "q": spec.q,
        "mode": spec.mode,
        "n_samples": spec.n_samples,
        "seed": spec.seed,
    }


def distribution_csv(dist: SizeDistribution) -> str:
    buf = io.StringIO()
    buf.write(_spec_comment(dist.spec) + "\n")
    buf.write(f"# total={dist.total}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "count"])
    w.writerows(dist.table())
    return buf.getvalue()


def _parse_comments(lines: Iterable[str]) -> dict[str, str]:
    fields = {}
    for line in lines:
        for token in line.lstrip("#").split():
            key, _, value = token.partition("=")
            fields[key] = value
    return fields


def read_distribution_csv(stream: TextIO) -> SizeDistribution:
    """Inverse of :func:`distribution_csv`."""
    text = stream.read().splitlines()
    comments = [line for line in text if line.startswith("#")]
    body = [line for line in text if line and not line.startswith("#")]
    meta = _parse_comments(comments)
    sampled = meta["mode"] == "sampled"
    spec = ExperimentSpec(
        h=int(meta["h"]),
        k=int(meta["k"]),
        q=int(meta["q"]),
        mode=meta["mode"],
        n_samples=int(meta["n"]) if sampled else None,
        seed=int(meta["seed"], 0) if sampled else ExperimentSpec.seed,
    )
    reader = csv.DictReader(body)
    counts = {int(r["t"]): int(r["count"]) for r in reader if int(r["count"])}
    return SizeDistribution(spec, counts)


def distribution_json(dist: SizeDistribution) -> str:
    return json.dumps(
        {
            "spec": _spec_dict(dist.spec),
            "total": dist.total,
            "counts": [{"t": t, "count": c} for t, c in dist.table()],
            "tool_version": __version__,
        },
        indent=2,
    )


def range_csv(result: RangeResult) -> str:
    buf = io.StringIO()
    buf.write(
        f"# h={result.h} k={result.k} q={result.window_q} "
        f"proof_grade={str(result.proof_grade).lower()} tool-version={__version__}\n"
    )
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "achieved"])
    w.writerows((t, int(ok)) for t, ok in result.rows())
    return buf.getvalue()


def range_json(result: RangeResult) -> str:
    return json.dumps(
        {
            "h": result.h,
            "k": result.k,
            "window_q": result.window_q,
            "achieved": sorted(result.achieved),
            "missing": sorted(result.missing),
            "proof_grade": result.proof_grade,
            "tool_version": __version__,
        },
        indent=2,
    )


def _popular_records(rows: Iterable[PopularRow]) -> list[dict]:
    records = []
    for row in rows:
        ranked = sorted(zip(row.sizes, row.counts), reverse=True)
        predicted = sorted(row.predicted, reverse=True)
        for rank, ((size, count), pred) in enumerate(zip(ranked, predicted), start=1):
            records.append(
                {
                    "h": row.h,
                    "rank": rank,
                    "size": size,
                    "count": count,
                    "predicted": pred,
                    "match": size == pred,
                }
            )
    return records


def popular_csv(rows: list[PopularRow], k: int, q: int, n: int, seed: int) -> str:
    buf = io.StringIO()
    buf.write(
        f"# k={k} q={q} mode=sampled n={n} seed={seed:#x} tool-version={__version__}\n"
    )
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h", "rank", "size", "count", "predicted", "match"])
    for rec in _popular_records(rows):
        w.writerow([rec["h"], rec["rank"], rec["size"], rec["count"], rec["predicted"],
                    "MATCH" if rec["match"] else "MISMATCH"])
    return buf.getvalue()


def popular_json(rows: list[PopularRow], k: int, q: int, n: int, seed: int) -> str:
    return json.dumps(
        {
            "k": k,
            "q": q,
            "n_samples": n,
            "seed": seed,
            "rows": _popular_records(rows),
            "tool_version": __version__,
        },
        indent=2,
    )


def popular_table(rows: list[PopularRow]) -> str:
    lines = [f"{'h':>2}  {'popular sizes':<42} {'differences':<28} predicted"]
    for row in rows:
        sizes = ", ".join(map(str, row.sizes))
        diffs = ", ".join(map(str, reversed(row.differences)))
        flag = "MATCH" if row.match else "MISMATCH"
        lines.append(f"{row.h:>2}  {sizes:<42} {diffs:<28} {flag}")
    return "\n".join(lines) + "\n"


def collisions_csv(report: CollisionReport, sets: list[tuple[int, ...]]) -> str:
    less, equal, greater = report.aggregate
    buf = io.StringIO()
    buf.write(_spec_comment(report.spec) + "\n")
    buf.write(f"# ge3<eq2={less} ge3=eq2={equal} ge3>eq2={greater}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "elements", "count_eq2", "count_ge3"])
    for i, (elems, (eq2, ge3)) in enumerate(zip(sets, report.pairs)):
        w.writerow([i, " ".join(map(str, elems)), eq2, ge3])
    return buf.getvalue()


def collisions_json(report: CollisionReport, sets: list[tuple[int, ...]]) -> str:
    less, equal, greater = report.aggregate
    return json.dumps(
        {
            "spec": _spec_dict(report.spec),
            "aggregate": {"ge3_less": less, "ge3_equal": equal, "ge3_greater": greater},
            "sets": [
                {"elements": list(e), "count_eq2": a, "count_ge3": b}
                for e, (a, b) in zip(sets, report.pairs)
            ],
            "tool_version": __version__,
        },
        indent=2,
    )
