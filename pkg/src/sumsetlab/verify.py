"""Bundled reproduction checks against the golden tables in ``golden/``."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from math import comb

from . import A0
from .core import IntSet, collision_counts, interval_rep2, representation_histogram, sumset_size
from .experiments import ExperimentSpec, popularity_study, run_collision_study, run_distribution
from .ranges import closed_form_range, complexity_bound, exhaustive_range


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def load_golden(name: str) -> list[dict[str, str]]:
    text = resources.files("sumsetlab.golden").joinpath(name).read_text()
    body = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(body))


def _diff(expected, got) -> str:
    return f"expected {expected}, got {got}"


def check_a0() -> list[Check]:
    golden = load_golden("a0.csv")
    expected = [int(r["size"]) for r in golden]
    got = [sumset_size(A0, int(r["h"])) for r in golden]
    checks = [Check("|hA0| for h=1..7", got == expected, _diff(expected, got))]
    hist = representation_histogram(A0, 3)
    doubles = sorted(n for n, c in hist.counts.items() if c == 2)
    others_one = all(c == 1 for n, c in hist.counts.items() if n != 18782)
    checks.append(
        Check(
            "n0 = 18782 is the only element of 3A0 with two representations",
            doubles == [18782] and others_one,
            f"elements with r=2: {doubles}, max r: {max(hist.counts.values())}",
        )
    )
    return checks


def check_experiment1(threads: int = 1) -> list[Check]:
    golden = {int(r["t"]): int(r["count"]) for r in load_golden("experiment1.csv")}
    dist = run_distribution(ExperimentSpec(5, 4, 100), threads=threads)
    got = dict(dist.table())
    bad = [t for t in golden if got.get(t) != golden[t]]
    checks = [
        Check(
            f"distribution rows {len(golden) - len(bad)}/{len(golden)}",
            not bad and set(got) == set(golden),
            "; ".join(f"t={t}: {_diff(golden[t], got.get(t))}" for t in bad),
        ),
        Check("total mass C(100,4)", dist.total == comb(100, 4), _diff(comb(100, 4), dist.total)),
    ]
    return checks


def check_ranges(threads: int = 1) -> list[Check]:
    checks = []
    r = exhaustive_range(3, 3, complexity_bound(3, 3), threads=threads)
    checks.append(
        Check(
            "R(3,3) on [0,2303]",
            sorted(r.achieved) == [7, 9, 10] and sorted(r.missing) == [8] and r.proof_grade,
            f"achieved {sorted(r.achieved)}, missing {sorted(r.missing)}, proof_grade {r.proof_grade}",
        )
    )
    for h in (3, 4, 5):
        q = complexity_bound(h, 3)
        r = exhaustive_range(h, 3, q, threads=threads)
        cf = closed_form_range(h, 3)
        checks.append(
            Check(
                f"R({h},3) on [0,{q - 1}] equals the closed form",
                r.achieved == cf and len(cf) == h and r.proof_grade,
                _diff(sorted(cf), sorted(r.achieved)),
            )
        )
    for k in range(3, 9):
        r = exhaustive_range(2, k, 6 * k, threads=threads)
        full = set(range(2 * k - 1, comb(k + 1, 2) + 1))
        checks.append(
            Check(
                f"R(2,{k}) on [0,{6 * k - 1}] is the interval [{2 * k - 1},{comb(k + 1, 2)}]",
                r.achieved == full,
                f"missing {sorted(full - r.achieved)}",
            )
        )
    return checks


def check_triangular(threads: int = 1) -> list[Check]:
    golden = {int(r["h"]): [int(x) for x in r["sizes"].split()] for r in load_golden("popular.csv")}
    checks = []
    for row in popularity_study(range(2, 10), threads=threads):
        tri = [comb(j + 1, 2) for j in range(1, row.h)]
        ok = row.match and row.sizes == golden[row.h] and row.differences[::-1] == tri
        checks.append(
            Check(
                f"h={row.h} popular sizes",
                ok,
                f"sizes {row.sizes}, predicted {row.predicted}, differences {row.differences}",
            )
        )
    return checks


def check_collisions() -> list[Check]:
    checks = []
    for k in range(7, 21):
        A = IntSet.interval(0, k - 1)
        eq2, ge3 = collision_counts(A, 2)
        hist = representation_histogram(A, 2)
        formula_ok = all(interval_rep2(k, n) == hist[n] for n in range(-2, 2 * k + 1))
        checks.append(
            Check(
                f"[0,{k - 1}] h=2: count_eq2=4, count_ge3=2k-9 > count_eq2, formula matches",
                eq2 == 4 and ge3 == 2 * k - 9 and ge3 > eq2 and formula_ok,
                f"count_eq2={eq2}, count_ge3={ge3}",
            )
        )
    report = run_collision_study(ExperimentSpec(2, 7, 7))
    checks.append(
        Check(
            "collision study on the single set [0,6] records ge3 > eq2",
            report.aggregate == (0, 0, 1) and report.pairs == [(4, 5)],
            f"aggregate {report.aggregate}",
        )
    )
    return checks


CASES = {
    "a0": lambda threads: check_a0(),
    "experiment1": check_experiment1,
    "ranges": check_ranges,
    "triangular": check_triangular,
    "collisions": lambda threads: check_collisions(),
}


def run_case(case: str, threads: int = 1) -> list[Check]:
    return CASES[case](threads)
