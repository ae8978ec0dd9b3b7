"""Benchmark runs and their CSV records."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence

from .colorers.paths import rank_path, rank_pathwidth
from .colorers.ttree import rank_simple_ttree
from .decomposition import make_edge_maximal, random_interval_graph, random_simple_ttree
from .graph import path_graph
from .verify import verify_ranking

SCHEMA = "lrank-bench v1"
FAMILIES = ("ttree", "interval", "path")


@dataclass(frozen=True)
class RunRecord:
    instance_id: str
    family: str
    n: int
    t: int
    ell: int
    algorithm: str
    colors: int
    k: float | None
    a: int | None
    wall_time_s: float
    verdict: str
    seed: int

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class BenchTask:
    family: str
    n: int
    t: int
    ell: int
    seed: int

    @property
    def instance_id(self) -> str:
        return f"{self.family}-t{self.t}-n{self.n}-l{self.ell}-s{self.seed}"


def run_task(task: BenchTask) -> RunRecord:
    k = a = None
    start = time.perf_counter()
    if task.family == "ttree":
        g, d = random_simple_ttree(task.n, task.t, task.seed)
        r = rank_simple_ttree(g, d, task.ell, t=task.t, verify=False)
        host = make_edge_maximal(g, d, check=False)
        k, a = r.meta.get("k"), r.meta.get("a")
        algo = "simple-ttree"
    elif task.family == "interval":
        g, pd = random_interval_graph(task.n, task.t, task.seed)
        r = rank_pathwidth(g, pd, task.ell, verify=False)
        host = make_edge_maximal(g, pd, check=False)
        algo = "pathwidth"
    elif task.family == "path":
        host = path_graph(task.n)
        r = rank_path(task.n, task.ell)
        algo = "path"
    else:
        raise ValueError(f"unknown family {task.family!r}; choose from {', '.join(FAMILIES)}")
    elapsed = time.perf_counter() - start
    verdict = "ok" if verify_ranking(host, r) is None else "violation"
    return RunRecord(task.instance_id, task.family, task.n, task.t, task.ell, algo,
                     r.max_color, k, a, round(elapsed, 6), verdict, task.seed)


def plan(family: str, sizes: Sequence[int], seeds: Iterable[int], ell: int, t: int) -> list[BenchTask]:
    return [BenchTask(family, n, t, ell, s) for n in sizes for s in seeds]


def run_bench(tasks: Sequence[BenchTask], jobs: int = 1) -> list[RunRecord]:
    """Run every task; records come back in a fixed order whatever ``jobs`` is."""
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            records = list(pool.map(run_task, tasks))
    else:
        records = [run_task(x) for x in tasks]
    return sorted(records, key=lambda r: (r.family, r.t, r.n, r.ell, r.seed))


def records_to_csv(records: Iterable[RunRecord]) -> str:
    buf = io.StringIO()
    buf.write(f"# {SCHEMA}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RunRecord.columns())
    for r in records:
        w.writerow(["" if x is None else x for x in astuple(r)])
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    lines = text.splitlines()
    if not lines or lines[0] != f"# {SCHEMA}":
        raise ValueError(f"expected schema header '# {SCHEMA}'")
    return list(csv.DictReader(lines[1:]))
