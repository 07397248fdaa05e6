"""Plumbing shared by the listing engines.

An engine is prepared once per (graph, k) and then hands out *units* of work:
root units ``(u, -1)`` or arc units ``(u, v)``, both in the engine's relabeled
ids. Workers own all mutable scratch, so any number of them can process
disjoint units of one prepared engine concurrently.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..graph import Dag, Graph
from ..preprocess import ReductionReport, pre_core, pre_list
from ..sink import CliqueSink

NO_VERTEX = -1


@dataclass
class ListOptions:
    precore: bool = True
    prelist: bool = True
    prune_degree: bool = True  # skip candidates (and roots) whose out-degree is too small
    prune_size: bool = True  # recurse only if the new candidate set is large enough
    prune_color: bool = True  # skip candidates whose color is below the level
    word_bits: int = 64
    decode: str = "scan"  # "scan" or "table"
    block: int = 4
    ordering: str = "degeneracy"  # kclist only

    def __post_init__(self):
        if not 1 <= self.word_bits <= 64:
            raise ValueError("word_bits must lie in 1..64")
        if self.decode not in ("scan", "table"):
            raise ValueError("decode must be 'scan' or 'table'")
        if self.decode == "table" and self.word_bits > 24:
            raise ValueError("table decode needs word_bits <= 24")


@dataclass
class ScratchUsage:
    unit: str  # "ids" or "words"
    peak: int = 0
    bound: int = 0
    allocated: int = 0

    def merge(self, other: "ScratchUsage") -> None:
        self.peak = max(self.peak, other.peak)
        self.bound = max(self.bound, other.bound)
        self.allocated = max(self.allocated, other.allocated)


@dataclass
class ListingResult:
    k: int
    algo: str
    count: int
    saturated: bool
    report: ReductionReport
    cliques: list | None = None
    timings: dict = field(default_factory=dict)
    scratch: list = field(default_factory=list)  # one ScratchUsage per worker
    timed_out: bool = False
    max_out_degree: int = 0
    unit_counts: dict | None = None

    @property
    def listed(self) -> int:
        """Cliques found by the engine itself, excluding closed-form ones."""
        return self.count - self.report.precounted_cliques


class Worker:
    def __init__(self, engine: "Engine"):
        self.engine = engine
        self.scratch = ScratchUsage("ids")

    def run(self, units: np.ndarray, sink: CliqueSink) -> np.ndarray:
        """Process ``units`` and return one clique count per unit."""
        raise NotImplementedError


class Engine:
    name = "engine"
    parallel = True

    def __init__(self, g: Graph, k: int, options: ListOptions):
        self.graph = g
        self.k = k
        self.options = options
        self.dag: Dag | None = None

    @property
    def max_out_degree(self) -> int:
        return self.dag.max_out_degree if self.dag is not None else 0

    def root_units(self) -> np.ndarray:
        dag = self.dag
        roots = np.arange(dag.n, dtype=np.int64)
        if self.options.prune_degree:
            roots = roots[dag.out_degrees >= self.k - 1]
        return np.stack([roots, np.full(len(roots), NO_VERTEX, dtype=np.int64)], axis=1)

    def edge_units(self) -> np.ndarray:
        if self.k < 3:
            raise ValueError("edge strategy requires k >= 3")
        dag = self.dag
        arcs = dag.arcs().astype(np.int64)
        if self.options.prune_degree:
            arcs = arcs[dag.out_degrees[arcs[:, 0]] >= self.k - 1]
        return arcs

    def worker(self) -> Worker:
        raise NotImplementedError

    def dag_labels(self) -> np.ndarray:
        """Input label of every relabeled DAG vertex."""
        return self.graph.labels[self.dag.ordering.order]


def preprocess(g: Graph, k: int, options: ListOptions, sink: CliqueSink) -> tuple[Graph, ReductionReport]:
    report = ReductionReport(emitted=sink.emit)
    if options.precore:
        g, r = pre_core(g, k)
        report = report.merge(r)
    if options.prelist:
        g, r = pre_list(g, k, sink)
        report = report.merge(r)
    return g, report


def list_small_k(g: Graph, k: int, sink: CliqueSink) -> None:
    """k = 1 lists vertices, k = 2 lists edges."""
    if k == 1:
        sink.add(g.n)
        if sink.emit:
            sink.extend((int(x),) for x in g.labels)
    elif k == 2:
        sink.add(g.m)
        if sink.emit:
            e = g.labels[g.edges()]
            sink.extend(map(tuple, e.tolist()))
    else:
        raise ValueError("list_small_k handles k <= 2")


def run_serial(engine: Engine, sink: CliqueSink, *, deadline: float | None = None,
               strategy: str = "node", record_units: bool = False) -> tuple[bool, dict | None, list]:
    """Run every unit of ``engine`` on one worker. Returns ``(timed_out, unit_counts, scratch)``."""
    units = engine.root_units() if strategy == "node" else engine.edge_units()
    worker = engine.worker()
    timed_out = False
    if deadline is None:
        counts = worker.run(units, sink)
        done = len(units)
    else:
        # cooperative limit: one unit per call so the clock is checked between roots
        counts = np.zeros(len(units), dtype=np.uint64)
        done = 0
        for i in range(len(units)):
            if time.perf_counter() > deadline:
                timed_out = True
                break
            counts[i] = worker.run(units[i:i + 1], sink)[0]
            done += 1
    unit_counts = None
    if record_units:
        unit_counts = {tuple(u): int(c) for u, c in zip(units[:done].tolist(), counts[:done].tolist())}
    return timed_out, unit_counts, [worker.scratch]


def emit_rows(sink: CliqueSink, rows: np.ndarray, labels: np.ndarray) -> None:
    if len(rows):
        sink.extend(map(tuple, labels[rows].tolist()))
