"""NodeParallel / EdgeParallel execution over a shared dynamic work queue.

Workers are threads. The compiled kernels release the GIL, so the SDegree and
BitCol engines scale across cores; the pure Python kClist engine runs
correctly but gains nothing from extra threads.
"""
from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .listing.engine import Engine, run_serial
from .sink import CliqueSink

STRATEGIES = ("serial", "node", "edge")


@dataclass
class ParallelPlan:
    strategy: str = "node"
    workers: int = 1
    chunk: int | None = None  # units per queue grab; None = 1 root or 64 arcs
    seed: int | None = None  # shuffle the unit queue (scheduling stress in tests)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {', '.join(STRATEGIES)}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.strategy == "serial" and self.workers != 1:
            raise ValueError("strategy serial runs exactly one worker; use node or edge for more")
        if self.chunk is not None and self.chunk < 1:
            raise ValueError("chunk must be >= 1")

    @property
    def chunk_size(self) -> int:
        if self.chunk is not None:
            return self.chunk
        return 64 if self.strategy == "edge" else 1


def check_plan(engine: Engine, k: int, plan: ParallelPlan) -> None:
    if plan.strategy != "serial" and not engine.parallel:
        raise ValueError(f"{engine.name} is sequential by construction; use --strategy serial")
    if plan.strategy == "edge" and k < 3:
        raise ValueError("edge strategy requires k >= 3")


def run_parallel(engine: Engine, plan: ParallelPlan, sink: CliqueSink, *, deadline: float | None = None,
                 record_units: bool = False) -> tuple[bool, dict | None, list]:
    """Run all units of a prepared ``engine`` under ``plan``.

    Returns ``(timed_out, unit_counts, scratch)`` where ``scratch`` holds one
    :class:`ScratchUsage` per worker.
    """
    check_plan(engine, engine.k, plan)
    if plan.strategy == "serial":
        return run_serial(engine, sink, deadline=deadline, record_units=record_units)
    units = engine.root_units() if plan.strategy == "node" else engine.edge_units()
    if plan.seed is not None:
        units = units[np.random.default_rng(plan.seed).permutation(len(units))]
    counts = np.zeros(len(units), dtype=np.uint64)
    done = np.zeros(len(units), dtype=bool)
    step = plan.chunk_size
    lock = threading.Lock()
    cursor = [0]
    stop = threading.Event()

    def work() -> object:
        worker = engine.worker()
        local = sink.spawn()
        while not stop.is_set():
            if deadline is not None and time.perf_counter() > deadline:
                stop.set()
                break
            with lock:
                a = cursor[0]
                cursor[0] = a + step
            if a >= len(units):
                break
            b = min(a + step, len(units))
            counts[a:b] = worker.run(units[a:b], local)
            done[a:b] = True
        sink.merge(local)
        return worker.scratch

    with ThreadPoolExecutor(max_workers=plan.workers) as pool:
        futures = [pool.submit(work) for _ in range(plan.workers)]
        scratch = [f.result() for f in futures]
    timed_out = not done.all()
    unit_counts = None
    if record_units:
        unit_counts = {tuple(u): int(c) for u, c, d in zip(units.tolist(), counts.tolist(), done) if d}
    return timed_out, unit_counts, scratch
