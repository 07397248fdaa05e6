"""One call from a loaded graph to a finished :class:`ListingResult`."""
from __future__ import annotations

import time

from .graph import Graph
from .listing import ENGINES
from .listing.engine import ListingResult, ListOptions, list_small_k, preprocess
from .parallel import ParallelPlan, check_plan, run_parallel
from .preprocess import ReductionReport
from .sink import CliqueSink


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1e3


def list_cliques(g: Graph, k: int, algo: str = "sdegree", options: ListOptions | None = None,
                 plan: ParallelPlan | None = None, *, emit: bool = False, sink: CliqueSink | None = None,
                 time_limit: float | None = None, record_units: bool = False) -> ListingResult:
    """Preprocess, orient and list every k-clique of ``g``.

    ``time_limit`` (seconds) is a soft budget for the listing phase, checked
    between units; a run that hits it reports ``timed_out`` and a partial count.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if algo not in ENGINES:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {', '.join(ENGINES)}")
    options = options or ListOptions()
    plan = plan or ParallelPlan(strategy="serial")
    sink = sink or CliqueSink(emit=emit)
    timings = {}
    if plan.strategy != "serial" and not ENGINES[algo].parallel:
        raise ValueError(f"{algo} is sequential by construction; use strategy serial")
    if plan.strategy == "edge" and k < 3:
        raise ValueError("edge strategy requires k >= 3")

    if k <= 2:
        t0 = time.perf_counter()
        list_small_k(g, k, sink)
        timings.update(preprocess=0.0, order=0.0, list=_ms(t0))
        return ListingResult(k, algo, sink.count, sink.saturated, ReductionReport(emitted=sink.emit),
                             cliques=sink.cliques, timings=timings)

    t0 = time.perf_counter()
    reduced, report = preprocess(g, k, options, sink)
    timings["preprocess"] = _ms(t0)

    t0 = time.perf_counter()
    engine = ENGINES[algo](reduced, k, options)
    timings["order"] = _ms(t0)
    check_plan(engine, k, plan)

    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit
    timed_out, unit_counts, scratch = run_parallel(engine, plan, sink, deadline=deadline,
                                                   record_units=record_units)
    timings["list"] = _ms(t0)
    return ListingResult(k, algo, sink.count, sink.saturated or report.saturated, report,
                         cliques=sink.cliques, timings=timings, scratch=scratch, timed_out=timed_out,
                         max_out_degree=engine.max_out_degree, unit_counts=unit_counts)
