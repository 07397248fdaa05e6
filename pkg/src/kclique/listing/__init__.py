"""k-clique listing engines and the brute-force oracle."""
from __future__ import annotations

from .baselines import ChibaNishizeki, KClist
from .bitcol import BitCol
from .brute import OracleRefused, brute_force, within_guard
from .engine import ListingResult, ListOptions
from .sdegree import SDegree

ENGINES = {
    "sdegree": SDegree,
    "bitcol": BitCol,
    "chiba": ChibaNishizeki,
    "kclist": KClist,
}


def _run(algo, g, k, sink, opts, plan=None):
    from ..pipeline import list_cliques

    return list_cliques(g, k, algo, opts, plan, sink=sink)


def sdegree(g, k, sink=None, opts: ListOptions | None = None, plan=None) -> ListingResult:
    return _run("sdegree", g, k, sink, opts, plan)


def bitcol(g, k, sink=None, opts: ListOptions | None = None, plan=None) -> ListingResult:
    return _run("bitcol", g, k, sink, opts, plan)


def chiba_nishizeki(g, k, sink=None, opts: ListOptions | None = None) -> ListingResult:
    return _run("chiba", g, k, sink, opts)


def kclist(g, k, ordering: str = "degeneracy", sink=None, opts: ListOptions | None = None,
           plan=None) -> ListingResult:
    opts = opts or ListOptions()
    opts = ListOptions(**{**opts.__dict__, "ordering": ordering})
    return _run("kclist", g, k, sink, opts, plan)


__all__ = ["ENGINES", "ListOptions", "ListingResult", "OracleRefused", "bitcol", "brute_force",
           "chiba_nishizeki", "kclist", "sdegree", "within_guard"]
