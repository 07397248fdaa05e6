"""Vertex orderings used to orient graphs: degree, degeneracy and color."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, VertexOrdering, core_numbers


@dataclass(frozen=True, eq=False)
class ColorAssignment:
    color: np.ndarray  # 1-based color per vertex
    num_colors: int

    def is_proper(self, g: Graph) -> bool:
        e = g.edges()
        return bool(np.all(self.color[e[:, 0]] != self.color[e[:, 1]]))


def degree_ordering(g: Graph) -> VertexOrdering:
    """Ascending degree, ties by ascending id."""
    return VertexOrdering.from_order(np.lexsort((np.arange(g.n), g.degrees)))


def inverse_degree_ordering(g: Graph) -> VertexOrdering:
    """Descending degree, ties by ascending id; the default greedy visit order."""
    return VertexOrdering.from_order(np.lexsort((np.arange(g.n), -g.degrees)))


def degeneracy_ordering(g: Graph) -> tuple[VertexOrdering, int]:
    order, core = core_numbers(g)
    beta = int(core.max()) if g.n else 0
    return VertexOrdering.from_order(order), beta


def greedy_coloring(g: Graph, visit_order: VertexOrdering | None = None) -> ColorAssignment:
    """Give each vertex, in visit order, the least color unused by colored neighbors."""
    if visit_order is None:
        visit_order = inverse_degree_ordering(g)
    if len(visit_order) != g.n:
        raise ValueError("visit order does not cover the graph")
    color = [0] * g.n
    offs = g.offsets.tolist()
    nb = g.neighbors.tolist()
    mark = [-1] * (g.n + 2)
    for v in visit_order.order.tolist():
        for j in range(offs[v], offs[v + 1]):
            mark[color[nb[j]]] = v
        c = 1
        while mark[c] == v:
            c += 1
        color[v] = c
    color = np.array(color, dtype=np.int64)
    return ColorAssignment(color, int(color.max()) if g.n else 0)


def color_ordering(g: Graph, coloring: ColorAssignment | None = None) -> tuple[VertexOrdering, ColorAssignment]:
    """Descending color, ties by ascending id: arcs run from higher to lower color."""
    if coloring is None:
        coloring = greedy_coloring(g)
    order = np.lexsort((np.arange(g.n), -coloring.color))
    return VertexOrdering.from_order(order), coloring


def by_name(g: Graph, kind: str) -> VertexOrdering:
    if kind == "degree":
        return degree_ordering(g)
    if kind == "degeneracy":
        return degeneracy_ordering(g)[0]
    if kind == "color":
        return color_ordering(g)[0]
    raise ValueError(f"unknown ordering {kind!r}; expected degree, degeneracy or color")
