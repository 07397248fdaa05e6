"""k-clique listing: preprocessing, vertex orderings, and accelerated listing engines."""
from .graph import Graph, complete_graph, from_edges, load_edge_list
from .listing import ListOptions, brute_force
from .parallel import ParallelPlan
from .pipeline import list_cliques
from .sink import CliqueSink

__all__ = ["CliqueSink", "Graph", "ListOptions", "ParallelPlan", "brute_force", "complete_graph",
           "from_edges", "list_cliques", "load_edge_list"]
__version__ = "0.1.0"
