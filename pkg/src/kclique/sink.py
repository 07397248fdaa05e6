"""Clique consumers shared by every engine."""
from __future__ import annotations

import threading
from typing import Callable, Iterable, Sequence

U64_MAX = (1 << 64) - 1


def saturating_add(a: int, b: int) -> tuple[int, bool]:
    s = a + b
    if s > U64_MAX:
        return U64_MAX, True
    return s, False


class CliqueSink:
    """Receives every k-clique exactly once.

    In count mode only the (saturating 64-bit) total is kept. In emit mode each
    clique, a tuple of input labels, is also appended to ``cliques`` or handed
    to ``callback``.
    """

    def __init__(self, emit: bool = False, callback: Callable[[tuple], None] | None = None):
        self.emit = emit or callback is not None
        self.callback = callback
        self.count = 0
        self.saturated = False
        self.cliques: list[tuple] | None = [] if self.emit and callback is None else None
        self._lock = threading.Lock()

    def add(self, n: int) -> None:
        self.count, sat = saturating_add(self.count, int(n))
        self.saturated |= sat

    def extend(self, cliques: Iterable[Sequence[int]]) -> None:
        if self.callback is not None:
            for c in cliques:
                self.callback(tuple(c))
        else:
            self.cliques.extend(tuple(c) for c in cliques)

    def spawn(self) -> "CliqueSink":
        """Empty private sink for one worker; buffers cliques until merged."""
        return CliqueSink(emit=self.emit)

    def merge(self, other: "CliqueSink") -> None:
        with self._lock:
            self.add(other.count)
            self.saturated |= other.saturated
            if self.emit and other.cliques:
                self.extend(other.cliques)
                other.cliques.clear()

    def sorted_cliques(self) -> list[tuple]:
        return sorted(tuple(sorted(c)) for c in (self.cliques or ()))


def format_clique(clique: Sequence[int]) -> str:
    return " ".join(str(v) for v in sorted(clique))
