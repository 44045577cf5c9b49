"""Per-edge message accounting for repair runs.

A transcript records, for every directed edge used during one repair run,
how many field symbols crossed it and (optionally, always in this package)
the symbol payloads themselves, so that correctness and bandwidth accounting
are checked on the same object.

Serialized form is line oriented: one ``u v count`` line per directed edge
(sorted), then a ``total N`` footer.  Counts are exact integers.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class Transcript:
    def __init__(self) -> None:
        self.counts: dict[tuple[int, int], int] = {}
        self.payloads: dict[tuple[int, int], list[int]] = {}

    def send(self, src: int, dst: int, symbols: Sequence[int]) -> None:
        key = (src, dst)
        self.counts[key] = self.counts.get(key, 0) + len(symbols)
        self.payloads.setdefault(key, []).extend(symbols)

    def count(self, src: int, dst: int) -> int:
        return self.counts.get((src, dst), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def total_over(self, edges: Iterable[tuple[int, int]]) -> int:
        return sum(self.counts.get(e, 0) for e in edges)

    def serialize(self) -> str:
        lines = [f"{u} {v} {c}" for (u, v), c in sorted(self.counts.items())]
        lines.append(f"total {self.total}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Transcript(edges={len(self.counts)}, total={self.total})"
