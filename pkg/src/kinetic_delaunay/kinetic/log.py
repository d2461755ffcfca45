"""Event log of a kinetic run and its line-delimited JSON encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from ..kernel.poly import IsolatedRoot

FLIP = "flip"
HULL = "hull"


def encode_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decode_rational(s) -> Fraction:
    return Fraction(s)


def encode_root(r: IsolatedRoot) -> dict:
    return {
        "lo": encode_rational(r.lo),
        "hi": encode_rational(r.hi),
        "float": r.float_estimate,
        "multiplicity": r.multiplicity,
        "poly": list(r.poly),
    }


def decode_root(d: dict) -> IsolatedRoot:
    return IsolatedRoot(
        decode_rational(d["lo"]),
        decode_rational(d["hi"]),
        int(d["multiplicity"]),
        float(d["float"]),
        tuple(int(c) for c in d["poly"]),
    )


@dataclass
class LogEntry:
    """One processed event.

    ``kind`` is ``"flip"`` (a Delaunay co-circularity) or ``"hull"`` (a hull
    collinearity).  For flips ``participants = (p, q, a, b)`` with ``pq``
    replaced by ``ab``.  For hull events ``participants = (a, m, b)`` with
    ``m`` the middle point and ``action`` one of ``insert`` (triangle abm
    appears), ``delete`` (it disappears) or ``reorient`` (three points only).
    """

    time: IsolatedRoot
    kind: str
    participants: tuple
    action: str
    removed_edges: tuple = ()
    added_edges: tuple = ()
    removed_triangles: tuple = ()
    added_triangles: tuple = ()

    def to_json(self) -> dict:
        return {
            "time": encode_root(self.time),
            "kind": self.kind,
            "action": self.action,
            "participants": list(self.participants),
            "removed_edges": [list(e) for e in self.removed_edges],
            "added_edges": [list(e) for e in self.added_edges],
            "removed_triangles": [list(t) for t in self.removed_triangles],
            "added_triangles": [list(t) for t in self.added_triangles],
        }

    @classmethod
    def from_json(cls, d: dict) -> LogEntry:
        return cls(
            decode_root(d["time"]),
            d["kind"],
            tuple(d["participants"]),
            d["action"],
            tuple(tuple(e) for e in d["removed_edges"]),
            tuple(tuple(e) for e in d["added_edges"]),
            tuple(tuple(t) for t in d["removed_triangles"]),
            tuple(tuple(t) for t in d["added_triangles"]),
        )


def _edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass
class EventLog:
    t_start: Fraction
    t_end: Fraction
    initial_triangles: frozenset
    entries: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LogEntry]:
        return iter(self.entries)

    @property
    def flips(self) -> list[LogEntry]:
        return [e for e in self.entries if e.kind == FLIP]

    @property
    def hull_events(self) -> list[LogEntry]:
        return [e for e in self.entries if e.kind == HULL]

    def initial_edges(self) -> set[tuple[int, int]]:
        out = set()
        for a, b, c in self.initial_triangles:
            out.update((_edge(a, b), _edge(b, c), _edge(c, a)))
        return out

    def edge_timeline(self) -> dict[tuple[int, int], list[tuple[Optional[IsolatedRoot], Optional[IsolatedRoot]]]]:
        """Presence intervals of every edge ever in DT(P).

        Each interval is ``(start, end)`` where ``None`` means the window boundary
        (``t_start`` for a start, ``t_end`` for an end).
        """
        present: dict = {e: None for e in self.initial_edges()}
        out: dict = {}
        for entry in self.entries:
            for e in entry.removed_edges:
                e = _edge(*e)
                out.setdefault(e, []).append((present.pop(e), entry.time))
            for e in entry.added_edges:
                present[_edge(*e)] = entry.time
        for e, start in present.items():
            out.setdefault(e, []).append((start, None))
        return out

    def to_lines(self) -> list[str]:
        head = {
            "record": "header",
            "t_start": encode_rational(self.t_start),
            "t_end": encode_rational(self.t_end),
            "initial_triangles": sorted(list(t) for t in self.initial_triangles),
        }
        lines = [json.dumps(head, sort_keys=True)]
        for e in self.entries:
            d = e.to_json()
            d["record"] = "event"
            lines.append(json.dumps(d, sort_keys=True))
        return lines

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("\n".join(self.to_lines()) + "\n")

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> EventLog:
        log = None
        for line in lines:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            if d["record"] == "header":
                log = cls(
                    decode_rational(d["t_start"]),
                    decode_rational(d["t_end"]),
                    frozenset(tuple(t) for t in d["initial_triangles"]),
                )
            else:
                log.entries.append(LogEntry.from_json(d))
        if log is None:
            raise ValueError("event log has no header record")
        return log

    @classmethod
    def load(cls, path) -> EventLog:
        with open(path) as fh:
            return cls.from_lines(fh)
