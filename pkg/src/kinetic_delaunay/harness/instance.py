"""Instance documents: points, window and provenance as line-delimited JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..kernel.motion import MovingPoint, as_fraction
from ..kinetic.log import decode_rational, encode_rational

SCHEMA_VERSION = 1


def _dumps(d: dict) -> str:
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


@dataclass
class InstanceDocument:
    points: list
    window: tuple = (Fraction(0), Fraction(10))
    provenance: dict = field(default_factory=dict)
    schema: int = SCHEMA_VERSION

    def __post_init__(self):
        self.window = (as_fraction(self.window[0]), as_fraction(self.window[1]))

    @property
    def n(self) -> int:
        return len(self.points)

    def point_map(self) -> dict:
        return {p.id: p for p in self.points}

    def to_lines(self) -> list[str]:
        head = {
            "record": "instance",
            "schema": self.schema,
            "n": len(self.points),
            "window": [encode_rational(self.window[0]), encode_rational(self.window[1])],
            "provenance": self.provenance,
        }
        lines = [_dumps(head)]
        for p in self.points:
            lines.append(_dumps({
                "record": "point",
                "id": p.id,
                "x0": encode_rational(p.x0),
                "y0": encode_rational(p.y0),
                "ux": encode_rational(p.ux),
                "uy": encode_rational(p.uy),
            }))
        return lines

    def to_text(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    def dump(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.to_text())

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> InstanceDocument:
        head = None
        points = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            if d["record"] == "instance":
                head = d
            elif d["record"] == "point":
                points.append(MovingPoint(
                    int(d["id"]),
                    decode_rational(d["x0"]),
                    decode_rational(d["y0"]),
                    decode_rational(d["ux"]),
                    decode_rational(d["uy"]),
                ))
        if head is None:
            raise ValueError("instance document has no header record")
        if int(head["schema"]) != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {head['schema']}")
        if len(points) != int(head["n"]):
            raise ValueError(f"header announces {head['n']} points, found {len(points)}")
        window = (decode_rational(head["window"][0]), decode_rational(head["window"][1]))
        return cls(points, window, head.get("provenance", {}), int(head["schema"]))

    @classmethod
    def from_text(cls, text: str) -> InstanceDocument:
        return cls.from_lines(text.splitlines())

    @classmethod
    def load(cls, path) -> InstanceDocument:
        with open(path) as fh:
            return cls.from_lines(fh)
