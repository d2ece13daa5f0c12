"""Oriented planar-diagram (PD) codes.

Each crossing lists four arc labels counterclockwise starting from the
incoming under-strand: ``(a, b, c, d)`` with the under-strand running
``a -> c``.  The over-strand runs ``d -> b`` at a positive crossing and
``b -> d`` at a negative one.  Components that meet no crossing carry no
arc labels; they are accounted for only by ``components``.
"""

from __future__ import annotations

import dataclasses
import json


@dataclasses.dataclass(frozen=True)
class Crossing:
    sign: int
    arcs: tuple[int, int, int, int]

    def over_in(self) -> int:
        return self.arcs[3] if self.sign > 0 else self.arcs[1]

    def over_out(self) -> int:
        return self.arcs[1] if self.sign > 0 else self.arcs[3]


@dataclasses.dataclass(frozen=True)
class PDCode:
    components: int
    crossings: tuple[Crossing, ...]

    def __len__(self) -> int:
        return len(self.crossings)

    def successor_map(self) -> dict[int, int]:
        """Map each arc to the arc that follows it along the orientation."""
        nxt = {}
        for x in self.crossings:
            nxt[x.arcs[0]] = x.arcs[2]
            nxt[x.over_in()] = x.over_out()
        return nxt

    def arc_components(self) -> list[list[int]]:
        """Cycles of arcs; each is one component that meets a crossing."""
        nxt = self.successor_map()
        seen: set[int] = set()
        cycles = []
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc = []
            a = start
            while a not in seen:
                seen.add(a)
                cyc.append(a)
                a = nxt[a]
            cycles.append(cyc)
        return cycles

    def free_loops(self) -> int:
        return self.components - len(self.arc_components())

    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "crossings": [{"sign": x.sign, "arcs": list(x.arcs)} for x in self.crossings],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> PDCode:
        try:
            xs = tuple(
                Crossing(int(c["sign"]), tuple(int(a) for a in c["arcs"]))
                for c in data["crossings"]
            )
            pd = cls(int(data["components"]), xs)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed PD JSON: {exc}") from exc
        for x in pd.crossings:
            if x.sign not in (1, -1) or len(x.arcs) != 4:
                raise ValueError(f"malformed crossing {x}")
        counts: dict[int, int] = {}
        for x in pd.crossings:
            for a in x.arcs:
                counts[a] = counts.get(a, 0) + 1
        if any(v != 2 for v in counts.values()):
            raise ValueError("every arc label must occur exactly twice")
        if pd.free_loops() < 0:
            raise ValueError("component count smaller than the number of arc cycles")
        return pd

    @classmethod
    def loads(cls, text: str) -> PDCode:
        return cls.from_json(json.loads(text))


def disjoint_union(a: PDCode, b: PDCode) -> PDCode:
    """Split union of two diagrams (arc labels of ``b`` are shifted)."""
    shift = max((max(x.arcs) for x in a.crossings), default=0)
    moved = tuple(Crossing(x.sign, tuple(v + shift for v in x.arcs)) for x in b.crossings)
    return PDCode(a.components + b.components, a.crossings + moved)
