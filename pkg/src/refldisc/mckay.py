"""McKay quivers: the S_n single-block rule and the character-product construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .groups import ReflectionGroup, UnsupportedGroup, character_table, defining_character
from .partitions import Partition, cell_stats, partitions_of, single_block_moves
from .scalars import conj

__all__ = [
    "Quiver",
    "Partition",
    "cell_stats",
    "single_block_moves",
    "mckay_quiver_sn",
    "mckay_quiver_chars",
    "abar_quiver",
    "to_dot",
]


@dataclass
class Quiver:
    """Vertices in a fixed order, arrow multiplicities and loop counts."""

    vertices: list[str] = field(default_factory=list)
    arrows: dict[tuple[str, str], int] = field(default_factory=dict)  # off-diagonal only
    loops: dict[str, int] = field(default_factory=dict)

    def add_arrows(self, a: str, b: str, mult: int):
        if mult < 0:
            raise ValueError("negative multiplicity")
        if not mult:
            return
        if a == b:
            self.loops[a] = self.loops.get(a, 0) + mult
        else:
            self.arrows[(a, b)] = self.arrows.get((a, b), 0) + mult

    def mult(self, a: str, b: str) -> int:
        if a == b:
            return self.loops.get(a, 0)
        return self.arrows.get((a, b), 0)

    def arrow_count(self) -> int:
        return sum(self.arrows.values())

    def loop_count(self) -> int:
        return sum(self.loops.values())

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        strip = lambda d: {k: v for k, v in d.items() if v}  # noqa: E731
        return (
            self.vertices == other.vertices
            and strip(self.arrows) == strip(other.arrows)
            and strip(self.loops) == strip(other.loops)
        )

    def sorted_arrows(self) -> list[tuple[str, str, int]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted(((a, b, m) for (a, b), m in self.arrows.items() if m), key=lambda x: (pos[x[0]], pos[x[1]]))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"from": a, "to": b, "mult": m} for a, b, m in self.sorted_arrows()],
            "loops": {v: self.loops[v] for v in self.vertices if self.loops.get(v)},
        }


def mckay_quiver_sn(n: int) -> Quiver:
    """Arrows between partitions differing by one moved block; p(lambda) - 1 loops."""
    if n < 2:
        raise ValueError("n >= 2 required")
    parts = partitions_of(n)
    q = Quiver([str(p) for p in parts])
    for lam in parts:
        for tau in sorted(single_block_moves(lam)):
            q.add_arrows(str(lam), str(tau), 1)
        q.add_arrows(str(lam), str(lam), lam.distinct_parts() - 1)
    return q


def mckay_quiver_chars(group: ReflectionGroup) -> Quiver:
    """m_ij = <chi_i chi_V, chi_j> by class sums.

    For the natural permutation action of S_n, V is taken to be the reflection
    representation (the permutation character minus the trivial one).
    """
    try:
        table = character_table(group)
    except UnsupportedGroup:
        raise
    chi_v = defining_character(group)
    if group.family == "sym":
        vals = tuple(v - 1 for v in chi_v.values)
    else:
        vals = chi_v.values
    q = Quiver([c.name for c in table.characters])
    for ci in table.characters:
        for cj in table.characters:
            s = Fraction(0)
            for cl in table.classes:
                s = s + ci(cl.rep) * vals[cl.rep] * conj(cj(cl.rep)) * cl.size
            m = s / group.order
            if not isinstance(m, Fraction) or m.denominator != 1:
                raise ArithmeticError(f"non-integral McKay multiplicity {m}")
            q.add_arrows(ci.name, cj.name, int(m))
    return q


def abar_quiver(q: Quiver, vertex: str) -> Quiver:
    """Delete a vertex with its incident arrows and loops."""
    if vertex not in q.vertices:
        raise KeyError(f"no vertex {vertex!r}")
    return Quiver(
        [v for v in q.vertices if v != vertex],
        {k: m for k, m in q.arrows.items() if vertex not in k},
        {v: m for v, m in q.loops.items() if v != vertex},
    )


def _dot_id(v: str) -> str:
    return '"' + v.replace('"', '\\"') + '"'


def to_dot(q: Quiver, name: str = "") -> str:
    """DOT digraph: one node per vertex, parallel edges for multiplicities, self-edges for loops."""
    head = f"digraph {_dot_id(name)} {{" if name else "digraph {"
    lines = [head]
    for v in q.vertices:
        lines.append(f"  {_dot_id(v)};")
    pos = {v: i for i, v in enumerate(q.vertices)}
    edges = [(a, b, m) for a, b, m in q.sorted_arrows()]
    edges += [(v, v, q.loops[v]) for v in q.vertices if q.loops.get(v)]
    edges.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
    for a, b, m in edges:
        for _ in range(m):
            lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
