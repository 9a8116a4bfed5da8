"""Integer partitions, Young-diagram statistics and S_n characters."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

__all__ = [
    "Partition",
    "CellStats",
    "partitions_of",
    "cell_stats",
    "character_value_sn",
    "single_block_moves",
    "centralizer_size",
]


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Accept '3,1', '(3,1)', '3 1', '2^2' style exponents or '1111'."""
        s = text.strip().strip("()[]").replace(" ", ",")
        out: list[int] = []
        if "," not in s and "^" not in s and s.isdigit() and len(s) > 1:
            out = [int(ch) for ch in s]
        else:
            for tok in filter(None, s.split(",")):
                base, _, power = tok.partition("^")
                out.extend([int(base)] * (int(power) if power else 1))
        return cls(tuple(sorted(out, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def distinct_parts(self) -> int:
        return len(set(self.parts))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self.parts):
            for j in range(p):
                yield i, j

    def removable_rows(self) -> list[int]:
        """Rows whose last cell can be removed leaving a partition."""
        ps = self.parts
        return [i for i in range(len(ps)) if i == len(ps) - 1 or ps[i] > ps[i + 1]]

    def addable_rows(self) -> list[int]:
        ps = self.parts
        return [i for i in range(len(ps) + 1) if i == 0 or ps[i - 1] > (ps[i] if i < len(ps) else 0)]

    def remove_cell(self, row: int) -> Partition:
        ps = list(self.parts)
        ps[row] -= 1
        return Partition(tuple(p for p in ps if p))

    def add_cell(self, row: int) -> Partition:
        ps = list(self.parts)
        if row == len(ps):
            ps.append(1)
        else:
            ps[row] += 1
        return Partition(tuple(ps))

    def sort_key(self):
        """Key for reverse-lex order: (4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)."""
        return tuple(-p for p in self.parts)

    def __lt__(self, other: Partition):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def name(self) -> str:
        return str(self)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse-lex order, starting with (n)."""
    out: list[Partition] = []

    def rec(left: int, cap: int, acc: list[int]):
        if left == 0:
            out.append(Partition(tuple(acc)))
            return
        for p in range(min(left, cap), 0, -1):
            acc.append(p)
            rec(left - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


@dataclass(frozen=True)
class CellStats:
    arms: dict[tuple[int, int], int]
    feet: dict[tuple[int, int], int]
    hooks: dict[tuple[int, int], int]
    A: int
    F: int
    dim: int


def cell_stats(lam: Partition) -> CellStats:
    """Arm, foot (leg) and hook of every cell, their totals and the hook-length dimension."""
    if not lam.parts:
        raise ValueError("empty partition")
    conj = lam.conjugate().parts
    arms, feet, hooks = {}, {}, {}
    for i, j in lam.cells():
        a = lam.parts[i] - j - 1
        f = conj[j] - i - 1
        arms[(i, j)] = a
        feet[(i, j)] = f
        hooks[(i, j)] = a + f + 1
    dim = factorial(lam.n) // prod(hooks.values())
    return CellStats(arms, feet, hooks, sum(arms.values()), sum(feet.values()), dim)


def centralizer_size(mu: Partition) -> int:
    """z_mu = prod_k k^{m_k} m_k!, so that the class of cycle type mu has n!/z_mu elements."""
    out = 1
    for k in set(mu.parts):
        m = mu.parts.count(k)
        out *= k**m * factorial(m)
    return out


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in occupied:
            between = sum(1 for c in beta if b - r < c < b)
            new = tuple(sorted((c if c != b else b - r) for c in beta))
            total += (-1) ** between * _mn(new, rest)
    return total


def character_value_sn(lam: Partition, cycle_type: Partition) -> int:
    """chi^lambda on the class of the given cycle type, by the Murnaghan-Nakayama rule."""
    if lam.n != cycle_type.n:
        raise ValueError(f"{lam} and {cycle_type} are partitions of different integers")
    k = len(lam.parts)
    beta = tuple(sorted(p + k - 1 - i for i, p in enumerate(lam.parts)))
    return _mn(beta, cycle_type.parts)


def single_block_moves(lam: Partition) -> set[Partition]:
    """Partitions obtained by moving one removable cell to a different addable position."""
    out: set[Partition] = set()
    for r in lam.removable_rows():
        smaller = lam.remove_cell(r)
        for a in smaller.addable_rows():
            new = smaller.add_cell(a)
            if new != lam:
                out.add(new)
    return out


def sign_of_cycle_type(mu: Sequence[int]) -> int:
    return (-1) ** sum(p - 1 for p in mu)
