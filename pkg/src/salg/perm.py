"""Permutations of {1, ..., n} and subgroups given by generators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Perm:
    """A permutation stored by images: ``images[i-1] == sigma(i)``.

    Composition follows functions: ``(s * p)(i) == s(p(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        """Product of cycles, applied right to left."""
        result = cls.identity(n)
        for cycle in cycles:
            images = list(range(1, n + 1))
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a - 1] = b
            result = result * cls(tuple(images))
        return result

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Perm":
        return cls.from_cycles(n, (i, j))

    @classmethod
    def parse(cls, n: int, text: str) -> "Perm":
        """Parse cycle notation such as ``(1 2)(3 4)``; ``()`` is the identity."""
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"bad cycle notation {text!r}")
        cycles = []
        for chunk in text[1:-1].split(")("):
            points = [int(p) for p in chunk.replace(",", " ").split()]
            if any(not 1 <= p <= n for p in points) or len(set(points)) != len(points):
                raise ValueError(f"bad cycle {chunk!r} for degree {n}")
            if len(points) > 1:
                cycles.append(points)
        return cls.from_cycles(n, *cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cycle.append(k)
                seen.add(k)
                k = self(k)
            out.append(tuple(cycle))
        return out

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def adjacent_transpositions(n: int, upto: int | None = None) -> list[Perm]:
    """Generators (k k+1) of S_upto acting on the letters 1..upto inside S_n."""
    upto = n if upto is None else upto
    return [Perm.transposition(n, k, k + 1) for k in range(1, upto)]


def group_elements(generators: Iterable[Perm], n: int) -> list[Perm]:
    """All elements of the generated group, identity first, in BFS order."""
    gens = list(generators)
    ident = Perm.identity(n)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in seen:
                    seen.add(h)
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return order


def left_transversal(group: Sequence[Perm], subgroup: Sequence[Perm]) -> list[Perm]:
    """Representatives of the left cosets gH of ``subgroup`` in ``group``.

    Both arguments are full element lists.
    """
    covered = set()
    reps = []
    for g in group:
        if g in covered:
            continue
        reps.append(g)
        covered.update(g * h for h in subgroup)
    return reps
