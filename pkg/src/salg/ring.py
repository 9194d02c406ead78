"""Finite commutative base rings Z/m_1 x ... x Z/m_r.

Elements are tuples of residues, one per factor, and every operation is
componentwise. Ideals of such a ring are products of principal ideals
(d_k) with d_k | m_k, which is all the ideal arithmetic the package needs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Iterator, Sequence, Union

MAX_MODULUS = 2**31


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli:
            raise ValueError("a ring needs at least one factor")
        for m in self.moduli:
            if not isinstance(m, int) or m < 2 or m >= MAX_MODULUS:
                raise ValueError(f"modulus must be an integer in [2, 2^31), got {m!r}")

    @classmethod
    def parse(cls, spec: str) -> "Ring":
        """Parse ``Z/m`` or ``Z/m1 x Z/m2 x ...`` (whitespace is ignored)."""
        text = re.sub(r"\s+", "", spec)
        if not text:
            raise ValueError("empty ring specification")
        moduli = []
        for part in text.split("x"):
            match = re.fullmatch(r"Z/(\d+)", part)
            if match is None:
                raise ValueError(f"bad ring factor {part!r} in {spec!r}")
            moduli.append(int(match.group(1)))
        return cls(tuple(moduli))

    def __str__(self):
        return " x ".join(f"Z/{m}" for m in self.moduli)

    def __call__(self, value: Union[int, Sequence[int], "RingElem"]) -> "RingElem":
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingMismatchError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, int):
            return RingElem(self, tuple(value % m for m in self.moduli))
        values = tuple(value)
        if len(values) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} residues, got {len(values)}")
        return RingElem(self, tuple(int(v) % m for v, m in zip(values, self.moduli)))

    @property
    def zero(self) -> "RingElem":
        return self(0)

    @property
    def one(self) -> "RingElem":
        return self(1)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def elements(self) -> Iterator["RingElem"]:
        for residues in itertools.product(*(range(m) for m in self.moduli)):
            yield RingElem(self, residues)

    def parse_element(self, text: str) -> "RingElem":
        """Parse ``7`` (embedded integer) or ``(2,1)`` (explicit residues)."""
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            return self([int(p) for p in text[1:-1].split(",")])
        return self(int(text))


@dataclass(frozen=True)
class RingElem:
    ring: Ring
    residues: tuple[int, ...]

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(
            self.ring,
            tuple((a + b) % m for a, b, m in zip(self.residues, other.residues, self.ring.moduli)),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(
            self.ring,
            tuple((a - b) % m for a, b, m in zip(self.residues, other.residues, self.ring.moduli)),
        )

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return RingElem(self.ring, tuple(-a % m for a, m in zip(self.residues, self.ring.moduli)))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(
            self.ring,
            tuple(a * b % m for a, b, m in zip(self.residues, other.residues, self.ring.moduli)),
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return RingElem(
            self.ring, tuple(pow(a, e, m) for a, m in zip(self.residues, self.ring.moduli))
        )

    def __bool__(self):
        return any(self.residues)

    def is_one(self) -> bool:
        return all(a == 1 for a in self.residues)

    def __str__(self):
        if len(self.residues) == 1:
            return str(self.residues[0])
        return "(" + ",".join(map(str, self.residues)) + ")"

    def __repr__(self):
        return f"RingElem({self.ring}, {self})"


@dataclass(frozen=True)
class Ideal:
    """Product of principal ideals; ``divisors[k]`` divides ``m_k``.

    A divisor equal to ``m_k`` encodes the zero ideal of that factor.
    """

    ring: Ring
    divisors: tuple[int, ...]

    def __post_init__(self):
        for d, m in zip(self.divisors, self.ring.moduli):
            if d < 1 or m % d:
                raise ValueError(f"{d} is not a divisor of {m}")

    @property
    def generator(self) -> RingElem:
        return self.ring(self.divisors)

    def is_zero(self) -> bool:
        return self.divisors == self.ring.moduli

    def __contains__(self, x: RingElem) -> bool:
        return all(a % d == 0 for a, d in zip(self.ring(x).residues, self.divisors))

    def elements(self) -> Iterator[RingElem]:
        ranges = [range(0, m, d) for d, m in zip(self.divisors, self.ring.moduli)]
        for residues in itertools.product(*ranges):
            yield RingElem(self.ring, residues)

    def __str__(self):
        return " x ".join(
            f"({d % m})" for d, m in zip(self.divisors, self.ring.moduli)
        )


def ann(ring: Ring, a) -> Ideal:
    """Annihilator {x : x*a = 0}, per factor generated by m/gcd(a, m)."""
    a = ring(a)
    return Ideal(ring, tuple(m // gcd(r, m) for r, m in zip(a.residues, ring.moduli)))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")
    return Ideal(
        I.ring,
        tuple(gcd(lcm(d1, d2), m) for d1, d2, m in zip(I.divisors, J.divisors, I.ring.moduli)),
    )


def ideal_pick_nonzero(I: Ideal) -> RingElem | None:
    """Canonical nonzero element: the generator at the first nonzero factor."""
    for k, (d, m) in enumerate(zip(I.divisors, I.ring.moduli)):
        if d < m:
            residues = [0] * len(I.divisors)
            residues[k] = d
            return I.ring(residues)
    return None
