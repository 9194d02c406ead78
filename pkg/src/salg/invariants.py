"""Invariant modules A_f^G, triviality tests and the annihilator condition.

Invariant modules are computed by brute force: for each generator g the
matrix of (g - id) on the standard basis is stacked, and the kernel is taken
separately in every factor Z/m_k of the base ring.

Trivial invariants only have closed descriptions for a few subgroups:
S_m on the letters 1..m (the tail subalgebra A[tau_{m+1}, ..., tau_n]) and
single transpositions (i j) (a conjugate of A[tau_3, ..., tau_n]).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from . import modlinalg
from .modlinalg import HowellBasis
from .perm import Perm, group_elements
from .ring import Ideal, RingElem, ann, ideal_intersect, ideal_pick_nonzero
from .splitalg import AlgElem, SplitAlg, SplitAlgError, symmetric_generators


class UnsupportedSubgroupError(ValueError):
    pass


class NotInvariantError(SplitAlgError):
    pass


@dataclass(frozen=True)
class InvariantModule:
    """Per ring factor, a Howell basis over Z/m_k of coefficient rows."""

    alg: SplitAlg
    bases: tuple[HowellBasis, ...]

    def __contains__(self, x: AlgElem) -> bool:
        return all(
            modlinalg.in_row_span(self.alg.dense(x, k), B) for k, B in enumerate(self.bases)
        )

    def __eq__(self, other):
        if not isinstance(other, InvariantModule):
            return NotImplemented
        return self.alg is other.alg and self.bases == other.bases

    def __hash__(self):
        return hash(self.bases)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(B) for B in self.bases)

    @property
    def size(self) -> int:
        total = 1
        for B in self.bases:
            total *= B.size
        return total

    def is_constants(self) -> bool:
        """True iff the module is exactly A (the unit monomial times A)."""
        return self == constants_module(self.alg)

    def rows(self, factor: int) -> list[AlgElem]:
        """Basis rows of one factor as algebra elements (zero elsewhere)."""
        return [self.alg.from_factor_row(r, factor) for r in self.bases[factor].rows]


def module_from_rows(S: SplitAlg, rows_per_factor: Sequence[Sequence[Sequence[int]]]) -> InvariantModule:
    return InvariantModule(
        S,
        tuple(
            modlinalg.howell_form(rows, m, S.rank)
            for rows, m in zip(rows_per_factor, S.ring.moduli)
        ),
    )


def constants_module(S: SplitAlg) -> InvariantModule:
    unit = [1] + [0] * (S.rank - 1)
    return module_from_rows(S, [[unit] for _ in S.ring.moduli])


def invariant_module(S: SplitAlg, generators: Sequence[Perm] | None = None) -> InvariantModule:
    """Brute-force A_f^G for G generated by ``generators`` (default S_n)."""
    if generators is None:
        generators = symmetric_generators(S.n)
    N = S.rank
    blocks = [np.zeros((len(generators) * N, N), dtype=np.int64) for _ in S.ring.moduli]
    for gi, g in enumerate(generators):
        for j, e in enumerate(S.basis):
            image = S.act(g, S.monomial(e))
            for k, block in enumerate(blocks):
                col = block[:, j]
                col[gi * N : (gi + 1) * N] = S.dense(image, k)
                col[gi * N + j] -= 1
    return InvariantModule(
        S,
        tuple(modlinalg.kernel(block, m, N) for block, m in zip(blocks, S.ring.moduli)),
    )


def s2_closed_form(S: SplitAlg) -> InvariantModule:
    """A_f^{S_2} = A + (Ann 2 cap Ann(tau_1 + tau_2)) tau_2 for n = 2."""
    if S.n != 2:
        raise SplitAlgError("the closed form needs degree 2")
    root_sum = -S.coeffs[0]
    I = ideal_intersect(ann(S.ring, 2), ann(S.ring, root_sum))
    rows = []
    for d, m in zip(I.divisors, S.ring.moduli):
        rows.append([[1, 0], [0, d % m]])
    return module_from_rows(S, rows)


def _tail_span(S: SplitAlg, pi: Perm) -> list[HowellBasis]:
    # images under pi of the monomials spanning A[tau_3, ..., tau_n]
    images = [S.act(pi, S.monomial(e)) for e in S.basis if e[0] == 0 and e[1] == 0]
    return [
        modlinalg.howell_form([S.dense(x, k) for x in images], m, S.rank)
        for k, m in enumerate(S.ring.moduli)
    ]


def trivial_transposition_test(S: SplitAlg, x: AlgElem, i: int, j: int) -> bool:
    """Decide whether x is a trivial (i j)-invariant.

    The trivial (1 2)-invariants are A[tau_3, ..., tau_n]; for other pairs
    they are its image under pi = (1 i)(2 j), which conjugates (1 2) to (i j).
    """
    n = S.n
    if not (n >= 2 and 1 <= i < j <= n):
        raise SplitAlgError(f"invalid transposition ({i} {j}) in degree {n}")
    sigma = Perm.transposition(n, i, j)
    if S.act(sigma, x) != x:
        raise NotInvariantError(f"{x} is not fixed by {sigma}")
    key = ("trivial-transposition", i, j)
    if key not in S.memo:
        pi = Perm.from_cycles(n, (1, i), (2, j)) if i != 1 else Perm.from_cycles(n, (2, j))
        S.memo[key] = _tail_span(S, pi)
    return all(modlinalg.in_row_span(S.dense(x, k), B) for k, B in enumerate(S.memo[key]))


def _leading_symmetric_degree(S: SplitAlg, generators: Sequence[Perm]) -> int | None:
    """m if the generators generate S_m on the letters 1..m, else None."""
    n = S.n
    moved = {p for g in generators for p in range(1, n + 1) if g(p) != p}
    m = max(moved, default=1)
    if moved and moved != set(range(1, m + 1)):
        return None
    order = len(group_elements(generators, n))
    return m if order == factorial(m) else None


def is_trivial_invariant(S: SplitAlg, x: AlgElem, generators: Sequence[Perm]) -> bool:
    """Triviality for the subgroups with a known description.

    Supported: S_m on 1..m (including S_n and the trivial group) and groups
    generated by one transposition. Anything else raises
    UnsupportedSubgroupError.
    """
    if not S.is_invariant(x, generators):
        raise NotInvariantError("element is not invariant under the group")
    m = _leading_symmetric_degree(S, generators)
    if m is not None:
        return S.tail_subalgebra_support(x, m)
    gens = [g for g in generators if not g.is_identity()]
    if len(set(gens)) == 1 and [len(c) for c in gens[0].cycles()] == [2]:
        i, j = sorted(gens[0].cycles()[0])
        return trivial_transposition_test(S, x, i, j)
    raise UnsupportedSubgroupError("no description of trivial invariants for this subgroup")


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    d_f: RingElem
    ann2: Ideal
    annD: Ideal
    intersection: Ideal
    c: RingElem | None


def condition_star(S: SplitAlg) -> ConditionReport:
    """Evaluate Ann_A 2 cap Ann_A D_f = 0."""
    d_f = S.d_f
    ann2 = ann(S.ring, 2)
    annD = ann(S.ring, d_f)
    both = ideal_intersect(ann2, annD)
    return ConditionReport(
        holds=both.is_zero(),
        d_f=d_f,
        ann2=ann2,
        annD=annD,
        intersection=both,
        c=ideal_pick_nonzero(both),
    )


@dataclass(frozen=True)
class Stability:
    two_x_in_A: bool
    dfx_in_A: bool


def stability_products(S: SplitAlg, x: AlgElem) -> Stability:
    """For an S_n-invariant x, both 2x and D_f x must be constants."""
    return Stability(
        two_x_in_A=S.tail_subalgebra_support(x * 2, S.n),
        dfx_in_A=S.tail_subalgebra_support(x * S.d_f, S.n),
    )
