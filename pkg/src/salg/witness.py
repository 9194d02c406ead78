"""Construct a non-trivial S_n-invariant when Ann 2 cap Ann D_f is nonzero.

Pipeline, for a nonzero seed c with 2c = 0 and c D_f = 0:

1. descent: multiply c by tau_i + tau_j over the pairs in lexicographic
   order and stop just before the product hits zero. The last nonzero
   partial product z kills both 2 and some tau_i + tau_j.
2. extraction: relabel so the pair becomes (n-1, n), expand over the head
   monomials in tau_1..tau_{n-2} and keep the coefficient at the
   lexicographically smallest head. It lies in A[tau_{n-1}, tau_n] and is
   fixed by (n-1 n). If it is a trivial (n-1 n)-invariant, multiply it by
   tau_n.
3. lift: sum over a transversal of <S_{n-2}, (n-1 n)> in S_n.

Degree 2 skips steps 2 and 3: c tau_2 is already the answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .invariants import Stability, condition_star, stability_products, trivial_transposition_test
from .perm import Perm, adjacent_transpositions
from .ring import RingElem
from .splitalg import AlgElem, SplitAlg, SplitAlgError, coset_reps_pair_stabilizer

Pair = tuple[int, int]


class WitnessVerificationError(RuntimeError):
    """The constructed element failed its own checks; this is a bug."""


@dataclass(frozen=True)
class Descent:
    z: AlgElem
    pair: Pair
    trail: tuple[tuple[Pair, AlgElem], ...]


@dataclass(frozen=True)
class Verification:
    invariant: bool
    in_A: bool
    stability: Stability

    @property
    def ok(self) -> bool:
        return self.invariant and not self.in_A and self.stability.two_x_in_A and self.stability.dfx_in_A


@dataclass(frozen=True)
class WitnessReport:
    seed: RingElem
    trail: tuple[tuple[Pair, AlgElem], ...]
    sigma_invariant: AlgElem
    multiplied_by_tau_n: bool
    y: AlgElem
    verification: Verification


def annihilator_descent(S: SplitAlg, c) -> Descent:
    c = S.ring(c)
    if not c or c * 2 or c * S.d_f:
        raise SplitAlgError(f"seed {c} must be nonzero and kill both 2 and D_f")
    z = S.const(c)
    trail = []
    for pair in itertools.combinations(range(1, S.n + 1), 2):
        i, j = pair
        nxt = z * (S.tau(i) + S.tau(j))
        trail.append((pair, nxt))
        if not nxt:
            return Descent(z=z, pair=pair, trail=tuple(trail))
        z = nxt
    # the full product is c * D_f = 0, so the loop always returns
    raise AssertionError("descent ran past the full product")


def _pair_to_top(n: int, i: int, j: int) -> Perm:
    """Permutation sending i -> n-1, j -> n, increasing on the other points."""
    rest = [k for k in range(1, n + 1) if k not in (i, j)]
    images = [0] * n
    for target, source in enumerate(rest, start=1):
        images[source - 1] = target
    images[i - 1] = n - 1
    images[j - 1] = n
    return Perm(tuple(images))


def extract_sigma_invariant(S: SplitAlg, z: AlgElem, pair: Pair) -> tuple[AlgElem, bool]:
    """A non-trivial (n-1 n)-invariant inside A[tau_{n-1}, tau_n].

    Returns the element and whether it had to be multiplied by tau_n.
    """
    n = S.n
    i, j = pair
    if not z or z * 2 or z * (S.tau(i) + S.tau(j)):
        raise SplitAlgError("z must be nonzero and kill 2 and tau_i + tau_j")
    if n == 2:
        return z * S.tau(2), False
    w = S.act(_pair_to_top(n, i, j), z)
    heads = S.coeffs_over_tail(w, n - 2)
    x = heads[min(heads)]
    if trivial_transposition_test(S, x, n - 1, n):
        return x * S.tau(n), True
    return x, False


def lift_to_full_invariant(S: SplitAlg, x: AlgElem) -> AlgElem:
    """Sum of pi x over the transversal of <S_{n-2}, (n-1 n)> in S_n."""
    n = S.n
    if n < 2:
        raise SplitAlgError("need degree at least 2")
    gens = adjacent_transpositions(n, n - 2) + [Perm.transposition(n, n - 1, n)]
    if not S.is_invariant(x, gens):
        raise SplitAlgError("x must be fixed by S_{n-2} and (n-1 n)")
    y = S.zero
    for rep in coset_reps_pair_stabilizer(n):
        y = y + S.act(rep, x)
    return y


def verify(S: SplitAlg, y: AlgElem) -> Verification:
    return Verification(
        invariant=S.is_invariant(y, adjacent_transpositions(S.n)),
        in_A=S.tail_subalgebra_support(y, S.n),
        stability=stability_products(S, y),
    )


def build_witness(S: SplitAlg) -> WitnessReport | None:
    """None when the condition holds; otherwise a checked non-trivial invariant."""
    cond = condition_star(S)
    if cond.holds:
        return None
    descent = annihilator_descent(S, cond.c)
    x, bumped = extract_sigma_invariant(S, descent.z, descent.pair)
    y = lift_to_full_invariant(S, x)
    report = WitnessReport(
        seed=cond.c,
        trail=descent.trail,
        sigma_invariant=x,
        multiplied_by_tau_n=bumped,
        y=y,
        verification=verify(S, y),
    )
    if not report.verification.ok:
        raise WitnessVerificationError(f"witness {y} for {S} failed: {report.verification}")
    return report
