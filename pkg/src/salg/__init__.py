"""Splitting algebras of monic polynomials over finite rings and their
symmetric-group invariants."""

from .invariants import (
    InvariantModule,
    condition_star,
    invariant_module,
    s2_closed_form,
    stability_products,
    trivial_transposition_test,
)
from .perm import Perm
from .ring import Ideal, Ring, RingElem, ann, ideal_intersect, ideal_pick_nonzero
from .splitalg import AlgElem, SplitAlg, construct, coset_reps_pair_stabilizer
from .witness import build_witness

__all__ = [
    "AlgElem",
    "Ideal",
    "InvariantModule",
    "Perm",
    "Ring",
    "RingElem",
    "SplitAlg",
    "ann",
    "build_witness",
    "condition_star",
    "construct",
    "coset_reps_pair_stabilizer",
    "ideal_intersect",
    "ideal_pick_nonzero",
    "invariant_module",
    "s2_closed_form",
    "stability_products",
    "trivial_transposition_test",
]
