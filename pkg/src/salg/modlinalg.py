"""Linear algebra over Z/m: Howell normal form, kernels, row-span membership.

Matrices are numpy int64 arrays with entries in [0, m). Moduli stay below
2^31, so a product of two reduced entries never overflows.

The Howell form of a submodule of (Z/m)^c is the unique echelon basis whose
pivots divide m, whose entries above each pivot are reduced below it, and
which has the Howell property: every vector of the span that vanishes on the
first j columns is a combination of the rows with pivot column >= j. That last
property is what makes membership decidable by plain forward elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence

import numpy as np


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def unit_normalizer(a: int, m: int) -> int:
    """A unit u of Z/m with u*a = gcd(a, m) (mod m)."""
    g = gcd(a, m)
    if g == m:
        return 1
    mm = m // g
    u = pow(a // g, -1, mm) if mm > 1 else 0
    while gcd(u, m) != 1:
        u += mm
    return u % m


def as_matrix(rows, modulus: int, ncols: int | None = None) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        if ncols is None:
            ncols = arr.shape[1] if arr.ndim == 2 else 0
        return np.zeros((0, ncols), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if ncols is not None and arr.shape[1] != ncols:
        raise ValueError(f"expected {ncols} columns, got {arr.shape[1]}")
    return arr % modulus


@dataclass(frozen=True)
class HowellBasis:
    modulus: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, e in enumerate(r) if e) for r in self.rows)

    def __len__(self):
        return len(self.rows)

    def __contains__(self, v) -> bool:
        return in_row_span(v, self)

    @property
    def size(self) -> int:
        """Number of elements of the span."""
        total = 1
        for r, k in zip(self.rows, self.pivots):
            total *= self.modulus // r[k]
        return total

    def span(self) -> Iterator[tuple[int, ...]]:
        """Enumerate the span (each element exactly once). Small cases only."""
        m = self.modulus
        orders = [m // r[k] for r, k in zip(self.rows, self.pivots)]
        vecs = [np.array(r, dtype=np.int64) for r in self.rows]

        def rec(i, acc):
            if i == len(vecs):
                yield tuple(int(e) for e in acc % m)
                return
            for a in range(orders[i]):
                yield from rec(i + 1, acc + a * vecs[i])

        yield from rec(0, np.zeros(self.ncols, dtype=np.int64))


def _howell_array(A: np.ndarray, m: int) -> np.ndarray:
    nrows, ncols = A.shape
    pending = A[np.any(A, axis=1)]
    pivot_rows: list[np.ndarray] = []
    pivot_cols: list[int] = []

    for k in range(ncols):
        if pending.shape[0] == 0:
            break
        col = pending[:, k]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        # start from the entry with the smallest gcd so most rows clear in one shot
        best = int(nz[np.argmin(np.gcd(col[nz], m))])
        piv = pending[best] * unit_normalizer(int(col[best]), m) % m
        others = np.delete(pending, best, axis=0)

        d = int(piv[k])
        e = others[:, k]
        stubborn = np.flatnonzero(e % d)
        for idx in stubborn:
            row = others[idx]
            a, b = int(piv[k]), int(row[k])
            g, s, t = _xgcd(a, b)
            piv, others[idx] = (s * piv + t * row) % m, ((-(b // g)) * piv + (a // g) * row) % m
        d = int(piv[k])
        e = others[:, k]
        hit = np.flatnonzero(e)
        if hit.size:
            others[hit] = (others[hit] - np.outer(e[hit] // d, piv)) % m

        extra = piv * (m // d) % m
        if extra.any():
            others = np.vstack([others, extra])
        pending = others[np.any(others, axis=1)]
        pivot_rows.append(piv)
        pivot_cols.append(k)

    if not pivot_rows:
        return np.zeros((0, ncols), dtype=np.int64)
    H = np.array(pivot_rows, dtype=np.int64)
    for p, k in enumerate(pivot_cols):
        d = H[p, k]
        q = H[:p, k] // d
        if q.any():
            H[:p] = (H[:p] - np.outer(q, H[p])) % m
    return H


def howell_form(rows, modulus: int, ncols: int | None = None) -> HowellBasis:
    """Canonical basis of the row span of ``rows`` over Z/modulus."""
    A = as_matrix(rows, modulus, ncols)
    H = _howell_array(A, modulus)
    return HowellBasis(modulus, A.shape[1], tuple(tuple(int(e) for e in r) for r in H))


def kernel(M, modulus: int, ncols: int | None = None) -> HowellBasis:
    """Basis of {v : M v = 0}, returned as rows.

    The rows of the Howell form of [M^T | I] that vanish on the M^T block
    span exactly the kernel, by the Howell property.
    """
    A = as_matrix(M, modulus, ncols)
    c = A.shape[1]
    if A.shape[0] > c:
        # same row span, fewer columns in the augmented system
        A = _howell_array(A, modulus)
    r = A.shape[0]
    aug = np.hstack([A.T, np.eye(c, dtype=np.int64)]) % modulus
    H = _howell_array(aug, modulus)
    K = H[~np.any(H[:, :r], axis=1)][:, r:]
    return howell_form(K, modulus, c)


def in_row_span(v: Sequence[int], B: HowellBasis) -> bool:
    """Forward elimination against the Howell rows; no search involved."""
    m = B.modulus
    w = [int(e) % m for e in v]
    if len(w) != B.ncols:
        raise ValueError(f"vector of length {len(w)} against {B.ncols} columns")
    done = 0
    for row, k in zip(B.rows, B.pivots):
        if any(w[done:k]):
            return False
        q, r = divmod(w[k], row[k])
        if r:
            return False
        if q:
            for t in range(k, len(w)):
                w[t] = (w[t] - q * row[t]) % m
        done = k + 1
    return not any(w[done:])


def coordinate_intersection(B: HowellBasis, keep: Sequence[int]) -> HowellBasis:
    """Howell basis of span(B) intersected with the coordinates in ``keep``.

    Columns outside ``keep`` are moved to the front; by the Howell property,
    the rows vanishing there span the intersection.
    """
    keep = sorted(set(keep))
    drop = [k for k in range(B.ncols) if k not in set(keep)]
    order = drop + keep
    A = as_matrix(B.rows, B.modulus, B.ncols)[:, order]
    H = _howell_array(A, B.modulus)
    H = H[~np.any(H[:, : len(drop)], axis=1)]
    back = np.zeros((H.shape[0], B.ncols), dtype=np.int64)
    back[:, order] = H
    return howell_form(back, B.modulus, B.ncols)
