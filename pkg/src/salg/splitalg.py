"""The splitting algebra A_f of a monic polynomial over a finite ring.

A_f is built as a tower: adjoin a root tau_n of f_n = f, divide off the
linear factor to get f_{n-1}, adjoin a root tau_{n-1} of that, and so on down
to tau_1. Elements are stored sparsely over the standard basis of monomials
tau_1^m_1 ... tau_n^m_n with 0 <= m_i < i; an exponent vector is a tuple
(m_1, ..., m_n) and m_1 is always 0.

Reduction rewrites tau_i^i through f_i, whose coefficients live in
A[tau_{i+1}, ..., tau_n], so a rewrite at level i only touches exponents of
higher-index variables. Normal forms of raw monomials are memoized per
algebra.
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from .perm import Perm, adjacent_transpositions, group_elements, left_transversal
from .ring import Ring, RingElem

ExpVec = tuple[int, ...]


class SplitAlgError(ValueError):
    pass


def basis_index(exps: ExpVec) -> int:
    """Mixed-radix position of a standard basis monomial (m_1 least significant)."""
    idx = 0
    weight = 1
    for i, m in enumerate(exps, start=1):
        idx += m * weight
        weight *= i
    return idx


def standard_basis(n: int) -> list[ExpVec]:
    """The n! exponent vectors of the standard basis, sorted by basis_index."""
    ranges = [range(i) for i in range(n, 0, -1)]
    return sorted(
        (tuple(reversed(e)) for e in itertools.product(*ranges)), key=basis_index
    )


class AlgElem:
    """Element of a splitting algebra; ``terms`` maps exponent vectors to
    nonzero coefficients and is never mutated after construction."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "SplitAlg", terms: Mapping[ExpVec, RingElem]):
        self.alg = alg
        self.terms = dict(terms)

    def _lift(self, other) -> "AlgElem":
        if isinstance(other, AlgElem):
            if other.alg is not self.alg:
                raise SplitAlgError("elements of different splitting algebras")
            return other
        if isinstance(other, (int, RingElem)):
            return self.alg.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms[e] + c if e in terms else c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return AlgElem(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.alg, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, RingElem)):
            c = self.alg.ring(other)
            return AlgElem(self.alg, {e: v for e, a in self.terms.items() if (v := a * c)})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.alg.multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.alg.one
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, RingElem)):
            other = self.alg.const(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> RingElem:
        return self.terms.get(self.alg.unit_exp, self.alg.ring.zero)

    def __str__(self):
        return self.alg.format(self)

    def __repr__(self):
        return f"AlgElem({self})"


class SplitAlg:
    """Splitting algebra of f = t^n + a_1 t^(n-1) + ... + a_n over ``ring``.

    ``chain[i]`` holds the non-leading coefficients (c_1, ..., c_i) of the
    monic factor f_i, with f_n = f.
    """

    def __init__(self, ring: Ring, coeffs: Sequence):
        if len(coeffs) == 0:
            raise SplitAlgError("f must have degree at least 1")
        self.ring = ring
        self.n = n = len(coeffs)
        self.coeffs = tuple(ring(a) for a in coeffs)
        self.unit_exp: ExpVec = (0,) * n
        self.basis = standard_basis(n)
        self._nf_cache: dict[ExpVec, dict[ExpVec, RingElem]] = {}
        self._rules: dict[int, list[tuple[ExpVec, RingElem]]] = {}
        # derived data kept by other modules (span caches and the like)
        self.memo: dict = {}

        self.chain: dict[int, tuple[AlgElem, ...]] = {n: tuple(self.const(a) for a in self.coeffs)}
        self._add_rule(n)
        for i in range(n, 1, -1):
            tau = self._monomial(i)
            prev = self.one
            lower = []
            for b in self.chain[i][:-1]:
                prev = b + tau * prev
                lower.append(prev)
            self.chain[i - 1] = tuple(lower)
            self._add_rule(i - 1)

    def _add_rule(self, i: int) -> None:
        # tau_i^i = -(c_1 tau_i^(i-1) + ... + c_i)
        rule = []
        for k, c in enumerate(self.chain[i], start=1):
            for e, r in c.terms.items():
                shifted = list(e)
                shifted[i - 1] += i - k
                rule.append((tuple(shifted), -r))
        self._rules[i] = rule

    # --- construction helpers -------------------------------------------------

    @property
    def one(self) -> AlgElem:
        return self.const(1)

    @property
    def zero(self) -> AlgElem:
        return AlgElem(self, {})

    def const(self, a) -> AlgElem:
        a = self.ring(a)
        return AlgElem(self, {self.unit_exp: a} if a else {})

    def _monomial(self, i: int, power: int = 1) -> AlgElem:
        e = [0] * self.n
        e[i - 1] = power
        return AlgElem(self, {tuple(e): self.ring.one}) if power < i else self.normalize({tuple(e): self.ring.one})

    def tau(self, i: int) -> AlgElem:
        """The universal root tau_i in normal form."""
        if not 1 <= i <= self.n:
            raise SplitAlgError(f"no root tau_{i} in degree {self.n}")
        return self._monomial(i)

    def monomial(self, exps: Sequence[int], coeff=1) -> AlgElem:
        return self.normalize({tuple(exps): self.ring(coeff)})

    def index(self, exps: ExpVec) -> int:
        return basis_index(exps)

    @property
    def rank(self) -> int:
        return factorial(self.n)

    # --- normal forms ---------------------------------------------------------

    def _monomial_nf(self, m: ExpVec) -> dict[ExpVec, RingElem]:
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        for i, e in enumerate(m, start=1):
            if e >= i:
                break
        else:
            result = {m: self.ring.one}
            self._nf_cache[m] = result
            return result
        base = list(m)
        base[i - 1] -= i
        acc: dict[ExpVec, RingElem] = {}
        for delta, coeff in self._rules[i]:
            raw = tuple(b + d for b, d in zip(base, delta))
            for e, c in self._monomial_nf(raw).items():
                v = coeff * c
                if e in acc:
                    v = acc[e] + v
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        self._nf_cache[m] = acc
        return acc

    def normalize(self, raw: Mapping[Sequence[int], object]) -> AlgElem:
        """Reduce an arbitrary combination of monomials to the standard basis."""
        acc: dict[ExpVec, RingElem] = {}
        for exps, coeff in raw.items():
            exps = tuple(exps)
            if len(exps) != self.n or any(e < 0 for e in exps):
                raise SplitAlgError(f"bad exponent vector {exps}")
            coeff = self.ring(coeff)
            if not coeff:
                continue
            for e, c in self._monomial_nf(exps).items():
                v = coeff * c
                if e in acc:
                    v = acc[e] + v
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return AlgElem(self, acc)

    def multiply(self, x: AlgElem, y: AlgElem) -> AlgElem:
        raw: dict[ExpVec, RingElem] = {}
        for e1, c1 in x.terms.items():
            for e2, c2 in y.terms.items():
                c = c1 * c2
                if not c:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                raw[e] = raw[e] + c if e in raw else c
        return self.normalize(raw)

    # --- symmetric group action -----------------------------------------------

    def act(self, sigma: Perm, x: AlgElem) -> AlgElem:
        """Apply the algebra map tau_i -> tau_sigma(i)."""
        if sigma.degree != self.n:
            raise SplitAlgError(f"permutation of degree {sigma.degree} on degree {self.n}")
        raw: dict[ExpVec, RingElem] = {}
        for e, c in x.terms.items():
            moved = [0] * self.n
            for i, m in enumerate(e, start=1):
                moved[sigma(i) - 1] = m
            moved = tuple(moved)
            raw[moved] = raw[moved] + c if moved in raw else c
        return self.normalize(raw)

    def is_invariant(self, x: AlgElem, generators: Iterable[Perm]) -> bool:
        return all(self.act(g, x) == x for g in generators)

    def orbit_sum(self, G: Sequence[Perm], H: Sequence[Perm], x: AlgElem) -> AlgElem:
        """Lift a G-invariant to an H-invariant: sum of sigma x over H/G.

        ``G`` and ``H`` are generator lists.
        """
        if not self.is_invariant(x, G):
            raise SplitAlgError("element is not invariant under G")
        h_elems = group_elements(H, self.n)
        members = set(h_elems)
        if any(g not in members for g in G):
            raise SplitAlgError("G is not a subgroup of H")
        reps = left_transversal(h_elems, group_elements(G, self.n))
        total = self.zero
        for rep in reps:
            total = total + self.act(rep, x)
        return total

    # --- distinguished elements -----------------------------------------------

    def pair_product(self, pairs: Iterable[tuple[int, int]] | None = None) -> AlgElem:
        """Product of (tau_i + tau_j) over the pairs; all pairs i < j by default."""
        if pairs is None:
            pairs = itertools.combinations(range(1, self.n + 1), 2)
        result = self.one
        for i, j in pairs:
            if not 1 <= i < j <= self.n:
                raise SplitAlgError(f"invalid pair ({i}, {j})")
            result = result * (self.tau(i) + self.tau(j))
        return result

    @property
    def d_f(self) -> RingElem:
        """The product of tau_i + tau_j over all pairs, which lies in A."""
        if "d_f" not in self.memo:
            d = self.pair_product()
            assert d.is_constant(), f"D_f left the base ring: {d}"
            self.memo["d_f"] = d.constant_term()
        return self.memo["d_f"]

    # --- tail subalgebras -----------------------------------------------------

    def tail_subalgebra_support(self, x: AlgElem, i: int) -> bool:
        """True iff x lies in A[tau_{i+1}, ..., tau_n]; i = n tests x in A."""
        if not 0 <= i <= self.n:
            raise SplitAlgError(f"index {i} out of range")
        return all(not any(e[:i]) for e in x.terms)

    def coeffs_over_tail(self, x: AlgElem, i: int) -> dict[ExpVec, AlgElem]:
        """Write x = sum_p c_p p over head monomials p in tau_1..tau_i.

        Keys are head exponent vectors of length i, values lie in
        A[tau_{i+1}, ..., tau_n].
        """
        if not 0 <= i <= self.n:
            raise SplitAlgError(f"index {i} out of range")
        groups: dict[ExpVec, dict[ExpVec, RingElem]] = {}
        for e, c in x.terms.items():
            tail = (0,) * i + e[i:]
            groups.setdefault(e[:i], {})[tail] = c
        return {
            head: AlgElem(self, groups[head])
            for head in sorted(groups, key=basis_index)
        }

    # --- universal property ---------------------------------------------------

    def specialize(self, x: AlgElem, roots: Sequence) -> RingElem:
        """Image of x under tau_i -> roots[i-1], for roots that split f over A."""
        roots = [self.ring(r) for r in roots]
        if len(roots) != self.n:
            raise SplitAlgError(f"need {self.n} roots, got {len(roots)}")
        if expand_roots(self.ring, roots) != list(self.coeffs):
            raise SplitAlgError("the given roots do not factor f")
        total = self.ring.zero
        for e, c in x.terms.items():
            term = c
            for r, m in zip(roots, e):
                if m:
                    term = term * r**m
            total = total + term
        return total

    # --- dense coordinates ----------------------------------------------------

    def dense(self, x: AlgElem, factor: int) -> list[int]:
        """Coefficient column of x over the standard basis, in one ring factor."""
        vec = [0] * len(self.basis)
        for e, c in x.terms.items():
            vec[basis_index(e)] = c.residues[factor]
        return vec

    def from_dense(self, vectors: Sequence[Sequence[int]]) -> AlgElem:
        """Inverse of ``dense``: one coefficient vector per ring factor."""
        terms = {}
        for idx, e in enumerate(self.basis):
            c = self.ring([v[idx] for v in vectors])
            if c:
                terms[e] = c
        return AlgElem(self, terms)

    def from_factor_row(self, row: Sequence[int], factor: int) -> AlgElem:
        """Embed a coefficient row of one factor (zeros in the other factors)."""
        vectors = [[0] * len(self.basis) for _ in self.ring.moduli]
        vectors[factor] = list(row)
        return self.from_dense(vectors)

    # --- display --------------------------------------------------------------

    def format(self, x: AlgElem) -> str:
        return format_terms(x.terms, RingElem.is_one)

    def __repr__(self):
        return f"SplitAlg({self.ring}, {[str(a) for a in self.coeffs]})"


def format_terms(terms: Mapping[ExpVec, object], is_one: Callable[[object], bool]) -> str:
    """Canonical display: ``c*t2^e2*t3^e3`` terms in basis order, ``0`` if empty."""
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, key=basis_index):
        c = terms[e]
        mono = "*".join(f"t{i}^{m}" for i, m in enumerate(e, start=1) if m)
        if not mono:
            parts.append(str(c))
        elif is_one(c):
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


def expand_roots(ring: Ring, roots: Sequence[RingElem]) -> list[RingElem]:
    """Coefficients (a_1, ..., a_n) of prod (t - r) = t^n + a_1 t^(n-1) + ..."""
    poly = [ring.one]
    for r in roots:
        nxt = poly + [ring.zero]
        for k in range(1, len(nxt)):
            nxt[k] = nxt[k] - r * poly[k - 1]
        poly = nxt
    return poly[1:]


def construct(ring: Ring, coeffs: Sequence) -> SplitAlg:
    return SplitAlg(ring, coeffs)


def coset_reps_pair_stabilizer(n: int) -> list[Perm]:
    """Left transversal of <S_{n-2}, (n-1 n)> in S_n.

    One representative per pair i < j: it sends n-1 -> i, n -> j and maps
    1..n-2 increasingly onto the remaining points.
    """
    if n < 2:
        raise SplitAlgError("need n >= 2")
    reps = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        rest = [k for k in range(1, n + 1) if k not in (i, j)]
        reps.append(Perm(tuple(rest) + (i, j)))
    return reps


def symmetric_generators(n: int) -> list[Perm]:
    return adjacent_transpositions(n)
