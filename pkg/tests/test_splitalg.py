import itertools
import random
from math import factorial

import pytest
from hypothesis import given, settings

from salg.perm import Perm, adjacent_transpositions, group_elements, left_transversal
from salg.ring import Ring
from salg.splitalg import (
    SplitAlgError,
    basis_index,
    construct,
    coset_reps_pair_stabilizer,
    expand_roots,
    standard_basis,
)

from conftest import algebra_with_elements, algebras, random_element


def poly_mul(S, p, q):
    """Multiply polynomials in t with coefficients in A_f (lists, low degree first)."""
    out = [S.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def monic_low_first(S, coeffs):
    return list(reversed([S.one, *coeffs]))


# --- basis --------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_standard_basis_is_mixed_radix(n):
    basis = standard_basis(n)
    assert len(basis) == factorial(n)
    assert [basis_index(e) for e in basis] == list(range(factorial(n)))
    assert all(e[i] < i + 1 for e in basis for i in range(n))


def test_basis_index_order():
    assert basis_index((0, 1, 0)) == 1
    assert basis_index((0, 0, 1)) == 2
    assert basis_index((0, 1, 2)) == 5


# --- construction ---------------------------------------------------------------


def test_construct_examples(z2_cubic):
    S = z2_cubic
    assert [str(c) for c in S.chain[2]] == ["t3^1", "t3^2"]
    assert [str(c) for c in S.chain[1]] == ["t2^1 + t3^1"]
    S2 = construct(Ring((2,)), [0, 0])
    assert [str(c) for c in S2.chain[1]] == ["t2^1"]


def test_degree_one_is_the_base_ring():
    S = construct(Ring((6,)), [4])
    assert S.basis == [(0,)]
    assert S.tau(1) == S.const(2)  # tau_1 = -a_1
    assert S.pair_product() == S.one


def test_construct_rejects_empty():
    with pytest.raises(SplitAlgError):
        construct(Ring((5,)), [])


@given(algebras(max_n=5))
@settings(max_examples=60, deadline=None)
def test_chain_divides_exactly(S):
    # f_{i-1} * (t - tau_i) == f_i
    for i in range(S.n, 1, -1):
        lower = monic_low_first(S, S.chain[i - 1])
        product = poly_mul(S, lower, [-S.tau(i), S.one])
        assert product == monic_low_first(S, S.chain[i])


@given(algebras(max_n=5, factors=2))
@settings(max_examples=60, deadline=None)
def test_f_splits_over_universal_roots(S):
    poly = [S.one]
    for i in range(1, S.n + 1):
        poly = poly_mul(S, poly, [-S.tau(i), S.one])
    assert poly == monic_low_first(S, [S.const(a) for a in S.coeffs])


def test_chain_coefficients_live_in_tails():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 5)
        S = construct(Ring((rng.randint(2, 9),)), [rng.randrange(9) for _ in range(n)])
        for i, coeffs in S.chain.items():
            assert all(S.tail_subalgebra_support(c, i) for c in coeffs)


# --- normal forms ---------------------------------------------------------------


def test_normalize_examples(z2_cubic):
    S = z2_cubic
    assert str(S.monomial((0, 2, 0))) == "t2^1*t3^1 + t3^2"
    assert S.monomial((0, 0, 3)) == S.zero
    assert str(S.monomial((0, 1, 2))) == "t2^1*t3^2"


def test_normalize_rejects_bad_exponents(z2_cubic):
    with pytest.raises(SplitAlgError):
        z2_cubic.normalize({(0, -1, 0): 1})
    with pytest.raises(SplitAlgError):
        z2_cubic.normalize({(0, 1): 1})


def test_multiply_examples(z2_cubic):
    S = z2_cubic
    t2, t3 = S.tau(2), S.tau(3)
    assert str(t2 * t2) == "t2^1*t3^1 + t3^2"
    assert str((t2 + t3) * (t2 + t3)) == "t2^1*t3^1"
    x = t2 * t3 + 1
    assert x * S.one == x


@given(algebra_with_elements(count=1, max_n=5))
@settings(max_examples=60, deadline=None)
def test_normal_form_idempotent_and_in_range(data):
    S, x = data
    assert S.normalize(x.terms) == x
    assert all(e[i] < i + 1 for e in x.terms for i in range(S.n))
    assert all(c for c in x.terms.values())


@given(algebra_with_elements(count=3))
@settings(max_examples=80, deadline=None)
def test_ring_laws(data):
    S, x, y, z = data
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == S.zero
    assert all(e[i] < i + 1 for e in (x * y).terms for i in range(S.n))


# --- group action ---------------------------------------------------------------


def test_act_examples(z2_cubic):
    S = z2_cubic
    t2, t3 = S.tau(2), S.tau(3)
    assert S.act(Perm.identity(3), t2 * t3 + 1) == t2 * t3 + 1
    assert S.act(Perm.transposition(3, 2, 3), t2) == t3
    assert S.act(Perm.transposition(3, 1, 2), t2 + t3) == t2
    with pytest.raises(SplitAlgError):
        S.act(Perm.identity(2), t2)


@given(algebra_with_elements(count=2, factors=2))
@settings(max_examples=60, deadline=None)
def test_act_is_an_automorphism(data):
    S, x, y = data
    rng = random.Random(hash((x, y)))
    perms = group_elements(adjacent_transpositions(S.n), S.n)
    s, p = rng.choice(perms), rng.choice(perms)
    assert S.act(s, x * y) == S.act(s, x) * S.act(s, y)
    assert S.act(s, x + y) == S.act(s, x) + S.act(s, y)
    assert S.act(s, S.const(S.coeffs[0])) == S.const(S.coeffs[0])
    assert S.act(s * p, x) == S.act(s, S.act(p, x))
    assert S.act(s.inverse(), S.act(s, x)) == x


def test_act_permutes_the_roots():
    rng = random.Random(5)
    for _ in range(20):
        S = construct(Ring((rng.randint(2, 12),)), [rng.randrange(12) for _ in range(4)])
        for s in group_elements(adjacent_transpositions(4), 4):
            for i in range(1, 5):
                assert S.act(s, S.tau(i)) == S.tau(s(i))


# --- orbit sums -----------------------------------------------------------------


def test_orbit_sum_examples(z2_cubic):
    S = z2_cubic
    n = 3
    t12 = [Perm.transposition(n, 1, 2)]
    assert S.orbit_sum([], t12, S.tau(1)) == S.tau(1) + S.tau(2)
    x = S.monomial((0, 1, 2))
    assert S.orbit_sum([Perm.transposition(n, 2, 3)], adjacent_transpositions(n), x) == x

    S4 = construct(Ring((4,)), [2, 1])
    assert S4.orbit_sum([], adjacent_transpositions(2), S4.tau(2)) == S4.const(2)


def test_orbit_sum_errors(z2_cubic):
    S = z2_cubic
    with pytest.raises(SplitAlgError):
        S.orbit_sum([Perm.transposition(3, 1, 2)], adjacent_transpositions(3), S.tau(3) + S.tau(2) * S.tau(3))
    with pytest.raises(SplitAlgError):
        S.orbit_sum(
            [Perm.transposition(3, 1, 3)], [Perm.transposition(3, 1, 2)], S.one
        )


def test_orbit_sum_is_h_invariant():
    rng = random.Random(11)
    for _ in range(40):
        S = construct(Ring((rng.randint(2, 8),)), [rng.randrange(8) for _ in range(rng.randint(2, 4))])
        n = S.n
        H = adjacent_transpositions(n)
        G = rng.sample(H, rng.randint(0, len(H)))
        # sum over G makes anything G-invariant
        x = random_element(rng, S, 0.3)
        gx = S.zero
        for g in group_elements(G, n):
            gx = gx + S.act(g, x)
        assert S.is_invariant(S.orbit_sum(G, H, gx), H)


# --- D_f and friends --------------------------------------------------------------


def test_pair_product_examples():
    assert construct(Ring((5,)), [3]).pair_product() == 1
    S = construct(Ring((4,)), [2, 1])
    assert S.pair_product() == S.const(2)
    S = construct(Ring((6,)), [1, 2, 4])
    assert S.pair_product() == S.const(2)
    with pytest.raises(SplitAlgError):
        S.pair_product([(2, 1)])
    with pytest.raises(SplitAlgError):
        S.pair_product([(1, 4)])


def test_d_f_matches_cubic_identity():
    rng = random.Random(7)
    for _ in range(50):
        m = rng.randint(2, 16)
        a1, a2, a3 = (rng.randrange(m) for _ in range(3))
        S = construct(Ring((m,)), [a1, a2, a3])
        assert S.d_f == S.ring(a3 - a1 * a2)


def test_d_f_on_split_polynomials():
    # specialization fixes A, so D_f equals the product of nu_i + nu_j
    rng = random.Random(8)
    for _ in range(40):
        m, n = rng.randint(2, 16), rng.randint(1, 5)
        R = Ring((m,))
        roots = [R(rng.randrange(m)) for _ in range(n)]
        S = construct(R, expand_roots(R, roots))
        expected = R.one
        for i, j in itertools.combinations(range(n), 2):
            expected = expected * (roots[i] + roots[j])
        assert S.d_f == expected


@given(algebras(max_n=5, max_m=16, factors=2))
@settings(max_examples=40, deadline=None)
def test_d_f_is_constant_and_factors(S):
    D = S.pair_product()
    assert D.is_constant()
    if S.n >= 2:
        pairs = [p for p in itertools.combinations(range(1, S.n + 1), 2) if p != (1, 2)]
        E = S.pair_product(pairs)
        assert E * (S.tau(1) + S.tau(2)) == D


# --- tail subalgebras --------------------------------------------------------------


def test_tail_support_examples(z2_cubic):
    S = z2_cubic
    assert S.tail_subalgebra_support(S.tau(3) ** 2 + 1, 2)
    assert not S.tail_subalgebra_support(S.tau(2) * S.tau(3), 2)
    assert S.tail_subalgebra_support(S.const(2), 3)
    with pytest.raises(SplitAlgError):
        S.tail_subalgebra_support(S.one, 4)


def test_coeffs_over_tail_examples(z2_cubic):
    S = z2_cubic
    x = S.tau(2) * S.tau(3) + 1
    assert S.coeffs_over_tail(x, 1) == {(0,): x}
    assert S.coeffs_over_tail(S.zero, 2) == {}
    S4 = construct(Ring((2,)), [0, 0, 0, 0])
    y = S4.tau(2) * S4.tau(4) + S4.tau(3)
    assert S4.coeffs_over_tail(y, 2) == {(0, 0): S4.tau(3), (0, 1): S4.tau(4)}


@given(algebra_with_elements(count=1, max_n=5))
@settings(max_examples=40, deadline=None)
def test_coeffs_over_tail_reassemble(data):
    S, x = data
    for i in range(S.n + 1):
        parts = S.coeffs_over_tail(x, i)
        total = S.zero
        for head, c in parts.items():
            assert S.tail_subalgebra_support(c, i)
            total = total + c * S.monomial(head + (0,) * (S.n - i))
        assert total == x


# --- universal property -------------------------------------------------------------


def test_specialize_examples():
    R = Ring((6,))
    S = construct(R, [3, 2])
    assert S.specialize(S.tau(2), [5, 4]) == R(4)
    assert str(S.tau(1)) == "3 + 5*t2^1"
    assert S.specialize(S.tau(1), [5, 4]) == R(5)
    assert S.specialize(S.one, [5, 4]) == R(1)
    with pytest.raises(SplitAlgError):
        S.specialize(S.one, [1, 1])
    with pytest.raises(SplitAlgError):
        S.specialize(S.one, [5])


def test_specialize_is_a_homomorphism():
    rng = random.Random(9)
    for _ in range(60):
        m, n = rng.randint(2, 12), rng.randint(1, 4)
        R = Ring((m,))
        roots = [R(rng.randrange(m)) for _ in range(n)]
        S = construct(R, expand_roots(R, roots))
        x, y = random_element(rng, S), random_element(rng, S)
        assert S.specialize(x * y, roots) == S.specialize(x, roots) * S.specialize(y, roots)
        assert S.specialize(x + y, roots) == S.specialize(x, roots) + S.specialize(y, roots)
        assert [S.specialize(S.tau(i), roots) for i in range(1, n + 1)] == roots


# --- cosets -------------------------------------------------------------------------


def test_coset_reps_examples():
    assert coset_reps_pair_stabilizer(2) == [Perm.identity(2)]
    reps3 = set(coset_reps_pair_stabilizer(3))
    assert reps3 == {Perm.identity(3), Perm.transposition(3, 1, 2), Perm.from_cycles(3, (1, 3, 2))}
    assert len(coset_reps_pair_stabilizer(4)) == 6
    with pytest.raises(SplitAlgError):
        coset_reps_pair_stabilizer(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_coset_reps_form_a_transversal(n):
    reps = coset_reps_pair_stabilizer(n)
    G = group_elements(adjacent_transpositions(n, n - 2) + [Perm.transposition(n, n - 1, n)], n)
    Sn = group_elements(adjacent_transpositions(n), n)
    assert len(reps) == n * (n - 1) // 2 == len(left_transversal(Sn, G))
    cosets = {frozenset(r * g for g in G) for r in reps}
    assert len(cosets) == len(reps)
    assert frozenset().union(*cosets) == frozenset(Sn)


# --- display ------------------------------------------------------------------------


def test_display_format():
    S = construct(Ring((4, 3)), [2, 1])
    assert str(S.zero) == "0"
    assert str(S.one) == "(1,1)"
    assert str(S.tau(2) * S.ring([2, 1]) + 3) == "(3,0) + (2,1)*t2^1"
    T = construct(Ring((5,)), [0, 0, 0])
    x = T.monomial((0, 1, 2), 3) + T.tau(3) + T.const(4)
    assert str(x) == "4 + t3^1 + 3*t2^1*t3^2"
