import itertools
import random

import pytest
from hypothesis import strategies as st

from salg import Ring, construct

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def z2_cubic():
    """Z/2 with f = t^3, the running hand-traced example."""
    return construct(Ring((2,)), [0, 0, 0])


def random_algebra(rng: random.Random, max_n=4, max_m=12, min_n=1):
    n = rng.randint(min_n, max_n)
    m = rng.randint(2, max_m)
    return construct(Ring((m,)), [rng.randrange(m) for _ in range(n)])


def random_element(rng: random.Random, S, density=0.5):
    terms = {}
    for e in S.basis:
        if rng.random() < density:
            terms[e] = S.ring([rng.randrange(m) for m in S.ring.moduli])
    return S.normalize(terms)


def brute_force_elements(S):
    """Every element of A_f; only for |A|^(n!) in the low thousands."""
    coeffs = list(S.ring.elements())
    for combo in itertools.product(coeffs, repeat=len(S.basis)):
        yield S.normalize(dict(zip(S.basis, combo)))


@st.composite
def algebras(draw, max_n=4, max_m=12, factors=1):
    n = draw(st.integers(1, max_n))
    moduli = tuple(draw(st.integers(2, max_m)) for _ in range(factors))
    ring = Ring(moduli)
    coeffs = [
        ring([draw(st.integers(0, m - 1)) for m in moduli]) for _ in range(n)
    ]
    return construct(ring, coeffs)


@st.composite
def algebra_with_elements(draw, count=3, max_n=4, max_m=12, factors=1):
    S = draw(algebras(max_n=max_n, max_m=max_m, factors=factors))
    elems = []
    for _ in range(count):
        terms = {}
        for e in S.basis:
            if draw(st.booleans()):
                terms[e] = S.ring([draw(st.integers(0, m - 1)) for m in S.ring.moduli])
        elems.append(S.normalize(terms))
    return (S, *elems)
