"""Exact solvers cross-checked against the subset-scan references."""

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxforest import (
    Graph,
    OracleLimitError,
    OracleLimits,
    alpha,
    chi,
    maximum_clique,
    maximum_independent_set,
    omega,
)
from bruteforce import brute_alpha, brute_chi, brute_omega


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


graph_strategy = st.builds(
    lambda n, seed, p: random_graph(random.Random(seed), n, p),
    st.integers(0, 9),
    st.integers(0, 10**6),
    st.floats(0.05, 0.95),
)


class TestWitnesses:
    @given(graph_strategy)
    @settings(max_examples=80, deadline=None)
    def test_clique_witness_is_a_clique(self, g):
        w = maximum_clique(g)
        assert all(g.adjacent(u, v) for u, v in combinations(sorted(w), 2))
        assert len(w) == brute_omega(g.n, g.edges)

    @given(graph_strategy)
    @settings(max_examples=80, deadline=None)
    def test_independent_witness_is_independent(self, g):
        w = maximum_independent_set(g)
        assert all(not g.adjacent(u, v) for u, v in combinations(sorted(w), 2))
        assert len(w) == brute_alpha(g.n, g.edges)


class TestValuesAgainstBruteforce:
    @given(graph_strategy)
    @settings(max_examples=100, deadline=None)
    def test_omega_alpha_chi(self, g):
        assert omega(g) == brute_omega(g.n, g.edges)
        assert alpha(g) == brute_alpha(g.n, g.edges)
        assert chi(g) == brute_chi(g.n, g.edges)

    def test_known_values(self):
        k5 = Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
        assert (omega(k5), alpha(k5), chi(k5)) == (5, 1, 5)
        c5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert (omega(c5), alpha(c5), chi(c5)) == (2, 2, 3)
        empty = Graph(0, [])
        assert (omega(empty), alpha(empty), chi(empty)) == (0, 0, 0)
        lonely = Graph(1, [])
        assert (omega(lonely), alpha(lonely), chi(lonely)) == (1, 1, 1)

    def test_deterministic_witnesses(self):
        g = random_graph(random.Random(99), 9, 0.5)
        assert maximum_clique(g) == maximum_clique(g)
        assert maximum_independent_set(g) == maximum_independent_set(g)


class TestRefusals:
    def test_each_oracle_refuses_above_limit(self):
        g = random_graph(random.Random(1), 6, 0.5)
        lim = OracleLimits(omega=5, chi=5, verify=5)
        for fn, name in ((omega, "omega"), (alpha, "omega"), (chi, "chi")):
            with pytest.raises(OracleLimitError) as exc:
                fn(g, lim)
            assert exc.value.size == 6
            assert str(exc.value.limit) in str(exc.value)

    def test_limit_validation(self):
        with pytest.raises(ValueError):
            OracleLimits(omega=0, chi=5, verify=5)
        with pytest.raises(ValueError):
            OracleLimits(omega=5, chi=-1, verify=5)

    def test_at_limit_is_allowed(self):
        g = random_graph(random.Random(2), 5, 0.5)
        lim = OracleLimits(omega=5, chi=5, verify=5)
        assert omega(g, lim) == brute_omega(g.n, g.edges)
        assert chi(g, lim) == brute_chi(g.n, g.edges)
