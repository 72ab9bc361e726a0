"""Tests for Shannon entropy machinery and the subset-entropy table."""

import itertools

import numpy as np
import pytest

from conftest import random_settings, random_state

from qig import (
    DetectorSetting,
    OutcomeDistribution,
    build_entropy_table,
    conditional_entropy,
    empirical_distribution,
    joint_distribution,
    joint_entropy,
    make_named_state,
    sample_runs,
    shannon,
)

LOG2_3 = np.log2(3.0)


def fair_bit():
    return OutcomeDistribution(("A",), np.array([0.5, 0.5]))


def independent_fair_bits(n):
    labels = tuple(chr(ord("A") + k) for k in range(n))
    return OutcomeDistribution(labels, np.full(2**n, 2.0**-n))


def tripartite(state_name, beta, gamma):
    state = make_named_state(state_name, 3)
    settings = [
        DetectorSetting("A", 0.0),
        DetectorSetting("B", beta),
        DetectorSetting("C", gamma),
    ]
    return joint_distribution(state, settings)


class TestShannon:
    def test_fair_bit_is_one(self):
        assert abs(shannon(fair_bit()) - 1.0) < 1e-15

    def test_point_mass_is_zero(self):
        assert shannon(OutcomeDistribution(("A",), np.array([1.0, 0.0]))) == 0.0

    def test_one_third_two_thirds(self):
        """The single-excitation state's first observer: log2(3) - 2/3 bits."""
        dist = tripartite("w", 0.7, 0.3)
        assert abs(shannon(dist, ("A",)) - (LOG2_3 - 2 / 3)) < 1e-12


class TestJointEntropy:
    def test_ghz_pair_at_quarter_turn(self):
        """Pairwise table (1/4, 1/4, 1/4, 1/4) carries 2 bits."""
        dist = tripartite("ghz", np.pi / 4, 0.1)
        assert abs(joint_entropy(dist, ("A", "B")) - 2.0) < 1e-12

    def test_independent_bits_add(self):
        assert abs(joint_entropy(independent_fair_bits(2), ("A", "B")) - 2.0) < 1e-15

    def test_w_pair_entropy_closed_form(self):
        """H_AB = log2(3) - (sin^2 b log sin^2 b + cos^2 b log cos^2 b)/3."""
        rng = np.random.default_rng(19)
        for _ in range(10):
            beta, gamma = rng.uniform(0.05, np.pi / 2 - 0.05, size=2)
            sb, cb = np.sin(beta) ** 2, np.cos(beta) ** 2
            expected = LOG2_3 - (sb * np.log2(sb) + cb * np.log2(cb)) / 3
            dist = tripartite("w", beta, gamma)
            assert abs(joint_entropy(dist, ("A", "B")) - expected) < 1e-12

    def test_deterministic_observer_adds_nothing(self):
        """First observer of |vvv> always fires: H_ABC equals H_BC."""
        rng = np.random.default_rng(21)
        for _ in range(10):
            beta, gamma = rng.uniform(0, np.pi / 2, size=2)
            dist = tripartite("product_v", beta, gamma)
            h_abc = joint_entropy(dist, ("A", "B", "C"))
            h_bc = joint_entropy(dist, ("B", "C"))
            assert abs(h_abc - h_bc) < 1e-12


class TestConditionalEntropy:
    def test_independence(self):
        dist = independent_fair_bits(2)
        assert abs(conditional_entropy(dist, ("A",), ("B",)) - 1.0) < 1e-15

    def test_chain_rule(self):
        rng = np.random.default_rng(22)
        for _ in range(25):
            dist = joint_distribution(random_state(rng, 3), random_settings(rng, 3))
            h_abc = joint_entropy(dist, ("A", "B", "C"))
            chained = (
                shannon(dist, ("A",))
                + conditional_entropy(dist, ("B",), ("A",))
                + conditional_entropy(dist, ("C",), ("A", "B"))
            )
            assert abs(h_abc - chained) < 1e-10

    def test_perfect_correlation(self):
        dist = OutcomeDistribution(("A", "B"), np.array([0.5, 0.0, 0.0, 0.5]))
        assert abs(conditional_entropy(dist, ("A",), ("B",))) < 1e-15

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            conditional_entropy(independent_fair_bits(2), ("A",), ("A",))


class TestEntropyTable:
    def test_single_fair_bit(self):
        table = build_entropy_table(fair_bit())
        assert abs(table.joint("A") - 1.0) < 1e-15

    def test_ghz_quarter_turn_table(self):
        """All eight outcomes equally likely: singles 1, pairs 2, triple 3."""
        table = build_entropy_table(tripartite("ghz", np.pi / 4, np.pi / 4))
        for single in ("A", "B", "C"):
            assert abs(table.joint(single) - 1.0) < 1e-12
        for pair in itertools.combinations("ABC", 2):
            assert abs(table.joint(*pair) - 2.0) < 1e-12
        assert abs(table.joint("A", "B", "C") - 3.0) < 1e-12

    def test_product_quarter_turn_table(self):
        table = build_entropy_table(tripartite("product_v", np.pi / 4, np.pi / 4))
        assert abs(table.joint("A")) < 1e-12
        assert abs(table.joint("B") - 1.0) < 1e-12
        assert abs(table.joint("C") - 1.0) < 1e-12
        assert abs(table.joint("A", "B") - 1.0) < 1e-12
        assert abs(table.joint("A", "C") - 1.0) < 1e-12
        assert abs(table.joint("B", "C") - 2.0) < 1e-12
        assert abs(table.joint("A", "B", "C") - 2.0) < 1e-12

    def test_conditional_via_difference(self):
        table = build_entropy_table(tripartite("ghz", 0.4, 1.0))
        lhs = table.conditional("C", ("A", "B"))
        rhs = table.joint("A", "B", "C") - table.joint("A", "B")
        assert abs(lhs - rhs) < 1e-15

    def test_unknown_observer(self):
        table = build_entropy_table(fair_bit())
        with pytest.raises(ValueError):
            table.joint("Z")


class TestEntropyProperties:
    def test_bounds_and_monotonicity(self):
        """0 <= H_S <= |S| and H_S <= H_T for S inside T."""
        rng = np.random.default_rng(23)
        for _ in range(30):
            n = int(rng.integers(1, 5))
            dist = joint_distribution(random_state(rng, n), random_settings(rng, n))
            table = build_entropy_table(dist)
            subsets = table.subsets()
            for key, h in subsets.items():
                assert -1e-12 <= h <= len(key) + 1e-12
            for key, h in subsets.items():
                for other, h2 in subsets.items():
                    if key < other:
                        assert h <= h2 + 1e-10

    def test_strong_subadditivity(self):
        rng = np.random.default_rng(24)
        for _ in range(50):
            dist = joint_distribution(random_state(rng, 3), random_settings(rng, 3))
            table = build_entropy_table(dist)
            lhs = table.joint("A", "B") + table.joint("B", "C")
            rhs = table.joint("A", "B", "C") + table.joint("B")
            assert lhs >= rhs - 1e-10

    def test_conditioning_reduces_entropy(self):
        rng = np.random.default_rng(25)
        for _ in range(50):
            n = int(rng.integers(2, 5))
            dist = joint_distribution(random_state(rng, n), random_settings(rng, n))
            table = build_entropy_table(dist)
            labels = dist.observers
            assert table.conditional(labels[0], labels[1:]) <= table.joint(labels[0]) + 1e-10

    def test_relabeling_equivariance(self):
        """Permuting observer labels permutes the table keys, nothing else."""
        rng = np.random.default_rng(26)
        dist = joint_distribution(random_state(rng, 3), random_settings(rng, 3))
        base = build_entropy_table(dist)
        names = dist.observers
        for perm in itertools.permutations(range(3)):
            tensor = dist.probs.reshape((2, 2, 2)).transpose(perm)
            relabeled = OutcomeDistribution(
                tuple(names[i] for i in perm), tensor.reshape(-1)
            )
            table = build_entropy_table(relabeled)
            for r in (1, 2, 3):
                for subset in itertools.combinations(names, r):
                    assert abs(table.joint(*subset) - base.joint(*subset)) < 1e-12

    def test_plugin_estimator_converges(self):
        """Median |empirical - exact| entropy error at 1e6 draws < 0.005 bits."""
        dist = tripartite("ghz", np.pi / 4, np.pi / 4)
        exact = shannon(dist)
        errors = []
        for seed in range(20):
            record = sample_runs(dist, 1_000_000, seed=seed)
            errors.append(abs(shannon(empirical_distribution(record)) - exact))
        assert float(np.median(errors)) < 0.005
