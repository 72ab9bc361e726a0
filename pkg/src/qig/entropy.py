"""Shannon entropy machinery over outcome distributions, in bits.

Base-2 logarithms throughout: a fair detector bit carries exactly 1 bit.
The 0 log 0 convention is applied, with probabilities below 1e-15 treated
as exact zeros to keep floating-point log noise out of the sums.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .born import ZERO_EPS, OutcomeDistribution, marginalize


def entropy_bits(probs) -> float:
    """-sum p log2 p over a probability vector, with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float).reshape(-1)
    p = p[p > ZERO_EPS]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log2(p)).sum())


def shannon(dist: OutcomeDistribution, subset: Sequence[str] | None = None) -> float:
    """Entropy of the distribution restricted to ``subset`` (default: all)."""
    if subset is not None and tuple(subset) != dist.observers:
        dist = marginalize(dist, subset)
    return entropy_bits(dist.probs)


def joint_entropy(dist: OutcomeDistribution, subset: Sequence[str]) -> float:
    """Joint entropy H of an observer subset."""
    return shannon(dist, subset)


def conditional_entropy(
    dist: OutcomeDistribution, target: Sequence[str], given: Sequence[str]
) -> float:
    """H(target | given) = H(target+given) - H(given).

    The difference form is used instead of summing conditional terms
    directly: it is identical for strictly positive distributions and stays
    well defined where individual conditionals are undefined.
    """
    target, given = tuple(target), tuple(given)
    if set(target) & set(given):
        raise ValueError("target and given observer sets must be disjoint")
    if not given:
        return shannon(dist, target)
    return shannon(dist, target + given) - shannon(dist, given)


class EntropyTable:
    """Cached joint entropies for every nonempty observer subset."""

    def __init__(self, observers: Sequence[str], subset_entropies: dict[frozenset, float]):
        self.observers = tuple(observers)
        self._h = dict(subset_entropies)

    def joint(self, *labels: str) -> float:
        """H of the given observer subset (order irrelevant)."""
        key = frozenset(labels)
        if not key:
            raise ValueError("joint entropy needs at least one observer")
        try:
            return self._h[key]
        except KeyError:
            unknown = key - set(self.observers)
            raise ValueError(f"unknown observers {sorted(unknown)}") from None

    def conditional(self, target: Sequence[str] | str, given: Sequence[str] | str) -> float:
        """H(target | given) via the joint-entropy difference."""
        t = frozenset([target] if isinstance(target, str) else target)
        g = frozenset([given] if isinstance(given, str) else given)
        if t & g:
            raise ValueError("target and given observer sets must be disjoint")
        if not g:
            return self.joint(*t)
        return self.joint(*(t | g)) - self.joint(*g)

    def subsets(self):
        return dict(self._h)


def build_entropy_table(dist: OutcomeDistribution) -> EntropyTable:
    """Compute H for all 2^n - 1 nonempty observer subsets.

    Cost grows as 4^n with the observer count; callers are capped at n <= 20
    and should expect desk-scale n (the scenarios here use n <= 4).
    """
    n = dist.n_observers
    if n > 20:
        raise ValueError(f"entropy table capped at 20 observers, got {n}")
    tensor = dist.probs.reshape((2,) * n)
    table = {}
    for r in range(1, n + 1):
        for slots in itertools.combinations(range(n), r):
            drop = tuple(i for i in range(n) if i not in slots)
            marg = tensor.sum(axis=drop) if drop else tensor
            key = frozenset(dist.observers[i] for i in slots)
            table[key] = entropy_bits(marg)
    return EntropyTable(dist.observers, table)
