"""Brute-force monotonicity checks for quantifier denotations.

Quantifiers denote functions from predicates (sets of individuals) to truth
values.  Over a finite domain every such function is a small table, so
monotonicity properties can be decided by enumerating all predicate pairs: a
denotation q is downward entailing iff q(s1) implies q(s2) whenever s2 is a
subset of s1, and upward entailing dually.  These checks document the
semantic side of polarity licensing: negative polarity items live in the
scope of downward-entailing quantifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import FrozenSet, Tuple

MAX_DOMAIN = 6  # predicate pairs grow as 4^n; this keeps brute force instant


@dataclass(frozen=True)
class FiniteModel:
    """A domain of individuals 0..n-1."""

    domain_size: int

    def __post_init__(self):
        if not 1 <= self.domain_size <= MAX_DOMAIN:
            raise ValueError(f"domain size must be in 1..{MAX_DOMAIN}")

    def individuals(self) -> Tuple[int, ...]:
        return tuple(range(self.domain_size))

    def predicates(self) -> Tuple[FrozenSet[int], ...]:
        xs = self.individuals()
        return tuple(frozenset(c) for c in
                     chain.from_iterable(combinations(xs, k)
                                         for k in range(len(xs) + 1)))


@dataclass(frozen=True)
class QuantDenotation:
    """A total map from predicates to truth values."""

    table: Tuple[Tuple[FrozenSet[int], bool], ...]

    def __call__(self, s: FrozenSet[int]) -> bool:
        return dict(self.table)[s]

    @staticmethod
    def from_function(m: FiniteModel, fn) -> "QuantDenotation":
        return QuantDenotation(tuple((s, bool(fn(s)))
                                     for s in m.predicates()))


_DENOTATIONS = {
    "nobody": lambda s: len(s) == 0,
    "somebody": lambda s: len(s) > 0,
    "anybody": lambda s: len(s) > 0,
    "a man": lambda s: len(s) > 0,
}


def denotation(word: str, m: FiniteModel) -> QuantDenotation:
    """The generalized-quantifier denotation of a lexicon quantifier,
    unrestricted over the whole domain."""
    word = word.lower()
    if word == "everybody":
        n = m.domain_size
        return QuantDenotation.from_function(m, lambda s: len(s) == n)
    try:
        fn = _DENOTATIONS[word]
    except KeyError:
        raise ValueError(f"no denotation for {word!r}") from None
    return QuantDenotation.from_function(m, fn)


def is_downward_entailing(q: QuantDenotation, m: FiniteModel) -> bool:
    """q(s1) implies q(s2) for every s2 ⊆ s1, by exhaustive enumeration."""
    for s1 in m.predicates():
        if not q(s1):
            continue
        for s2 in m.predicates():
            if s2 <= s1 and not q(s2):
                return False
    return True


def is_upward_entailing(q: QuantDenotation, m: FiniteModel) -> bool:
    """q(s2) implies q(s1) for every s2 ⊆ s1."""
    for s1 in m.predicates():
        if q(s1):
            continue
        for s2 in m.predicates():
            if s2 <= s1 and q(s2):
                return False
    return True
