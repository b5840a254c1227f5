"""Sentence-level parsing: bracketing enumeration, goal construction,
grammaticality verdicts.

A sentence is grammatical iff some binary bracketing of its words derives a
complete clause: a sequent whose antecedent uses only the surface composition
mode and whose succedent is a clause type that can be unquoted (neutral s0 or
positive s+; the negative clause type cannot be unquoted, so it is no goal).
All bracketings are tried rather than assuming a constituency, and the
resulting derivations are collapsed to their distinct scope readings.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .core import Bin, FLeaf, Formula, Sequent, Structure, DEFAULT, S0, SPLUS
from .lexicon import Lexicon, tokenize
from .prover import Derivation, SearchBudget, prove
from .readings import Reading, extract_reading

GOAL_TYPES: Tuple[Formula, ...] = (S0, SPLUS)

GRAMMATICAL = "grammatical"
UNGRAMMATICAL = "ungrammatical-within-budget"


@dataclass
class ParseResult:
    sentence: str
    tokens: List[str]
    verdict: str
    readings: List[Reading]
    derivations: List[Derivation]
    budget_exhausted: bool
    timed_out: bool = False

    def to_json_dict(self) -> dict:
        return {
            "sentence": self.sentence,
            "tokens": self.tokens,
            "verdict": self.verdict,
            "budget_exhausted": self.budget_exhausted,
            "timed_out": self.timed_out,
            "derivation_count": len(self.derivations),
            "readings": [
                {"scope": [{"word": w, "pos": p} for w, p in r.scope_order],
                 "linear": all(a[1] < b[1] for a, b in
                               zip(r.scope_order, r.scope_order[1:]))}
                for r in self.readings
            ],
        }


def bracketings(tokens: Sequence[str], lex: Lexicon) -> List[Structure]:
    """All binary surface-mode trees over the tokens, one structure per tree
    shape and per choice of lexical type for each token."""
    if not tokens:
        raise ValueError("no tokens")
    leaf_choices = [
        [FLeaf(f, word=tok, pos=i) for f in lex.lookup(tok)]
        for i, tok in enumerate(tokens)
    ]

    def shapes(i: int, j: int, leaves) -> List[Structure]:
        if j - i == 1:
            return [leaves[i]]
        out: List[Structure] = []
        for k in range(i + 1, j):
            for left in shapes(i, k, leaves):
                for right in shapes(k, j, leaves):
                    out.append(Bin(DEFAULT, left, right))
        return out

    out = []
    for leaves in product(*leaf_choices):
        out.extend(shapes(0, len(tokens), leaves))
    return out


def parse_sentence(sentence: str, lex: Lexicon,
                   budget: Optional[SearchBudget] = None,
                   deadline: Optional[float] = None,
                   goals: Optional[Tuple[Formula, ...]] = None) -> ParseResult:
    """Prove every (bracketing, goal type) pair and aggregate the results.

    Readings are deduplicated across derivations in discovery order
    (bracketings in enumeration order, then goal types, then derivations).
    ``deadline`` caps the total wall time across all searches; on expiry the
    remaining searches are skipped and the result is marked timed out.
    """
    tokens = tokenize(sentence, lex)
    trees = bracketings(tokens, lex)
    derivations: List[Derivation] = []
    readings: List[Reading] = []
    exhausted = False
    timed_out = False
    stop_at = None if deadline is None else time.monotonic() + deadline
    for tree in trees:
        for goal_type in (goals if goals is not None else GOAL_TYPES):
            remaining = None
            if stop_at is not None:
                remaining = stop_at - time.monotonic()
                if remaining <= 0:
                    timed_out = True
                    break
            goal = Sequent(tree, goal_type)
            result = prove(goal,
                           budget if budget is not None
                           else SearchBudget.for_goal(goal),
                           deadline=remaining)
            exhausted = exhausted or result.budget_exhausted
            timed_out = timed_out or result.timed_out
            for d in result.derivations:
                derivations.append(d)
                reading = extract_reading(d)
                if reading not in readings:
                    readings.append(reading)
        if timed_out:
            break
    verdict = GRAMMATICAL if derivations else UNGRAMMATICAL
    return ParseResult(sentence, tokens, verdict, readings, derivations,
                       exhausted or timed_out, timed_out)
