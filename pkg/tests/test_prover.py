import json

import pytest

from polagram import (
    Derivation, FLeaf, RuleName, SearchBudget, Sequent,
    NP, S0, SPLUS, SMINUS,
    derivation_from_dict, derivation_to_dict, enumerate_rewrites,
    parse_formula, parse_structure, prove, validate_derivation,
)

CLAUSE_TYPES = {"s0": S0, "s+": SPLUS, "s-": SMINUS}


def seq(antecedent, succedent, lexicon=None):
    return Sequent(parse_structure(antecedent, lexicon),
                   parse_formula(succedent))


# -- identity and the transitive clause --------------------------------------

def test_axiom_identity():
    result = prove(Sequent(FLeaf(NP), NP))
    assert len(result.derivations) == 1
    assert result.derivations[0].rule.tag == "Axiom"


def test_transitive_clause(lex):
    # Alice saw Bob, assembled by the slash eliminations
    result = prove(seq("alice * (saw * bob)", "s0", lex))
    assert result.derivations
    d = result.derivations[0]
    assert validate_derivation(d)
    tags = {node.rule.tag for node in d.walk()}
    assert tags == {"OverL", "UnderL", "Axiom", "Lex"}


def test_wrong_bracketing_fails(lex):
    result = prove(seq("(alice * saw) * bob", "s0", lex))
    assert not result.derivations


# -- the silent polarity conversions -----------------------------------------

@pytest.mark.parametrize("target", ["s+", "s-"])
def test_neutral_converts_silently(target):
    assert prove(seq("s0", target)).derivations


def test_value_of_boxed_diamond():
    assert prove(seq("np", "[p]<p>np")).derivations


@pytest.mark.parametrize("src,dst", [
    ("s+", "s0"), ("s+", "s-"), ("s-", "s0"), ("s-", "s+"),
])
def test_no_other_clause_conversions(src, dst):
    result = prove(seq(src, dst))
    assert not result.derivations
    assert not result.budget_exhausted  # refuted with budget to spare


@pytest.mark.parametrize("t", ["s0", "s+", "s-"])
def test_clause_identities(t):
    assert prove(seq(t, t)).derivations


# -- quantifier scope ---------------------------------------------------------

def test_polarity_licensing_derivable(lex):
    result = prove(seq("nobody * (saw * anybody)", "s0", lex))
    assert result.derivations
    for d in result.derivations:
        assert validate_derivation(d)


def test_in_situ_quantification_derivable(lex):
    result = prove(seq("alice * (saw * (a_man * 's_mother))", "s0", lex))
    assert result.derivations
    rules = {str(node.rule) for node in result.derivations[0].walk()}
    # the derivation leans on the structural apparatus, not just the slashes
    assert {"Root→", "Root←", "T", "K′", "UnquoteSucc"} & rules


def test_reversed_licensing_not_derivable(lex):
    for goal in ["s0", "s+"]:
        assert not prove(seq("anybody * (saw * nobody)", goal, lex)).derivations


def test_stuck_negative_context_not_derivable(lex):
    goal = seq("np *c ((1 * <>anybody) * <>saw)", "s-", lex)
    assert not prove(goal).derivations


def test_stuck_negative_context_robust_to_doubled_budget(lex):
    goal = seq("np *c ((1 * <>anybody) * <>saw)", "s-", lex)
    assert not prove(goal, SearchBudget.for_goal(goal).doubled()).derivations


# -- the derivation checker ---------------------------------------------------

def test_prover_output_validates(lex):
    for text, target in [("nobody * (saw * anybody)", "s0"),
                         ("somebody * (saw * everybody)", "s+"),
                         ("s0", "s-")]:
        for d in prove(seq(text, target, lex)).derivations:
            assert validate_derivation(d)


def test_bogus_axiom_rejected():
    bad = Derivation(RuleName("Axiom"), Sequent(FLeaf(NP), parse_formula("s")))
    assert not validate_derivation(bad)


def test_wrong_site_rejected(lex):
    good = prove(seq("alice * (saw * bob)", "s0", lex)).derivations[0]
    bad = Derivation(good.rule, good.conclusion, good.premises,
                     site=good.site + (0,))
    assert not validate_derivation(bad)


def _node(rule, mode, ant, succ, premises, site=(), lexicon=None):
    return Derivation(RuleName(rule, mode), seq(ant, succ, lexicon),
                      tuple(premises), site)


def test_hand_encoded_licensing_derivation(lex):
    """A worked proof of the licensing sentence, transcribed node by node."""
    def ax(ant, succ):
        return _node("Axiom", "", ant, succ, [])

    inner_clause = _node(
        "OverL", "", "np * (saw * np)", "s0",
        [_node("UnderL", "", "np * (np \\ s0)", "s0",
               [ax("s0", "s0"), ax("np", "np")]),
         ax("np", "np")],
        site=(1,), lexicon=lex)
    merged = _node(
        "UnquoteSucc", "", "<>(np * (saw * np))", "s0",
        [_node("DiaR", "", "<>(np * (saw * np))", "<>s0", [inner_clause],
               lexicon=lex)],
        lexicon=lex)
    rebuilt = _node(
        "Right←", "", "np *c (1 * <>np * <>saw)", "s0",
        [_node("Right←", "", "(<>saw * np) *c (1 * <>np)", "s0",
               [_node("Root←", "", "(<>np * (<>saw * np)) *c 1", "s0",
                      [_node("T", "", "<>np * (<>saw * np)", "s0",
                             [_node("K′", "", "<>np * (<>saw * <>np)", "s0",
                                    [_node("K′", "", "<>np * <>(saw * np)",
                                           "s0", [merged], lexicon=lex)],
                                    site=(1,), lexicon=lex)],
                             site=(1, 1), lexicon=lex)],
                      lexicon=lex)],
               lexicon=lex)],
        lexicon=lex)
    negative_inner = _node(
        "BoxDownR", "p", "np *c (1 * <>np * <>saw)", "s-",
        [_node("DiaR", "p", "<p>(np *c (1 * <>np * <>saw))", "<p>s0",
               [rebuilt], lexicon=lex)],
        lexicon=lex)
    licensee = _node(
        "OverL", "c", "anybody *c (1 * <>np * <>saw)", "s-",
        [ax("s-", "s-"),
         _node("UnderR", "c", "1 * <>np * <>saw", "np \\c s-",
               [negative_inner], lexicon=lex)],
        lexicon=lex)
    context = _node(
        "T", "", "np *c (saw * anybody * 1)", "s-",
        [_node("T", "", "<>np *c (saw * anybody * 1)", "s-",
               [_node("Left←", "", "<>np *c (<>saw * anybody * 1)", "s-",
                      [_node("Right→", "", "(<>np * (<>saw * anybody)) *c 1",
                             "s-",
                             [_node("Right→", "",
                                    "(<>saw * anybody) *c (1 * <>np)", "s-",
                                    [licensee], lexicon=lex)],
                             lexicon=lex)],
                      lexicon=lex)],
               site=(1, 0, 0), lexicon=lex)],
        site=(0,), lexicon=lex)
    derivation = _node(
        "Root→", "", "nobody * (saw * anybody)", "s0",
        [_node("Left→", "", "(nobody * (saw * anybody)) *c 1", "s0",
               [_node("OverL", "c", "nobody *c (saw * anybody * 1)", "s0",
                      [ax("s0", "s0"),
                       _node("UnderR", "c", "saw * anybody * 1", "np \\c s-",
                             [context], lexicon=lex)],
                      lexicon=lex)],
               lexicon=lex)],
        lexicon=lex)
    assert validate_derivation(derivation)


# -- rewrite enumeration ------------------------------------------------------

def test_enumerate_includes_root_forward(lex):
    goal = seq("alice * (saw * bob)", "s0", lex)
    entries = enumerate_rewrites(goal, SearchBudget.for_goal(goal))
    roots = [(site, results) for rule, site, results in entries
             if rule == RuleName("Root→")]
    assert ((), [seq("(alice * (saw * bob)) *c 1", "s0", lex)]) in roots


def test_enumerate_right_forward(lex):
    goal = seq("(<>np * saw) *c np", "s0", lex)
    entries = enumerate_rewrites(goal, SearchBudget.for_goal(goal))
    results = [r for rule, site, [r] in entries
               if rule == RuleName("Right→") and site == ()]
    assert results == [seq("saw *c (np * <>np)", "s0", lex)]


def test_enumerate_no_t_without_budget(lex):
    goal = seq("alice * (saw * bob)", "s0", lex)
    budget = SearchBudget.for_goal(goal, max_t_insertions=0)
    entries = enumerate_rewrites(goal, budget)
    assert all(rule != RuleName("T") for rule, _, _ in entries)


def test_enumerate_deterministic_order(lex):
    goal = seq("nobody * (saw * anybody)", "s0", lex)
    budget = SearchBudget.for_goal(goal)
    first = enumerate_rewrites(goal, budget)
    second = enumerate_rewrites(goal, budget)
    assert [(str(r), s) for r, s, _ in first] \
        == [(str(r), s) for r, s, _ in second]


def test_bidirectional_postulates_compose_to_identity(lex):
    pairs = {"Root→": "Root←", "Root←": "Root→", "Left→": "Left←",
             "Left←": "Left→", "Right→": "Right←", "Right←": "Right→"}
    for text, target in [("nobody * (saw * anybody)", "s0"),
                         ("np *c ((1 * <>anybody) * <>saw)", "s-"),
                         ("(<>np * saw) *c (np * 1)", "s0")]:
        goal = seq(text, target, lex)
        budget = SearchBudget.for_goal(goal)
        for rule, site, [result] in enumerate_rewrites(goal, budget):
            if rule.tag not in pairs:
                continue
            inverse = RuleName(pairs[rule.tag])
            undone = [r for rule2, site2, [r]
                      in enumerate_rewrites(result, budget)
                      if rule2 == inverse and site2 == site]
            assert goal in undone, (str(rule), site)


# -- search behaviour ---------------------------------------------------------

def test_deterministic_output(lex):
    goal = seq("somebody * (saw * everybody)", "s0", lex)
    a = prove(goal)
    b = prove(goal)
    assert [d.render() for d in a.derivations] \
        == [d.render() for d in b.derivations]


def test_budget_monotonicity():
    goal = seq("s0", "s-")
    small = SearchBudget(max_structural_steps=12, max_t_insertions=2,
                         max_derivations=10000)
    big = SearchBudget(max_structural_steps=24, max_t_insertions=4,
                       max_derivations=10000)
    found_small = {json.dumps(derivation_to_dict(d), sort_keys=True)
                   for d in prove(goal, small).derivations}
    found_big = {json.dumps(derivation_to_dict(d), sort_keys=True)
                 for d in prove(goal, big).derivations}
    assert found_small <= found_big


def test_memo_and_plain_search_agree(lex):
    cases = [
        ("np", "np", None),
        ("s0", "s+", None),
        ("s+", "s0", None),
        ("alice * (saw * bob)", "s0", None),
        ("nobody * (saw * anybody)", "s0",
         SearchBudget(max_structural_steps=24, max_t_insertions=5,
                      max_derivations=2)),
        ("np *c ((1 * <>anybody) * <>saw)", "s-",
         SearchBudget(max_structural_steps=18, max_t_insertions=4,
                      max_derivations=2)),
    ]
    for text, target, budget in cases:
        goal = seq(text, target, lex)
        if budget is None:
            budget = SearchBudget.for_goal(goal, max_derivations=2)
        plain = SearchBudget(budget.max_structural_steps,
                             budget.max_t_insertions,
                             budget.max_derivations, memo_enabled=False)
        with_memo = bool(prove(goal, budget).derivations)
        without = bool(prove(goal, plain).derivations)
        assert with_memo == without, text


def test_no_branch_repeats_a_sequent(lex):
    result = prove(seq("nobody * (saw * anybody)", "s0", lex))

    def check(d, seen):
        key = d.conclusion.key
        assert key not in seen
        for p in d.premises:
            check(p, seen | {key})

    for d in result.derivations:
        check(d, frozenset())


def test_max_derivations_cap(lex):
    goal = seq("nobody * (saw * anybody)", "s0", lex)
    result = prove(goal, SearchBudget.for_goal(goal, max_derivations=3))
    assert len(result.derivations) == 3


def test_timeout_reports_exhaustion(lex):
    goal = seq("nobody * ('s_mother * (saw * (anybody * 's_father)))",
               "s0", lex)
    result = prove(goal, deadline=0.0)
    assert result.timed_out and result.budget_exhausted
    assert not result.derivations


# -- serialization ------------------------------------------------------------

def test_derivation_round_trip(lex):
    for d in prove(seq("nobody * (saw * anybody)", "s0", lex)).derivations[:4]:
        blob = json.dumps(derivation_to_dict(d), sort_keys=True)
        again = derivation_from_dict(json.loads(blob))
        assert validate_derivation(again)
        assert again.render() == d.render()
