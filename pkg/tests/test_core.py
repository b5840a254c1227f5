import pytest
from hypothesis import given, strategies as st

from polagram import (
    Atom, Bin, BoxDown, Dia, FLeaf, Over, Product, Sequent, Un, Under,
    UNIT, UNIT_LEAF, NP, S, S0, SPLUS, SMINUS,
    CMODE, DEFAULT, PMODE, UMODE, VALUE,
    SyntaxErrorWithPos, canonical_sequent, parse_formula, parse_sequent,
    parse_structure, print_formula, print_structure,
)


def test_parse_atom():
    assert parse_formula("np") == Atom("np")


def test_clause_type_abbreviations():
    assert parse_formula("s0") == Dia(UMODE, S)
    assert parse_formula("s+") == Dia(UMODE, BoxDown(PMODE, Dia(PMODE, S)))
    assert parse_formula("s-") == BoxDown(PMODE, Dia(PMODE, Dia(UMODE, S)))


def test_parse_quantifier_type():
    f = parse_formula("s0 /c (np \\c s-)")
    assert f == Over(CMODE, S0, Under(CMODE, NP, SMINUS))


def test_parse_verb_type():
    f = parse_formula("(np \\ s0) / np")
    assert f == Over(DEFAULT, Under(DEFAULT, NP, S0), NP)


def test_unknown_atoms_accepted():
    f = parse_formula("dog / cat")
    assert f == Over(DEFAULT, Atom("dog"), Atom("cat"))


def test_slash_associativity():
    assert parse_formula("a / b / c") == \
        Over(DEFAULT, Over(DEFAULT, Atom("a"), Atom("b")), Atom("c"))
    assert parse_formula("a \\ b \\ c") == \
        Under(DEFAULT, Atom("a"), Under(DEFAULT, Atom("b"), Atom("c")))


def test_mixed_slash_directions_rejected():
    with pytest.raises(SyntaxErrorWithPos):
        parse_formula("a / b \\ c")


def test_syntax_error_carries_position():
    with pytest.raises(SyntaxErrorWithPos) as err:
        parse_formula("np / (s0")
    assert err.value.pos == 8


def test_print_abbreviations():
    assert print_formula(Dia(UMODE, S)) == "s0"
    assert print_formula(SPLUS) == "s+"
    assert print_formula(parse_formula("s0 /c (np \\c s-)")) \
        == "s0 /c (np \\c s-)"


def test_unit_is_parseable_but_never_lexical():
    assert parse_formula("1") == UNIT
    assert print_formula(UNIT) == "1"


# -- random round trips ------------------------------------------------------

_atoms = st.sampled_from(["np", "s", "pp", "n", "q"])


def _formulas(depth):
    base = st.one_of(_atoms.map(Atom), st.just(UNIT),
                     st.sampled_from([S0, SPLUS, SMINUS]))
    if depth == 0:
        return base
    sub = _formulas(depth - 1)
    bmode = st.sampled_from([DEFAULT, CMODE])
    umode = st.sampled_from([VALUE, UMODE, PMODE])
    return st.one_of(
        base,
        st.builds(Product, bmode, sub, sub),
        st.builds(Over, bmode, sub, sub),
        st.builds(Under, bmode, sub, sub),
        st.builds(Dia, umode, sub),
        st.builds(BoxDown, umode, sub),
    )


@given(_formulas(3))
def test_print_parse_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@given(_formulas(2), _formulas(2))
def test_formula_equality_is_structural(f, g):
    assert (f == g) == (print_formula(f) == print_formula(g))


# -- structures and sequents -------------------------------------------------

def test_parse_structure_words(lex):
    st_ = parse_structure("nobody * (saw * anybody)", lex)
    assert isinstance(st_, Bin) and st_.mode == DEFAULT
    assert st_.left.word == "nobody" and st_.left.pos == 0
    assert st_.right.right.word == "anybody" and st_.right.right.pos == 2
    assert st_.left.formula == parse_formula("s0 /c (np \\c s-)")


def test_parse_structure_unit_and_diamond(lex):
    st_ = parse_structure("np *c ((1 * <>anybody) * <>saw)", lex)
    assert isinstance(st_, Bin) and st_.mode == CMODE
    inner = st_.right.left
    assert inner.left is UNIT_LEAF
    assert isinstance(inner.right, Un) and inner.right.mode == VALUE


def test_parse_structure_formula_leaf():
    st_ = parse_structure("np * (np \\ s0)")
    assert isinstance(st_.right, FLeaf)
    assert st_.right.formula == Under(DEFAULT, NP, S0)


def test_structure_print_round_trip(lex):
    for text in ["nobody * (saw * anybody)",
                 "np *c ((1 * <>anybody) * <>saw)",
                 "<>np * (<u>s * 1)"]:
        st_ = parse_structure(text, lex)
        again = parse_structure(print_structure(st_), lex)
        assert again == st_


def test_canonical_ignores_word_labels():
    plain = Sequent(FLeaf(NP), NP)
    worded = Sequent(FLeaf(NP, word="alice", pos=0), NP)
    assert canonical_sequent(plain) == canonical_sequent(worded)


def test_canonical_distinguishes_content():
    a = Sequent(FLeaf(NP), NP)
    b = Sequent(FLeaf(S), S)
    assert canonical_sequent(a) != canonical_sequent(b)


def test_parse_sequent(lex):
    seq = parse_sequent("nobody * (saw * anybody) |- s0", lex)
    assert seq.succedent == S0
    assert seq.antecedent.left.word == "nobody"
