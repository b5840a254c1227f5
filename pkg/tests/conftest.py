import pytest

from polagram import default_lexicon, machine_from_lexicon, parse_sentence


@pytest.fixture(scope="session")
def lex():
    return default_lexicon()


@pytest.fixture(scope="session")
def machine(lex):
    return machine_from_lexicon(lex)


@pytest.fixture(scope="session")
def parsed(lex):
    """Parse results at default budget, computed once per session."""
    cache = {}

    def parse(sentence):
        if sentence not in cache:
            cache[sentence] = parse_sentence(sentence, lex)
        return cache[sentence]

    return parse
