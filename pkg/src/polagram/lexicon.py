"""Word-to-type assignments and tokenization.

The built-in lexicon covers the demonstration fragment: two names, a
transitive and a ditransitive verb, two possessive suffixes, and the five
quantifiers.  Every quantifier type has the shape ``Out /c (np \\c In)``:
a subexpression that produces a clause of type ``Out`` when plugged into a
context that turns an np into a clause of type ``In``.

Lexicon files are UTF-8 text, one entry per line::

    word or multi word := formula

``#`` starts a comment; blank lines are ignored.  Repeating a word appends an
alternative type.  Multiword entries ("a man", "'s mother") are matched
greedily, longest first, during tokenization; the possessive clitic ``'s`` is
split off its host word before matching.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Tuple

from .core import Formula, parse_formula, print_formula, SyntaxErrorWithPos


class LexiconError(ValueError):
    pass


class Lexicon:
    """An immutable word → types map with case-insensitive lookup."""

    def __init__(self, entries: Iterable[Tuple[str, Formula]]):
        table: Dict[str, List[Formula]] = {}
        for word, formula in entries:
            table.setdefault(word.lower(), []).append(formula)
        self._table: Dict[str, Tuple[Formula, ...]] = {
            w: tuple(ts) for w, ts in table.items()}
        self._multiword: List[Tuple[str, ...]] = sorted(
            (tuple(w.split(" ")) for w in self._table if " " in w),
            key=len, reverse=True)

    def lookup(self, word: str) -> Tuple[Formula, ...]:
        try:
            return self._table[word.lower()]
        except KeyError:
            raise LexiconError(f"unknown word {word!r}") from None

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._table

    def words(self) -> Tuple[str, ...]:
        return tuple(sorted(self._table))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lexicon) and self._table == other._table

    def __repr__(self) -> str:
        return f"<Lexicon {len(self._table)} words>"

    def to_text(self) -> str:
        lines = []
        for word in sorted(self._table):
            for formula in self._table[word]:
                lines.append(f"{word} := {print_formula(formula)}")
        return "\n".join(lines) + "\n"


_DEFAULT_LEXICON_TEXT = """\
alice := np
bob := np
saw := (np \\ s0) / np
introduced := ((np \\ s0) / pp) / np
to := pp / np
's mother := np \\ np
's father := np \\ np
a man := s0 /c (np \\c s0)
nobody := s0 /c (np \\c s-)
anybody := s- /c (np \\c s-)
somebody := s+ /c (np \\c s+)
everybody := s0 /c (np \\c s+)
"""


def load_lexicon(text: str) -> Lexicon:
    """Parse lexicon file contents; errors carry the line number."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":=" not in line:
            raise LexiconError(f"line {lineno}: expected 'word := formula'")
        word, _, formula_text = line.partition(":=")
        word = " ".join(word.split()).lower()
        if not word:
            raise LexiconError(f"line {lineno}: empty word")
        try:
            formula = parse_formula(formula_text.strip())
        except SyntaxErrorWithPos as exc:
            raise LexiconError(f"line {lineno}: {exc}") from exc
        entries.append((word, formula))
    return Lexicon(entries)


def default_lexicon() -> Lexicon:
    return load_lexicon(_DEFAULT_LEXICON_TEXT)


_TERMINAL_PUNCT = ".!?,;:"


def tokenize(sentence: str, lex: Lexicon) -> List[str]:
    """Lowercase, strip terminal punctuation, split off the ``'s`` clitic,
    then greedily merge the longest multiword lexicon entries.

    Raises LexiconError naming any word not in the lexicon, with its
    position in the token stream.
    """
    text = sentence.lower().replace("'s", " 's ")
    raw = text.split()
    while raw and raw[-1] and raw[-1][-1] in _TERMINAL_PUNCT:
        stripped = raw[-1].rstrip(_TERMINAL_PUNCT)
        if stripped:
            raw[-1] = stripped
            break
        raw.pop()
    tokens: List[str] = []
    i = 0
    while i < len(raw):
        for parts in lex._multiword:
            if tuple(raw[i:i + len(parts)]) == parts:
                tokens.append(" ".join(parts))
                i += len(parts)
                break
        else:
            tokens.append(raw[i])
            i += 1
    for pos, token in enumerate(tokens):
        if token not in lex:
            raise LexiconError(f"unknown word {token!r} at position {pos}")
    return tokens
