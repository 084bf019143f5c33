import pytest
from hypothesis import given, strategies as st

from offlex.tokenizers import (Scheme, TokenizerSpec, alnum_string, char_ngrams_alnum,
                               char_ngrams_nonspace, nonspace_string, normalize, word_ngrams,
                               word_tokens)


@pytest.mark.parametrize("text, expected", [
    ("FUCK", "fuck"),
    ("@USER Thanks!!", "@user thanks!!"),
    ("", ""),
])
def test_normalize(text, expected):
    assert normalize(text) == expected


@pytest.mark.parametrize("text, expected", [
    ("@user she is a liar!", ["user", "she", "is", "liar"]),
    ("don't", ["don"]),
    ("!!! ???", []),
    ("under_score 42 x", ["under_score", "42"]),
])
def test_word_tokens(text, expected):
    assert word_tokens(text) == expected


def test_char_alnum():
    assert char_ngrams_alnum("ab!cd", 3) == ["ab ", "b c", " cd"]
    assert char_ngrams_alnum("abc", 3) == ["abc"]
    assert char_ngrams_alnum("ab", 3) == []
    assert char_ngrams_alnum("#maga!!", 3) == ["mag", "aga"]


def test_char_nonspace():
    assert char_ngrams_nonspace("#maga!", 3) == ["#ma", "mag", "aga", "ga!"]
    assert char_ngrams_nonspace("a  b", 3) == ["a b"]
    assert char_ngrams_nonspace("ab", 3) == []
    assert char_ngrams_nonspace(" @u\t\nx ", 3) == ["@u ", "u x"]


def test_word_ngrams():
    assert word_ngrams("you are dumb", 1, 3) == ["you", "are", "dumb", "you are", "are dumb", "you are dumb"]
    assert word_ngrams("hi", 1, 3) == ["hi"]
    assert word_ngrams("", 1, 3) == []
    assert word_ngrams("a bb cc", 2, 2) == ["bb cc"]


def test_spec_validation_and_roundtrip():
    with pytest.raises(ValueError):
        TokenizerSpec(Scheme.CHAR_ALNUM, n=0)
    with pytest.raises(ValueError):
        TokenizerSpec.word_ngram(3, 1)
    spec = TokenizerSpec.word_ngram(1, 3)
    assert TokenizerSpec.from_dict(spec.to_dict()) == spec
    # analyzers lowercase first
    assert TokenizerSpec.char_nonspace(3).tokenize("AB#") == ["ab#"]
    assert TokenizerSpec.word_unigram().tokenize("You IDIOT") == ["you", "idiot"]


@given(st.text())
def test_normalize_idempotent(text):
    assert normalize(normalize(text)) == normalize(text)


@given(st.text(), st.integers(min_value=1, max_value=5))
def test_char_ngram_counts(text, n):
    text = normalize(text)
    for fn, transform in ((char_ngrams_alnum, alnum_string), (char_ngrams_nonspace, nonspace_string)):
        assert len(fn(text, n)) == max(0, len(transform(text)) - n + 1)


@given(st.text())
def test_unigram_ngrams_equal_word_tokens(text):
    text = normalize(text)
    assert word_ngrams(text, 1, 1) == word_tokens(text)


@given(st.text(), st.integers(min_value=1, max_value=4))
def test_alnum_ngrams_only_alnum_or_space(text, n):
    for gram in char_ngrams_alnum(normalize(text), n):
        assert all(c.isalnum() or c == " " for c in gram)
