import pytest
from hypothesis import given
from hypothesis import strategies as st

from godsplit.lexicon import DEFAULT_STOP_WORDS, lemmatize, split_identifier, tokenize_identifier


@pytest.mark.parametrize(
    "name, words",
    [
        ("getUserName", {"user", "name"}),
        ("MAX_BUF_LEN2", {"max", "buf", "len"}),
        ("settings", {"setting"}),
        ("HTTPServerConfig", {"http", "server", "config"}),
        ("set_get_is", set()),
        ("x", set()),
    ],
)
def test_tokenize_examples(name, words):
    assert tokenize_identifier(name) == frozenset(words)


def test_split_keeps_acronym_boundaries():
    assert split_identifier("parseXMLNode_v2") == ["parse", "XML", "Node", "v", "2"]


@pytest.mark.parametrize(
    "word, lemma",
    [
        ("entries", "entry"),
        ("classes", "class"),
        ("boxes", "box"),
        ("matches", "match"),
        ("handles", "handle"),
        ("buffers", "buffer"),
        ("status", "status"),
        ("loading", "load"),
        ("parsed", "pars"),
        ("red", "red"),
        ("ties", "tie"),
    ],
)
def test_lemmatize_rule_table(word, lemma):
    assert lemmatize(word) == lemma


def test_stop_words_are_lowercase():
    assert all(w == w.lower() for w in DEFAULT_STOP_WORDS)


def test_custom_stop_words():
    assert tokenize_identifier("cfg_load_value", frozenset({"cfg"})) == {"load", "value"}


@given(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,30}", fullmatch=True))
def test_word_sets_are_clean(name):
    words = tokenize_identifier(name)
    assert all(len(w) >= 2 for w in words)
    assert all(w == w.lower() and w.isalpha() for w in words)
    assert not words & DEFAULT_STOP_WORDS
