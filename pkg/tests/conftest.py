import pytest

from fo2hier.corpus import corpus


def distinct_languages(entries):
    """One representative per (alphabet, table, letter images) presentation."""
    seen = {}
    for e in entries:
        if e.language is None:
            continue
        r = e.language
        seen.setdefault((r.alphabet, r.monoid.table, r.morphism.images), r)
    return list(seen.values())


@pytest.fixture(scope="session")
def full_corpus():
    return corpus()


@pytest.fixture(scope="session")
def corpus_languages(full_corpus):
    return distinct_languages(full_corpus)
