import os
from pathlib import Path

import pytest

from textlaws import corpus, tokens

REPO = Path(__file__).resolve().parent.parent


def shakespeare_path() -> Path:
    env = os.environ.get("TEXTLAWS_SHAKESPEARE")
    if env:
        return Path(env)
    return REPO / "data" / "shakespeare_complete_works.txt"


@pytest.fixture(scope="session")
def shakespeare_raw():
    path = shakespeare_path()
    if not path.exists():
        pytest.skip(f"Shakespeare corpus not found at {path}")
    return corpus.read_text(path)


@pytest.fixture(scope="session")
def shakespeare(shakespeare_raw):
    return corpus.preprocess_english(shakespeare_raw)


@pytest.fixture(scope="session")
def shakespeare_words(shakespeare):
    return tokens.tokenize(shakespeare, "word")


@pytest.fixture(scope="session")
def shakespeare_chars(shakespeare):
    return tokens.tokenize(shakespeare, "character")
