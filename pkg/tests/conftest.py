import pytest
from hypothesis import settings

from util import load_corpus

settings.register_profile("ci", derandomize=True, max_examples=60)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()
