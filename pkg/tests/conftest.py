import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from q4eda.engine import Engine, load_config
from q4eda.nlp import bundled_lexicon_path, load_lexicon, load_model

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def model():
    return load_model(FIXTURES / "vectors.txt")


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(bundled_lexicon_path())


@pytest.fixture(scope="session")
def config():
    return load_config(FIXTURES / "config.json")


@pytest.fixture(scope="session")
def engine(config) -> Engine:
    return Engine.from_config(config)


@pytest.fixture(scope="session")
def collection(engine):
    return engine.collection
