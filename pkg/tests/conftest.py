import os
from pathlib import Path

import numpy as np
import pytest

from src.coble_gamma import gamma_relations
from src.settings import get_settings
from src.weyl_e6 import default_weyl_group

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_collection_modifyitems(config, items):
    if os.environ.get("CUBIC_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="set CUBIC_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def relations():
    settings = get_settings()
    return gamma_relations(settings.seed, settings.relation_samples)


@pytest.fixture(scope="session")
def weyl_group():
    return default_weyl_group()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)
