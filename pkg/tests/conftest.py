from pathlib import Path

import pytest

from maxpe.statistics import Sample
from reference_tables import INSULATION_TYPE1, INSULATION_TYPE2

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def type1() -> Sample:
    return Sample(INSULATION_TYPE1, label="type1")


@pytest.fixture(scope="session")
def type2() -> Sample:
    return Sample(INSULATION_TYPE2, label="type2")


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR
