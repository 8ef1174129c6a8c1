from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def agg_csv():
    return FIXTURES / "aggregate.csv"
