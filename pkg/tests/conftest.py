"""Shared fixtures: the seven-occurrence example, its extensions and the witness model."""
from pathlib import Path

import pytest

from gsokit.model.witness import example1_spec, example_rankings, witness_model
from gsokit.order.observations import from_ranking

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def example_spec():
    return example1_spec()


@pytest.fixture
def rankings():
    return example_rankings()


@pytest.fixture
def orders(rankings):
    return {name: from_ranking(r) for name, r in rankings.items()}


@pytest.fixture
def witness():
    return witness_model()
