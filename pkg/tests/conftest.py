"""
Fixtures partagées
"""
import factory.random
import pytest

from app import create_app
from app.models.training import SimConfig
from app.services.training_service import TrainingService


@pytest.fixture(autouse=True)
def seeded_factories():
    factory.random.reseed_random(1234)


@pytest.fixture
def app():
    return create_app('testing')


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / 'results'


@pytest.fixture(scope='session')
def default_run():
    """Run complet par défaut (1500 épisodes, JSR 0.5, graine 2024) et sa session."""
    return TrainingService.train(SimConfig())


@pytest.fixture(scope='session')
def default_trace(default_run):
    trace, _ = default_run
    return trace
