import pytest

from app import create_app


@pytest.fixture
def app():
    app = create_app({"TESTING": True, "LOG_LEVEL": "WARNING", "WORKERS": 2})
    yield app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()
