# conftest.py

import os

import pytest

DEFAULT_CONFIG = os.path.join(os.path.dirname(__file__), "config.ini")

def pytest_addoption(parser):
    parser.addoption(
        "--brauerkit-config", action="store", default=DEFAULT_CONFIG, help="Path to the configuration file for brauerkit"
    )
    parser.addoption(
        "--runslow", action="store_true", default=False, help="Run the slow golden cases"
    )

def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)

@pytest.fixture
def config_file_path(request):
    return request.config.getoption("--brauerkit-config")

@pytest.fixture(scope="class")
def config_file_cls(request):
    request.cls.config_file = request.config.getoption("--brauerkit-config")
