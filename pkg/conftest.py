# Shared fixtures for every test package under test/
pytest_plugins = ["test.fixtures"]


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: long integrations; deselect with -m 'not slow'")
