"""
Shared pytest fixtures for Euler Factor tests.
"""
import tempfile
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest


@pytest.fixture(autouse=True)
def reset_config_cache():
    """Reset config cache before and after each test to prevent leakage."""
    from euler_factor.config import clear_config_cache

    clear_config_cache()
    yield
    clear_config_cache()


@pytest.fixture
def temp_dir():
    """Create a temporary directory that's cleaned up after the test."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def mock_config_dir(temp_dir):
    """Mock the config directory to use a temp directory."""
    config_dir = temp_dir / ".euler_factor"
    config_dir.mkdir(parents=True, exist_ok=True)

    with patch("euler_factor.config.get_config_dir", return_value=config_dir):
        yield config_dir


@pytest.fixture
def rng():
    """Seeded generator so random targets are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def random_targets(rng):
    """A batch of uniformly random rotations."""
    from euler_factor.so3 import random_rotation

    return [random_rotation(rng) for _ in range(60)]


@pytest.fixture
def identity():
    return np.eye(3)


@pytest.fixture(scope="session")
def acceptance_targets():
    """1000 uniformly random rotations, built once per session."""
    from euler_factor.so3 import random_rotation

    rng = np.random.default_rng(7)
    return [random_rotation(rng) for _ in range(1000)]
