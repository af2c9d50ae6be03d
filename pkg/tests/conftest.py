import shutil
from pathlib import Path

import pytest

from shared.utils.config import settings
from services.moments.engine import MomentEngine


@pytest.fixture
def engine():
    return MomentEngine(max_workers=2)


@pytest.fixture(scope="session")
def shared_engine():
    """One engine for the long sweeps; its caches are advisory."""
    return MomentEngine()


@pytest.fixture
def catalog_copy(tmp_path) -> Path:
    """Writable copy of the packaged catalog directory."""
    target = tmp_path / "catalog"
    shutil.copytree(settings.catalog_dir, target)
    return target
