import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def graphs_dir() -> Path:
    return REPO_ROOT / "graphs"
