import sys
from pathlib import Path

import pytest

# make `import reference` work from any rootdir configuration
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def golden_dir() -> Path:
    return Path(__file__).parent / "golden"
