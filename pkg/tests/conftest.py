import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ccmotion import caps  # noqa: E402


@pytest.fixture(autouse=True)
def _reset_caps():
    caps.set_override(None)
    yield
    caps.set_override(None)
