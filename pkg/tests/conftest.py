"""
Pytest bootstrap: doda projektni root v sys.path.
"""
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture(scope="session")
def genus2():
    from app.services.heegaard import canonical_systems

    return canonical_systems(2)
