import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from posetrep import groups as G


@pytest.fixture(scope="session")
def groups_up_to_8():
    return G.all_groups_up_to(8)


@pytest.fixture(scope="session")
def groups_up_to_6():
    return G.all_groups_up_to(6)
