import sys
from pathlib import Path

import pytest

from zkit.limits import set_limits, stats

sys.path.insert(0, str(Path(__file__).parent))  # make helpers importable


@pytest.fixture(scope="session", autouse=True)
def verified_bases():
    """Run the whole suite with post-hoc Buchberger verification on every
    computed basis (criterion checks count on the stats)."""
    set_limits(check_bases=True)
    stats.reset()
    yield stats
