import sys

import numpy as np
import pytest
from hypothesis import settings

from rmtensor.gf import make_field

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=[(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (7, 1)],
                ids=lambda pe: f"GF{pe[0]}^{pe[1]}")
def field(request):
    return make_field(*request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
