import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dualshift.blaschke import BlaschkeProduct
from dualshift.config import default_inner

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CAMPAIGN = [s.u for s in default_inner()]
CAMPAIGN_IDS = [s.name for s in default_inner()]
ZERO_AT_ORIGIN = [BlaschkeProduct.power(1), BlaschkeProduct.power(2)]
NONZERO_AT_ORIGIN = [BlaschkeProduct.mobius(0.5), BlaschkeProduct.mobius(0.5j),
                     BlaschkeProduct(1.0, (0.5, -0.5))]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_coeffs(rng, n):
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2 * n)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
