import numpy as np
import pytest

from firstkind.catalog import appendix3, disk, f3, nonunivalent
from firstkind.config import QuadratureConfig


@pytest.fixture
def config():
    return QuadratureConfig()


@pytest.fixture
def builtin_maps():
    return {
        "disk": disk(),
        "disk_r2": disk(2.0),
        "f3": f3(),
        "app3_0.5": appendix3(0.5),
        "app3_1": appendix3(1.0),
        "app3_1.2": appendix3(1.2),
        "app3_1.5": appendix3(1.5),
        "app3_2.4": appendix3(2.4),
        "app3_2.5": appendix3(2.5),
        "nonuni_0.5": nonunivalent(0.5),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
