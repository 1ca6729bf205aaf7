import math
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from riemann_octagon.octagon import OctagonParams

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def chart_point(t: float, s: float) -> OctagonParams:
    """Map the unit square onto the region: t -> alpha_tilde, s -> a between its bounds."""
    at = (2 * t - 1) * math.pi / 4
    lo = 1.0 / (math.sqrt(2.0) * math.cos(at))
    return OctagonParams.from_tilde(lo + s * (1.0 - lo), at)


@st.composite
def region_points(draw, margin: float = 0.02):
    t = draw(st.floats(margin, 1 - margin))
    s = draw(st.floats(margin, 1 - margin))
    return chart_point(t, s)


@pytest.fixture
def sample_point():
    return OctagonParams(0.8, math.pi / 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
