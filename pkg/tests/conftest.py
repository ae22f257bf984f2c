from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gencliff.algebra import from_coefficients, make_context

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_CONFIGS = [(m, d) for m in (2, 3, 4, 5) for d in (1, 2, 3) if m**d <= 256]
SMALL_CONFIGS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 2), (5, 2), (6, 2)]

small_contexts = st.sampled_from(SMALL_CONFIGS).map(lambda md: make_context(*md))

finite = st.floats(min_value=-1, max_value=1, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


@st.composite
def elements(draw, ctx=None, contexts=small_contexts):
    ctx = ctx or draw(contexts)
    coeffs = draw(st.lists(complexes, min_size=ctx.dim, max_size=ctx.dim))
    return from_coefficients(ctx, coeffs)


@st.composite
def element_pairs(draw, contexts=small_contexts):
    ctx = draw(contexts)
    return draw(elements(ctx)), draw(elements(ctx))


@st.composite
def element_triples(draw, contexts=small_contexts):
    ctx = draw(contexts)
    return draw(elements(ctx)), draw(elements(ctx)), draw(elements(ctx))


@pytest.fixture
def ctx32():
    return make_context(3, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240719)


# --------------------------------------------------------------------------
# acceptance report: one PASS/FAIL line per criterion, repeated in the summary

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
