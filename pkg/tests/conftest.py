import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def rings():
    from cokasch.fixtures import fixture_rings

    return fixture_rings()


def quotient_of_free(R, gens):
    from cokasch.module import direct_sum, quotient_module, regular_module, submodule_generated

    F = direct_sum(regular_module(R), regular_module(R))
    gens = [tuple(x % e for x, e in zip(g, F.orders)) for g in gens]
    return quotient_module(F, submodule_generated(F, gens))[0]


def modules_strategy(names=("F2", "Z4", "F2x", "T2F2", "F2xF2"), max_gens=2):
    from hypothesis import strategies as st

    from cokasch.fixtures import fixture_rings

    rings = fixture_rings()

    @st.composite
    def build(draw):
        R = rings[draw(st.sampled_from(names))]
        width = 2 * R.rank
        gens = draw(st.lists(st.lists(st.integers(0, 3), min_size=width, max_size=width), max_size=max_gens))
        return quotient_of_free(R, gens)

    return build()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, text = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
