import functools
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from spiderlink import instances, oracle, workspace
from spiderlink.errors import SpiderError
from spiderlink.mechanism import random_generic_point, random_mechanism, strong_genericity_report

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def hexagonal():
    return instances.hexagonal_tripod(seed=0)


@pytest.fixture(scope="session")
def voronoi_tripod():
    return instances.voronoi_tripod(seed=0)


def generic_instances(seed, count, n_choices=(1, 2, 3), p_choices=(2,), max_dim=None, nonempty=True):
    """Seeded stream of ``(mechanism, z)`` pairs that pass every genericity check."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.choice(n_choices))
        p = [int(rng.choice(p_choices)) for _ in range(n)]
        try:
            mech = random_mechanism(rng, n, p)
        except SpiderError:
            continue
        if max_dim is not None and not 0 < mech.dim <= max_dim:
            continue
        if nonempty and workspace.build(mech).empty:
            continue
        try:
            z = tuple(random_generic_point(mech, rng))
        except SpiderError:
            continue
        if strong_genericity_report(mech, z).errors:
            continue
        out.append((mech, z))
    return out


@functools.lru_cache(maxsize=None)
def oracle_instances(count, seed=6):
    """Random non-empty instances with dim S <= 4 that the oracle can resolve."""
    out = []
    stream = np.random.SeedSequence(seed)
    while len(out) < count:
        (m, z), = generic_instances(stream.spawn(1)[0].generate_state(1)[0], 1,
                                    n_choices=(1, 2, 3), p_choices=(2, 3), max_dim=4)
        if oracle.well_conditioned(m, z):
            out.append((m, z))
    return tuple(out)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion that ran."""
    results = {}
    for mod in list(sys.modules.values()):
        results.update(getattr(mod, "ACCEPTANCE_RESULTS", None) or {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda s: int(s.split()[0][1:])):
        ok, summary = results[name]
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'} ({summary})")
