import pytest

from orbigraph.catalog import catalog_samples, gen_tsw


@pytest.fixture(scope="session")
def samples():
    return catalog_samples()


@pytest.fixture
def tsw():
    return gen_tsw()


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines printed by the criterion tests."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance" in rep.nodeid:
                lines += [l for l in rep.capstdout.splitlines() if " criterion " in l]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
