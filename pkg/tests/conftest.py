import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperclass.catalog import build, default_corpus, named_subgroups, parse_spec  # noqa: E402


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [e for e in corpus if e.group.order <= 200]


@pytest.fixture(scope="session")
def s3():
    return build("S3")


@pytest.fixture(scope="session")
def d16xd8():
    spec = parse_spec("D16xD8")
    G = build(spec)
    return G, named_subgroups(spec, G)


def as_tuples(G, ids):
    return {tuple(int(i) for i in G.perms[g]) for g in ids}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not any("test_acceptance" in r.nodeid for r in terminalreporter.stats.get("passed", [])
                                 + terminalreporter.stats.get("failed", [])):
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, 11):
        terminalreporter.write_line(module.RESULTS.get(k, f"FAIL criterion {k}: did not complete"))
