"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line; the lines are printed in
the terminal summary (see conftest) or directly when this file is run as a
script.  All tolerances are exact integer or boolean equality; runtime limits
are wall-clock seconds measured in-process.
"""

import time

import pytest

from hyperclass.catalog import DEFAULT_SPECS, build, corpus_entry, named_subgroups, resolve_normal
from hyperclass.classes import frequency_function
from hyperclass.cli import d16xd8_example
from hyperclass.core import ElementSubset, generate
from hyperclass.criteria import analyze, criterion_fields, hypercentral_criterion, hypercentral_oracle
from hyperclass.structure import upper_central_series
from hyperclass.verify import verify_specs

RESULTS: dict[int, str] = {}

PAIRS_MIN = 100
TRIPLES_MIN = 250
EXAMPLE_SECONDS = 1.0
SUITE_SECONDS = 120.0
VERIFY_SECONDS = 300.0
ANALYZE_SECONDS = 10.0


def record(k: int, ok: bool, detail: str) -> None:
    RESULTS[k] = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    assert ok, RESULTS[k]


def tag_failures(outcome, *tags):
    return [f for f in outcome.failures if f.tag in tags]


@pytest.fixture(scope="module")
def default_run():
    start = time.perf_counter()
    outcome = verify_specs(DEFAULT_SPECS)
    return outcome, time.perf_counter() - start


@pytest.fixture(scope="module")
def exhaustive_run():
    return verify_specs(DEFAULT_SPECS, exhaustive_eq1=True)


def test_1_d16xd8_example():
    start = time.perf_counter()
    _, failed = d16xd8_example()
    elapsed = time.perf_counter() - start
    record(1, not failed and elapsed < EXAMPLE_SECONDS,
           f"D16xD8 example assertions {'hold' if not failed else failed} in {elapsed:.2f}s "
           f"(limit {EXAMPLE_SECONDS:.0f}s)")


def test_2_hypercentre_p_part(default_run):
    outcome, elapsed = default_run
    bad = tag_failures(outcome, "hypercentre-p-part")
    checked = outcome.checks["hypercentre-p-part"]
    ok = (not bad and outcome.pairs_checked >= PAIRS_MIN and outcome.primes_checked >= TRIPLES_MIN
          and checked == outcome.primes_checked and elapsed < SUITE_SECONDS)
    record(2, ok, f"|S_p|_p = |N ∩ Z_inf|_p on {outcome.pairs_checked} pairs / {checked} triples, "
                  f"{len(bad)} failures, {elapsed:.1f}s (limit {SUITE_SECONDS:.0f}s)")


def test_3_hypercentrality(default_run):
    outcome, _ = default_run
    bad = tag_failures(outcome, "hypercentral", "sylow-hypercentral", "nilpotency")
    s3 = build("S3")
    s4 = corpus_entry("S4")
    cases = {
        "S3/A3": (s3, resolve_normal("S3", s3, "A3")[1]),
        "S4/V4": (s4.group, next(N for _, N in s4.normals if len(N) == 4)),
        "S4/A4": (s4.group, next(N for _, N in s4.normals if len(N) == 12)),
    }
    verdicts = {key: (hypercentral_criterion(frequency_function(G, N)), hypercentral_oracle(G, N))
                for key, (G, N) in cases.items()}
    P = corpus_entry("D16xD8")
    two_group = all(hypercentral_criterion(frequency_function(P.group, N)) for _, N in P.normals)
    ok = (not bad and all(c == o is False for c, o in verdicts.values()) and two_group)
    record(3, ok, f"criterion matches N <= Z_inf on {outcome.checks['hypercentral']} pairs; "
                  f"D16xD8 all true {two_group}; S3/A3, S4/V4, S4/A4 false {verdicts}; {len(bad)} failures")


def test_4_p_elements_centralize(default_run):
    outcome, _ = default_run
    bad = tag_failures(outcome, "p-elements-centralize")
    n = outcome.checks["p-elements-centralize"]
    record(4, not bad and n == outcome.primes_checked, f"{n} triples, {len(bad)} failures")


def test_5_sylow_centre(default_run):
    outcome, _ = default_run
    tags = ("central-divides", "centralizer-divides", "sylow-centre")
    bad = tag_failures(outcome, *tags)
    counts = [outcome.checks[t] for t in tags]
    record(5, not bad and all(c == outcome.primes_checked for c in counts),
           f"divisibility (a), (b) and p-part test (c) on {counts[0]} triples, {len(bad)} failures")


def test_6_central_quotient(default_run, exhaustive_run):
    outcome, _ = default_run
    bad = tag_failures(outcome, "central-quotient") + tag_failures(exhaustive_run, "central-quotient")
    n, m = outcome.checks["central-quotient"], exhaustive_run.checks["central-quotient"]
    record(6, not bad and n > 0 and m >= n,
           f"|S_p(N/M)| * p = |S_p(N)| on {n} triples (deterministic M) and {m} (every M), {len(bad)} failures")


def test_7_hypercentre_facts(default_run):
    outcome, _ = default_run
    tags = ("normal-p-subgroup", "p-element", "prime-divisor")
    bad = tag_failures(outcome, *tags)
    counts = {t: outcome.checks[t] for t in tags}
    record(7, not bad and all(counts.values()), f"{counts}, {len(bad)} failures")


def test_8_frequency_does_not_determine_structure():
    spec = "D16xD8"
    G = build(spec)
    names = named_subgroups(spec, G)
    N1, N2 = names["x-cyclic"], names["right"]
    f1, f2 = frequency_function(G, N1), frequency_function(G, N2)
    Z2 = upper_central_series(G).terms[1]
    x = G.generator_ids[0]
    expected_z2 = generate(G, [int(G.mul(x, x)), *N2.members])
    r1, r2 = analyze(G, N1), analyze(G, N2)
    ok = (f1 == f2 and f1.sizes == [1, 1, 2, 2, 2]
          and criterion_fields(f1, 2) == criterion_fields(f2, 2)
          and Z2 == expected_z2
          and len(N1 & Z2) == 4 and len(N2 & Z2) == 8
          and r1.z_orders != r2.z_orders
          and N1.is_abelian() != N2.is_abelian())
    record(8, ok, f"equal tables {f1.to_json()} but |N ∩ Z_2(G)| = {len(N1 & Z2)} vs {len(N2 & Z2)}, "
                  f"abelian {N1.is_abelian()} vs {N2.is_abelian()}")


def test_9_oracle_consistency(default_run):
    outcome, _ = default_run
    bad = tag_failures(outcome, "s-pi-consistency", "class-equation", "frequency-only")
    record(9, not bad and outcome.checks["s-pi-consistency"] == 2 * outcome.primes_checked
           and outcome.checks["class-equation"] == outcome.pairs_checked,
           f"|s_pi_set| = s_pi_size on {outcome.checks['s-pi-consistency']} (pair, pi) cases, "
           f"class equation on {outcome.checks['class-equation']} pairs, {len(bad)} failures")


def test_10_performance(default_run):
    outcome, verify_elapsed = default_run
    timings = {}
    for spec in ("S5xC16", "A5xC32", "S4xS4xC3"):
        start = time.perf_counter()
        G = build(spec)
        assert G.order <= 2000
        report = analyze(G, ElementSubset.whole(G), spec, "G")
        assert report.consistent
        timings[spec] = time.perf_counter() - start
    worst = max(timings.values())
    record(10, outcome.ok and verify_elapsed < VERIFY_SECONDS and worst < ANALYZE_SECONDS,
           f"verify {verify_elapsed:.1f}s (limit {VERIFY_SECONDS:.0f}s); slowest analysis of order <= 2000 "
           f"{worst:.2f}s (limit {ANALYZE_SECONDS:.0f}s)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
