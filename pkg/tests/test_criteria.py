import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperclass.catalog import build, corpus_entry, resolve_normal
from hyperclass.classes import ClassFrequency, frequency_function
from hyperclass.core import ElementSubset, generate, prime_divisors
from hyperclass.criteria import (
    AnalysisReport,
    analyze,
    central_order,
    central_p_subgroups,
    central_quotient_check,
    criterion_fields,
    hypercentral_criterion,
    hypercentral_oracle,
    hypercentre_p_part,
    p_elements_centralize_check,
    sylow_centre_check,
    sylow_hypercentral_criterion,
    sylow_hypercentral_oracle,
)
from hyperclass.errors import PreconditionFailed
from hyperclass.verify import verify_entries

D16XD8_FREQ = ClassFrequency(((1, 2), (2, 3)))
S3_A3_FREQ = ClassFrequency(((1, 1), (2, 1)))


def _a3(G):
    return generate(G, [g for g in G.elements() if G.element_order(g) == 3])


# -- table-only criteria ----------------------------------------------------------


def test_sylow_hypercentral_criterion_examples():
    assert sylow_hypercentral_criterion(D16XD8_FREQ, 2)
    assert not sylow_hypercentral_criterion(S3_A3_FREQ, 3)
    for p in (2, 3, 5, 7):
        assert sylow_hypercentral_criterion(ClassFrequency(((1, 1),)), p)


def test_hypercentral_criterion_examples(d16xd8):
    G, names = d16xd8
    for name in ("x-cyclic", "right"):
        assert hypercentral_criterion(frequency_function(G, names[name]))
    assert not hypercentral_criterion(S3_A3_FREQ)
    assert hypercentral_criterion(ClassFrequency(((1, 12),)))


def test_central_order_is_size_one_multiplicity(corpus):
    from hyperclass.structure import centre

    for entry in corpus:
        for _, N in entry.normals:
            assert central_order(frequency_function(entry.group, N)) == len(N & centre(entry.group))


@given(st.lists(st.sampled_from([1, 2, 3, 4, 6, 8, 9, 12]), min_size=1, max_size=10), st.sampled_from([2, 3, 5]))
def test_criteria_depend_only_on_table(sizes, p):
    # a genuine table always has the identity class
    freq = ClassFrequency.from_sizes([1, *sizes])
    restored = ClassFrequency.from_json(json.dumps(freq.to_json()))
    assert criterion_fields(freq, p) == criterion_fields(restored, p)


# -- paired checks ----------------------------------------------------------------


def test_hypercentre_p_part_examples(d16xd8, s3):
    G, names = d16xd8
    assert hypercentre_p_part(G, names["x-cyclic"], 2) == (8, 8)
    assert hypercentre_p_part(s3, _a3(s3), 3) == (1, 1)
    assert hypercentre_p_part(s3, _a3(s3), 5) == (1, 1)
    assert hypercentre_p_part(G, names["right"], 7) == (1, 1)


def test_p_elements_centralize_examples(d16xd8, s3):
    assert p_elements_centralize_check(s3, _a3(s3), 3) == (False, False)
    assert p_elements_centralize_check(s3, _a3(s3), 2) == (True, True)
    G, names = d16xd8
    assert p_elements_centralize_check(G, names["right"], 2) == (True, True)


def test_sylow_centre_examples(d16xd8, s3):
    c = sylow_centre_check(s3, _a3(s3), 2)
    assert c.central_divides and c.centralizer_divides
    assert (c.criterion, c.oracle) == (True, True)
    G, names = d16xd8
    c = sylow_centre_check(G, names["x-cyclic"], 2)
    assert c.central_divides and c.centralizer_divides
    assert (c.criterion, c.oracle) == (True, True)
    C12 = build("C12")
    for p in (2, 3):
        c = sylow_centre_check(C12, ElementSubset.whole(C12), p)
        assert c.central_divides and c.centralizer_divides and c.criterion and c.oracle


def test_s3_a3_s_p_prime_size():
    # the 3-cycles form one class of size 2, which is not a 2'-number
    assert criterion_fields(S3_A3_FREQ, 2)["s_p_prime"] == 1


def test_sylow_centre_negative_polarity(corpus):
    seen = False
    for entry in corpus:
        for _, N in entry.normals:
            for p in prime_divisors(entry.group.order):
                c = sylow_centre_check(entry.group, N, p)
                assert c.criterion == c.oracle
                seen = seen or not c.oracle
    assert seen


def test_central_quotient_examples(d16xd8):
    G, names = d16xd8
    assert central_quotient_check(G, names["x-cyclic"], 2) == (8, 8)
    C4 = build("C4")
    assert central_quotient_check(C4, ElementSubset.whole(C4), 2) == (4, 4)
    H = build("S3xC3")
    N = next(N for _, N in corpus_entry("S3xC3").normals if len(N) == 9)
    lhs, rhs = central_quotient_check(H, N, 3)
    assert lhs == rhs
    for M in central_p_subgroups(H, N, 3):
        assert central_quotient_check(H, N, 3, M) == (lhs, rhs)


def test_central_quotient_precondition(s3):
    with pytest.raises(PreconditionFailed):
        central_quotient_check(s3, _a3(s3), 3)
    with pytest.raises(PreconditionFailed):
        central_quotient_check(s3, ElementSubset.whole(s3), 2)


def test_central_quotient_every_subgroup(small_corpus):
    from hyperclass.structure import centre

    count = 0
    for entry in small_corpus:
        G = entry.group
        for _, N in entry.normals:
            zn = len(N & centre(G))
            for p in prime_divisors(G.order):
                if zn % p:
                    continue
                for M in central_p_subgroups(G, N, p):
                    lhs, rhs = central_quotient_check(G, N, p, M)
                    assert lhs == rhs
                    count += 1
    assert count > 100


def test_verdict_polarities(corpus):
    by_spec = {e.spec: e for e in corpus}
    S4 = by_spec["S4"]
    for order in (4, 12):
        N = next(N for _, N in S4.normals if len(N) == order)
        freq = frequency_function(S4.group, N)
        assert hypercentral_criterion(freq) is False is hypercentral_oracle(S4.group, N)
    P = by_spec["D16xD8"]
    assert all(hypercentral_criterion(frequency_function(P.group, N)) for _, N in P.normals)
    for entry in corpus:
        for _, N in entry.normals:
            for p in prime_divisors(entry.group.order):
                freq = frequency_function(entry.group, N)
                assert sylow_hypercentral_criterion(freq, p) == sylow_hypercentral_oracle(entry.group, N, p)


# -- reports ----------------------------------------------------------------------


def test_analyze_trivial_subgroup(s3):
    r = analyze(s3, ElementSubset.trivial(s3), "S3", "1")
    assert r.hypercentral_criterion and r.hypercentral_oracle
    assert r.frequency.to_json() == [[1, 1]]
    for v in r.verdicts:
        assert v.sylow_hyp_criterion and v.cor_b_criterion and v.thm_c_a and v.thm_c_b and v.thm_c_c_criterion
    assert r.consistent


def test_analyze_d16xd8_subgroups(d16xd8):
    G, names = d16xd8
    r1 = analyze(G, names["x-cyclic"], "D16xD8", "x-cyclic")
    r2 = analyze(G, names["right"], "D16xD8", "right")
    assert r1.frequency.to_json() == r2.frequency.to_json() == [[1, 2], [2, 3]]
    assert r1.hypercentral_criterion and r2.hypercentral_criterion
    assert r1.z_orders[1] == 4 and r2.z_orders[1] == 8
    assert r1.normal_abelian and not r2.normal_abelian
    assert [v.p for v in r1.verdicts] == [2]


def test_report_does_not_claim_frequency_determines_z2(d16xd8):
    # same table, different |N ∩ Z_2(G)|: nothing in the criteria may encode Z_2
    G, names = d16xd8
    f1 = frequency_function(G, names["x-cyclic"])
    f2 = frequency_function(G, names["right"])
    assert f1 == f2
    assert criterion_fields(f1, 2) == criterion_fields(f2, 2)
    r1 = analyze(G, names["x-cyclic"])
    r2 = analyze(G, names["right"])
    assert r1.z_orders != r2.z_orders


def test_report_json_roundtrip_and_schema():
    G = build("S4xC3")
    _, N = resolve_normal("S4xC3", G, "left")
    r = analyze(G, N, "S4xC3", "left")
    data = json.loads(r.to_json())
    assert set(data) >= {"group", "normal", "frequency", "z_orders", "z_infty_order", "verdicts", "hypercentral"}
    assert set(data["group"]) == {"spec", "order"}
    assert set(data["hypercentral"]) == {"criterion", "oracle"}
    keys = {"p", "s_p", "s_p_p_part", "n_p_part", "sylow_hyp_criterion", "sylow_hyp_oracle", "cor_b_criterion",
            "cor_b_oracle", "thm_c_a", "thm_c_b", "thm_c_c_criterion", "thm_c_c_oracle"}
    for v in data["verdicts"]:
        assert keys <= set(v)
    assert AnalysisReport.from_dict(data) == r
    assert AnalysisReport.from_dict(data).to_json() == r.to_json()


# -- harness negative path ----------------------------------------------------------


def test_corrupted_table_gives_exactly_one_failure():
    entry = corpus_entry("D40")
    whole = entry.normals[-1][0]
    genuine = frequency_function(entry.group, entry.normals[-1][1])
    assert genuine.to_json() == [[1, 2], [2, 9], [10, 2]]

    def tamper(spec, name, freq):
        if name != whole:
            return freq
        return ClassFrequency(((1, 2), (2, 6), (6, 1), (10, 2)))

    assert verify_entries([entry]).ok
    outcome = verify_entries([entry], tamper=tamper)
    assert len(outcome.failures) == 1
    f = outcome.failures[0]
    assert (f.tag, f.p, f.subgroup) == ("hypercentre-p-part", 2, whole)
