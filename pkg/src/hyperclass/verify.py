"""Run every criterion/oracle pairing and structural identity over a corpus.

Check tags:

========================  ===================================================
hypercentre-p-part        |S_p|_p from the table equals |N ∩ Z_inf(G)|_p
sylow-hypercentral        table test for a hypercentral Sylow p of N vs oracle
hypercentral              table test for N <= Z_inf(G) vs oracle
nilpotency                N = G: table verdict vs "all Sylow subgroups normal"
p-elements-centralize     table verdict vs p-elements of N centralizing O^p(G)
central-divides           |N ∩ Z(G)| divides |S_p'|
centralizer-divides       |C_N(O^p'(G))| divides |S_p'|
sylow-centre              p-part test on |S_p'| vs Z(P) ∩ N <= Z(G)
central-quotient          |S_p(N/M)| * p == |S_p(N)| for central M of order p
normal-p-subgroup         normal p-subgroup K: K <= Z_inf iff |G : C_G(K)| is a p-power
p-element                 p-element x: x in Z_inf iff x centralizes all p'-elements
prime-divisor             p | |N ∩ Z_inf| implies p | |N ∩ Z(G)|
class-equation            class sizes in N sum to |N| and divide |G|
s-pi-consistency          |S_pi| from the table equals the explicit element set
frequency-only            table criteria survive a JSON round trip without G
========================  ===================================================
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import criteria
from .catalog import CorpusEntry, corpus_entry
from .classes import ClassFrequency, frequency_function, s_p_prime_size, s_p_size, s_pi_set
from .core import is_prime_power, prime_divisors
from .errors import LatticeCapExceeded
from .structure import centralizer, centre, hypercentre, p_elements, p_prime_elements, sylow

Tamper = Callable[[str, str, ClassFrequency], ClassFrequency]


@dataclass(frozen=True)
class Failure:
    group: str
    subgroup: str
    subgroup_order: int
    tag: str
    p: int | None
    expected: object
    actual: object

    def __str__(self) -> str:
        at = f" p={self.p}" if self.p is not None else ""
        return (f"FAIL [{self.tag}] {self.group} / {self.subgroup} (order {self.subgroup_order}){at}: "
                f"expected {self.expected}, got {self.actual}")


@dataclass
class VerifyOutcome:
    pairs_checked: int = 0
    primes_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    checks: Counter = field(default_factory=Counter)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: VerifyOutcome) -> None:
        self.pairs_checked += other.pairs_checked
        self.primes_checked += other.primes_checked
        self.failures.extend(other.failures)
        self.checks.update(other.checks)
        self.skipped.extend(other.skipped)

    def sort(self) -> None:
        self.failures.sort(key=lambda f: (f.group, f.subgroup_order, f.subgroup, f.tag, f.p or 0))

    def summary_lines(self) -> list[str]:
        lines = [f"WARN skipped {s}" for s in self.skipped]
        lines.append(f"pairs checked: {self.pairs_checked}")
        lines.append(f"(group, subgroup, prime) triples checked: {self.primes_checked}")
        for tag in sorted(self.checks):
            lines.append(f"  {tag:<24} {self.checks[tag]}")
        lines.extend(str(f) for f in self.failures)
        lines.append(f"failures: {len(self.failures)}")
        return lines


class _Recorder:
    def __init__(self, outcome: VerifyOutcome, group: str):
        self.outcome = outcome
        self.group = group

    def check(self, tag, ok, expected, actual, subgroup="G", order=0, p=None):
        self.outcome.checks[tag] += 1
        if not ok:
            self.outcome.failures.append(Failure(self.group, subgroup, order, tag, p, expected, actual))

    def equal(self, tag, expected, actual, **kw):
        self.check(tag, expected == actual, expected, actual, **kw)


def _group_checks(entry: CorpusEntry, rec: _Recorder) -> None:
    G = entry.group
    Zinf = hypercentre(G)
    for p in prime_divisors(G.order):
        for name, K in entry.normals:
            if len(K) > 1 and is_prime_power(len(K), p):
                index = G.order // len(centralizer(G, K))
                rec.equal("normal-p-subgroup", K <= Zinf, is_prime_power(index, p),
                          subgroup=name, order=len(K), p=p)
        xs = p_elements(G, p)
        ys = p_prime_elements(G, p)
        commutes = (G.mul(xs[:, None], ys[None, :]) == G.mul(ys[None, :], xs[:, None])).all(axis=1)
        inside = Zinf.mask[xs]
        bad = np.nonzero(commutes != inside)[0]
        rec.check("p-element", len(bad) == 0, "x in Z_inf <=> x centralizes p'-elements",
                  [int(xs[i]) for i in bad[:5]], p=p)

    whole = [(name, N) for name, N in entry.normals if len(N) == G.order]
    if whole:
        name, N = whole[0]
        sylows_normal = all(sylow(G, p).is_conjugation_stable() for p in prime_divisors(G.order))
        freq = frequency_function(G, N)
        rec.equal("nilpotency", sylows_normal, criteria.hypercentral_criterion(freq), subgroup=name, order=len(N))


def _pair_checks(entry: CorpusEntry, name: str, N, rec: _Recorder, exhaustive_eq1: bool, tamper: Tamper | None) -> int:
    G = entry.group
    kw = {"subgroup": name, "order": len(N)}
    freq = frequency_function(G, N)

    rec.check("class-equation", freq.total == len(N) and all(G.order % s == 0 for s, _ in freq.entries),
              len(N), freq.total, **kw)
    primes = prime_divisors(G.order)
    for p in primes:
        rec.equal("s-pi-consistency", len(s_pi_set(G, N, [p])), s_p_size(freq, p), p=p, **kw)
        rec.equal("s-pi-consistency", len(s_pi_set(G, N, [p], complement=True)), s_p_prime_size(freq, p), p=p, **kw)

    # tables handed to the criteria may be swapped by a test hook
    table = tamper(entry.spec, name, freq) if tamper else freq
    restored = ClassFrequency.from_json(json.loads(json.dumps(table.to_json())))
    for p in primes:
        rec.equal("frequency-only", criteria.criterion_fields(table, p), criteria.criterion_fields(restored, p),
                  p=p, **kw)

    rec.equal("hypercentral", criteria.hypercentral_oracle(G, N), criteria.hypercentral_criterion(table), **kw)

    Zinf_n = len(N & hypercentre(G))
    Z_n = len(N & centre(G))
    for p in primes:
        rec.check("prime-divisor", Zinf_n % p != 0 or Z_n % p == 0,
                  f"{p} | {Z_n}", f"|N ∩ Z_inf| = {Zinf_n}", p=p, **kw)

        v = criteria.prime_verdict(G, N, p, table)
        rec.equal("hypercentre-p-part", v.hyp_p_part, v.s_p_p_part, p=p, **kw)
        rec.equal("sylow-hypercentral", v.sylow_hyp_oracle, v.sylow_hyp_criterion, p=p, **kw)
        rec.equal("p-elements-centralize", v.cor_b_oracle, v.cor_b_criterion, p=p, **kw)
        rec.check("central-divides", v.thm_c_a, f"{Z_n} | {v.s_p_prime}", False, p=p, **kw)
        rec.check("centralizer-divides", v.thm_c_b, f"|C_N(O^p'(G))| | {v.s_p_prime}", False, p=p, **kw)
        rec.equal("sylow-centre", v.thm_c_c_oracle, v.thm_c_c_criterion, p=p, **kw)

        if Z_n % p == 0:
            subgroups = criteria.central_p_subgroups(G, N, p)
            for M in subgroups if exhaustive_eq1 else subgroups[:1]:
                lhs, rhs = criteria.central_quotient_check(G, N, p, M)
                rec.equal("central-quotient", rhs, lhs, p=p, **kw)
    return len(primes)


def verify_entry(entry: CorpusEntry, exhaustive_eq1: bool = False, tamper: Tamper | None = None) -> VerifyOutcome:
    outcome = VerifyOutcome()
    rec = _Recorder(outcome, entry.spec)
    _group_checks(entry, rec)
    for name, N in entry.normals:
        outcome.primes_checked += _pair_checks(entry, name, N, rec, exhaustive_eq1, tamper)
        outcome.pairs_checked += 1
    return outcome


def _verify_spec(spec: str, exhaustive_eq1: bool) -> VerifyOutcome:
    try:
        entry = corpus_entry(spec)
    except LatticeCapExceeded as exc:
        return VerifyOutcome(skipped=[f"{spec}: {exc}"])
    return verify_entry(entry, exhaustive_eq1)


def verify_entries(entries: Iterable[CorpusEntry], exhaustive_eq1: bool = False,
                   tamper: Tamper | None = None) -> VerifyOutcome:
    total = VerifyOutcome()
    for entry in entries:
        total.merge(verify_entry(entry, exhaustive_eq1, tamper))
    total.sort()
    return total


def verify_specs(specs: Iterable[str], exhaustive_eq1: bool = False, jobs: int = 1) -> VerifyOutcome:
    """Verify each spec with all of its normal subgroups; result is independent of ``jobs``."""
    specs = list(specs)
    total = VerifyOutcome()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_spec, specs, [exhaustive_eq1] * len(specs)))
    else:
        results = [_verify_spec(s, exhaustive_eq1) for s in specs]
    for r in results:
        total.merge(r)
    total.sort()
    return total
