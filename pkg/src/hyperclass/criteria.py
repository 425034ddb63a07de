"""Hypercentrality and centralizer criteria read off a class-size frequency table,
each paired with a structural oracle computed from the group itself.

Criterion functions take a :class:`ClassFrequency` and a prime, never the
group.  The ``*_check`` functions return ``(criterion, oracle)`` pairs so that
callers can assert the two agree.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .classes import ClassFrequency, frequency_function, s_p_prime_size, s_p_size
from .core import ElementSubset, FiniteGroup, generate, generating_subset, p_part, prime_divisors, quotient
from .errors import PreconditionFailed
from .structure import (
    centralizer,
    centre,
    hypercentre,
    o_p,
    o_p_prime,
    p_elements,
    sylow,
    upper_central_series,
)

# -- frequency side ---------------------------------------------------------


def s_p_p_part(freq: ClassFrequency, p: int) -> int:
    """p-part of the number of elements with p-power class size; equals |N ∩ Z_inf(G)|_p."""
    return p_part(s_p_size(freq, p), p)


def sylow_hypercentral_criterion(freq: ClassFrequency, p: int) -> bool:
    return s_p_p_part(freq, p) == p_part(freq.total, p)


def hypercentral_criterion(freq: ClassFrequency) -> bool:
    return all(sylow_hypercentral_criterion(freq, p) for p in prime_divisors(freq.total))


def central_order(freq: ClassFrequency) -> int:
    """|N ∩ Z(G)|: the central elements are exactly the classes of size 1."""
    return freq[1]


def sylow_centre_criterion(freq: ClassFrequency, p: int) -> bool:
    return p_part(s_p_prime_size(freq, p), p) == p_part(central_order(freq), p)


def criterion_fields(freq: ClassFrequency, p: int) -> dict:
    """Every per-prime value that is determined by the table alone."""
    hyp = sylow_hypercentral_criterion(freq, p)
    return {
        "s_p": s_p_size(freq, p),
        "s_p_p_part": s_p_p_part(freq, p),
        "n_p_part": p_part(freq.total, p),
        "s_p_prime": s_p_prime_size(freq, p),
        "sylow_hyp_criterion": hyp,
        "cor_b_criterion": hyp,
        "thm_c_c_criterion": sylow_centre_criterion(freq, p),
    }


# -- paired checks ------------------------------------------------------------


def hypercentre_p_part(G: FiniteGroup, N: ElementSubset, p: int, freq: ClassFrequency | None = None) -> tuple[int, int]:
    """``(|S_p|_p from the table, |N ∩ Z_inf(G)|_p from the group)``."""
    freq = frequency_function(G, N) if freq is None else freq
    return s_p_p_part(freq, p), p_part(len(N & hypercentre(G)), p)


def sylow_hypercentral_oracle(G: FiniteGroup, N: ElementSubset, p: int) -> bool:
    return p_part(len(N & hypercentre(G)), p) == p_part(len(N), p)


def hypercentral_oracle(G: FiniteGroup, N: ElementSubset) -> bool:
    return N <= hypercentre(G)


def p_elements_centralize_check(
    G: FiniteGroup, N: ElementSubset, p: int, freq: ClassFrequency | None = None
) -> tuple[bool, bool]:
    """Whether every p-element of N centralizes O^p(G): from the table, and directly."""
    freq = frequency_function(G, N) if freq is None else freq
    xs = np.intersect1d(p_elements(G, p), N.array)
    ys = np.array(generating_subset(G, o_p(G, p).array), dtype=np.intp)
    oracle = bool(np.array_equal(G.mul(xs[:, None], ys[None, :]), G.mul(ys[None, :], xs[:, None])))
    return sylow_hypercentral_criterion(freq, p), oracle


@dataclass(frozen=True)
class SylowCentreCheck:
    central_divides: bool
    centralizer_divides: bool
    criterion: bool
    oracle: bool


def sylow_centre_check(G: FiniteGroup, N: ElementSubset, p: int, freq: ClassFrequency | None = None) -> SylowCentreCheck:
    """Divisibility of |S_p'| by |N ∩ Z(G)| and by |C_N(O^p'(G))|, and whether
    the p-part test on the table matches ``Z(P) ∩ N <= Z(G)`` for a Sylow P."""
    freq = frequency_function(G, N) if freq is None else freq
    sp_prime = s_p_prime_size(freq, p)
    Z = centre(G)
    c_n = centralizer(G, o_p_prime(G, p)) & N
    P = sylow(G, p)
    zp_n = centralizer(G, P) & P & N
    return SylowCentreCheck(
        central_divides=sp_prime % len(N & Z) == 0,
        centralizer_divides=sp_prime % len(c_n) == 0,
        criterion=sylow_centre_criterion(freq, p),
        oracle=zp_n <= Z,
    )


def central_p_subgroups(G: FiniteGroup, N: ElementSubset, p: int) -> list[ElementSubset]:
    """All subgroups of order p inside N ∩ Z(G), ordered by least generator."""
    ZN = N & centre(G)
    out: dict[bytes, ElementSubset] = {}
    for g in ZN.array[G.orders[ZN.array] == p]:
        M = generate(G, [int(g)])
        out.setdefault(M.key, M)
    return list(out.values())


def central_quotient_check(G: FiniteGroup, N: ElementSubset, p: int, M: ElementSubset | None = None) -> tuple[int, int]:
    """``(|S_p^{G/M}(N/M)| * p, |S_p^G(N)|)`` for a central subgroup M of N of order p.

    M defaults to the subgroup generated by the least-id central element of
    order p in N.
    """
    if M is None:
        candidates = central_p_subgroups(G, N, p)
        if not candidates:
            raise PreconditionFailed(f"{p} does not divide |N ∩ Z(G)|")
        M = candidates[0]
    Q, coset_of = quotient(G, M)
    N_bar = ElementSubset(Q, coset_of[N.array])
    lhs = s_p_size(frequency_function(Q, N_bar), p) * p
    rhs = s_p_size(frequency_function(G, N), p)
    return lhs, rhs


# -- reports ------------------------------------------------------------------


@dataclass
class PrimeVerdict:
    p: int
    s_p: int
    s_p_p_part: int
    n_p_part: int
    hyp_p_part: int
    s_p_prime: int
    sylow_hyp_criterion: bool
    sylow_hyp_oracle: bool
    cor_b_criterion: bool
    cor_b_oracle: bool
    thm_c_a: bool
    thm_c_b: bool
    thm_c_c_criterion: bool
    thm_c_c_oracle: bool

    def mismatches(self) -> list[str]:
        out = []
        if self.s_p_p_part != self.hyp_p_part:
            out.append("hypercentre-p-part")
        if self.sylow_hyp_criterion != self.sylow_hyp_oracle:
            out.append("sylow-hypercentral")
        if self.cor_b_criterion != self.cor_b_oracle:
            out.append("p-elements-centralize")
        if not self.thm_c_a:
            out.append("central-divides")
        if not self.thm_c_b:
            out.append("centralizer-divides")
        if self.thm_c_c_criterion != self.thm_c_c_oracle:
            out.append("sylow-centre")
        return out


def prime_verdict(G: FiniteGroup, N: ElementSubset, p: int, freq: ClassFrequency) -> PrimeVerdict:
    crit = criterion_fields(freq, p)
    _, hyp = hypercentre_p_part(G, N, p, freq)
    _, cor_b_oracle = p_elements_centralize_check(G, N, p, freq)
    c = sylow_centre_check(G, N, p, freq)
    return PrimeVerdict(
        p=p,
        s_p=crit["s_p"],
        s_p_p_part=crit["s_p_p_part"],
        n_p_part=crit["n_p_part"],
        hyp_p_part=hyp,
        s_p_prime=crit["s_p_prime"],
        sylow_hyp_criterion=crit["sylow_hyp_criterion"],
        sylow_hyp_oracle=sylow_hypercentral_oracle(G, N, p),
        cor_b_criterion=crit["cor_b_criterion"],
        cor_b_oracle=cor_b_oracle,
        thm_c_a=c.central_divides,
        thm_c_b=c.centralizer_divides,
        thm_c_c_criterion=c.criterion,
        thm_c_c_oracle=c.oracle,
    )


@dataclass
class AnalysisReport:
    group_spec: str
    group_order: int
    normal_name: str
    normal_order: int
    frequency: ClassFrequency
    z_orders: list[int]
    z_infty_order: int
    centre_order: int
    verdicts: list[PrimeVerdict]
    hypercentral_criterion: bool
    hypercentral_oracle: bool
    normal_abelian: bool = field(default=False)

    @property
    def consistent(self) -> bool:
        return self.hypercentral_criterion == self.hypercentral_oracle and not any(
            v.mismatches() for v in self.verdicts
        )

    def to_dict(self) -> dict:
        return {
            "group": {"spec": self.group_spec, "order": self.group_order},
            "normal": {"name": self.normal_name, "order": self.normal_order, "abelian": self.normal_abelian},
            "frequency": self.frequency.to_json(),
            "centre_order": self.centre_order,
            "z_orders": list(self.z_orders),
            "z_infty_order": self.z_infty_order,
            "verdicts": [asdict(v) for v in self.verdicts],
            "hypercentral": {"criterion": self.hypercentral_criterion, "oracle": self.hypercentral_oracle},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        return cls(
            group_spec=data["group"]["spec"],
            group_order=data["group"]["order"],
            normal_name=data["normal"]["name"],
            normal_order=data["normal"]["order"],
            normal_abelian=data["normal"].get("abelian", False),
            frequency=ClassFrequency.from_json(data["frequency"]),
            centre_order=data["centre_order"],
            z_orders=list(data["z_orders"]),
            z_infty_order=data["z_infty_order"],
            verdicts=[PrimeVerdict(**v) for v in data["verdicts"]],
            hypercentral_criterion=data["hypercentral"]["criterion"],
            hypercentral_oracle=data["hypercentral"]["oracle"],
        )


def analyze(G: FiniteGroup, N: ElementSubset, group_spec: str = "", normal_name: str = "") -> AnalysisReport:
    """Frequency table, per-prime verdicts for every prime dividing |G|, and
    the direct orders |N ∩ Z_i(G)| along the upper central series."""
    freq = frequency_function(G, N)
    series = upper_central_series(G)
    return AnalysisReport(
        group_spec=group_spec,
        group_order=G.order,
        normal_name=normal_name,
        normal_order=len(N),
        frequency=freq,
        z_orders=[len(N & Z) for Z in series.terms],
        z_infty_order=len(N & hypercentre(G)),
        centre_order=len(N & centre(G)),
        verdicts=[prime_verdict(G, N, p, freq) for p in prime_divisors(G.order)],
        hypercentral_criterion=hypercentral_criterion(freq),
        hypercentral_oracle=hypercentral_oracle(G, N),
        normal_abelian=N.is_abelian(),
    )
