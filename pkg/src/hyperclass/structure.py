"""Direct structural computations: centralizers, centre, upper central series,
Sylow subgroups, O^p and O^p', normal closures and the normal-subgroup lattice.

These are the oracle side of every check; nothing here reads class-size
frequencies.  Results that depend only on G are memoized on the group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import conjugacy_classes
from .core import ElementSubset, FiniteGroup, generate, generating_subset, is_prime_power, p_part, prime_divisors
from .errors import LatticeCapExceeded

DEFAULT_LATTICE_CAP = 1024


def _memo(G: FiniteGroup, key, compute):
    try:
        return G._cache[key]
    except KeyError:
        value = G._cache[key] = compute()
        return value


def _as_array(S) -> np.ndarray:
    if isinstance(S, ElementSubset):
        return S.array
    return np.asarray(list(S), dtype=np.intp)


def centralizer(G: FiniteGroup, S) -> ElementSubset:
    """Elements of G commuting with every element of ``S``."""
    everything = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    # C_G(S) = C_G(<S>), so a generating subset of S suffices
    for s in generating_subset(G, _as_array(S)):
        mask &= G.mul(everything, s) == G.mul(s, everything)
    return ElementSubset.from_mask(G, mask)


def centre(G: FiniteGroup) -> ElementSubset:
    return _memo(G, "centre", lambda: centralizer(G, G.generator_ids))


@dataclass(frozen=True)
class CentralSeries:
    """Upper central series ``Z_1 <= Z_2 <= ... <= Z_k`` with ``Z_k`` stable."""

    terms: tuple[ElementSubset, ...]

    @property
    def hypercentre(self) -> ElementSubset:
        return self.terms[-1]

    def __len__(self) -> int:
        return len(self.terms)


def _next_centre_term(G: FiniteGroup, Z: ElementSubset) -> ElementSubset:
    # x lies in the next term iff [x, s] lies in Z for each generator s
    everything = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for s in G.generator_ids:
        mask &= Z.mask[G.commutator(everything, s)]
    return ElementSubset.from_mask(G, mask)


def upper_central_series(G: FiniteGroup) -> CentralSeries:
    def compute():
        terms = [centre(G)]
        while True:
            nxt = _next_centre_term(G, terms[-1])
            if len(nxt) == len(terms[-1]):
                return CentralSeries(tuple(terms))
            terms.append(nxt)

    return _memo(G, "upper_central_series", compute)


def hypercentre(G: FiniteGroup) -> ElementSubset:
    Z = upper_central_series(G).hypercentre
    assert Z.is_conjugation_stable(), "hypercentre must be normal"
    assert is_nilpotent(Z), "hypercentre must be nilpotent"
    return Z


def p_elements(G: FiniteGroup, p: int) -> np.ndarray:
    """Ids of elements of p-power order (identity included)."""
    orders = G.orders
    return np.nonzero([is_prime_power(int(o), p) for o in orders])[0]


def p_prime_elements(G: FiniteGroup, p: int) -> np.ndarray:
    """Ids of elements of order coprime to p (identity included)."""
    return np.nonzero(G.orders % p != 0)[0]


def is_nilpotent(H: ElementSubset) -> bool:
    """A subgroup is nilpotent iff, for each p, it has exactly |H|_p p-elements
    (equivalently, a unique Sylow p-subgroup)."""
    G = H.parent
    orders = G.orders[H.array]
    for p in prime_divisors(len(H)):
        count = sum(1 for o in orders if is_prime_power(int(o), p))
        if count != p_part(len(H), p):
            return False
    return True


def normalizer(G: FiniteGroup, H: ElementSubset, gens=None) -> ElementSubset:
    """Elements t of G with ``t^-1 H t = H``; ``gens`` may list generators of H."""
    gens = H.array if gens is None else _as_array(gens)
    everything = np.arange(G.order)
    mask = np.ones(G.order, dtype=bool)
    for h in gens:
        mask &= H.mask[G.conj(h, everything)]
    return ElementSubset.from_mask(G, mask)


def sylow(G: FiniteGroup, p: int) -> ElementSubset:
    """A Sylow p-subgroup, grown by normalizer extension with least-id choices."""

    def compute():
        target = p_part(G.order, p)
        if target == 1:
            return ElementSubset.trivial(G)
        orders = G.orders
        first = int(np.nonzero(orders == p)[0][0])
        gens = [first]
        P = generate(G, gens)
        pmask = np.zeros(G.order, dtype=bool)
        pmask[p_elements(G, p)] = True
        while len(P) < target:
            N = normalizer(G, P, gens)
            candidates = np.nonzero(N.mask & pmask & ~P.mask)[0]
            gens.append(int(candidates[0]))
            P = generate(G, gens)
        return P

    return _memo(G, ("sylow", p), compute)


def o_p(G: FiniteGroup, p: int) -> ElementSubset:
    """O^p(G): generated by all elements of order prime to p."""

    def compute():
        H = generate(G, p_prime_elements(G, p))
        assert H.is_conjugation_stable()
        return H

    return _memo(G, ("O^p", p), compute)


def o_p_prime(G: FiniteGroup, p: int) -> ElementSubset:
    """O^p'(G): generated by all elements of p-power order."""

    def compute():
        H = generate(G, p_elements(G, p))
        assert H.is_conjugation_stable()
        return H

    return _memo(G, ("O^p'", p), compute)


def normal_closure(G: FiniteGroup, S) -> ElementSubset:
    """Smallest normal subgroup containing ``S``: generated by the classes meeting S."""
    from .classes import class_labels

    labels = class_labels(G)
    hit = np.zeros(len(conjugacy_classes(G)), dtype=bool)
    hit[labels[_as_array(S)]] = True
    return generate(G, np.nonzero(hit[labels])[0])


def _product_set(G: FiniteGroup, A: ElementSubset, B: ElementSubset) -> ElementSubset:
    mask = np.zeros(G.order, dtype=bool)
    mask[G.mul(A.array[:, None], B.array[None, :]).ravel()] = True
    return ElementSubset.from_mask(G, mask)


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> list[ElementSubset]:
    """Every normal subgroup of G, sorted by (order, members).

    Each normal subgroup is generated by the classes it contains, so joining
    the normal closures of single classes until nothing new appears reaches
    all of them.  Joins of normal subgroups are product sets.
    """
    if G.order > cap:
        raise LatticeCapExceeded(f"group order {G.order} exceeds lattice cap {cap}")

    def compute():
        found: dict[bytes, ElementSubset] = {}
        for S in [ElementSubset.trivial(G)] + [normal_closure(G, c.array[:1]) for c in conjugacy_classes(G)]:
            found.setdefault(S.key, S)
        subs = list(found.values())
        i = 0
        while i < len(subs):
            A = subs[i]
            for j in range(i):
                B = subs[j]
                if A <= B or B <= A:
                    continue
                J = _product_set(G, A, B)
                if J.key not in found:
                    found[J.key] = J
                    subs.append(J)
            i += 1
        return sorted(subs, key=lambda S: (len(S), S.members))

    return list(_memo(G, "normal_subgroups", compute))
