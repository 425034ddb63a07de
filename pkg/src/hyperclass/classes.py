"""Conjugacy classes of G, their restriction to a normal subgroup, and the
class-size frequency table of that subgroup.

The frequency table is the only input the criteria in :mod:`hyperclass.criteria`
are allowed to see, so it is a small value type that serializes on its own.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import ElementSubset, FiniteGroup, p_part
from .errors import NotNormal


@dataclass(frozen=True)
class ClassFrequency:
    """Multiset of G-class sizes inside N: ``entries`` are ``(size, multiplicity)`` pairs, ascending."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        clean = []
        for size, mult in sorted((int(s), int(m)) for s, m in self.entries):
            if size < 1 or mult < 0:
                raise ValueError(f"bad frequency entry ({size}, {mult})")
            if mult == 0:
                continue
            if clean and clean[-1][0] == size:
                raise ValueError(f"duplicate class size {size}")
            clean.append((size, mult))
        object.__setattr__(self, "entries", tuple(clean))

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> ClassFrequency:
        return cls(tuple(Counter(sizes).items()))

    def __getitem__(self, size: int) -> int:
        return dict(self.entries).get(size, 0)

    @property
    def total(self) -> int:
        """Number of elements covered, i.e. |N|."""
        return sum(size * mult for size, mult in self.entries)

    @property
    def sizes(self) -> list[int]:
        """The class sizes with repetition, ascending."""
        return [size for size, mult in self.entries for _ in range(mult)]

    def to_json(self) -> list[list[int]]:
        return [[size, mult] for size, mult in self.entries]

    @classmethod
    def from_json(cls, data: list | str) -> ClassFrequency:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple((int(s), int(m)) for s, m in data))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{s}:{m}" for s, m in self.entries) + "}"


def is_pi_number(n: int, pi: Iterable[int], complement: bool = False) -> bool:
    """Whether every prime factor of ``n`` lies in ``pi`` (or, with
    ``complement``, none does)."""
    if complement:
        return all(n % p for p in pi)
    for p in pi:
        n //= p_part(n, p)
    return n == 1


def s_pi_size(freq: ClassFrequency, pi: Iterable[int], complement: bool = False) -> int:
    """Number of elements of N whose G-class size is a pi-number.

    Uses the frequency table alone.
    """
    pi = tuple(pi)
    return sum(size * mult for size, mult in freq.entries if is_pi_number(size, pi, complement))


def s_p_size(freq: ClassFrequency, p: int) -> int:
    return s_pi_size(freq, (p,))


def s_p_prime_size(freq: ClassFrequency, p: int) -> int:
    return s_pi_size(freq, (p,), complement=True)


def _class_labels(G: FiniteGroup) -> tuple[np.ndarray, list[ElementSubset]]:
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    labels = np.full(G.order, -1, dtype=np.intp)
    classes = []
    gens = np.array(G.generator_ids, dtype=np.intp)
    for g in range(G.order):
        if labels[g] >= 0:
            continue
        k = len(classes)
        labels[g] = k
        frontier = np.array([g], dtype=np.intp)
        while len(frontier) and len(gens):
            images = np.unique(G.conj(frontier[:, None], gens[None, :]).ravel())
            fresh = images[labels[images] < 0]
            labels[fresh] = k
            frontier = fresh
        classes.append(ElementSubset(G, np.nonzero(labels == k)[0]))
    labels.setflags(write=False)
    G._cache["classes"] = (labels, classes)
    return labels, classes


def conjugacy_classes(G: FiniteGroup) -> list[ElementSubset]:
    """All conjugacy classes of G, ordered by least member."""
    return list(_class_labels(G)[1])


def class_labels(G: FiniteGroup) -> np.ndarray:
    """``labels[g]`` is the index of g's class in :func:`conjugacy_classes`."""
    return _class_labels(G)[0]


def class_sizes(G: FiniteGroup) -> np.ndarray:
    """``sizes[g] = |g^G|`` for every element id."""
    labels, classes = _class_labels(G)
    return np.array([len(c) for c in classes], dtype=np.int64)[labels]


def g_classes_in(G: FiniteGroup, N: ElementSubset) -> list[ElementSubset]:
    """The G-classes contained in N; raises NotNormal if some class straddles N."""
    out = []
    for c in conjugacy_classes(G):
        inside = N.mask[c.array]
        if inside.all():
            out.append(c)
        elif inside.any():
            raise NotNormal(f"a conjugacy class of size {len(c)} meets N without lying in it")
    return out


def frequency_function(G: FiniteGroup, N: ElementSubset) -> ClassFrequency:
    return ClassFrequency.from_sizes(len(c) for c in g_classes_in(G, N))


def s_pi_set(G: FiniteGroup, N: ElementSubset, pi: Iterable[int], complement: bool = False) -> ElementSubset:
    """Elements of N whose G-class size is a pi-number, found element by element."""
    pi = tuple(pi)
    sizes = class_sizes(G)
    keep = [g for g in N if is_pi_number(int(sizes[g]), pi, complement)]
    return ElementSubset(G, keep)
