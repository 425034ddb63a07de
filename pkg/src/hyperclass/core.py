"""Concrete finite groups whose elements are the integers ``0 .. order-1``.

Composition convention, used everywhere (products, conjugates, commutators):
``a * b`` means *apply a first, then b* when the elements act on points.
With it, ``g ** t = t^-1 * g * t`` and ``[g, t] = g^-1 * t^-1 * g * t`` so that
``g ** t == g * [g, t]``.

Two backends share one interface:

* permutation-backed groups hold an ``order x degree`` image array, element ids
  are assigned by breadth-first discovery from the generators;
* table-backed groups hold an ``order x order`` multiplication table (used for
  quotients).

Everything below works with numpy id arrays so that the structural code can
operate on whole element sets at once.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidPermutation, NotNormal, NotSubgroup, OrderCapExceeded

DEFAULT_ORDER_CAP = 20_000
# permutation groups up to this order get a materialized multiplication table
TABLE_LIMIT = 2500

_KEY_LIMIT = 2**62


def order_cap() -> int:
    """Closure cap; ``HYPERCLASS_ORDER_CAP`` overrides the default."""
    raw = os.environ.get("HYPERCLASS_ORDER_CAP")
    if raw:
        return int(raw)
    return DEFAULT_ORDER_CAP


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n``."""
    if n < 1:
        raise ValueError(f"p_part needs n >= 1, got {n}")
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def prime_divisors(n: int) -> list[int]:
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def is_prime_power(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"not a bijection on 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        # self first, then other
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def embed(self, degree: int, offset: int = 0) -> Permutation:
        """Act on the block ``offset .. offset+self.degree-1`` of a larger set."""
        if offset + self.degree > degree:
            raise InvalidPermutation(f"cannot embed degree {self.degree} at {offset} into {degree}")
        images = list(range(degree))
        for i, j in enumerate(self.images):
            images[offset + i] = offset + j
        return Permutation(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = []
            i = start
            while i not in seen:
                seen.add(i)
                cycle.append(i)
                i = self.images[i]
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


class FiniteGroup:
    """A finite group with elements ``0 .. order-1``; id 0 is the identity.

    Instances are immutable once built.  Derived data (inverses, element
    orders, a lazily materialized table, and structural results cached by
    other modules in ``_cache``) are pure functions of the construction input,
    so concurrent fills are value-identical.
    """

    identity_id = 0

    def __init__(
        self,
        order: int,
        generator_ids: Iterable[int],
        *,
        perms: np.ndarray | None = None,
        table: np.ndarray | None = None,
    ):
        if (perms is None) == (table is None):
            raise ValueError("exactly one of perms/table is required")
        self.order = int(order)
        self.generator_ids = tuple(int(g) for g in generator_ids)
        self._perms = perms
        self._table = table
        self._cache: dict = {}
        if perms is not None:
            perms.setflags(write=False)
            self._build_index()
        else:
            table.setflags(write=False)

    # -- backend plumbing -------------------------------------------------

    @property
    def backend(self) -> str:
        return "permutation" if self._perms is not None else "table"

    @property
    def degree(self) -> int | None:
        return None if self._perms is None else self._perms.shape[1]

    @property
    def perms(self) -> np.ndarray | None:
        return self._perms

    def _build_index(self) -> None:
        perms = self._perms
        n, d = perms.shape
        key = np.zeros(n, dtype=np.int64)
        base: list[int] = []
        distinct = 1
        radix = max(d, 2)
        scale = 1
        for point in range(d):
            if distinct == n:
                break
            if scale * radix >= _KEY_LIMIT:
                base = []
                break
            trial = key * radix + perms[:, point]
            count = len(np.unique(trial))
            if count > distinct:
                key, distinct = trial, count
                base.append(point)
                scale *= radix
        if distinct != n:
            # no compact base found; fall back to hashing whole rows
            self._base = None
            self._row_index = {row.tobytes(): i for i, row in enumerate(perms)}
            return
        self._base = np.array(base, dtype=np.intp)
        self._weights = radix ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
        self._key_order = np.argsort(key, kind="stable")
        self._sorted_keys = key[self._key_order]

    def _ids_from_base_images(self, images: np.ndarray) -> np.ndarray:
        key = images.astype(np.int64) @ self._weights if len(self._weights) else np.zeros(images.shape[:-1], np.int64)
        pos = np.searchsorted(self._sorted_keys, key)
        return self._key_order[pos]

    def _ids_from_rows(self, rows: np.ndarray) -> np.ndarray:
        if self._base is not None:
            return self._ids_from_base_images(rows[..., self._base])
        flat = rows.reshape(-1, rows.shape[-1]).astype(self._perms.dtype)
        ids = np.fromiter((self._row_index[r.tobytes()] for r in flat), dtype=np.intp, count=len(flat))
        return ids.reshape(rows.shape[:-1])

    def _perm_product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        perms = self._perms
        if self._base is not None:
            first = perms[a[..., None], self._base]
            return self._ids_from_base_images(perms[b[..., None], first])
        rows = np.take_along_axis(perms[b], perms[a], axis=-1)
        return self._ids_from_rows(rows)

    @property
    def table(self) -> np.ndarray:
        """The full multiplication table (built on demand for permutation groups)."""
        if self._table is None:
            n = self.order
            table = np.empty((n, n), dtype=np.int32 if n < 2**31 else np.int64)
            every = np.arange(n)
            step = max(1, 200_000 // max(n, 1))
            for start in range(0, n, step):
                rows = np.arange(start, min(n, start + step))
                table[rows] = self._perm_product(rows[:, None], every[None, :])
            table.setflags(write=False)
            self._table = table
        return self._table

    def _use_table(self) -> bool:
        return self._table is not None or self.order <= TABLE_LIMIT

    # -- arithmetic -------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a, b) -> np.ndarray:
        """Vectorized product ``a * b`` over broadcast id arrays."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp))
        if self._use_table():
            return self.table[a, b].astype(np.intp)
        return self._perm_product(a, b)

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul(a, b))

    @cached_property
    def inverses(self) -> np.ndarray:
        if self._use_table():
            inv = np.argmax(self.table == 0, axis=1).astype(np.intp)
        else:
            rows = np.argsort(self._perms, axis=1)
            inv = self._ids_from_rows(rows)
        inv.setflags(write=False)
        return inv

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        current = np.arange(n, dtype=np.intp)
        active = np.nonzero(current != 0)[0]
        k = 1
        while len(active):
            k += 1
            current[active] = self.mul(current[active], active)
            done = current[active] == 0
            orders[active[done]] = k
            active = active[~done]
        orders.setflags(write=False)
        return orders

    def element_order(self, a: int) -> int:
        return int(self.orders[a])

    def conj(self, g, t) -> np.ndarray:
        """Vectorized ``t^-1 * g * t``."""
        t = np.asarray(t, dtype=np.intp)
        return self.mul(self.mul(self.inverses[t], g), t)

    def conjugate(self, g: int, t: int) -> int:
        return int(self.conj(g, t))

    def commutator(self, a, b) -> np.ndarray:
        """Vectorized ``[a, b] = a^-1 * b^-1 * a * b``."""
        a = np.asarray(a, dtype=np.intp)
        b = np.asarray(b, dtype=np.intp)
        return self.mul(self.mul(self.inverses[a], self.inverses[b]), self.mul(a, b))

    def permutation(self, a: int) -> Permutation:
        if self._perms is None:
            raise TypeError("table-backed group has no permutation representation")
        return Permutation(tuple(int(i) for i in self._perms[a]))

    def index_of(self, perm: Permutation) -> int | None:
        """Id of ``perm`` in this group, or None if it is not an element."""
        if self._perms is None or perm.degree != self.degree:
            return None
        row = np.array(perm.images, dtype=self._perms.dtype)
        if self._base is not None:
            key = int(row[self._base].astype(np.int64) @ self._weights) if len(self._weights) else 0
            pos = int(np.searchsorted(self._sorted_keys, key))
            if pos >= self.order or self._sorted_keys[pos] != key:
                return None
            idx = int(self._key_order[pos])
            return idx if np.array_equal(self._perms[idx], row) else None
        return self._row_index.get(row.tobytes())

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup order={self.order} backend={self.backend}>"


class ElementSubset:
    """A sorted, duplicate-free set of element ids inside ``parent``.

    Whether it is a subgroup, normal subgroup, class or coset is a property
    checked where it matters, not a type distinction.
    """

    __slots__ = ("parent", "array", "_mask", "_key")

    def __init__(self, parent: FiniteGroup, members: Iterable[int] | np.ndarray):
        arr = np.unique(np.asarray(list(members) if not isinstance(members, np.ndarray) else members, dtype=np.intp))
        if len(arr) and (arr[0] < 0 or arr[-1] >= parent.order):
            raise ValueError(f"element ids must lie in 0..{parent.order - 1}")
        arr.setflags(write=False)
        self.parent = parent
        self.array = arr
        self._mask = None
        self._key = None

    @classmethod
    def from_mask(cls, parent: FiniteGroup, mask: np.ndarray) -> ElementSubset:
        sub = cls(parent, np.nonzero(mask)[0])
        m = np.array(mask, dtype=bool)
        m.setflags(write=False)
        sub._mask = m
        return sub

    @classmethod
    def whole(cls, parent: FiniteGroup) -> ElementSubset:
        return cls(parent, np.arange(parent.order))

    @classmethod
    def trivial(cls, parent: FiniteGroup) -> ElementSubset:
        return cls(parent, [0])

    @property
    def members(self) -> list[int]:
        return self.array.tolist()

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[self.array] = True
            m.setflags(write=False)
            self._mask = m
        return self._mask

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = np.packbits(self.mask).tobytes()
        return self._key

    @property
    def order(self) -> int:
        return len(self.array)

    def __len__(self) -> int:
        return len(self.array)

    def __iter__(self) -> Iterator[int]:
        return iter(self.array.tolist())

    def __contains__(self, g: int) -> bool:
        return 0 <= g < self.parent.order and bool(self.mask[g])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSubset):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.array, other.array)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __le__(self, other: ElementSubset) -> bool:
        return bool(other.mask[self.array].all())

    def __and__(self, other: ElementSubset) -> ElementSubset:
        return ElementSubset.from_mask(self.parent, self.mask & other.mask)

    def __or__(self, other: ElementSubset) -> ElementSubset:
        return ElementSubset.from_mask(self.parent, self.mask | other.mask)

    def __repr__(self) -> str:
        shown = self.members[:8]
        tail = ", ..." if len(self) > 8 else ""
        return f"ElementSubset(order={len(self)}, members=[{', '.join(map(str, shown))}{tail}])"

    def is_subgroup(self) -> bool:
        if 0 not in self:
            return False
        return len(generate(self.parent, self.array)) == len(self)

    def is_normal(self) -> bool:
        """Subgroup that is stable under conjugation by every generator."""
        return self.is_subgroup() and self.is_conjugation_stable()

    def is_conjugation_stable(self) -> bool:
        G = self.parent
        for s in G.generator_ids:
            if not self.mask[G.conj(self.array, s)].all():
                return False
        return True

    def is_abelian(self) -> bool:
        a = self.array
        G = self.parent
        if len(a) > 4096:
            return all(np.array_equal(G.mul(x, a), G.mul(a, x)) for x in a)
        return bool(np.array_equal(G.mul(a[:, None], a[None, :]), G.mul(a[None, :], a[:, None])))


def close_generators(
    degree: int,
    generators: Sequence[Permutation | Sequence[int]],
    cap: int | None = None,
) -> FiniteGroup:
    """Enumerate the group generated by ``generators`` by breadth-first search.

    The queue starts at the identity; each dequeued element is multiplied on
    the right by the generators in input order, and unseen products receive
    the next id.  Identical input therefore yields identical element ids.
    """
    cap = order_cap() if cap is None else cap
    gens = []
    for g in generators:
        perm = g if isinstance(g, Permutation) else Permutation(tuple(g))
        if perm.degree != degree:
            raise InvalidPermutation(f"generator {perm} has degree {perm.degree}, expected {degree}")
        gens.append(perm.images)

    identity = tuple(range(degree))
    index = {identity: 0}
    elements = [identity]
    queue = deque([identity])
    while queue:
        elt = queue.popleft()
        for gen in gens:
            prod = tuple([gen[i] for i in elt])
            if prod not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(f"closure exceeds order cap {cap}")
                index[prod] = len(elements)
                elements.append(prod)
                queue.append(prod)

    dtype = np.int16 if degree < 2**15 else np.int32
    perms = np.array(elements, dtype=dtype).reshape(len(elements), degree)
    return FiniteGroup(len(elements), [index[g] for g in gens], perms=perms)


def table_group(table: np.ndarray, generator_ids: Iterable[int]) -> FiniteGroup:
    table = np.ascontiguousarray(table, dtype=np.int32)
    return FiniteGroup(table.shape[0], generator_ids, table=table)


def _closure(G: FiniteGroup, elements) -> tuple[np.ndarray, list[int]]:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    members = np.array([0], dtype=np.intp)
    gens: list[int] = []
    for g in np.asarray(list(elements) if not isinstance(elements, np.ndarray) else elements, dtype=np.intp).ravel():
        g = int(g)
        if mask[g]:
            continue
        gens.append(g)
        gen_arr = np.array(gens, dtype=np.intp)
        frontier = members
        while len(frontier):
            prods = np.unique(G.mul(frontier[:, None], gen_arr[None, :]).ravel())
            fresh = prods[~mask[prods]]
            mask[fresh] = True
            frontier = fresh
        members = np.nonzero(mask)[0]
    return mask, gens


def generate(G: FiniteGroup, elements: Iterable[int] | np.ndarray) -> ElementSubset:
    """Subgroup generated by ``elements``.

    Candidates already inside the current subgroup are skipped, so the
    working generator list stays short even for large input sets.
    """
    return ElementSubset.from_mask(G, _closure(G, elements)[0])


def generating_subset(G: FiniteGroup, elements: Iterable[int] | np.ndarray) -> list[int]:
    """Greedy sublist of ``elements`` generating the same subgroup."""
    return _closure(G, elements)[1]


def quotient(G: FiniteGroup, M: ElementSubset) -> tuple[FiniteGroup, np.ndarray]:
    """Table-backed ``G / M`` and the map sending each element id to its coset id.

    Coset ids follow the least element of each coset, so the identity coset
    is 0.
    """
    if not M.is_subgroup():
        raise NotSubgroup("quotient by a subset that is not a subgroup")
    if not M.is_conjugation_stable():
        raise NotNormal("quotient by a subgroup that is not normal")
    coset_of = np.full(G.order, -1, dtype=np.intp)
    reps = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        coset_of[G.mul(g, M.array)] = len(reps)
        reps.append(g)
    reps_arr = np.array(reps, dtype=np.intp)
    table = coset_of[G.mul(reps_arr[:, None], reps_arr[None, :])]
    gens = []
    for g in G.generator_ids:
        c = int(coset_of[g])
        if c != 0 and c not in gens:
            gens.append(c)
    coset_of.setflags(write=False)
    return table_group(table, gens), coset_of
