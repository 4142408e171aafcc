"""Downsets, ideals, and the downset-lattice constructions.

Downsets are stored as frozensets plus a bitmask; families are kept in the
canonical (size, member-lexicographic) order so every derived lattice is
byte-for-byte reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from . import budget as _budget
from . import poset as _poset
from . import semilattice as _semilattice
from .errors import BudgetExceeded, NotALattice
from .poset import Poset


@dataclass(frozen=True)
class DownSet:
    host: Poset
    members: frozenset

    def __post_init__(self):
        mask = 0
        for x in self.members:
            if not (0 <= x < self.host.n):
                raise ValueError(f"element {x} outside host")
            mask |= 1 << x
        for x in self.members:
            if self.host.down[x] & ~mask:
                raise ValueError(f"not downward closed at {x}")
        object.__setattr__(self, "_mask", mask)

    @property
    def mask(self) -> int:
        return self._mask  # type: ignore[attr-defined]

    def sorted_members(self):
        return tuple(sorted(self.members))

    def is_ideal(self) -> bool:
        """Non-empty and up-directed within itself."""
        if not self.members:
            return False
        mask = self.mask
        host = self.host
        ms = self.sorted_members()
        for a in ms:
            for b in ms:
                if host.up_incl(a) & host.up_incl(b) & mask == 0:
                    return False
        return True

    def __le__(self, other):
        return self.mask & ~other.mask == 0


def down_closure(host: Poset, elements) -> DownSet:
    """Least downset containing the given elements."""
    mask = 0
    for x in elements:
        if not (0 <= x < host.n):
            raise ValueError(f"element {x} outside host")
        mask |= host.down_incl(x)
    return _from_mask(host, mask)


def principal(host: Poset, x: int) -> DownSet:
    return down_closure(host, [x])


def _from_mask(host: Poset, mask: int) -> DownSet:
    return DownSet(host, frozenset(i for i in range(host.n) if (mask >> i) & 1))


@dataclass(frozen=True)
class DownSetFamily:
    host: Poset
    sets: tuple
    role: str = "custom"   # all | ideals | custom

    def __post_init__(self):
        masks = set()
        for d in self.sets:
            if d.host is not self.host and d.host != self.host:
                raise ValueError("family members must share the host")
            if d.mask in masks:
                raise ValueError("duplicate downset in family")
            masks.add(d.mask)

    def masks(self):
        return [d.mask for d in self.sets]

    def to_json_dict(self) -> dict:
        return {
            "host": _poset.to_json_dict(self.host),
            "sets": [list(d.sorted_members()) for d in self.sets],
            "role": self.role,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DownSetFamily":
        host = _poset.from_json_dict(data["host"])
        sets = tuple(DownSet(host, frozenset(s)) for s in data["sets"])
        return cls(host, sets, data.get("role", "custom"))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def canonical_sort(sets) -> tuple:
    return tuple(sorted(sets, key=lambda d: (len(d.members), d.sorted_members())))


def enumerate_downsets(p: Poset, element_budget: Optional[int] = None) -> DownSetFamily:
    """All downsets, each exactly once, in canonical order.

    Grows downsets by adding minimal elements of the complement; the budget
    counts produced downsets and exceeding it raises rather than truncating.
    """
    limit = _budget.resolve(element_budget, _budget.ENUM_BUDGET)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for e in range(p.n):
                if not (mask >> e) & 1 and p.down[e] & ~mask == 0:
                    m2 = mask | (1 << e)
                    if m2 not in seen:
                        seen.add(m2)
                        if len(seen) > limit:
                            raise BudgetExceeded(
                                f"more than {limit} downsets")
                        nxt.append(m2)
        frontier = nxt
    sets = canonical_sort(_from_mask(p, m) for m in seen)
    return DownSetFamily(p, sets, "all")


def enumerate_ideals(p: Poset) -> DownSetFamily:
    """All non-empty up-directed downsets, computed by the definition.

    On a finite poset these are exactly the principal downsets; that equality
    is asserted as a test property, not assumed here.
    """
    family = enumerate_downsets(p)
    ideals = tuple(d for d in family.sets if d.is_ideal())
    return DownSetFamily(p, ideals, "ideals")


def family_poset(family: DownSetFamily) -> Poset:
    """The family ordered by inclusion, element order = family order."""
    masks = family.masks()
    n = len(masks)
    up = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and masks[i] & ~masks[j] == 0:
                up[i] |= 1 << j
    labels = ["{" + ",".join(map(str, d.sorted_members())) + "}" for d in family.sets]
    return Poset(n, up, labels)


def downset_lattice(p: Poset, element_budget: Optional[int] = None) -> Poset:
    """All downsets of p ordered by inclusion, in canonical family order.

    Joins are unions and meets are intersections, so the result is a
    distributive lattice by construction; closure under both operations is
    asserted here and full identity checks live in the test suite.
    """
    family = enumerate_downsets(p, element_budget)
    lattice = family_poset(family)
    if lattice.n <= 256:
        masks = set(family.masks())
        for a in masks:
            for b in masks:
                assert a | b in masks and a & b in masks
    return lattice


def family_union_lattice(family: DownSetFamily,
                         element_budget: Optional[int] = None) -> Poset:
    """Closure of the family under pairwise unions, ordered by inclusion.

    On a finite host the closures under finite and under arbitrary unions
    coincide, so this is the union-closure lattice of the family.
    """
    if not family.sets:
        raise ValueError("family must be non-empty")
    limit = _budget.resolve(element_budget, _budget.ENUM_BUDGET)
    masks = set(family.masks())
    frontier = list(masks)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(masks):
                u = a | b
                if u not in masks:
                    masks.add(u)
                    if len(masks) > limit:
                        raise BudgetExceeded(f"more than {limit} unions")
                    nxt.append(u)
        frontier = nxt
    host = family.host
    sets = canonical_sort(_from_mask(host, m) for m in masks)
    return family_poset(DownSetFamily(host, sets, "custom"))


def completely_meet_irreducibles(lattice: Poset):
    """Elements with exactly one upper cover, with the successor map x -> x+.

    Returns (elements, successor dict). The top is excluded since it has no
    cover at all.
    """
    rep = _semilattice.structure_report(lattice)
    if not rep.is_lattice:
        raise NotALattice("input must be a lattice")
    covers = {}
    for a, b in lattice.cover_pairs():
        covers.setdefault(a, []).append(b)
    out = []
    successor = {}
    for x in range(lattice.n):
        ups = covers.get(x, [])
        if len(ups) == 1:
            out.append(x)
            successor[x] = ups[0]
    return out, successor


def representation_map(p: Poset, family: DownSetFamily) -> _semilattice.MapWitness:
    """phi(x) = {J in family : x not in J}, landing in the downset lattice of
    the family poset. Always order-preserving; certified an order embedding
    exactly when every x !<= y is separated by some member containing y but
    not x. When the host is a join-semilattice and the family consists of
    ideals, phi also preserves joins (an ideal missing x v y misses x or y),
    and the flag is certified whenever it holds."""
    fposet = family_poset(family)
    target_family = enumerate_downsets(fposet)
    index_of = {d.mask: i for i, d in enumerate(target_family.sets)}
    target = family_poset(target_family)
    masks = family.masks()
    table = []
    for x in range(p.n):
        fmask = 0
        for j, m in enumerate(masks):
            if not (m >> x) & 1:
                fmask |= 1 << j
        table.append(index_of[fmask])
    separated = all(
        any((masks[j] >> y) & 1 and not (masks[j] >> x) & 1 for j in range(len(masks)))
        for x in range(p.n) for y in range(p.n)
        if not p.leq(x, y)
    )
    wanted = {"order_preserving", "join_preserving"}
    if separated:
        wanted.add("order_embedding")
        wanted.add("injective")
    return _semilattice.certify(p, target, table, wanted)


def meet_irreducible_ideals(p: Poset,
                            element_budget: Optional[int] = None) -> DownSetFamily:
    """The completely meet-irreducible ideals of p (unique-upper-cover
    elements of its downset lattice that are up-directed), the family behind
    the canonical finite-set representation of a join-semilattice."""
    family = enumerate_downsets(p, element_budget)
    lattice = family_poset(family)
    cmi, _succ = completely_meet_irreducibles(lattice)
    picked = [family.sets[i] for i in cmi if family.sets[i].is_ideal()]
    return DownSetFamily(p, canonical_sort(picked), "custom")


def phi_triangle(p: Poset, x: int,
                 element_budget: Optional[int] = None) -> DownSetFamily:
    """Completely meet-irreducible ideals of p that do not contain x.

    Computed inside the downset lattice of p: its unique-upper-cover elements
    that are ideals of p stand for the completely meet-irreducible ideals
    (on a finite poset, ideals are principal, so the two readings coincide).
    """
    if not (0 <= x < p.n):
        raise ValueError(f"element {x} outside host")
    base = meet_irreducible_ideals(p, element_budget)
    picked = [d for d in base.sets if x not in d.members]
    return DownSetFamily(p, tuple(picked), "custom")
