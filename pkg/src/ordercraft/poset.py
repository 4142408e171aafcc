"""Finite posets on dense indices 0..n-1.

The strict order is stored in reachability form: ``up[i]`` is the bitmask of
elements strictly above i. Bitmasks are plain Python ints, which keeps the
pair operations (subset tests, common-upper-bound masks) single machine ops
even for posets with a few thousand elements.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional, Sequence

from . import budget as _budget
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    CyclicRelation,
    IndexOutOfRange,
)

JSON_VERSION = 1


class Poset:
    """Immutable finite poset. Use :func:`build` or the combinators below."""

    __slots__ = ("n", "up", "down", "_labels", "_covers", "_join", "_meet")

    def __init__(self, n: int, up: Sequence[int], labels=None):
        # `up` is trusted to be irreflexive and transitive; build() validates.
        self.n = n
        self.up = tuple(up)
        down = [0] * n
        for i in range(n):
            m = self.up[i]
            while m:
                low = m & -m
                down[low.bit_length() - 1] |= 1 << i
                m ^= low
        self.down = tuple(down)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ArityMismatch(f"expected {n} labels, got {len(labels)}")
        self._labels = labels
        self._covers = None
        self._join = None
        self._meet = None

    # -- basic queries -----------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return i == j or (self.up[i] >> j) & 1 == 1

    def lt(self, i: int, j: int) -> bool:
        return (self.up[i] >> j) & 1 == 1

    def incomparable(self, i: int, j: int) -> bool:
        return i != j and not self.lt(i, j) and not self.lt(j, i)

    def up_incl(self, i: int) -> int:
        return self.up[i] | (1 << i)

    def down_incl(self, i: int) -> int:
        return self.down[i] | (1 << i)

    @property
    def labels(self):
        if self._labels is not None:
            return self._labels
        return tuple(str(i) for i in range(self.n))

    def label(self, i: int) -> str:
        return self._labels[i] if self._labels is not None else str(i)

    def relabel(self, labels) -> "Poset":
        return Poset(self.n, self.up, labels)

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and self.up == other.up
            and self._labels == other._labels
        )

    def __hash__(self):
        return hash((self.n, self.up, self._labels))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={self.cover_pairs()})"

    # -- covers ------------------------------------------------------------

    def cover_pairs(self):
        """Hasse diagram as sorted (lower, upper) pairs (transitive reduction)."""
        if self._covers is None:
            covers = []
            for i in range(self.n):
                above = self.up[i]
                implied = 0
                m = above
                while m:
                    low = m & -m
                    implied |= self.up[low.bit_length() - 1]
                    m ^= low
                direct = above & ~implied
                while direct:
                    low = direct & -direct
                    covers.append((i, low.bit_length() - 1))
                    direct ^= low
            self._covers = tuple(sorted(covers))
        return self._covers

    # -- extremes, chains, antichains ---------------------------------------

    def minimals(self):
        return [i for i in range(self.n) if self.down[i] == 0]

    def maximals(self):
        return [i for i in range(self.n) if self.up[i] == 0]

    def bottom(self) -> Optional[int]:
        """The least element, or None."""
        mins = self.minimals()
        if len(mins) == 1 and self.up_incl(mins[0]) == (1 << self.n) - 1:
            return mins[0]
        return None

    def top(self) -> Optional[int]:
        maxs = self.maximals()
        if len(maxs) == 1 and self.down_incl(maxs[0]) == (1 << self.n) - 1:
            return maxs[0]
        return None

    def linear_extension(self):
        """Repeated removal of the smallest-index minimal element."""
        removed = 0
        out = []
        full = (1 << self.n) - 1
        while removed != full:
            for i in range(self.n):
                if not (removed >> i) & 1 and self.down[i] & ~removed == 0:
                    out.append(i)
                    removed |= 1 << i
                    break
        return out

    def height(self) -> int:
        """Number of elements in a longest chain."""
        best = [0] * self.n
        for i in reversed(self.linear_extension()):
            above = self.up[i]
            h = 0
            m = above
            while m:
                low = m & -m
                h = max(h, best[low.bit_length() - 1])
                m ^= low
            best[i] = h + 1
        return max(best, default=0)

    def width(self, limit: Optional[int] = None) -> int:
        """Largest antichain size by branch-and-bound over the ground set."""
        limit = _budget.resolve(limit, _budget.SEARCH_BUDGET)
        order = sorted(range(self.n), key=lambda i: bin(self.up[i] | self.down[i]).count("1"))
        comp = [self.up[i] | self.down[i] for i in range(self.n)]
        best = 0
        visited = 0

        def grow(idx: int, chosen: int, size: int):
            nonlocal best, visited
            visited += 1
            if visited > limit:
                raise BudgetExceeded("antichain search budget exhausted")
            best = max(best, size)
            if size + (self.n - idx) <= best:
                return
            for k in range(idx, self.n):
                e = order[k]
                if chosen & comp[e] == 0:
                    grow(k + 1, chosen | (1 << e), size + 1)

        grow(0, 0, 0)
        return best

    def basic_stats(self, width_budget: Optional[int] = None) -> dict:
        return {
            "minimals": self.minimals(),
            "maximals": self.maximals(),
            "height": self.height(),
            "width": self.width(width_budget),
            "linear_extension": self.linear_extension(),
        }

    # -- joins and meets -----------------------------------------------------

    def join_table(self):
        """n*n table of binary joins, or None where a pair has no join."""
        if self._join is None:
            self._join = self._bound_table(upward=True)
        return self._join

    def meet_table(self):
        if self._meet is None:
            self._meet = self._bound_table(upward=False)
        return self._meet

    def _bound_table(self, upward: bool):
        n = self.n
        incl = [(self.up[i] if upward else self.down[i]) | (1 << i) for i in range(n)]
        by_cone = {incl[i]: i for i in range(n)}
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            row = table[i]
            for j in range(i, n):
                common = incl[i] & incl[j]
                k = by_cone.get(common)
                row[j] = k
                table[j][i] = k
        return table

    def join(self, i: int, j: int) -> Optional[int]:
        return self.join_table()[i][j]

    def meet(self, i: int, j: int) -> Optional[int]:
        return self.meet_table()[i][j]


# -- constructors -----------------------------------------------------------


def build(n: int, kind: str, pairs: Iterable[tuple], labels=None) -> Poset:
    """Build a poset from cover pairs or from (not necessarily closed) leq pairs.

    Raises CyclicRelation when the pairs admit a directed cycle and
    IndexOutOfRange on indices outside 0..n-1.
    """
    if kind not in ("covers", "leq"):
        raise ValueError(f"kind must be 'covers' or 'leq', got {kind!r}")
    succ = [0] * n
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"pair ({a},{b}) outside 0..{n - 1}")
        if a == b:
            raise CyclicRelation(f"reflexive pair ({a},{a}) in strict relation")
        succ[a] |= 1 << b

    # Kahn topological order; leftovers mean a cycle.
    indeg = [0] * n
    for a in range(n):
        m = succ[a]
        while m:
            low = m & -m
            indeg[low.bit_length() - 1] += 1
            m ^= low
    stack = [i for i in range(n) if indeg[i] == 0]
    topo = []
    while stack:
        v = stack.pop()
        topo.append(v)
        m = succ[v]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
            m ^= low
    if len(topo) != n:
        raise CyclicRelation("relation contains a directed cycle")

    up = [0] * n
    for v in reversed(topo):
        m = succ[v]
        reach = m
        while m:
            low = m & -m
            reach |= up[low.bit_length() - 1]
            m ^= low
        up[v] = reach
    return Poset(n, up, labels)


def transitive_reduction(p: Poset):
    """The unique minimal cover set whose closure is the stored relation."""
    return p.cover_pairs()


def chain(n: int) -> Poset:
    return build(n, "covers", [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return build(n, "covers", [])


def dual(p: Poset) -> Poset:
    return Poset(p.n, p.down, p._labels)


def direct_product(a: Poset, b: Poset) -> Poset:
    """Product order on pairs; index encoding i_a * |b| + i_b."""
    n = a.n * b.n
    up = [0] * n
    for ia in range(a.n):
        a_up = a.up_incl(ia)
        for ib in range(b.n):
            i = ia * b.n + ib
            mask = 0
            m = a_up
            while m:
                low = m & -m
                ja = low.bit_length() - 1
                base = ja * b.n
                bm = b.up_incl(ib)
                while bm:
                    bl = bm & -bm
                    mask |= 1 << (base + bl.bit_length() - 1)
                    bm ^= bl
                m ^= low
            up[i] = mask & ~(1 << i)
    labels = [f"({a.label(ia)},{b.label(ib)})" for ia in range(a.n) for ib in range(b.n)]
    return Poset(n, up, labels)


def direct_sum(a: Poset, b: Poset) -> Poset:
    """Disjoint union with no cross comparabilities; b shifted by |a|."""
    n = a.n + b.n
    up = list(a.up) + [m << a.n for m in b.up]
    labels = [f"L{a.label(i)}" for i in range(a.n)] + [f"R{b.label(i)}" for i in range(b.n)]
    return Poset(n, up, labels)


def lexicographic_sum(index: Poset, parts: Sequence[Poset]) -> Poset:
    """Sum over an index poset: (i,x) <= (j,y) iff i < j or (i = j and x <= y)."""
    if len(parts) != index.n:
        raise ArityMismatch(f"index has {index.n} elements but {len(parts)} parts given")
    offsets = []
    total = 0
    for part in parts:
        offsets.append(total)
        total += part.n
    up = [0] * total
    labels = [""] * total
    part_mask = [((1 << parts[i].n) - 1) << offsets[i] for i in range(index.n)]
    for i in range(index.n):
        above_parts = 0
        m = index.up[i]
        while m:
            low = m & -m
            above_parts |= part_mask[low.bit_length() - 1]
            m ^= low
        for x in range(parts[i].n):
            g = offsets[i] + x
            up[g] = (parts[i].up[x] << offsets[i]) | above_parts
            labels[g] = f"({index.label(i)},{parts[i].label(x)})"
    return Poset(total, up, labels)


def add_bottom(p: Poset, label: str = "0") -> Poset:
    """New least element appended at index |p| below everything."""
    n = p.n
    up = list(p.up) + [(1 << n) - 1]
    labels = list(p.labels) + [label]
    return Poset(n + 1, up, labels)


def induced(p: Poset, elements: Sequence[int], labels=None) -> Poset:
    """Subposet on the given elements, in the given order."""
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    up = [0] * n
    for i, e in enumerate(elements):
        m = p.up[e]
        while m:
            low = m & -m
            j = pos.get(low.bit_length() - 1)
            if j is not None:
                up[i] |= 1 << j
            m ^= low
    if labels is None:
        labels = [p.label(e) for e in elements]
    return Poset(n, up, labels)


# -- isomorphism -------------------------------------------------------------


def _refine_colors(p: Poset):
    """Iterated colour refinement on (down-degree, up-degree) per colour class."""
    colors = [0] * p.n
    while True:
        sig = []
        for i in range(p.n):
            ups, downs = [], []
            m = p.up[i]
            while m:
                low = m & -m
                ups.append(colors[low.bit_length() - 1])
                m ^= low
            m = p.down[i]
            while m:
                low = m & -m
                downs.append(colors[low.bit_length() - 1])
                m ^= low
            sig.append((colors[i], tuple(sorted(ups)), tuple(sorted(downs))))
        remap = {s: c for c, s in enumerate(sorted(set(sig)))}
        new = [remap[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def is_isomorphic(a: Poset, b: Poset, node_budget: Optional[int] = None,
                  force: bool = False):
    """Order-isomorphism witness (list: a-index -> b-index) or None.

    Backtracking over colour-refined candidate classes; deterministic given
    inputs. Intended for desk scale; the node budget guards larger inputs
    unless force=True removes the cap.
    """
    if a.n != b.n:
        return None
    limit = None if force else _budget.resolve(node_budget, _budget.SEARCH_BUDGET)
    ca, cb = _refine_colors(a), _refine_colors(b)
    if sorted(ca) != sorted(cb):
        return None
    by_color_b = {}
    for j, c in enumerate(cb):
        by_color_b.setdefault(c, []).append(j)
    candidates = [by_color_b.get(ca[i], []) for i in range(a.n)]
    if any(not c for c in candidates):
        return None
    order = sorted(range(a.n), key=lambda i: (len(candidates[i]), i))

    mapping = [-1] * a.n
    used = 0
    visited = 0

    def assign(k: int) -> bool:
        nonlocal used, visited
        if k == a.n:
            return True
        i = order[k]
        for j in candidates[i]:
            visited += 1
            if limit is not None and visited > limit:
                raise BudgetExceeded("isomorphism search budget exhausted")
            if (used >> j) & 1:
                continue
            ok = True
            for k2 in range(k):
                i2 = order[k2]
                j2 = mapping[i2]
                if a.lt(i, i2) != b.lt(j, j2) or a.lt(i2, i) != b.lt(j2, j):
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used |= 1 << j
                if assign(k + 1):
                    return True
                used &= ~(1 << j)
                mapping[i] = -1
        return False

    if assign(0):
        return list(mapping)
    return None


# -- validation ---------------------------------------------------------------


def validate(p: Poset) -> None:
    """Assert the stored relation is a strict order (irreflexive, transitive)."""
    for i in range(p.n):
        if (p.up[i] >> i) & 1:
            raise CyclicRelation(f"element {i} above itself")
        m = p.up[i]
        while m:
            low = m & -m
            j = low.bit_length() - 1
            if p.up[j] & ~p.up[i]:
                raise CyclicRelation(f"transitivity fails at {i} < {j}")
            if (p.up[j] >> i) & 1:
                raise CyclicRelation(f"antisymmetry fails on {i}, {j}")
            m ^= low


# -- serialization -------------------------------------------------------------


def to_json_dict(p: Poset) -> dict:
    out = {
        "version": JSON_VERSION,
        "n": p.n,
        "relation": {"kind": "covers", "pairs": [list(c) for c in p.cover_pairs()]},
    }
    if p._labels is not None:
        out["labels"] = list(p._labels)
    return out


def from_json_dict(data: dict) -> Poset:
    if data.get("version") != JSON_VERSION:
        raise ValueError(f"unsupported poset format version {data.get('version')!r}")
    rel = data["relation"]
    return build(data["n"], rel["kind"], [tuple(p) for p in rel["pairs"]],
                 data.get("labels"))


def to_json(p: Poset) -> str:
    return json.dumps(to_json_dict(p), sort_keys=True)


def from_json(text: str) -> Poset:
    return from_json_dict(json.loads(text))


def to_dot(p: Poset) -> str:
    """Hasse diagram in DOT, ranked bottom-to-top, stable across runs."""
    lines = ["digraph poset {", "  rankdir=BT;"]
    for i in range(p.n):
        lines.append(f'  n{i} [label="{p.label(i)}"];')
    for a, b in p.cover_pairs():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
