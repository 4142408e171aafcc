"""Generators for finite truncations of the named obstruction posets.

Every generator is deterministic: one spec, one poset, byte-identical JSON.
Truncations are prefix-of-enumeration windows and are not claimed to inherit
properties of the infinite objects they approximate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import poset as _poset
from .errors import UnsupportedOrdinal, UnsupportedParams
from .poset import Poset

OMEGA = "w"  # sentinel second coordinate, strictly above every integer

FAMILIES = (
    "finite_powerset",
    "omega_star_grid",
    "delta",
    "gamma",
    "v",
    "l_alpha",
    "m5",
    "omega_eta",
    "sierpinskisation",
    "lattice_sierp",
    "s_alpha",
)

SIERP_SCHEMES = ("column_alternating", "block", "seeded_shuffle")


@dataclass(frozen=True)
class OrdinalCNF:
    """Ordinal below omega^omega as coefficients [c0, c1, ..] of
    ck*w^k + .. + c1*w + c0; comparison is reverse-lexicographic."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if any(c < 0 for c in cs):
            raise UnsupportedOrdinal("negative CNF coefficient")
        if len(cs) > 1 and cs[-1] == 0:
            raise UnsupportedOrdinal("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def parse(cls, text) -> "OrdinalCNF":
        if isinstance(text, OrdinalCNF):
            return text
        if isinstance(text, int):
            return cls((text,))
        return cls(tuple(int(x) for x in str(text).split(",")))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_finite(self) -> bool:
        return len(self.coeffs) <= 1

    def times_omega(self) -> "OrdinalCNF":
        return OrdinalCNF((0,) + self.coeffs)

    def div_omega(self) -> "OrdinalCNF":
        """alpha' with self = w * alpha'; requires zero units digit."""
        if self.coeffs[0] != 0 or self.is_finite:
            raise UnsupportedOrdinal(f"{self} is not a multiple of w")
        return OrdinalCNF(self.coeffs[1:])

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}w" if c > 1 else "w")
            else:
                parts.append(f"{c}w^{k}" if c > 1 else f"w^{k}")
        return "+".join(parts)


def _cnf_key(coeffs):
    # reverse-lexicographic: compare from the highest power down
    return tuple(reversed(coeffs))


def ordinals_below(alpha: OrdinalCNF, count: int):
    """The first `count` ordinals below alpha in a fixed w-enumeration.

    Each returned ordinal is a coefficient tuple. The enumeration grows a
    coefficient cap, adding the finitely many new ordinals per cap in
    increasing ordinal order; any bijective listing works for the
    sierpinskisation schemes, this one is simply reproducible.
    """
    if alpha.is_zero:
        return []
    degree = len(alpha.coeffs)
    out = []
    seen = set()
    cap = 1
    while len(out) < count:
        batch = []
        for coeffs in _tuples_below(alpha.coeffs, degree, cap):
            if coeffs not in seen:
                batch.append(coeffs)
        batch.sort(key=_cnf_key)
        for c in batch:
            seen.add(c)
            out.append(c)
            if len(out) == count:
                break
        cap += 1
        if cap > count + max(alpha.coeffs) + 2:
            break  # alpha finite and exhausted
    return out


def _tuples_below(alpha_coeffs, degree, cap):
    def rec(pos, prefix):
        if pos < 0:
            coeffs = tuple(prefix[::-1])
            trimmed = list(coeffs)
            while len(trimmed) > 1 and trimmed[-1] == 0:
                trimmed.pop()
            if _cnf_key(tuple(trimmed) + (0,) * (degree - len(trimmed))) < _cnf_key(alpha_coeffs):
                yield tuple(trimmed)
            return
        for c in range(cap):
            yield from rec(pos - 1, prefix + [c])

    yield from rec(degree - 1, [])


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    with_bottom: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedParams(f"unknown family {self.family!r}")

    def to_json_dict(self) -> dict:
        return {"family": self.family, "params": dict(self.params),
                "with_bottom": self.with_bottom}

    @classmethod
    def from_json_dict(cls, data: dict) -> "FamilySpec":
        return cls(data["family"], dict(data.get("params", {})),
                   bool(data.get("with_bottom", False)))


# ---------------------------------------------------------------------------
# concrete generators


def finite_powerset(n: int) -> Poset:
    """B_n: subsets of an n-set in mask encoding, ordered by inclusion."""
    if n < 0:
        raise UnsupportedParams("n must be >= 0")
    size = 1 << n
    up = [0] * size
    for x in range(size):
        m = 0
        for y in range(size):
            if x != y and x & y == x:
                m |= 1 << y
        up[x] = m
    labels = ["{" + ",".join(str(i) for i in range(n) if (x >> i) & 1) + "}"
              for x in range(size)]
    return Poset(size, up, labels)


def powerset_mask_of(poset: Poset, i: int) -> int:
    """Inverse of finite_powerset indexing (identity by construction)."""
    return i


def omega_star_grid(n: int, with_bottom: bool = False) -> Poset:
    """Pairs (i,j), 0 <= i < j <= n, with (i,j) <= (i',j') iff i' <= i and
    j <= j'. A join-semilattice: (i,j) v (i',j') = (min i, max j)."""
    if n < 1:
        raise UnsupportedParams("n must be >= 1")
    coords = [(i, j) for i in range(n) for j in range(i + 1, n + 1)]
    coords.sort()
    idx = {c: k for k, c in enumerate(coords)}
    m = len(coords)
    up = [0] * m
    for (i, j) in coords:
        mask = 0
        for (a, b) in coords:
            if (a, b) != (i, j) and a <= i and j <= b:
                mask |= 1 << idx[(a, b)]
        up[idx[(i, j)]] = mask
    labels = [f"({i},{j})" for (i, j) in coords]
    p = Poset(m, up, labels)
    jt = p.join_table()
    for (i, j) in coords:
        for (a, b) in coords:
            assert jt[idx[(i, j)]][idx[(a, b)]] == idx[(min(i, a), max(j, b))]
    if with_bottom:
        p = _poset.add_bottom(p, "()")
    return p


def grid_coords(n: int):
    return sorted((i, j) for i in range(n) for j in range(i + 1, n + 1))


def delta_coords(n: int):
    """Canonical element order of delta(n): column-major, omega last."""
    coords = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            coords.append((i, j))
        coords.append((i, OMEGA))
    return coords


def delta_size(n: int) -> int:
    return n * (n + 1) // 2 + n + 1


def delta_params_from_size(size: int) -> int:
    n = 0
    while delta_size(n) < size:
        n += 1
    if delta_size(n) != size:
        raise UnsupportedParams(f"{size} is not a delta-family size")
    return n


def _delta_leq(a, b) -> bool:
    (i, j), (i2, j2) = a, b
    if j != OMEGA and j2 != OMEGA:
        return (j <= i2) or (i == i2 and j <= j2)
    if j == OMEGA:
        return i == i2 and j2 == OMEGA
    # j finite, j2 omega: j <= i2 or same column
    return j <= i2 or i == i2


def delta(n: int) -> Poset:
    """Columns of pairs (i,j), i<j<=n, plus column tops (i,w); the order is
    (i,j) <= (i',j') iff j <= i' or (i = i' and j <= j'), w above every int.
    A meet-semilattice with (i,w) ^ (j,w) = (i,j)."""
    if n < 1:
        raise UnsupportedParams("n must be >= 1")
    coords = delta_coords(n)
    return _poset_from_coords(coords)


def gamma(n: int) -> Poset:
    """The delta(n) elements with j = i+1 or j = w, induced order."""
    if n < 1:
        raise UnsupportedParams("n must be >= 1")
    coords = [c for c in delta_coords(n) if c[1] == OMEGA or c[1] == c[0] + 1]
    return _poset_from_coords(coords)


def gamma_coords(n: int):
    return [c for c in delta_coords(n) if c[1] == OMEGA or c[1] == c[0] + 1]


def _poset_from_coords(coords) -> Poset:
    idx = {c: k for k, c in enumerate(coords)}
    m = len(coords)
    up = [0] * m
    for a in coords:
        mask = 0
        for b in coords:
            if a != b and _delta_leq(a, b):
                mask |= 1 << idx[b]
        up[idx[a]] = mask
    labels = [f"({i},{j})" for (i, j) in coords]
    return Poset(m, up, labels)


def v_family(n: int) -> Poset:
    """n-element antichain with a least element added; bottom at index 0."""
    if n < 1:
        raise UnsupportedParams("n must be >= 1")
    up = [((1 << (n + 1)) - 1) & ~1] + [0] * n
    labels = ["{}"] + ["{%d}" % i for i in range(n)]
    return Poset(n + 1, up, labels)


def l_alpha(a: int) -> Poset:
    """Bounded lattice 1 + (1 (+) chain_a) + 1; a = 2 is the five-element
    non-modular pentagon."""
    if a < 1:
        raise UnsupportedParams("a must be >= 1")
    middle = _poset.direct_sum(_poset.chain(1), _poset.chain(a))
    out = _poset.lexicographic_sum(
        _poset.chain(3), [_poset.chain(1), middle, _poset.chain(1)])
    return out.relabel(["0", "a"] + [f"c{k}" for k in range(a)] + ["1"])


def omega_eta(n: int) -> Poset:
    """Dyadic grid {(m, i/2^m) : m <= n, 0 <= i < 2^m}, componentwise order."""
    if n < 0:
        raise UnsupportedParams("n must be >= 0")
    coords = [(m, i) for m in range(n + 1) for i in range(1 << m)]
    idx = {c: k for k, c in enumerate(coords)}
    size = len(coords)
    up = [0] * size
    for (m, i) in coords:
        x = Fraction(i, 1 << m)
        mask = 0
        for (m2, i2) in coords:
            if (m, i) != (m2, i2) and m <= m2 and x <= Fraction(i2, 1 << m2):
                mask |= 1 << idx[(m2, i2)]
        up[idx[(m, i)]] = mask
    labels = [f"({m},{i}/{1 << m})" for (m, i) in coords]
    return Poset(size, up, labels)


# ---------------------------------------------------------------------------
# sierpinskisations


def _sierp_sequence(alpha_prime: OrdinalCNF, n: int, scheme: str,
                    seed: Optional[int]):
    """phi as a list: element m -> (column ordinal coeffs, position in column).

    Positions are strictly increasing within one column along m, which is the
    monotonic condition.
    """
    if scheme not in SIERP_SCHEMES:
        raise UnsupportedParams(f"unknown scheme {scheme!r}")
    if alpha_prime.is_zero:
        raise UnsupportedOrdinal("alpha' must be nonzero")
    if alpha_prime.is_finite:
        c = alpha_prime.coeffs[0]
        cols = [(k,) for k in range(c)]
    else:
        cols = ordinals_below(alpha_prime, n)
    pos = {t: 0 for t in cols}
    seq = []
    if scheme == "column_alternating":
        if alpha_prime.is_finite:
            for m in range(n):
                col = cols[m % len(cols)]
                seq.append((col, pos[col]))
                pos[col] += 1
        else:
            # Cantor dovetail: diagonal d lists columns 0..d
            d, inner = 0, 0
            while len(seq) < n:
                col = cols[inner]
                seq.append((col, pos[col]))
                pos[col] += 1
                inner += 1
                if inner > d:
                    d, inner = d + 1, 0
    elif scheme == "block":
        b = 1
        while len(seq) < n:
            for col in cols[:min(b, len(cols))]:
                if len(seq) == n:
                    break
                seq.append((col, pos[col]))
                pos[col] += 1
            b += 1
    else:  # seeded_shuffle
        rng = random.Random(0 if seed is None else seed)
        for _ in range(n):
            col = cols[rng.randrange(len(cols))]
            seq.append((col, pos[col]))
            pos[col] += 1
    return seq


def sierpinskisation(alpha, n: int, scheme: str = "column_alternating",
                     seed: Optional[int] = None) -> Poset:
    """Poset on 0..n-1 whose order is the intersection of the natural order
    with the order of type alpha = w*alpha' pulled back through a fixed
    enumeration; labels record each element's (position, column) image.
    """
    alpha = OrdinalCNF.parse(alpha)
    alpha_prime = alpha.div_omega()
    if n < 1:
        raise UnsupportedParams("n must be >= 1")
    seq = _sierp_sequence(alpha_prime, n, scheme, seed)

    def alpha_key(m):
        col, position = seq[m]
        return (_cnf_key(col), position)

    up = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if alpha_key(x) < alpha_key(y):
                up[x] |= 1 << y
    labels = [f"({p},{OrdinalCNF(c) if len(c) > 1 else c[0]})" for (c, p) in seq]
    p = Poset(n, up, labels)
    # monotonic condition: positions increase with the natural order per column
    per_col = {}
    for m, (col, position) in enumerate(seq):
        assert per_col.get(col, -1) < position
        per_col[col] = position
    # order equals the intersection of the two recorded linear orders
    for x in range(n):
        for y in range(n):
            if x != y:
                assert p.lt(x, y) == (x < y and alpha_key(x) < alpha_key(y))
    return p


def sierpinskisation_orders(alpha, n: int, scheme: str = "column_alternating",
                            seed: Optional[int] = None):
    """The two linear orders behind sierpinskisation: (natural ranks,
    alpha-order ranks), each a permutation position list."""
    alpha_prime = OrdinalCNF.parse(alpha).div_omega()
    seq = _sierp_sequence(alpha_prime, n, scheme, seed)
    keys = [(_cnf_key(c), p) for (c, p) in seq]
    ranked = sorted(range(n), key=lambda m: keys[m])
    alpha_rank = [0] * n
    for r, m in enumerate(ranked):
        alpha_rank[m] = r
    return list(range(n)), alpha_rank


def sierp_to_grid(alpha, n: int, scheme: str = "column_alternating",
                  seed: Optional[int] = None):
    """Grid form of a monotonic sierpinskisation: element m -> (r(m), col(m)),
    where r(m) indexes the maximal runs on which the column coordinate is
    strictly increasing (each r-fiber is the largest initial segment of the
    leftovers with that property). The image, under the product order, is
    order-isomorphic to the sierpinskisation.
    """
    alpha_prime = OrdinalCNF.parse(alpha).div_omega()
    seq = _sierp_sequence(alpha_prime, n, scheme, seed)
    col_key = [_cnf_key(c) for (c, _p) in seq]
    r = [None] * n
    level = 0
    remaining = list(range(n))
    while remaining:
        run = [remaining[0]]
        for m in remaining[1:]:
            if col_key[m] > col_key[run[-1]]:
                run.append(m)
        for m in run:
            r[m] = level
        remaining = [m for m in remaining if r[m] is None]
        level += 1
    return [(r[m], col_key[m]) for m in range(n)]


def lattice_sierp(alpha_prime, n: int) -> Poset:
    """Join-closed window of a lattice sierpinskisation: vertical lines are
    non-empty and finite, horizontal lines cofinite in the window. Finite
    alpha' gives the full grid chain_n x chain_m; infinite alpha' gives the
    staircase over the canonical enumeration (the omega case is the set of
    pairs (i,j), j <= i < n)."""
    alpha_prime = OrdinalCNF.parse(alpha_prime)
    if alpha_prime.is_zero:
        raise UnsupportedOrdinal("alpha' must be nonzero")
    if n < 1:
        raise UnsupportedParams("n must be >= 1")
    if alpha_prime.is_finite:
        m = alpha_prime.coeffs[0]
        cells = [(i, (a,)) for i in range(n) for a in range(m)]
    else:
        cols = ordinals_below(alpha_prime, n)
        cells = [(i, cols[j]) for i in range(n) for j in range(len(cols)) if j <= i]
    order = sorted(cells, key=lambda c: (c[0], _cnf_key(c[1])))
    idx = {c: k for k, c in enumerate(order)}
    size = len(order)
    up = [0] * size
    for (i, a) in order:
        mask = 0
        for (i2, a2) in order:
            if (i, a) != (i2, a2) and i <= i2 and _cnf_key(a) <= _cnf_key(a2):
                mask |= 1 << idx[(i2, a2)]
        up[idx[(i, a)]] = mask
    labels = [f"({i},{OrdinalCNF(a) if len(a) > 1 else a[0]})" for (i, a) in order]
    p = Poset(size, up, labels)
    # join closure within the window, with joins matching the product order
    jt = p.join_table()
    for (i, a) in order:
        for (i2, a2) in order:
            want = (max(i, i2), max(a, a2, key=_cnf_key))
            assert jt[idx[(i, a)]][idx[(i2, a2)]] == idx[want]
    # line invariants
    verticals = {}
    horizontals = {}
    for (i, a) in order:
        verticals.setdefault(i, []).append(a)
        horizontals.setdefault(a, []).append(i)
    assert all(v for v in verticals.values())
    column_count = len({i for (i, _a) in order})
    for a, line in horizontals.items():
        first = min(line)
        assert len(line) == column_count - first  # cofinite in the window
    return p


def s_alpha(alpha_prime, n_tail: int, trunc: int,
            scheme: str = "column_alternating", seed: Optional[int] = None) -> Poset:
    """Direct sum of a monotonic sierpinskisation of w*alpha' with a finite
    chain tail."""
    if n_tail < 0:
        raise UnsupportedParams("n_tail must be >= 0")
    core = sierpinskisation(OrdinalCNF.parse(alpha_prime).times_omega(),
                            trunc, scheme, seed)
    if n_tail == 0:
        return core
    return _poset.direct_sum(core, _poset.chain(n_tail))


# ---------------------------------------------------------------------------
# dispatch


def generate(spec: FamilySpec) -> Poset:
    p = dict(spec.params)

    def take(name, default=None, required=False):
        if required and name not in p:
            raise UnsupportedParams(f"{spec.family} needs parameter {name!r}")
        return p.pop(name, default)

    fam = spec.family
    if fam == "finite_powerset":
        out = finite_powerset(int(take("n", required=True)))
    elif fam == "omega_star_grid":
        out = omega_star_grid(int(take("n", required=True)), spec.with_bottom)
        _reject_leftovers(fam, p)
        return out
    elif fam == "delta":
        out = delta(int(take("n", required=True)))
    elif fam == "gamma":
        out = gamma(int(take("n", required=True)))
    elif fam == "v":
        out = v_family(int(take("n", required=True)))
    elif fam == "l_alpha":
        out = l_alpha(int(take("a", required=True)))
    elif fam == "m5":
        out = l_alpha(2)
    elif fam == "omega_eta":
        out = omega_eta(int(take("n", required=True)))
    elif fam == "sierpinskisation":
        out = sierpinskisation(take("alpha", required=True),
                               int(take("n", required=True)),
                               take("scheme", "column_alternating"),
                               take("seed"))
    elif fam == "lattice_sierp":
        out = lattice_sierp(take("alpha", required=True),
                            int(take("n", required=True)))
    elif fam == "s_alpha":
        out = s_alpha(take("alpha", required=True),
                      int(take("tail", 0)),
                      int(take("trunc", required=True)),
                      take("scheme", "column_alternating"),
                      take("seed"))
    else:  # pragma: no cover - FamilySpec validates the name
        raise UnsupportedParams(fam)
    _reject_leftovers(fam, p)
    if spec.with_bottom:
        out = _poset.add_bottom(out, "()")
    return out


def _reject_leftovers(fam, leftovers):
    if leftovers:
        raise UnsupportedParams(f"{fam} got unknown parameters {sorted(leftovers)}")
