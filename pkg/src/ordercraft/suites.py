"""Randomized, oracle-checked property suites.

Oracles are deliberately separate code paths from the operations under test
(raw subset enumeration against search, identity checks against constructed
tables), so a suite passing means two independent routes agree.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from random import Random
from typing import Optional

from . import constructions as _constructions
from . import downsets as _downsets
from . import families as _families
from . import poset as _poset
from . import semilattice as _semilattice
from .errors import UnknownSuite
from .poset import Poset

SUITES = ("tm21", "irr_eq", "sum_prod", "ideal_principal", "lem2_3",
          "fvee", "thm8_pipe", "separating")


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    trials: int
    seed: int
    failures: tuple          # (trial index, counterexample bundle) pairs
    wall_time: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "failures": [{"trial": t, "bundle": b} for t, b in self.failures],
            "wall_time": round(self.wall_time, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# random generators

# when set to a list, every poset the suites generate is appended to it, so
# umbrella checks (ideals-are-principal over everything touched) can replay
POSET_LOG = None


def _log(p: Poset) -> Poset:
    if POSET_LOG is not None:
        POSET_LOG.append(p)
    return p


def random_poset(n: int, p: float, seed: int) -> Poset:
    """Random forward relation on 0..n-1 with edge density p, closed
    transitively; p=0 is the antichain, p=1 the chain."""
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    rng = Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return _log(_poset.build(n, "leq", pairs))


def random_join_semilattice(n: int, seed: int) -> Poset:
    """Union-closed family of downsets of a small random poset, containing
    the empty set, with at most n members; joins are unions so the result is
    a join-semilattice with a least element."""
    rng = Random(seed)
    base = random_poset(rng.randint(1, 5), rng.random(), rng.randrange(1 << 30))
    all_masks = [d.mask for d in _downsets.enumerate_downsets(base).sets]
    family = {0}
    candidates = [m for m in all_masks if m]
    rng.shuffle(candidates)
    for m in candidates:
        closure = set(family)
        frontier = [m]
        closure.add(m)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(closure):
                    if a | b not in closure:
                        closure.add(a | b)
                        nxt.append(a | b)
            frontier = nxt
        if len(closure) <= n:
            family = closure
        if len(family) == n:
            break
    masks = sorted(family, key=lambda m: (bin(m).count("1"), m))
    size = len(masks)
    up = [0] * size
    for i in range(size):
        for j in range(size):
            if i != j and masks[i] & ~masks[j] == 0:
                up[i] |= 1 << j
    labels = [format(m, "b") for m in masks]
    out = Poset(size, up, labels)
    _semilattice.require_join_table(out)
    assert out.bottom() is not None
    return _log(out)


# ---------------------------------------------------------------------------
# individual suites; each yields (ok, bundle) per trial


def _suite_tm21(rng: Random, max_n: int):
    n = rng.randint(2, max_n)
    seed = rng.randrange(1 << 30)
    p = random_join_semilattice(n, seed)
    k = rng.randint(1, 3)
    bundle = {"poset": _poset.to_json_dict(p), "k": k, "seed": seed}

    # oracle: raw enumeration of k-subsets with the full independence check
    from itertools import combinations
    oracle = any(_semilattice.is_independent(p, list(c))
                 for c in combinations(range(p.n), k))
    found = _semilattice.find_independent_set(p, k) is not None
    bk = _families.finite_powerset(k)
    order_emb = _semilattice.embedding_search(bk, p, "order") is not None
    join_emb = _semilattice.embedding_search(bk, p, "join") is not None
    ok = oracle == found == order_emb == join_emb
    bundle["results"] = {"oracle": oracle, "search": found,
                         "order": order_emb, "join": join_emb}
    return ok, bundle


def _suite_irr_eq(rng: Random, max_n: int):
    n = rng.randint(1, max_n)
    p_density = rng.random()
    seed = rng.randrange(1 << 30)
    q = random_poset(n, p_density, seed)
    bundle = {"poset": _poset.to_json_dict(q), "seed": seed}
    family = _downsets.enumerate_downsets(q)
    lattice = _downsets.family_poset(family)
    irr = _semilattice.join_irreducibles(lattice)
    pri = _semilattice.join_primes(lattice)
    principal_masks = {_downsets.principal(q, x).mask for x in range(q.n)}
    got = {family.sets[i].mask for i in irr}
    ok = irr == pri and got == principal_masks
    bundle["irr"] = irr
    bundle["primes"] = pri
    return ok, bundle


def _suite_sum_prod(rng: Random, max_n: int):
    na, nb = rng.randint(1, max_n), rng.randint(1, max_n)
    sa, sb = rng.randrange(1 << 30), rng.randrange(1 << 30)
    a = random_poset(na, rng.random(), sa)
    b = random_poset(nb, rng.random(), sb)
    bundle = {"a": _poset.to_json_dict(a), "b": _poset.to_json_dict(b)}
    la = _downsets.downset_lattice(a)
    lb = _downsets.downset_lattice(b)
    lsum = _downsets.downset_lattice(_log(_poset.direct_sum(a, b)))
    count_ok = lsum.n == la.n * lb.n
    witness = _poset.is_isomorphic(lsum, _poset.direct_product(la, lb))
    bundle["counts"] = [lsum.n, la.n, lb.n]
    return count_ok and witness is not None, bundle


def _suite_ideal_principal(rng: Random, max_n: int):
    n = rng.randint(1, max_n)
    seed = rng.randrange(1 << 30)
    q = random_poset(n, rng.random(), seed)
    bundle = {"poset": _poset.to_json_dict(q)}
    ideals = _downsets.enumerate_ideals(q)
    principal_masks = {_downsets.principal(q, x).mask for x in range(q.n)}
    ok = (len(ideals.sets) == q.n
          and {d.mask for d in ideals.sets} == principal_masks)
    bundle["ideal_count"] = len(ideals.sets)
    return ok, bundle


def _random_meet_semilattice(rng: Random, max_n: int) -> Poset:
    q = random_poset(rng.randint(1, max_n), rng.random(), rng.randrange(1 << 30))
    return _downsets.downset_lattice(q)


def _suite_lem2_3(rng: Random, max_n: int, inject_fault: bool = False):
    if inject_fault:
        # self-test of the reporting pipeline: a descending row violates the
        # order conditions, so asserting them must surface a failure bundle
        host = _poset.chain(4)
        row = [3, 2, 1]
    else:
        host = _random_meet_semilattice(rng, max_n)
        cols = rng.randint(3, 5)
        row = [rng.randrange(host.n) for _ in range(cols)]
    mt = host.meet_table()
    coords = _families.delta_coords(len(row) - 1)
    table = [row[i] if j == _families.OMEGA else mt[row[i]][row[j]]
             for (i, j) in coords]
    bundle = {"host": _poset.to_json_dict(host), "row": row}
    report = _semilattice.check_delta_map(host, table)
    ok = report.all_equivalent
    if inject_fault:
        ok = ok and report.conditions_hold
    elif report.conditions_hold:
        ok = ok and report.injective == (report.cond_a and report.cond_b)
    bundle["conditions"] = report.conditions
    return ok, bundle


def _suite_fvee(rng: Random, max_n: int):
    t = _random_meet_semilattice(rng, max_n)
    seeds = sorted(rng.sample(range(t.n), min(t.n, rng.randint(1, 3))))
    elements = _semilattice.subsemilattice_generated(t, seeds, "meet")
    sub = _poset.induced(t, elements)
    c = rng.randrange(t.n)
    mt = t.meet_table()
    table = tuple(mt[e][c] for e in elements)
    bundle = {"host": _poset.to_json_dict(t), "elements": elements, "cap": c}
    f = _semilattice.certify(sub, t, table, {"meet_preserving"})
    if "meet_preserving" not in f.certified:
        # x -> x ^ c preserves meets by associativity alone
        return False, bundle
    lift = _semilattice.f_vee(f)
    ok = lift.check_flag("lattice_hom")
    crit = "injective" in lift.certified
    ok = ok and crit == lift.check_flag("injective")
    bundle["lift_injective"] = crit
    return ok, bundle


def _suite_thm8_pipe(rng: Random, max_n: int):
    choice = rng.choice(["delta", "gamma", "powerset"])
    if choice == "powerset":
        k = rng.randint(4, 5)
        host = _families.finite_powerset(k)
    else:
        k = rng.randint(3, 4) + 1
        base = _families.generate(_families.FamilySpec(choice, {"n": k - 1}))
        host = _downsets.downset_lattice(base)
    bundle = {"family": choice, "k": k}
    cert = _constructions.thm8_pipeline(host, k)
    ok = _constructions.certificate_valid(cert)
    bundle["classification"] = cert.payload["classification"]
    return ok, bundle


def _suite_separating(rng: Random, max_n: int):
    n = rng.randint(3, max(3, min(max_n, 6)))
    host = _families.finite_powerset(n)
    members = []
    for k in range(n):
        allowed = 0
        for m in range(k, n):
            allowed |= 1 << m
        members.append(_downsets.DownSet(
            host, frozenset(x for x in range(1 << n) if x & ~allowed == 0)))
    chain = _constructions.ChainOfDownSets(host, tuple(members), decreasing=True)
    bundle = {"n": n}
    ok, _w = _constructions.is_separating(chain)
    if not ok:
        return False, bundle
    cert = _constructions.independent_from_separating(chain)
    size_ok = len(cert.payload["independent_set"]) == n - 1
    bundle["extracted"] = cert.payload["independent_set"]

    grid = _families.omega_star_grid(n)
    coords = _families.grid_coords(n)
    idx = {c: i for i, c in enumerate(coords)}
    gmembers = tuple(
        _downsets.DownSet(grid, frozenset(idx[(i, j)] for (i, j) in coords if i >= k))
        for k in range(n))
    gchain = _constructions.ChainOfDownSets(grid, gmembers, decreasing=True)
    gok, gw = _constructions.is_separating(gchain)
    return size_ok and _constructions.certificate_valid(cert) and not gok, bundle


_SUITE_FUNCS = {
    "tm21": (_suite_tm21, 10),
    "irr_eq": (_suite_irr_eq, 7),
    "sum_prod": (_suite_sum_prod, 5),
    "ideal_principal": (_suite_ideal_principal, 8),
    "lem2_3": (_suite_lem2_3, 4),
    "fvee": (_suite_fvee, 4),
    "thm8_pipe": (_suite_thm8_pipe, 5),
    "separating": (_suite_separating, 6),
}


def run_suite(name: str, trials: int, seed: int,
              max_n: Optional[int] = None,
              inject_fault: bool = False) -> SuiteReport:
    """Run one suite; deterministic given (name, trials, seed, max_n).

    inject_fault plants a known violation (lem2_3 only) so the failure
    reporting path can be exercised deliberately.
    """
    if name not in _SUITE_FUNCS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {SUITES}")
    func, default_n = _SUITE_FUNCS[name]
    if inject_fault and name != "lem2_3":
        raise UnknownSuite("fault injection is only defined for lem2_3")
    bound = max_n if max_n is not None else default_n
    failures = []
    started = time.monotonic()
    for trial in range(trials):
        rng = Random(seed * 1_000_003 + trial)
        if inject_fault:
            ok, bundle = func(rng, bound, inject_fault=True)
        else:
            ok, bundle = func(rng, bound)
        if not ok:
            bundle["trial_seed"] = [seed, trial]
            failures.append((trial, bundle))
    return SuiteReport(name, trials, seed, tuple(failures),
                       time.monotonic() - started)
