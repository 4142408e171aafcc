"""Structure detection, irreducibles, independence, embeddings, and the
certified-map machinery."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ordercraft import downsets as D
from ordercraft import families as F
from ordercraft import poset as P
from ordercraft import semilattice as S
from ordercraft.errors import (
    BaseHypothesisViolated,
    NoLeastElement,
    NotDistributive,
    NotIndependent,
    NotJoinSemilattice,
    StructureMismatch,
)

from test_poset import random_posets


def pentagon():
    return F.l_alpha(2)


class TestStructureReport:
    def test_powerset(self):
        rep = S.structure_report(F.finite_powerset(3))
        assert rep.is_lattice and rep.is_distributive and rep.is_modular

    def test_pentagon_not_modular(self):
        rep = S.structure_report(pentagon())
        assert rep.is_lattice
        assert rep.is_modular is False
        assert rep.is_distributive is False

    def test_antichain_neither(self):
        rep = S.structure_report(P.antichain(2))
        assert not rep.is_join_semilattice
        assert not rep.is_meet_semilattice
        assert rep.join_table is None and rep.meet_table is None

    def test_diamond_modular(self):
        diamond = P.direct_product(P.chain(2), P.chain(2))
        rep = S.structure_report(diamond)
        assert rep.is_modular and rep.is_distributive

    def test_m3_modular_not_distributive(self):
        # three incomparable middles between bottom and top
        m3 = P.build(5, "covers",
                     [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
        rep = S.structure_report(m3)
        assert rep.is_lattice and rep.is_modular and not rep.is_distributive

    @given(random_posets(max_n=6))
    def test_modularity_matches_triple_law_oracle(self, p):
        rep = S.structure_report(p)
        if not rep.is_lattice:
            return
        jt, mt = rep.join_table, rep.meet_table
        oracle = all(
            jt[x][mt[y][z]] == mt[jt[x][y]][z]
            for x in range(p.n) for y in range(p.n) for z in range(p.n)
            if p.leq(x, z))
        assert rep.is_modular == oracle


class TestIrreducibles:
    def test_powerset_atoms(self):
        b3 = F.finite_powerset(3)
        assert S.join_irreducibles(b3) == [1, 2, 4]
        assert S.join_primes(b3) == [1, 2, 4]

    def test_pentagon_primes_differ(self):
        p = pentagon()
        # oracle: direct check of both definitions over all elements
        bot = p.bottom()
        irr = [x for x in range(p.n) if x != bot and not any(
            p.join(a, b) == x
            for a in range(p.n) for b in range(p.n)
            if p.lt(a, x) and p.lt(b, x))]
        pri = [x for x in range(p.n) if x != bot and all(
            p.leq(x, a) or p.leq(x, b)
            for a in range(p.n) for b in range(p.n)
            if p.leq(x, p.join(a, b)))]
        assert S.join_irreducibles(p) == irr and len(irr) == 3
        assert S.join_primes(p) == pri and len(pri) == 2
        assert set(pri) < set(irr)

    def test_requires_least_element(self):
        grid = F.omega_star_grid(3)
        with pytest.raises(NoLeastElement):
            S.join_irreducibles(grid)

    def test_requires_join_semilattice(self):
        with pytest.raises(NotJoinSemilattice):
            S.join_irreducibles(P.antichain(2))

    @given(random_posets(max_n=6))
    def test_primes_subset_irreducibles_and_downset_lattice_equality(self, p):
        lat = D.downset_lattice(p)
        irr = S.join_irreducibles(lat)
        pri = S.join_primes(lat)
        assert set(pri) <= set(irr)
        assert pri == irr  # distributive case: equality
        fam = D.enumerate_downsets(p)
        principal = {D.principal(p, x).mask for x in range(p.n)}
        assert {fam.sets[i].mask for i in irr} == principal


class TestIndependence:
    def test_powerset_atoms_independent(self):
        b4 = F.finite_powerset(4)
        assert S.find_independent_set(b4, 4) == [1, 2, 4, 8]

    def test_chain_has_no_pair(self):
        assert S.find_independent_set(P.chain(5), 2) is None

    def test_delta_columns(self):
        lat = D.downset_lattice(F.delta(2))
        got = S.find_independent_set(lat, 3)
        coords = F.delta_coords(2)
        idx = {c: i for i, c in enumerate(coords)}
        expected = {D.principal(F.delta(2), idx[(i, F.OMEGA)]).members
                    for i in range(3)}
        fam = D.enumerate_downsets(F.delta(2))
        assert {fam.sets[g].members for g in got} == expected

    @settings(max_examples=30)
    @given(random_posets(max_n=5), st.integers(min_value=1, max_value=3))
    def test_search_agrees_with_subset_oracle(self, p, k):
        lat = D.downset_lattice(p)
        oracle = any(S.is_independent(lat, list(c))
                     for c in itertools.combinations(range(lat.n), k))
        assert (S.find_independent_set(lat, k) is not None) == oracle

    def test_budget(self):
        from ordercraft.errors import BudgetExceeded
        with pytest.raises(BudgetExceeded):
            S.find_independent_set(F.finite_powerset(6), 6, node_budget=3)
        with pytest.raises(BudgetExceeded):
            S.embedding_search(F.finite_powerset(3), F.finite_powerset(4),
                               "order", node_budget=3)


class TestEmbeddingSearch:
    def test_b2_join_embeds_in_b3(self):
        w = S.embedding_search(F.finite_powerset(2), F.finite_powerset(3), "join")
        assert w is not None and "join_preserving" in w.certified

    def test_pentagon_no_sublattice_of_b3(self):
        b3 = F.finite_powerset(3)
        pent = pentagon()

        # oracle: brute force over injections on 5 of 8 elements
        def brute():
            for combo in itertools.permutations(range(8), 5):
                f = list(combo)
                if all(pent.leq(i, j) == b3.leq(f[i], f[j])
                       for i in range(5) for j in range(5)) and all(
                        f[pent.join(i, j)] == b3.join(f[i], f[j]) and
                        f[pent.meet(i, j)] == b3.meet(f[i], f[j])
                        for i in range(5) for j in range(5)):
                    return True
            return False

        assert not brute()
        assert S.embedding_search(pent, b3, "sublattice") is None

    def test_pentagon_order_embeds_in_b3(self):
        assert S.embedding_search(pentagon(), F.finite_powerset(3), "order") is not None

    def test_mode_validation(self):
        with pytest.raises(StructureMismatch):
            S.embedding_search(P.antichain(2), F.finite_powerset(2), "join")

    def test_deterministic_first_witness(self):
        a = S.embedding_search(P.chain(2), F.finite_powerset(2), "order")
        b = S.embedding_search(P.chain(2), F.finite_powerset(2), "order")
        assert a.table == b.table

    @settings(max_examples=25)
    @given(random_posets(max_n=5), st.integers(min_value=1, max_value=3))
    def test_tm21_three_way_equivalence(self, p, k):
        lat = D.downset_lattice(p)
        if lat.n < 2:
            # degenerate host: a singleton is vacuously independent while the
            # two-element chain cannot inject into one element
            return
        bk = F.finite_powerset(k)
        oracle = any(S.is_independent(lat, list(c))
                     for c in itertools.combinations(range(lat.n), k))
        order_found = S.embedding_search(bk, lat, "order") is not None
        join_found = S.embedding_search(bk, lat, "join") is not None
        assert oracle == order_found == join_found


class TestGenerated:
    def test_powerset_closure_of_atoms(self):
        b3 = F.finite_powerset(3)
        assert S.subsemilattice_generated(b3, [1, 2, 4], "both") == list(range(8))
        assert S.subsemilattice_generated(b3, [1, 2, 4], "join") == [
            1, 2, 3, 4, 5, 6, 7]

    def test_empty_seed(self):
        assert S.subsemilattice_generated(F.finite_powerset(2), [], "both") == []

    def test_chain_is_closed(self):
        assert S.subsemilattice_generated(P.chain(4), [1, 3], "both") == [1, 3]


class TestMapWitness:
    def test_flags_reverified_on_construction(self):
        c2 = P.chain(2)
        with pytest.raises(ValueError):
            S.MapWitness(c2, c2, (1, 0), frozenset({"order_preserving"}))

    def test_self_audit(self):
        w = S.embedding_search(F.finite_powerset(2), F.finite_powerset(3), "join")
        assert w.verify_all()

    def test_json_round_trip(self):
        w = S.embedding_search(P.chain(2), F.finite_powerset(2), "order")
        again = S.MapWitness.from_json_dict(w.to_json_dict())
        assert again.table == w.table and again.certified == w.certified

    def test_zero_preserving_flag(self):
        b2 = F.finite_powerset(2)
        keeps = S.certify(P.chain(2), b2, (0, 1), {"zero_preserving"})
        moves = S.certify(P.chain(2), b2, (1, 3), {"zero_preserving"})
        assert "zero_preserving" in keeps.certified
        assert "zero_preserving" not in moves.certified


class TestWitnessSelfAudit:
    def test_every_witness_path_reverifies(self):
        # one witness through each public construction path; every certified
        # flag must re-verify from the table alone
        witnesses = []
        b2, b3 = F.finite_powerset(2), F.finite_powerset(3)
        for mode in ("order", "join", "meet", "sublattice"):
            witnesses.append(S.embedding_search(b2, b3, mode))
        base = F.delta(2)
        lat = D.downset_lattice(base)
        witnesses.append(D.representation_map(base, D.enumerate_ideals(base)))
        gens = S.find_independent_set(lat, 3)
        phi = S.phi_quotient(lat, gens)
        witnesses.append(phi)
        sub = S.subsemilattice_generated(lat, gens, "both")
        f = S.delta_from_hom(lat, phi, sub)
        witnesses.append(f)
        fam = D.enumerate_downsets(base)
        index = {d.mask: i for i, d in enumerate(fam.sets)}
        table = tuple(index[D.principal(base, x).mask] for x in range(base.n))
        inj = S.certify(base, lat, table, {"meet_preserving"})
        witnesses.append(inj)
        witnesses.append(S.f_vee(inj))
        for w in witnesses:
            assert w is not None and w.verify_all(), w.certified


class TestPhiQuotient:
    def test_powerset_identity(self):
        b3 = F.finite_powerset(3)
        w = S.phi_quotient(b3, [1, 2, 4])
        assert w.source.n == 8 and w.check_flag("surjective")
        assert P.is_isomorphic(w.source, b3) is not None
        # the quotient of the full powerset by its atoms is an isomorphism
        assert w.check_flag("injective")

    def test_delta_columns_onto_b3(self):
        lat = D.downset_lattice(F.delta(2))
        gens = S.find_independent_set(lat, 3)
        w = S.phi_quotient(lat, gens)
        assert w.target.n == 8
        assert w.check_flag("lattice_hom") and w.check_flag("surjective")

    def test_gamma_columns_onto_b4(self):
        lat = D.downset_lattice(F.gamma(3))
        gens = S.find_independent_set(lat, 4)
        w = S.phi_quotient(lat, gens)
        assert w.target.n == 16 and w.check_flag("surjective")

    def test_rejects_dependent_set(self):
        b3 = F.finite_powerset(3)
        with pytest.raises(NotIndependent):
            S.phi_quotient(b3, [1, 2, 3])

    def test_rejects_non_distributive(self):
        with pytest.raises(NotDistributive):
            S.phi_quotient(pentagon(), [1, 2])


class TestCheckDeltaMap:
    def _principal_table(self, n):
        host = D.downset_lattice(F.delta(n))
        base = F.delta(n)
        fam = D.enumerate_downsets(base)
        index = {d.mask: i for i, d in enumerate(fam.sets)}
        coords = F.delta_coords(n)
        cidx = {c: i for i, c in enumerate(coords)}
        table = [index[D.principal(base, cidx[c]).mask] for c in coords]
        return host, table

    def test_principal_map_all_conditions(self):
        host, table = self._principal_table(3)
        rep = S.check_delta_map(host, table)
        assert rep.conditions_hold and rep.all_equivalent
        assert rep.injective and rep.cond_a and rep.cond_b

    def test_constant_map(self):
        host = D.downset_lattice(F.delta(2))
        rep = S.check_delta_map(host, [3] * 6)
        assert rep.conditions_hold and rep.all_equivalent
        assert not rep.cond_a and not rep.cond_b and not rep.injective

    def test_violating_map_all_false_together(self):
        # descending row on a chain violates (iii); all conditions flip
        host = P.chain(4)
        row = [3, 2, 1]
        mt = host.meet_table()
        coords = F.delta_coords(2)
        table = [row[i] if j == F.OMEGA else mt[row[i]][row[j]]
                 for (i, j) in coords]
        rep = S.check_delta_map(host, table)
        assert rep.all_equivalent and not rep.conditions_hold

    def test_base_hypothesis_enforced(self):
        host = F.finite_powerset(2)
        coords = F.delta_coords(1)
        # rows map to the atoms but the pair entry is not their meet
        table = [([1, 2][i] if j == F.OMEGA else 3) for (i, j) in coords]
        with pytest.raises(BaseHypothesisViolated):
            S.check_delta_map(host, table)

    def test_truncation_collision_detected(self):
        # f(0,2) = f(0,w) has no finite witness triple; the w-extension of
        # conditions a/b must still flag it
        host = D.downset_lattice(P.build(
            3, "covers", [(0, 1), (0, 2)]))
        fam = D.enumerate_downsets(P.build(3, "covers", [(0, 1), (0, 2)]))
        by_members = {d.sorted_members(): i for i, d in enumerate(fam.sets)}
        row = [by_members[(0, 1)], by_members[(0, 2)], by_members[(0, 1, 2)]]
        mt = host.meet_table()
        coords = F.delta_coords(2)
        table = [row[i] if j == F.OMEGA else mt[row[i]][row[j]]
                 for (i, j) in coords]
        rep = S.check_delta_map(host, table)
        if rep.conditions_hold:
            assert rep.injective == (rep.cond_a and rep.cond_b)

    @settings(max_examples=40)
    @given(random_posets(max_n=4), st.integers(min_value=3, max_value=5),
           st.randoms(use_true_random=False))
    def test_equivalence_and_injectivity_biconditional(self, p, cols, rnd):
        host = D.downset_lattice(p)
        row = [rnd.randrange(host.n) for _ in range(cols)]
        mt = host.meet_table()
        coords = F.delta_coords(cols - 1)
        table = [row[i] if j == F.OMEGA else mt[row[i]][row[j]]
                 for (i, j) in coords]
        rep = S.check_delta_map(host, table)
        assert rep.all_equivalent
        if rep.conditions_hold:
            assert rep.injective == (rep.cond_a and rep.cond_b)


class TestFVee:
    def test_chain_into_powerset(self):
        c2 = P.chain(2)
        b2 = F.finite_powerset(2)
        f = S.certify(c2, b2, (0, 1), {"meet_preserving"})
        lift = S.f_vee(f)
        assert lift.check_flag("lattice_hom")
        assert "injective" in lift.certified

    def test_gamma_principal_lift_injective(self):
        base = F.gamma(2)
        lat = D.downset_lattice(base)
        fam = D.enumerate_downsets(base)
        index = {d.mask: i for i, d in enumerate(fam.sets)}
        table = tuple(index[D.principal(base, x).mask] for x in range(base.n))
        f = S.certify(base, lat, table, {"meet_preserving"})
        assert "meet_preserving" in f.certified
        lift = S.f_vee(f)
        assert "injective" in lift.certified and lift.check_flag("lattice_hom")

    def test_collapsing_map_criterion_matches_table(self):
        # collapse delta(1)'s two columns onto one chain: criterion 2 fails
        base = F.delta(1)
        host = P.chain(3)
        coords = F.delta_coords(1)
        mt = host.meet_table()
        row = [1, 2]
        table = [row[i] if j == F.OMEGA else mt[row[i]][row[j]]
                 for (i, j) in coords]
        f = S.certify(base, host, table, {"meet_preserving"})
        lift = S.f_vee(f)
        assert "injective" not in lift.certified
        assert not lift.check_flag("injective")

    def test_requires_meet_preserving(self):
        c2 = P.chain(2)
        b2 = F.finite_powerset(2)
        f = S.certify(c2, b2, (1, 2), set())
        with pytest.raises(S.NotMeetPreserving):
            S.f_vee(f)


class TestDeltaFromHom:
    def test_identity_on_powerset(self):
        b3 = F.finite_powerset(3)
        phi = S.MapWitness(b3, b3, tuple(range(8)),
                           frozenset({"lattice_hom", "surjective"}))
        f = S.delta_from_hom(b3, phi)
        assert "meet_preserving" in f.certified
        coords = F.delta_coords(2)
        row = [f.table[i] for i, c in enumerate(coords) if c[1] == F.OMEGA]
        assert row == [1, 2, 4]  # the atoms; accumulated b_k stay empty

    def test_from_phi_quotient_of_delta(self):
        lat = D.downset_lattice(F.delta(2))
        gens = S.find_independent_set(lat, 3)
        phi = S.phi_quotient(lat, gens)
        sub = S.subsemilattice_generated(lat, gens, "both")
        f = S.delta_from_hom(lat, phi, sub)
        assert "meet_preserving" in f.certified
        coords = F.delta_coords(2)
        row = [f.table[i] for i, c in enumerate(coords) if c[1] == F.OMEGA]
        back = {e: k for k, e in enumerate(sub)}
        for i, r in enumerate(row):
            assert phi.table[back[r]] == 1 << i

    def test_minimal_two_columns(self):
        b2 = F.finite_powerset(2)
        phi = S.MapWitness(b2, b2, tuple(range(4)),
                           frozenset({"lattice_hom", "surjective"}))
        f = S.delta_from_hom(b2, phi)
        assert S.check_delta_map(b2, list(f.table)).conditions_hold

    def test_rejects_non_surjective(self):
        b2 = F.finite_powerset(2)
        phi = S.certify(P.chain(2), b2, (0, 3), {"lattice_hom"})
        with pytest.raises(S.NotSurjective):
            S.delta_from_hom(b2, phi, [0, 3])
