"""Family generators: exact counts, orders, and determinism."""

import pytest
from hypothesis import given, settings, strategies as st

from ordercraft import downsets as D
from ordercraft import families as F
from ordercraft import poset as P
from ordercraft import semilattice as S
from ordercraft.errors import UnsupportedOrdinal, UnsupportedParams


class TestPowerset:
    def test_counts_and_order(self):
        b3 = F.finite_powerset(3)
        assert b3.n == 8
        assert all(b3.leq(x, y) == (x & y == x) for x in range(8) for y in range(8))

    def test_joins_are_unions(self):
        b3 = F.finite_powerset(3)
        jt = b3.join_table()
        assert all(jt[x][y] == x | y for x in range(8) for y in range(8))


class TestGrid:
    def test_size(self):
        assert F.omega_star_grid(8).n == 36

    def test_join_formula_exhaustive(self):
        grid = F.omega_star_grid(5)
        coords = F.grid_coords(5)
        idx = {c: k for k, c in enumerate(coords)}
        jt = grid.join_table()
        for (i, j) in coords:
            for (a, b) in coords:
                assert jt[idx[(i, j)]][idx[(a, b)]] == idx[(min(i, a), max(j, b))]

    def test_no_bottom_then_bottom(self):
        assert F.omega_star_grid(3).bottom() is None
        withbot = F.omega_star_grid(3, with_bottom=True)
        assert withbot.bottom() == withbot.n - 1

    def test_meets_partial(self):
        # (0,1) and (1,2) have no common lower bound in the grid
        grid = F.omega_star_grid(2)
        coords = F.grid_coords(2)
        idx = {c: k for k, c in enumerate(coords)}
        assert grid.meet(idx[(0, 1)], idx[(1, 2)]) is None


class TestDeltaGamma:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_delta_count(self, n):
        assert F.delta(n).n == n * (n + 1) // 2 + n + 1

    @pytest.mark.parametrize("n", range(1, 9))
    def test_gamma_count(self, n):
        assert F.gamma(n).n == 2 * n + 1

    def test_delta_width(self):
        assert F.delta(2).width() == 3

    @pytest.mark.parametrize("n", range(1, 7))
    def test_delta_meets(self, n):
        d = F.delta(n)
        coords = F.delta_coords(n)
        idx = {c: k for k, c in enumerate(coords)}
        mt = d.meet_table()
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                assert mt[idx[(i, F.OMEGA)]][idx[(j, F.OMEGA)]] == idx[(i, j)]
        rep = S.structure_report(d)
        assert rep.is_meet_semilattice

    @pytest.mark.parametrize("n", range(1, 7))
    def test_gamma_meets(self, n):
        g = F.gamma(n)
        coords = F.gamma_coords(n)
        idx = {c: k for k, c in enumerate(coords)}
        mt = g.meet_table()
        for i in range(n):
            for j in range(i + 1, n + 1):
                assert mt[idx[(i, F.OMEGA)]][idx[(j, F.OMEGA)]] == idx[(i, i + 1)]
        assert S.structure_report(g).is_meet_semilattice

    @pytest.mark.parametrize("family", [F.delta, F.gamma])
    def test_downset_lattice_distributive_with_independent_columns(self, family):
        base = family(3)
        lat = D.downset_lattice(base)
        assert S.structure_report(lat).is_distributive
        fam = D.enumerate_downsets(base)
        index = {d.mask: i for i, d in enumerate(fam.sets)}
        cols = [index[D.principal(base, x).mask]
                for x in range(base.n) if base.label(x).endswith(",w)")]
        assert len(cols) == 4
        assert S.is_independent(lat, cols)

    def test_delta_size_inverse(self):
        for n in range(1, 9):
            assert F.delta_params_from_size(F.delta(n).n) == n
        with pytest.raises(UnsupportedParams):
            F.delta_params_from_size(7)


class TestSmallFamilies:
    def test_v(self):
        v = F.v_family(4)
        assert v.n == 5
        assert v.bottom() == 0
        assert len(v.maximals()) == 4

    def test_l_alpha_pentagon(self):
        l2 = F.l_alpha(2)
        assert l2.n == 5
        rep = S.structure_report(l2)
        assert rep.is_lattice and rep.is_modular is False
        # at least one triple violates the modular law
        jt, mt = rep.join_table, rep.meet_table
        violations = [
            (x, y, z)
            for x in range(5) for y in range(5) for z in range(5)
            if l2.leq(x, z) and jt[x][mt[y][z]] != mt[jt[x][y]][z]]
        assert violations

    def test_m5_alias(self):
        m5 = F.generate(F.FamilySpec("m5"))
        assert P.is_isomorphic(m5, F.l_alpha(2)) is not None

    def test_omega_eta(self):
        oe = F.omega_eta(3)
        assert oe.n == 2 ** 4 - 1
        rep = S.structure_report(oe)
        assert rep.is_join_semilattice  # join-subsemilattice of omega x dyadics
        # (0, 0/1) is the least element
        assert oe.bottom() == 0


class TestOrdinalCNF:
    def test_parse_and_str(self):
        a = F.OrdinalCNF.parse("0,2")
        assert str(a) == "2w"
        assert a.div_omega().coeffs == (2,)

    def test_rejects_bad(self):
        with pytest.raises(UnsupportedOrdinal):
            F.OrdinalCNF((1, 0))
        with pytest.raises(UnsupportedOrdinal):
            F.OrdinalCNF.parse("3").div_omega()

    def test_enumeration_of_omega_is_identity(self):
        got = F.ordinals_below(F.OrdinalCNF.parse("0,1"), 5)
        assert got == [(0,), (1,), (2,), (3,), (4,)]

    def test_enumeration_below_omega2_alternates_blocks(self):
        got = F.ordinals_below(F.OrdinalCNF.parse("0,2"), 6)
        # every ordinal below w*2 is w*q + r with q < 2
        assert set(got) <= {(r, q) for r in range(6) for q in range(2)} | {(0,), (1,), (2,), (3,), (4,), (5,)}


class TestSierpinskisation:
    def test_omega2_column_alternating_matches_quoted_structure(self):
        s = F.sierpinskisation("0,2", 6)
        evens, odds = [0, 2, 4], [1, 3, 5]
        for a, b in zip(evens, evens[1:]):
            assert s.lt(a, b)
        for a, b in zip(odds, odds[1:]):
            assert s.lt(a, b)
        assert s.lt(0, 1) and s.lt(2, 3) and s.lt(4, 5)
        assert s.lt(0, 3) and s.lt(0, 5) and s.lt(2, 5)
        assert s.incomparable(1, 2)

    def test_omega_is_chain(self):
        s = F.sierpinskisation("0,1", 5)
        assert s.height() == 5

    @settings(max_examples=20)
    @given(st.sampled_from(["0,1", "0,2", "0,3", "0,0,1"]),
           st.integers(min_value=1, max_value=9),
           st.sampled_from(F.SIERP_SCHEMES))
    def test_order_is_intersection_of_recorded_orders(self, alpha, n, scheme):
        s = F.sierpinskisation(alpha, n, scheme, seed=7)
        nat, alpha_rank = F.sierpinskisation_orders(alpha, n, scheme, seed=7)
        for x in range(n):
            for y in range(n):
                if x != y:
                    expected = nat[x] < nat[y] and alpha_rank[x] < alpha_rank[y]
                    assert s.lt(x, y) == expected

    def test_seeded_shuffle_reproducible(self):
        a = F.sierpinskisation("0,2", 8, "seeded_shuffle", seed=5)
        b = F.sierpinskisation("0,2", 8, "seeded_shuffle", seed=5)
        assert a == b

    def test_grid_view_is_order_isomorphic(self):
        s = F.sierpinskisation("0,2", 8)
        cells = F.sierp_to_grid("0,2", 8)
        for x in range(8):
            for y in range(8):
                gx, gy = cells[x], cells[y]
                grid_leq = gx[0] <= gy[0] and gx[1] <= gy[1]
                assert s.leq(x, y) == grid_leq


class TestLatticeSierp:
    def test_finite_alpha_is_full_grid(self):
        ls = F.lattice_sierp("2", 4)
        assert P.is_isomorphic(
            ls, P.direct_product(P.chain(4), P.chain(2))) is not None

    def test_alpha_one_is_chain(self):
        ls = F.lattice_sierp("1", 5)
        assert ls.height() == 5 and ls.width() == 1

    def test_omega_window_is_staircase(self):
        ls = F.lattice_sierp("0,1", 5)
        cells = sorted((i, j) for j in range(5) for i in range(5) if j <= i)
        idx = {c: k for k, c in enumerate(sorted(cells))}
        assert ls.n == len(cells)
        jt = ls.join_table()
        for a in cells:
            for b in cells:
                want = (max(a[0], b[0]), max(a[1], b[1]))
                assert jt[idx[a]][idx[b]] == idx[want]

    def test_rejects_zero(self):
        with pytest.raises(UnsupportedOrdinal):
            F.lattice_sierp("0", 3)


class TestSAlpha:
    def test_direct_sum_shape(self):
        p = F.s_alpha("1", 3, 4)
        core = F.sierpinskisation("0,1", 4)
        assert p.n == core.n + 3
        assert P.is_isomorphic(
            p, P.direct_sum(core, P.chain(3))) is not None

    def test_no_tail(self):
        assert F.s_alpha("2", 0, 6) == F.sierpinskisation("0,2", 6)


class TestGenerateDispatch:
    CASES = [
        F.FamilySpec("finite_powerset", {"n": 3}),
        F.FamilySpec("omega_star_grid", {"n": 4}),
        F.FamilySpec("omega_star_grid", {"n": 4}, with_bottom=True),
        F.FamilySpec("delta", {"n": 3}),
        F.FamilySpec("gamma", {"n": 3}),
        F.FamilySpec("v", {"n": 3}),
        F.FamilySpec("l_alpha", {"a": 3}),
        F.FamilySpec("m5"),
        F.FamilySpec("omega_eta", {"n": 2}),
        F.FamilySpec("sierpinskisation", {"alpha": "0,2", "n": 6}),
        F.FamilySpec("lattice_sierp", {"alpha": "0,1", "n": 4}),
        F.FamilySpec("s_alpha", {"alpha": "1", "tail": 2, "trunc": 4}),
    ]

    @pytest.mark.parametrize("spec", CASES, ids=lambda s: s.family + str(s.params))
    def test_deterministic_json(self, spec):
        from ordercraft.poset import to_json
        assert to_json(F.generate(spec)) == to_json(F.generate(spec))

    def test_unknown_family(self):
        with pytest.raises(UnsupportedParams):
            F.FamilySpec("nonsense")

    def test_unknown_param(self):
        with pytest.raises(UnsupportedParams):
            F.generate(F.FamilySpec("delta", {"n": 3, "zap": 1}))

    def test_spec_json_round_trip(self):
        spec = F.FamilySpec("delta", {"n": 4})
        assert F.FamilySpec.from_json_dict(spec.to_json_dict()) == spec
