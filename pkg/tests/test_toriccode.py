import numpy as np
import pytest

from toric3 import toriccode as tc
from toric3.catalog import named_polytope
from toric3.geometry import convex_hull
from toric3.gfq import make_field


def random_code(rng, field, k, n):
    while True:
        G = rng.integers(0, field.q, size=(k, n)).astype(np.int64)
        basis = tc._row_reduce(field, list(G))
        if len(basis) == k:
            return tc.ToricCode(field=field, polytope=None, exponents=(),
                                matrix=G[basis], n=n, k=k, injective=True)


class TestGfLinearAlgebra:
    def test_row_reduce_detects_dependence(self):
        F = make_field(5)
        rows = [np.array([1, 2, 3], dtype=np.int64),
                np.array([2, 4, 1], dtype=np.int64),  # 2 * row 0 in GF(5)
                np.array([0, 1, 0], dtype=np.int64)]
        assert tc._row_reduce(F, rows) == [0, 2]

    def test_inverse(self, rng):
        for q in (4, 5, 9):
            F = make_field(q)
            for _ in range(10):
                M = rng.integers(0, q, size=(4, 4)).astype(np.int64)
                if len(tc._row_reduce(F, list(M))) < 4:
                    continue
                inv = tc._gf_inv(F, M)
                prod = tc._gf_matmul(F, inv, M)
                assert np.array_equal(prod, np.eye(4, dtype=np.int64))

    def test_singular_raises(self):
        F = make_field(5)
        with pytest.raises(ValueError):
            tc._gf_inv(F, np.zeros((2, 2), dtype=np.int64))


class TestWeightEngine:
    @pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
    def test_matches_scalar_field_ops(self, rng, q):
        F = make_field(q)
        G = rng.integers(0, q, size=(3, 11)).astype(np.int64)
        engine = tc._WeightEngine(F, G)
        msgs = rng.integers(0, q, size=(25, 3)).astype(np.int64)
        zeros = engine.zeros(msgs)
        for row in range(25):
            count = 0
            for j in range(11):
                acc = 0
                for i in range(3):
                    acc = F.add(acc, F.mul(int(msgs[row, i]), int(G[i, j])))
                count += acc == 0
            assert count == int(zeros[row])


class TestBuildCode:
    def test_p8_params(self):
        with pytest.warns(UserWarning):
            code = tc.build_code(named_polytope("P8"), 5)
        assert (code.n, code.k, code.injective) == (64, 8, True)

    def test_q8_params(self):
        with pytest.warns(UserWarning):
            code = tc.build_code(named_polytope("Q8"), 9)
        assert (code.n, code.k) == (512, 8)

    def test_single_point(self):
        code = tc.build_code(convex_hull([(1, 2, 3)]), 7)
        assert (code.n, code.k) == (216, 1)
        assert np.all(code.matrix != 0)  # monomials vanish nowhere

    def test_noninjective_collision(self):
        # x^0 and x^{q-1} agree on the torus, so the evaluation map drops rank
        q = 5
        seg = convex_hull([(0, 0, 0), (q - 1, 0, 0)])
        with pytest.warns(UserWarning):
            code = tc.build_code(seg, q)
        assert not code.injective
        assert code.k == q - 1 < len(code.exponents)

    def test_rows_are_monomial_evaluations(self):
        F = make_field(5)
        P = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        code = tc.build_code(P, 5)
        assert code.exponents == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))
        assert np.all(code.matrix[0] == 1)  # the constant monomial


class TestMinWeight:
    def test_repetition_code(self):
        code = tc.build_code(convex_hull([(2, 2, 2)]), 5)
        assert tc.min_weight_exhaustive(code) == 64
        assert tc.min_weight_bz(code) == 64

    def test_p8_q5(self):
        with pytest.warns(UserWarning):
            code = tc.build_code(named_polytope("P8"), 5)
        assert tc.min_weight_exhaustive(code) == 36
        assert tc.min_weight_bz(code) == 36

    def test_engines_agree_on_random_codes(self, rng):
        for q in (4, 5, 7):
            F = make_field(q)
            for _ in range(6):
                code = random_code(rng, F, k=int(rng.integers(2, 5)), n=18)
                assert tc.min_weight_exhaustive(code) == tc.min_weight_bz(code)

    def test_early_stop_is_an_upper_cut(self):
        with pytest.warns(UserWarning):
            code = tc.build_code(named_polytope("P8"), 5)
        assert tc.min_weight_exhaustive(code, early_stop=64) <= 64

    def test_budget_guard(self):
        P = convex_hull([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)])
        code = tc.build_code(P, 7)  # k = 20: sweep is out of budget
        assert tc.exhaustive_cost(7, code.k, code.n) > tc.BUDGET
        with pytest.raises(tc.BudgetExceeded, match="BZ"):
            tc.min_weight_exhaustive(code)

    def test_auto_engine_dispatch(self):
        with pytest.warns(UserWarning):
            code = tc.build_code(named_polytope("P8"), 5)
        assert tc.min_weight(code) == 36


class TestInformationSets:
    def test_disjoint_and_invertible(self, rng):
        F = make_field(5)
        code = random_code(rng, F, k=4, n=18)
        sets = tc._information_sets(F, code.matrix)
        fresh_cols = []
        for cols, delta in sets:
            assert len(cols) == 4
            assert len(tc._row_reduce(F, list(code.matrix[:, cols].T))) == 4
            fresh_cols.append(set(cols))
        # first set has no deficiency; all-fresh sets are pairwise disjoint
        assert sets[0][1] == 0
        full = [s for (s, (_, d)) in zip(fresh_cols, sets) if d == 0]
        for i in range(len(full)):
            for j in range(i + 1, len(full)):
                assert not (full[i] & full[j])


class TestMaxZeroCount:
    def test_ex72_q5(self):
        assert tc.max_zero_count(named_polytope("EX72"), 5) == 40

    def test_matches_definition(self, rng):
        P = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)])
        code = tc.build_code(P, 5)
        d = tc.min_weight(code)
        assert tc.max_zero_count(P, 5) == code.n - d


class TestParamsReport:
    def test_p8_q5(self):
        with pytest.warns(UserWarning):
            cp = tc.params_report(named_polytope("P8"), 5)
        assert (cp.n, cp.k, cp.d) == (64, 8, 36)
        assert cp.N_P == cp.n - cp.d
        assert cp.griesmer_d == 47 and cp.gv_d == 37
        assert cp.d <= cp.griesmer_d
        names = [r.name for r, _ in cp.bound_reports]
        assert "griesmer" in names and "simplex" in names

    def test_hypothesis_flags_suppress_claims(self):
        with pytest.warns(UserWarning):
            cp = tc.params_report(named_polytope("P8"), 5)
        for rep, holds in cp.bound_reports:
            unmet = any(met is False for _, met in rep.hypotheses)
            if unmet:
                assert holds is None

    def test_in_box_bounds_hold(self):
        P = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)])
        cp = tc.params_report(P, 7)
        for rep, holds in cp.bound_reports:
            if rep.name == "simplex":
                assert holds is True
