"""Chart construction and the curvature pipeline."""

import random
from fractions import Fraction

import numpy as np
import pytest

from curvzoo.charts import (Chart, ChartError, Tensor, build_chart,
                            christoffel, covariant_derivative,
                            covariant_derivative_oneform, determinant,
                            exterior_derivative_oneform, generic_rank,
                            is_closed, nabla_riemann, oneform, rank_at_most,
                            ricci, ricci_square, riemann, scalar_curvature,
                            zeros)
from curvzoo.exprs import Context


def delta_entries(n):
    return [[str(int(i == j)) for j in range(n)] for i in range(n)]


@pytest.fixture(scope="module")
def flat4():
    return build_chart(["x1", "x2", "x3", "x4"], delta_entries(4), name="flat4")


@pytest.fixture(scope="module")
def conformal4():
    entries = [[("x1" if i == j else "0") for j in range(4)] for i in range(4)]
    return build_chart(["x1", "x2", "x3", "x4"], entries, name="conformal4")


@pytest.fixture(scope="module")
def godel():
    return build_chart(
        ["x1", "x2", "x3", "x4"],
        [["-a^2", "0", "0", "0"],
         ["0", "1/2*a^2*exp(2*x1)", "0", "a^2*exp(x1)"],
         ["0", "0", "-a^2", "0"],
         ["0", "a^2*exp(x1)", "0", "a^2"]],
        params=["a"], name="godel")


class TestBuildChart:
    def test_flat_inverse(self, flat4):
        assert flat4.det_g == flat4.ctx.one
        for i in range(4):
            for j in range(4):
                assert flat4.g_inv[i, j] == int(i == j)

    def test_diagonal_inverse(self, conformal4):
        ctx = conformal4.ctx
        assert conformal4.det_g == ctx.parse("x1^4")
        inv = ctx.parse("1/x1")
        for i in range(4):
            for j in range(4):
                assert conformal4.g_inv[i, j] == (inv if i == j else ctx.zero)

    def test_lorentzian_cross_terms_invertible(self, godel):
        assert not godel.det_g.is_zero
        # g_inv . g = identity, entrywise.
        n = godel.n
        for i in range(n):
            for j in range(n):
                acc = godel.ctx.zero
                for k in range(n):
                    acc = acc + godel.g_inv[i, k] * godel.g[k, j]
                assert acc == int(i == j)

    def test_asymmetric_rejected(self):
        entries = delta_entries(3)
        entries[0][1] = "x1"
        with pytest.raises(ChartError, match="not symmetric"):
            build_chart(["x1", "x2", "x3"], entries)

    def test_singular_rejected(self):
        entries = delta_entries(3)
        entries[2][2] = "0"
        with pytest.raises(ChartError, match="singular"):
            build_chart(["x1", "x2", "x3"], entries)

    def test_low_dimension_rejected(self):
        with pytest.raises(ChartError, match="at least 3"):
            build_chart(["x1", "x2"], delta_entries(2))


class TestChristoffel:
    def test_flat_vanishes(self, flat4):
        gamma = christoffel(flat4)
        assert all(e.is_zero for e in gamma.flat)

    def test_conformal_factor_values(self, conformal4):
        # Hand evaluation of the coordinate formula for g = x1 * delta.
        ctx = conformal4.ctx
        gamma = christoffel(conformal4)
        half_inv = ctx.parse("1/(2*x1)")
        assert gamma[0, 0, 0] == half_inv          # Gamma^1_11
        assert gamma[1, 0, 1] == half_inv          # Gamma^2_12
        assert gamma[0, 1, 1] == -half_inv         # Gamma^1_22

    def test_lower_index_symmetry(self, godel):
        gamma = christoffel(godel)
        n = godel.n
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    assert gamma[k, i, j] == gamma[k, j, i]


class TestCurvature:
    def test_flat_riemann_zero(self, flat4):
        assert riemann(flat4).is_zero()

    def test_known_scalar_curvatures(self, conformal4, godel):
        assert scalar_curvature(conformal4) == conformal4.ctx.parse(
            "-3/(2*x1^3)")
        # Scaling a metric by a^2 scales kappa by a^-2; the Godel chart's
        # kappa must be a nonzero multiple of 1/a^2.
        kappa = scalar_curvature(godel)
        assert not kappa.is_zero
        assert (kappa * godel.ctx.parse("a^2")).is_constant()

    def test_ricci_symmetric(self, conformal4, godel):
        for chart in (conformal4, godel):
            S = ricci(chart)
            for i in range(chart.n):
                for j in range(chart.n):
                    assert S[i, j] == S[j, i]

    def test_ricci_square_definition(self, godel):
        # S2(X,Y) = S(SX, Y) where g(SX, Y) = S(X,Y).
        S, S2 = ricci(godel), ricci_square(godel)
        n, ginv, ctx = godel.n, godel.g_inv, godel.ctx
        for i in range(n):
            for j in range(n):
                acc = ctx.zero
                for a in range(n):
                    for b in range(n):
                        acc = acc + S[i, a] * ginv[a, b] * S[b, j]
                assert acc == S2[i, j]

    def test_first_pair_skew(self, conformal4):
        R = riemann(conformal4)
        n = conformal4.n
        for idx in np.ndindex(R.array.shape):
            i, j, k, l = idx
            assert R[i, j, k, l] == -R[j, i, k, l]


class TestCovariantDerivative:
    def test_metric_compatibility(self, conformal4, godel):
        for chart in (conformal4, godel):
            assert covariant_derivative(chart, chart.metric_tensor()).is_zero()

    def test_flat_partial_derivative(self, flat4):
        # Z = exp(x1) * delta in a flat chart: nabla_i Z_jk = delta_i1 e^x1 d_jk.
        ctx = flat4.ctx
        e = ctx.parse("exp(x1)")
        arr = zeros(ctx, (4, 4))
        for i in range(4):
            arr[i, i] = e
        Z = Tensor(flat4, (0, 2), arr)
        nablaZ = covariant_derivative(flat4, Z)
        for x in range(4):
            for j in range(4):
                for k in range(4):
                    expected = e if (x == 0 and j == k) else ctx.zero
                    assert nablaZ[x, j, k] == expected

    def test_second_bianchi_for_riemann(self, conformal4):
        D = nabla_riemann(conformal4)
        n = conformal4.n
        for h in range(n):
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        for l in range(n):
                            acc = (D[h, i, j, k, l] + D[i, j, h, k, l]
                                   + D[j, h, i, k, l])
                            assert acc.is_zero


class TestExteriorDerivative:
    def test_constant_form_closed(self, flat4):
        alpha = oneform(flat4, ["-1/2", "0", "0", "0"])
        assert is_closed(flat4, alpha)

    def test_linear_form(self, flat4):
        from curvzoo.charts import DALPHA_COEFF
        alpha = oneform(flat4, ["0", "x1", "0", "0"])
        da = exterior_derivative_oneform(flat4, alpha)
        c = DALPHA_COEFF * flat4.ctx.one
        assert da[0, 1] == c
        assert da[1, 0] == -c
        assert sum(1 for e in da.array.flat if not e.is_zero) == 2

    def test_single_variable_form_closed(self):
        chart = build_chart(["x1", "x2", "x3", "x4"],
                            [["exp(x1)+1", "0", "0", "0"],
                             ["0", "exp(x1)", "0", "0"],
                             ["0", "0", "exp(x1)", "0"],
                             ["0", "0", "0", "exp(x1)"]])
        phi = oneform(chart, ["-exp(x1)/(2*(exp(x1)+1))", "0", "0", "0"])
        assert is_closed(chart, phi)

    def test_nabla_oneform(self, flat4):
        alpha = oneform(flat4, ["x2", "0", "0", "0"])
        grad = covariant_derivative_oneform(flat4, alpha)
        assert grad[1, 0] == flat4.ctx.one
        assert grad[0, 1] == flat4.ctx.zero


class TestRank:
    def test_flat_ricci_rank_zero(self, flat4):
        assert rank_at_most(ricci(flat4), 0)

    def test_godel_ricci_rank_one(self, godel):
        S = ricci(godel)
        assert rank_at_most(S, 1)
        assert not rank_at_most(S, 0)
        assert generic_rank(S) == 1

    def test_monotone_and_full(self, godel):
        S = ricci(godel)
        results = [rank_at_most(S, r) for r in range(godel.n + 1)]
        assert results[-1] is True
        assert results == sorted(results)  # monotone in r

    def test_metric_full_rank(self, conformal4):
        g = conformal4.metric_tensor()
        assert not rank_at_most(g, conformal4.n - 1)


class TestDeclaredSymmetries:
    def test_violations_raise(self, flat4):
        ctx = flat4.ctx
        arr = zeros(ctx, (4, 4))
        arr[0, 1] = ctx.one  # not symmetric
        with pytest.raises(ValueError, match="declared symmetry"):
            Tensor(flat4, (0, 2), arr, declared_symmetries=("sym:0,1",))
        arr[1, 0] = ctx.one
        Tensor(flat4, (0, 2), arr, declared_symmetries=("sym:0,1",))

    def test_skew_and_block(self, conformal4):
        R = riemann(conformal4)
        Tensor(conformal4, (0, 4), R.array,
               declared_symmetries=("skew:0,1", "skew:2,3", "block:0,1,2,3"))


class TestOracleReproduction:
    def test_pipeline_outputs_at_200_points(self, conformal4):
        # Reproduce curvature-pipeline identities under randomized rational
        # evaluation: pieces are evaluated separately and combined at the
        # point, so a canonicalization bug anywhere upstream would show up
        # as a disagreement.  200 samples, zero tolerance.
        from curvzoo.exprs import EvaluationError, evaluate_rational
        rng = random.Random(99)
        ctx = conformal4.ctx
        R = riemann(conformal4)
        S = ricci(conformal4)
        kappa = scalar_curvature(conformal4)
        checks = []
        # first Bianchi at a few component triples
        for idx in ((0, 1, 2, 3), (0, 1, 1, 0), (1, 2, 3, 1)):
            i, j, k, l = idx
            checks.append([R[i, j, k, l], R[j, k, i, l], R[k, i, j, l]])
        # trace of Ricci against the inverse metric reproduces kappa
        trace = [conformal4.g_inv[i, j] * S[i, j]
                 for i in range(4) for j in range(4)]
        checks.append(trace + [-kappa])
        # g . g_inv = identity on one off-diagonal entry
        checks.append([conformal4.g[0, k] * conformal4.g_inv[k, 1]
                       for k in range(4)])
        done = 0
        while done < 200:
            point = {a: Fraction(rng.randint(1, 10 ** 6),
                                 rng.randint(1, 10 ** 6))
                     for a in ctx.atoms}
            try:
                for parts in checks:
                    total = sum(evaluate_rational(p, point) for p in parts)
                    assert total == 0
            except EvaluationError:
                continue
            done += 1


class TestDeterminant:
    def test_random_vs_numeric(self):
        ctx = Context(["x1", "x2", "x3"])
        rng = random.Random(3)
        for _ in range(15):
            mat = zeros(ctx, (3, 3))
            ints = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            for i in range(3):
                for j in range(3):
                    mat[i, j] = ctx.integer(ints[i][j])
            expected = (ints[0][0] * (ints[1][1] * ints[2][2] - ints[1][2] * ints[2][1])
                        - ints[0][1] * (ints[1][0] * ints[2][2] - ints[1][2] * ints[2][0])
                        + ints[0][2] * (ints[1][0] * ints[2][1] - ints[1][1] * ints[2][0]))
            assert determinant(mat, ctx) == ctx.integer(expected)
