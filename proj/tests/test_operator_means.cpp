#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hhm/errors.hpp"
#include "hhm/operator_means.hpp"
#include "hhm/scalar_means.hpp"
#include "oracles.hpp"

using namespace hhm;

namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

Matrix diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return v.asDiagonal();
}

SpdMatrix spd(const Matrix& m) { return SpdMatrix::from(m); }

Matrix random_orthogonal(oracle::Gen& g, Eigen::Index n) {
    Matrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = g.uniform(-1, 1);
    Eigen::HouseholderQR<Matrix> qr(z);
    return qr.householderQ();
}

Matrix random_spd(oracle::Gen& g, Eigen::Index n, double cond) {
    const Matrix q = random_orthogonal(g, n);
    Eigen::VectorXd lam(n);
    for (Eigen::Index i = 0; i < n; ++i) lam(i) = g.log_uniform(1.0, cond);
    return symmetrize(q * lam.asDiagonal() * q.transpose());
}

MatrixL fn_l(const MatrixL& s, long double (*g)(long double, long double), long double p) {
    Eigen::SelfAdjointEigenSolver<MatrixL> es(s);
    MatrixL d = es.eigenvalues().unaryExpr([&](long double x) { return g(x, p); }).asDiagonal();
    return es.eigenvectors() * d * es.eigenvectors().transpose();
}

long double powl_(long double x, long double p) { return std::pow(x, p); }

// A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2} in long double.
Matrix geom_oracle(const Matrix& a, const Matrix& b, double v) {
    const MatrixL al = a.cast<long double>();
    const MatrixL bl = b.cast<long double>();
    const MatrixL h = fn_l(al, powl_, 0.5L);
    const MatrixL hi = fn_l(al, powl_, -0.5L);
    MatrixL inner = hi * bl * hi;
    inner = (inner + inner.transpose()) / 2;
    return (h * fn_l(inner, powl_, static_cast<long double>(v)) * h).cast<double>();
}

double max_abs_diff(const Matrix& x, const Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(SpdMatrix, Validation) {
    EXPECT_NO_THROW(SpdMatrix::from(diag({1, 2})));
    EXPECT_THROW(SpdMatrix::from(Matrix(2, 3)), DomainError);
    EXPECT_THROW(SpdMatrix::from(diag({1, 0})), DomainError);
    EXPECT_THROW(SpdMatrix::from(diag({1, -2})), DomainError);
    Matrix asym{{2, 1}, {0.5, 2}};
    EXPECT_THROW(SpdMatrix::from(asym), DomainError);
    Matrix nearly{{2, 1}, {1 + 1e-14, 2}};
    const SpdMatrix s = SpdMatrix::from(nearly);
    EXPECT_EQ(s.matrix()(0, 1), s.matrix()(1, 0));
    Matrix bad = diag({1, 1});
    bad(0, 0) = NAN;
    EXPECT_THROW(SpdMatrix::from(bad), DomainError);
    EXPECT_EQ(SpdMatrix::identity(4).dim(), 4);
}

TEST(FnCalculus, Examples) {
    EXPECT_EQ(fn_calculus(SpdMatrix::identity(3), [](double t) { return std::pow(t, 0.3); }),
              Matrix::Identity(3, 3));
    EXPECT_LT(max_abs_diff(fn_calculus(spd(diag({1, 4})), [](double t) { return std::sqrt(t); }), diag({1, 2})),
              1e-15);
    const Matrix lg = fn_calculus(spd(Matrix{{2, 1}, {1, 2}}), [](double t) { return std::log(t); });
    const double l3 = std::log(3.0);
    EXPECT_LT(max_abs_diff(lg, Matrix{{l3 / 2, l3 / 2}, {l3 / 2, l3 / 2}}), 1e-15);
    EXPECT_THROW(fn_calculus(spd(diag({1, 4})), [](double t) { return std::log(t - 2); }), NumericalBreakdown);
}

TEST(OpGeom, Examples) {
    const SpdMatrix a = spd(Matrix{{3, 1}, {1, 2}});
    EXPECT_LT(max_abs_diff(op_weighted_geom(a, a, Weight(0.3)).matrix(), a.matrix()), 1e-14);
    EXPECT_LT(max_abs_diff(op_weighted_geom(spd(diag({1, 4})), spd(diag({9, 1})), kHalf).matrix(), diag({3, 2})),
              1e-14);
    EXPECT_EQ(op_weighted_geom(a, spd(diag({9, 1})), Weight(0.0)).matrix(), a.matrix());
    EXPECT_EQ(op_weighted_geom(a, spd(diag({9, 1})), Weight(1.0)).matrix(), diag({9, 1}));
    EXPECT_THROW(op_weighted_geom(a, SpdMatrix::identity(3), kHalf), DimensionError);
}

TEST(OpGeom, MatchesExtendedPrecisionOracle) {
    oracle::Gen g(41);
    for (int i = 0; i < 20; ++i) {
        const Matrix a = random_spd(g, 3, 100);
        const Matrix b = random_spd(g, 3, 100);
        const Matrix got = op_weighted_geom(spd(a), spd(b), Weight(1.0 / 3.0)).matrix();
        const Matrix want = geom_oracle(a, b, 1.0 / 3.0);
        EXPECT_LT(max_abs_diff(got, want), 1e-12 * want.norm());
    }
}

TEST(OpArith, Examples) {
    const SpdMatrix a = spd(Matrix{{3, 1}, {1, 2}});
    const SpdMatrix b = spd(diag({9, 1}));
    EXPECT_EQ(op_weighted_arith(a, a, Weight(0.4)).matrix(), a.matrix());
    EXPECT_EQ(op_weighted_arith(a, b, Weight(0.0)).matrix(), a.matrix());
    EXPECT_LT(max_abs_diff(op_weighted_arith(spd(diag({1, 4})), b, Weight(0.25)).matrix(), diag({3, 3.25})), 1e-15);
    EXPECT_THROW(op_weighted_arith(a, SpdMatrix::identity(3), kHalf), DimensionError);
}

TEST(OpLog, Examples) {
    const SpdMatrix a = spd(Matrix{{3, 1}, {1, 2}});
    EXPECT_LT(max_abs_diff(op_weighted_log(a, a, Weight(0.7)).matrix(), a.matrix()), 1e-14);
    const Matrix d = op_weighted_log(spd(diag({1, 4})), spd(diag({9, 1})), kHalf).matrix();
    EXPECT_LT(max_abs_diff(d, diag({8 / std::log(9.0), 3 / std::log(4.0)})), 1e-14);
    EXPECT_EQ(op_weighted_log(a, SpdMatrix::identity(2), Weight(0.0)).matrix(), a.matrix());
    EXPECT_EQ(op_weighted_log(a, SpdMatrix::identity(2), Weight(1.0)).matrix(), Matrix::Identity(2, 2));
    EXPECT_THROW(op_weighted_log(a, SpdMatrix::identity(3), kHalf), DimensionError);
}

TEST(OpLog, CommutingPairReducesToEigenvaluePairs) {
    oracle::Gen g(42);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Index n = 4;
        const Matrix q = random_orthogonal(g, n);
        Eigen::VectorXd lam(n), mu(n), want(n);
        const double v = g.uniform(0.05, 0.95);
        for (Eigen::Index k = 0; k < n; ++k) {
            lam(k) = g.log_uniform(0.1, 10);
            mu(k) = g.log_uniform(0.1, 10);
            want(k) = static_cast<double>(oracle::log_mean(lam(k), mu(k), v));
        }
        const Matrix a = symmetrize(q * lam.asDiagonal() * q.transpose());
        const Matrix b = symmetrize(q * mu.asDiagonal() * q.transpose());
        const Matrix expect = q * want.asDiagonal() * q.transpose();
        const Matrix got = op_weighted_log(spd(a), spd(b), Weight(v)).matrix();
        EXPECT_LT(max_abs_diff(got, expect), 1e-11 * expect.norm());
    }
}

TEST(OperatorMeans, DiagonalReduction) {
    oracle::Gen g(43);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Index n = 5;
        Eigen::VectorXd x(n), y(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            x(k) = g.log_uniform(0.1, 10);
            y(k) = g.log_uniform(0.1, 10);
        }
        const Weight w(g.uniform(0.01, 0.99));
        const SpdMatrix a = spd(x.asDiagonal());
        const SpdMatrix b = spd(y.asDiagonal());
        const Matrix gm = op_weighted_geom(a, b, w).matrix();
        const Matrix am = op_weighted_arith(a, b, w).matrix();
        const Matrix lm = op_weighted_log(a, b, w).matrix();
        for (Eigen::Index k = 0; k < n; ++k) {
            const PositivePair p(x(k), y(k));
            const double s = std::max(x(k), y(k));
            ASSERT_NEAR(gm(k, k), wgt_geom(p, w), 1e-12 * s);
            ASSERT_NEAR(am(k, k), wgt_arith(p, w), 1e-12 * s);
            ASSERT_NEAR(lm(k, k), wgt_log_mean(p, w), 1e-12 * s);
        }
        ASSERT_LT((gm - Matrix(gm.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_LT((lm - Matrix(lm.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(OperatorMeans, HomogeneityAndSymmetry) {
    oracle::Gen g(44);
    for (int i = 0; i < 50; ++i) {
        const Matrix a = random_spd(g, 5, 1e3);
        const Matrix b = random_spd(g, 5, 1e3);
        const Weight w(g.uniform(0.01, 0.99));
        const double c = g.log_uniform(1e-3, 1e3);
        const Matrix lm = op_weighted_log(spd(a), spd(b), w).matrix();
        const Matrix scaled = op_weighted_log(spd(c * a), spd(c * b), w).matrix();
        ASSERT_LT(max_abs_diff(scaled, c * lm), 1e-11 * c * lm.norm());
        ASSERT_TRUE(lm == lm.transpose());
        const Matrix gm = op_weighted_geom(spd(a), spd(b), w).matrix();
        ASSERT_TRUE(gm == gm.transpose());
    }
}

TEST(Loewner, Examples) {
    const Matrix x{{3, 1}, {1, 2}};
    const LoewnerVerdict same = loewner_leq(x, x, kLoewnerTol);
    EXPECT_TRUE(same.holds);
    EXPECT_NEAR(same.min_eig_of_difference, 0.0, 1e-15);
    EXPECT_TRUE(loewner_leq(Matrix::Zero(3, 3), Matrix::Identity(3, 3), kLoewnerTol).holds);
    const LoewnerVerdict bad = loewner_leq(diag({2, 0}), diag({1, 1}), kLoewnerTol);
    EXPECT_FALSE(bad.holds);
    EXPECT_NEAR(bad.min_eig_of_difference, -1.0, 1e-15);
    EXPECT_NEAR(bad.tol_used, kLoewnerTol * 3.0, 1e-24);
    EXPECT_THROW(loewner_leq(x, Matrix::Identity(3, 3), kLoewnerTol), DimensionError);
}

TEST(OpChain, Examples) {
    const SpdMatrix a = spd(Matrix{{3, 1}, {1, 2}});
    const OperatorChainReport same = op_chain(a, a, Weight(0.3));
    ASSERT_EQ(same.terms.size(), 5u);
    ASSERT_EQ(same.verdicts.size(), 4u);
    for (const Matrix& t : same.terms) EXPECT_LT(max_abs_diff(t, a.matrix()), 1e-14);
    EXPECT_TRUE(same.pass);

    const OperatorChainReport d = op_chain(spd(diag({1, 4})), spd(diag({9, 1})), Weight(0.25));
    EXPECT_TRUE(d.pass);
    for (int k = 0; k < 2; ++k) {
        const double t = k == 0 ? 9.0 : 0.25;
        const double base = k == 0 ? 1.0 : 4.0;
        const ChainReport s = representing_chain(t, Weight(0.25));
        for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(d.terms[i](k, k), base * s.values[i], 1e-13);
    }
}

TEST(OpChain, HoldsOnRandomPairs) {
    oracle::Gen g(45);
    for (Eigen::Index n : {2, 3, 5, 8}) {
        for (int i = 0; i < 40; ++i) {
            const SpdMatrix a = spd(random_spd(g, n, 1e4));
            const SpdMatrix b = spd(random_spd(g, n, 1e4));
            const Weight w(g.uniform(0.01, 0.99));
            ASSERT_TRUE(op_chain(a, b, w).pass) << n << " " << i;
        }
    }
    const SpdMatrix a = spd(random_spd(g, 5, 1e3));
    const SpdMatrix b = spd(random_spd(g, 5, 1e3));
    EXPECT_TRUE(op_chain(a, b, Weight(0.3)).pass);
}

TEST(RepresentingChain, Examples) {
    const ChainReport one = representing_chain(1.0, Weight(0.4));
    for (double x : one.values) EXPECT_DOUBLE_EQ(x, 1.0);
    const ChainReport two = representing_chain(2.0, Weight(0.25));
    EXPECT_NEAR(two.values[2], 1.2088134576705437, 1e-15);
    EXPECT_TRUE(two.pass);
    EXPECT_TRUE(representing_chain(1e-3, Weight(0.99)).pass);
}

TEST(RepresentingChain, MonotoneOnLogGrid) {
    for (int i = 0; i < 1000; ++i) {
        const double t = std::pow(10.0, -4.0 + 8.0 * i / 999.0);
        for (int k = 1; k <= 99; ++k) ASSERT_TRUE(representing_chain(t, Weight(k / 100.0)).pass) << t << " " << k;
    }
}

TEST(HelperIneq, Examples) {
    const HelperIneqResult one = helper_ineq_check(1.0);
    EXPECT_DOUBLE_EQ(one.lhs, 1.0);
    EXPECT_DOUBLE_EQ(one.rhs, 1.0);
    EXPECT_TRUE(one.pass);
    const HelperIneqResult two = helper_ineq_check(2.0);
    EXPECT_NEAR(two.lhs, 3.0 / std::log(4.0), 1e-15);
    EXPECT_NEAR(two.lhs, 2.164, 5e-4);
    EXPECT_TRUE(two.pass);
    const HelperIneqResult tenth = helper_ineq_check(0.1);
    EXPECT_NEAR(tenth.lhs, -0.99 / std::log(0.01), 1e-15);
    EXPECT_NEAR(tenth.lhs, 0.2150, 5e-5);
    EXPECT_TRUE(tenth.pass);
    EXPECT_NEAR(helper_ineq_check(1.0 + 1e-10).lhs, 1.0 + 1e-10, 1e-15);
}
