#include <gtest/gtest.h>

#include <cmath>

#include "hhm/errors.hpp"
#include "hhm/hh_refinements.hpp"
#include "hhm/operator_means.hpp"
#include "hhm/verify_harness.hpp"

using namespace hhm;

namespace {

void expect_same(const SuiteReport& x, const SuiteReport& y) {
    EXPECT_EQ(x.suite, y.suite);
    EXPECT_EQ(x.seed, y.seed);
    EXPECT_EQ(x.trials, y.trials);
    EXPECT_EQ(x.min_slacks, y.min_slacks);  // exact: bitwise-equal doubles
    EXPECT_EQ(x.tight, y.tight);
    EXPECT_EQ(x.values, y.values);
    ASSERT_EQ(x.failures.size(), y.failures.size());
    for (std::size_t i = 0; i < x.failures.size(); ++i) {
        EXPECT_EQ(x.failures[i].trial, y.failures[i].trial);
        EXPECT_EQ(x.failures[i].check, y.failures[i].check);
        EXPECT_EQ(x.failures[i].inputs, y.failures[i].inputs);
        EXPECT_EQ(x.failures[i].slacks, y.failures[i].slacks);
    }
}

SuiteConfig small(SuiteConfig c, std::size_t trials) {
    c.trials = trials;
    c.grid_points = 50;
    return c;
}

}  // namespace

TEST(TrialRng, DeterministicAndIndependentOfOrder) {
    TrialRng x(42, 7);
    TrialRng y(42, 7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(x.uniform(0, 1), y.uniform(0, 1));
    TrialRng z(42, 8);
    EXPECT_NE(TrialRng(42, 7).uniform(0, 1), z.uniform(0, 1));
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(TrialRng, RangesAndMoments) {
    TrialRng r(1, 0);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform(2, 3);
        ASSERT_GE(u, 2.0);
        ASSERT_LT(u, 3.0);
        const double l = r.log_uniform(0.1, 10);
        ASSERT_GE(l, 0.1 * (1 - 1e-15));
        ASSERT_LE(l, 10 * (1 + 1e-15));
        const double z = r.normal();
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.05);
    EXPECT_NEAR(sq / n, 1.0, 0.05);
    EXPECT_EQ(r.log_uniform(2, 2), 2.0);
}

TEST(SuiteConfig, Validation) {
    SuiteConfig c;
    EXPECT_NO_THROW(c.validate());
    c.trials = 0;
    EXPECT_THROW(c.validate(), DomainError);
    c = SuiteConfig{};
    c.a_range = {0.0, 1.0};
    EXPECT_THROW(c.validate(), DomainError);
    c = SuiteConfig{};
    c.b_range = {2.0, 1.0};
    EXPECT_THROW(c.validate(), DomainError);
    c = SuiteConfig{};
    c.v_range = {0.5, 1.5};
    EXPECT_THROW(c.validate(), DomainError);
    c = SuiteConfig{};
    c.dims = {2, 0};
    EXPECT_THROW(c.validate(), DomainError);
    EXPECT_EQ(SuiteConfig::operator_defaults().seed, 7u);
    EXPECT_EQ(SuiteConfig::operator_defaults().trials, 500u);
    EXPECT_EQ(SuiteConfig::bounds_defaults().trials, 2000u);
}

TEST(SuiteReport, MergeIsAssociativeAndOrderIndependent) {
    SuiteReport x, y, z;
    x.note_slack("k", 0.5, true);
    y.note_slack("k", -1e-12, true);
    z.note_slack("j", 0.1, true);
    x.failures.push_back({3, "c", {}, {}, ""});
    z.failures.push_back({1, "c", {}, {}, ""});
    x.trials = y.trials = z.trials = 1;

    SuiteReport left = x;
    left.merge(y);
    left.merge(z);
    SuiteReport yz = y;
    yz.merge(z);
    SuiteReport right = x;
    right.merge(yz);
    SuiteReport reversed = z;
    reversed.merge(y);
    reversed.merge(x);
    expect_same(left, right);
    expect_same(left, reversed);
    EXPECT_EQ(left.trials, 3u);
    EXPECT_EQ(left.min_slacks.at("k"), -1e-12);
    EXPECT_EQ(left.tight.at("k"), 1u);
    EXPECT_EQ(left.failures.front().trial, 1);
    EXPECT_FALSE(left.pass());
}

TEST(ScalarSuite, EqualArgumentsGiveZeroSlack) {
    SuiteConfig c;
    c.trials = 1;
    c.a_range = {2, 2};
    c.b_range = {2, 2};
    const SuiteReport r = run_scalar_suite(c);
    EXPECT_TRUE(r.pass());
    EXPECT_FALSE(r.min_slacks.empty());
    for (const auto& [k, s] : r.min_slacks) EXPECT_NEAR(s, 0.0, 1e-15) << k;
}

TEST(ScalarSuite, DefaultConfigPasses) {
    const SuiteReport r = run_scalar_suite(SuiteConfig::scalar_defaults());
    EXPECT_TRUE(r.pass()) << r.failures.size() << " failures, first: "
                          << (r.failures.empty() ? "" : r.failures[0].check);
    EXPECT_EQ(r.trials, 10000u);
    EXPECT_EQ(r.suite, "scalar");
    EXPECT_TRUE(r.min_slacks.count("chain_eval[exp]:f_at_mean<=Q1"));
    EXPECT_TRUE(r.min_slacks.count("mean_chain_log:geom<=geom_split"));
}

TEST(ScalarSuite, NearlyEqualArgumentsPass) {
    SuiteConfig c = small(SuiteConfig{}, 500);
    c.a_range = {1.0, 1.0 + 2e-6};
    c.b_range = {1.0, 1.0 + 2e-6};
    EXPECT_TRUE(run_scalar_suite(c).pass());
}

TEST(ScalarSuite, DeterministicAndPartitionInvariant) {
    const SuiteConfig serial = small(SuiteConfig{}, 300);
    SuiteConfig parallel = serial;
    parallel.workers = 3;
    const SuiteReport a = run_scalar_suite(serial);
    expect_same(a, run_scalar_suite(serial));
    expect_same(a, run_scalar_suite(parallel));
}

TEST(ScalarSuite, FailureRecordsReplayInIsolation) {
    // A starved quadrature makes chain_eval fail; each record must reproduce that alone.
    SuiteConfig c = small(SuiteConfig{}, 20);
    c.functions = {Builtin::exp};
    c.quad.rel_tol = 1e-14;
    c.quad.max_levels = 1;
    const SuiteReport r = run_scalar_suite(c);
    ASSERT_FALSE(r.pass());
    for (const FailureRecord& f : r.failures) {
        ASSERT_EQ(f.check, "chain_eval[exp]");
        ASSERT_GE(f.trial, 0);
        const double a = f.inputs.at("a"), b = f.inputs.at("b"), v = f.inputs.at("v");
        const ConvexFunction fn = make_builtin(Builtin::exp);
        EXPECT_THROW(chain_eval(fn, a, b, Weight(v), c.quad), QuadratureError);
        EXPECT_TRUE(chain_eval(fn, a, b, Weight(v)).pass);
    }
}

TEST(BoundsSuite, DefaultConfigPasses) {
    const SuiteReport r = run_bounds_suite(SuiteConfig::bounds_defaults());
    EXPECT_TRUE(r.pass()) << (r.failures.empty() ? "" : r.failures[0].check);
    EXPECT_EQ(r.trials, 2000u);
    EXPECT_TRUE(r.min_slacks.count("thm33[square]:C-R1:lower"));
    // m = M pins the square sandwiches: slack relative to scale sits at roundoff.
    EXPECT_LT(std::abs(r.min_slacks.at("thm33[square]:C-R1:lower")), 1e-10);
    EXPECT_LT(std::abs(r.min_slacks.at("thm33[square]:C-R1:upper")), 1e-10);
}

TEST(BoundsSuite, WideRangePasses) {
    SuiteConfig c = small(SuiteConfig::bounds_defaults(), 300);
    c.a_range = {0.1, 0.2};
    c.b_range = {50, 100};
    const SuiteReport r = run_bounds_suite(c);
    EXPECT_TRUE(r.pass()) << (r.failures.empty() ? "" : r.failures[0].check);
}

TEST(BoundsSuite, PartitionInvariant) {
    const SuiteConfig serial = small(SuiteConfig::bounds_defaults(), 200);
    SuiteConfig parallel = serial;
    parallel.workers = 4;
    expect_same(run_bounds_suite(serial), run_bounds_suite(parallel));
}

TEST(OperatorSuite, SmallConfigPassesAndIsPartitionInvariant) {
    SuiteConfig c = small(SuiteConfig::operator_defaults(), 40);
    const SuiteReport r = run_operator_suite(c);
    EXPECT_TRUE(r.pass()) << (r.failures.empty() ? "" : r.failures[0].check);
    EXPECT_EQ(r.trials, 40u * 4u);
    EXPECT_TRUE(r.min_slacks.count("helper_ineq"));
    EXPECT_TRUE(r.min_slacks.count("op_chain[8]:geom<=geom_split"));
    c.workers = 3;
    expect_same(r, run_operator_suite(c));
}

TEST(OperatorSuite, StressAtLooserToleranceAndDimOne) {
    SuiteConfig c = small(SuiteConfig::operator_defaults(), 50);
    c.tol = 1e-9;
    c.dims = {1, 8};
    EXPECT_TRUE(run_operator_suite(c).pass());
}

TEST(OperatorSuite, OneByOneChainIsTheScalarChain) {
    Matrix a(1, 1), b(1, 1);
    a << 3.0;
    b << 0.7;
    const OperatorChainReport op = op_chain(SpdMatrix::from(a), SpdMatrix::from(b), Weight(0.3));
    const ChainReport s = representing_chain(0.7 / 3.0, Weight(0.3));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(op.terms[i](0, 0), 3.0 * s.values[i], 1e-15);
}

TEST(ReferenceValues, Reproduced) {
    const SuiteReport r = reproduce_paper_numbers();
    EXPECT_TRUE(r.pass());
    EXPECT_NEAR(r.values.at("p1-p2@(4,1)"), kRefDiffAt41, kRefDiffAt41Tol);
    EXPECT_NEAR(r.values.at("p1-p2@(8,1)"), kRefDiffAt81, kRefDiffAt81Tol);
    EXPECT_GT(r.values.at("p1-p2@(4,1)"), 0.0);
    EXPECT_LT(r.values.at("p1-p2@(8,1)"), 0.0);
}
