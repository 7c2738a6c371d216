#include <gtest/gtest.h>

#include <cmath>

#include "ceig/bounds.hpp"
#include "ceig/error.hpp"
#include "test_support.hpp"

using namespace ceig;
using ceig::testing::random_piezo;
using ceig::testing::rel_err;
using ceig::testing::single_entry;

namespace {

PiezoTensor banio3()
{
    std::vector<double> raw(27, 0.0);
    auto set = [&](int i, int j, int k, double v) {
        raw[((i - 1) * 3 + (j - 1)) * 3 + (k - 1)] = v;
        raw[((i - 1) * 3 + (k - 1)) * 3 + (j - 1)] = v;
    };
    set(1, 1, 3, 0.2389);
    set(2, 2, 3, 0.2389);
    set(3, 1, 1, 4.0537);
    set(3, 2, 2, 4.0537);
    set(3, 3, 3, 27.4628);
    return make_piezo(3, raw, SymmetryMode::strict);
}

PiezoTensor uniform_perturbation(SplitMix64& rng, double eps)
{
    std::vector<double> raw(27);
    for (double& v : raw) v = eps * rng.uniform();
    return make_piezo(3, raw, SymmetryMode::auto_symmetrize);
}

} // namespace

TEST(BoundAdditive, Examples)
{
    const auto a = bound_additive(5, 0);
    EXPECT_EQ(a.lo, 5.0);
    EXPECT_EQ(a.hi, 5.0);
    const auto b = bound_additive(5, 5);
    EXPECT_EQ(b.lo, 0.0);
    EXPECT_EQ(b.hi, 10.0);
    EXPECT_THROW(bound_additive(-1, 0), NegativeInput);
    EXPECT_THROW(bound_additive(1, -1e-3), NegativeInput);
    // Lower end below zero is reported unclamped.
    EXPECT_EQ(bound_additive(1, 3).lo, -2.0);
}

TEST(BoundAdditive, BaNiO3ContainsPerturbedValue)
{
    SplitMix64 rng(41);
    const auto a = banio3();
    const auto e = uniform_perturbation(rng, 0.1);
    const double le = c_max_via_lift(e).lambda;
    const auto iv = bound_additive(c_max_via_lift(a).lambda, le);
    EXPECT_NEAR(iv.width(), 2.0 * le, 1e-12);
    EXPECT_TRUE(iv.contains(c_max_via_lift(a + e).lambda, kContainmentSlack));
}

TEST(BoundSpectral, Examples)
{
    const auto a = bound_spectral(5, 0);
    EXPECT_EQ(a.lo, 5.0);
    EXPECT_EQ(a.hi, 5.0);
    const auto b = bound_spectral(2, unfold_spectral_norm(single_entry(3, 0, 0, 0, 0.3)));
    EXPECT_NEAR(b.lo, 1.7, 1e-15);
    EXPECT_NEAR(b.hi, 2.3, 1e-15);
    EXPECT_THROW(bound_spectral(1, -1), NegativeInput);
}

TEST(BoundQuadratic, Examples)
{
    const auto a = bound_quadratic(3.5, 0, 0);
    EXPECT_EQ(a.lo, 3.5);
    EXPECT_EQ(a.hi, 3.5);

    SplitMix64 rng(43);
    const auto e = random_piezo(rng);
    const auto se = lift(e);
    const double zmin = z_min(se).lambda;
    const double zmax = z_max(se).lambda;
    const auto b = bound_quadratic(0.0, zmin, zmax);
    EXPECT_NEAR(b.lo, std::sqrt(std::max(0.0, zmin)), 1e-12);
    EXPECT_NEAR(b.hi, c_max_via_lift(e).lambda, 1e-9);
}

TEST(BoundQuadratic, RadicandHandling)
{
    // Inside the slack band the radicand is treated as zero.
    EXPECT_EQ(bound_quadratic(0.0, -5e-9, 1.0).lo, 0.0);
    EXPECT_THROW(bound_quadratic(1.0, -1.5, 1.0), RadicandNegative);
    EXPECT_THROW(bound_quadratic(1.0, -1.5, 1.0), PropertyViolation);
    EXPECT_THROW(bound_quadratic(1.0, 2.0, 1.0), ValidationError);
}

TEST(FullReport, ZeroPerturbationIsDegenerate)
{
    SplitMix64 rng(47);
    const auto a = random_piezo(rng);
    const auto r = full_report(a, PiezoTensor::zero(3));
    const double la = c_max_via_lift(a).lambda;
    for (const auto& iv : {r.interval_21, r.interval_24, r.interval_25}) {
        EXPECT_NEAR(iv.lo, la, 1e-9);
        EXPECT_NEAR(iv.hi, la, 1e-9);
        EXPECT_LE(iv.width(), 1e-9);
    }
    EXPECT_TRUE(check_nesting(r));
}

TEST(FullReport, ZeroBaseTensor)
{
    SplitMix64 rng(53);
    const auto e = random_piezo(rng);
    const auto r = full_report(PiezoTensor::zero(3), e);
    const double le = c_max_via_lift(e).lambda;
    EXPECT_NEAR(r.interval_21.lo, -le, 1e-12);
    EXPECT_NEAR(r.interval_21.hi, le, 1e-12);
    EXPECT_NEAR(r.interval_25.hi, le, 1e-9);
}

TEST(FullReport, SingleEntryPair)
{
    // lift(A+E) - lift(A) has the single entry (2.1^2 - 2^2) = 0.41 at (1,1,1,1), so its quartic is
    // 0.41 y1^4: largest Z-eigenvalue 0.41, smallest 0. Hence interval_25 = [2, 2.1].
    const auto r = full_report(single_entry(3, 0, 0, 0, 2.0), single_entry(3, 0, 0, 0, 0.1));
    EXPECT_NEAR(c_max_via_lift(single_entry(3, 0, 0, 0, 2.1)).lambda, 2.1, 1e-12);
    EXPECT_NEAR(r.zmax_diff, 0.41, 1e-12);
    EXPECT_NEAR(r.zmin_diff, 0.0, 1e-12);
    EXPECT_NEAR(r.interval_25.lo, 2.0, 1e-9);
    EXPECT_NEAR(r.interval_25.hi, 2.1, 1e-9);
    EXPECT_NEAR(r.interval_21.lo, 1.9, 1e-12);
    EXPECT_NEAR(r.interval_21.hi, 2.1, 1e-12);
    EXPECT_TRUE(check_containment(r, 2.1));
    EXPECT_TRUE(check_nesting(r));
}

TEST(FullReport, DimensionMismatch)
{
    EXPECT_THROW(full_report(PiezoTensor::zero(3), PiezoTensor::zero(2)), DimensionMismatch);
}

TEST(CheckNesting, NegativeControl)
{
    SplitMix64 rng(59);
    auto r = full_report(random_piezo(rng), uniform_perturbation(rng, 0.1));
    ASSERT_TRUE(check_nesting(r));
    r.interval_25.hi = r.interval_21.hi + 1e-6;
    EXPECT_FALSE(check_nesting(r));
    EXPECT_FALSE(check_containment(r, r.interval_24.hi + 1e-6));
}

TEST(Properties, ContainmentNestingRadicandAndWidths)
{
    SplitMix64 rng(61);
    const double eps_values[] = {1, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = random_piezo(rng);
        const auto e = uniform_perturbation(rng, eps_values[trial % 6]);
        const auto r = full_report(a, e);
        const double truth = c_max_via_lift(a + e).lambda;
        EXPECT_TRUE(check_containment(r, truth)) << "trial " << trial;
        EXPECT_TRUE(check_nesting(r)) << "trial " << trial;
        EXPECT_GE(r.lambda_a * r.lambda_a + r.zmin_diff, -1e-8);
        EXPECT_LE(r.interval_25.width(), r.interval_21.width() + 1e-8);
        EXPECT_LE(r.interval_21.width(), r.interval_24.width() + 1e-8);
    }
}

TEST(Properties, LiftDifferenceIdentity)
{
    SplitMix64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_piezo(rng);
        const auto e = uniform_perturbation(rng, 0.1);
        const auto diff = lift(a + e) - lift(a);
        const auto y = rng.unit_vector(3);
        const double expect = eval_quartic(lift(e), y) + 2.0 * dot(apply_yy(a, y), apply_yy(e, y));
        EXPECT_NEAR(eval_quartic(diff, y), expect, 1e-12);
    }
}

TEST(Properties, LinearScalingOfAdditiveAndSpectralWidths)
{
    SplitMix64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = random_piezo(rng);
        const double le = c_max_via_lift(e).lambda;
        const double ne = unfold_spectral_norm(e);
        double prev21 = 2 * le, prev24 = 2 * ne;
        for (double t : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
            const auto et = e.scaled(t);
            const double lt = c_max_via_lift(et).lambda;
            const double nt = unfold_spectral_norm(et);
            EXPECT_LE(rel_err(lt / t, le), 1e-10);
            EXPECT_LE(rel_err(nt / t, ne), 1e-10);
            EXPECT_LE(2 * lt, prev21);
            EXPECT_LE(2 * nt, prev24);
            prev21 = 2 * lt;
            prev24 = 2 * nt;
        }
    }
}
