#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>

#include "ceig/error.hpp"
#include "ceig/tensor.hpp"
#include "test_support.hpp"

using namespace ceig;
using ceig::testing::random_piezo;
using ceig::testing::random_sym4;
using ceig::testing::rel_err;
using ceig::testing::single_entry;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double dense_svd_norm(const PiezoTensor& e)
{
    const auto n = static_cast<Eigen::Index>(e.dim());
    Eigen::MatrixXd m(n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k) m(i, j * n + k) = e(i, j, k);
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

double max_slice_singular(const PiezoTensor& e)
{
    const auto n = static_cast<Eigen::Index>(e.dim());
    double best = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::MatrixXd s(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k) s(j, k) = e(i, j, k);
        best = std::max(best, Eigen::JacobiSVD<Eigen::MatrixXd>(s).singularValues()(0));
    }
    return best;
}

} // namespace

TEST(MakePiezo, IdentityCase)
{
    const std::vector<double> raw {5.0};
    const auto a = make_piezo(1, raw, SymmetryMode::strict);
    EXPECT_EQ(a.dim(), 1u);
    EXPECT_EQ(a(0, 0, 0), 5.0);
}

TEST(MakePiezo, AutoSymmetrizeAveragesMirrorPair)
{
    std::vector<double> raw(8, 0.0);
    raw[(0 * 2 + 0) * 2 + 1] = 1.0;  // raw_112
    const auto a = make_piezo(2, raw, SymmetryMode::auto_symmetrize);
    EXPECT_EQ(a(0, 0, 1), 0.5);
    EXPECT_EQ(a(0, 1, 0), 0.5);
    EXPECT_THROW(make_piezo(2, raw, SymmetryMode::strict), SymmetryViolation);
}

TEST(MakePiezo, RejectsBadInput)
{
    EXPECT_THROW(make_piezo(2, std::vector<double>(7, 0.0), SymmetryMode::strict), BadLength);
    EXPECT_THROW(make_piezo(0, std::vector<double> {}, SymmetryMode::strict), BadLength);
    std::vector<double> raw(8, 0.0);
    raw[3] = std::nan("");
    EXPECT_THROW(make_piezo(2, raw, SymmetryMode::auto_symmetrize), NonFinite);
    raw[3] = INFINITY;
    EXPECT_THROW(make_piezo(2, raw, SymmetryMode::auto_symmetrize), NonFinite);
}

TEST(MakePiezo, SymmetryIsBitExact)
{
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_piezo(rng, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k) ASSERT_EQ(a(i, j, k), a(i, k, j));
    }
}

TEST(ApplyYY, Examples)
{
    const auto a = single_entry(3, 0, 0, 0, 2.0);
    EXPECT_EQ(apply_yy(a, std::vector<double> {1, 0, 0}), (Vector {2, 0, 0}));
    EXPECT_EQ(apply_yy(PiezoTensor::zero(3), std::vector<double> {0.3, -1, 2}), (Vector {0, 0, 0}));

    const auto b = single_entry(3, 0, 1, 2, 1.0);
    const auto r = apply_yy(b, std::vector<double> {0, kInvSqrt2, kInvSqrt2});
    EXPECT_NEAR(r[0], 1.0, 1e-15);
    EXPECT_EQ(r[1], 0.0);
    EXPECT_EQ(r[2], 0.0);
    EXPECT_THROW(apply_yy(b, std::vector<double> {1, 0}), DimensionMismatch);
}

TEST(ApplyXAY, Examples)
{
    const auto a = single_entry(3, 0, 0, 0, 2.0);
    EXPECT_EQ(apply_xay(a, std::vector<double> {1, 0, 0}, std::vector<double> {1, 0, 0}), (Vector {2, 0, 0}));
    EXPECT_EQ(apply_xay(a, std::vector<double> {0, 0, 0}, std::vector<double> {1, 2, 3}), (Vector {0, 0, 0}));

    const auto b = single_entry(2, 0, 0, 1, 1.0);  // a_112 = a_121 = 1
    EXPECT_EQ(apply_xay(b, std::vector<double> {1, 0}, std::vector<double> {1, 0}), (Vector {0, 1}));
    EXPECT_THROW(apply_xay(b, std::vector<double> {1, 0, 0}, std::vector<double> {1, 0}), DimensionMismatch);
}

TEST(FormXAYY, Examples)
{
    const auto a = single_entry(3, 0, 0, 0, 2.0);
    const Vector e1 {1, 0, 0};
    EXPECT_EQ(form_xayy(a, e1, e1), 2.0);
    EXPECT_EQ(form_xayy(a, Vector {0, 0, 0}, e1), 0.0);
    const auto b = single_entry(3, 0, 1, 2, 1.0);
    EXPECT_NEAR(form_xayy(b, e1, Vector {0, kInvSqrt2, kInvSqrt2}), 1.0, 1e-15);
}

TEST(FormXAYY, ContractionRoutesAgree)
{
    SplitMix64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_piezo(rng, 3, 3.0);
        const Vector x {rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const Vector y {rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double f = form_xayy(a, x, y);
        EXPECT_LE(rel_err(f, dot(x, apply_yy(a, y))), 1e-12);
        EXPECT_LE(rel_err(f, dot(y, apply_xay(a, x, y))), 1e-12);
    }
}

TEST(Lift, SingleEntryAndZero)
{
    const auto s = lift(single_entry(2, 0, 0, 0, 3.0));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    EXPECT_EQ(s(i, j, k, l), (i + j + k + l == 0) ? 9.0 : 0.0);
    EXPECT_EQ(lift(PiezoTensor::zero(3)), SymTensor4::zero(3));
}

TEST(Lift, PartialSymmetrizationMatchesHandFormula)
{
    // b_{pqrs} = sum_i a_{ipq} a_{irs}; bbar = (b_pqrs + b_prqs + b_psqr) / 3, checked on all index tuples.
    SplitMix64 rng(3);
    const auto a = random_piezo(rng, 3);
    const auto s = lift(a);
    auto b = [&](std::size_t p, std::size_t q, std::size_t r, std::size_t t) {
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) sum += a(i, p, q) * a(i, r, t);
        return sum;
    };
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q)
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t t = 0; t < 3; ++t)
                    EXPECT_NEAR(s(p, q, r, t), (b(p, q, r, t) + b(p, r, q, t) + b(p, t, q, r)) / 3.0, 1e-14);
}

TEST(Lift, QuarticEqualsSquaredNormOfAyy)
{
    SplitMix64 rng(5);
    for (int inst = 0; inst < 20; ++inst) {
        const auto a = random_piezo(rng);
        const auto s = lift(a);
        ASSERT_TRUE(s.is_symmetric());
        for (int trial = 0; trial < 100; ++trial) {
            const auto y = rng.unit_vector(3);
            const auto g = apply_yy(a, y);
            const double q = eval_quartic(s, y);
            EXPECT_LE(rel_err(q, dot(g, g)), 1e-10);
            EXPECT_GE(q, -1e-10);
        }
    }
}

TEST(Lift, SymmetricForLargerDimensions)
{
    SplitMix64 rng(13);
    for (std::size_t n : {1u, 2u, 4u, 5u}) EXPECT_TRUE(lift(random_piezo(rng, n)).is_symmetric());
}

TEST(SymTensor4, FromEntriesChecksSymmetry)
{
    std::vector<double> raw(16, 0.0);
    raw[1] = 1.0;  // t_1112 only
    EXPECT_THROW(SymTensor4::from_entries(2, raw), SymmetryViolation);
    EXPECT_THROW(SymTensor4::from_entries(2, std::vector<double>(15, 0.0)), BadLength);
}

TEST(EvalQuartic, Examples)
{
    std::vector<double> raw(81, 0.0);
    raw[0] = 4.0;
    const auto t = SymTensor4::from_entries(3, raw);
    EXPECT_EQ(eval_quartic(t, Vector {1, 0, 0}), 4.0);
    EXPECT_EQ(eval_quartic(t, Vector {0, 0, 0}), 0.0);
    const auto s = lift(single_entry(3, 0, 0, 0, 2.0));
    for (double tt : {-1.5, 0.25, 2.0}) EXPECT_NEAR(eval_quartic(s, Vector {tt, 0, 0}), 4.0 * std::pow(tt, 4), 1e-12);
    EXPECT_THROW(eval_quartic(t, Vector {1, 0}), DimensionMismatch);
}

TEST(EvalQuartic, HomogeneousOfDegreeFour)
{
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = random_sym4(rng);
        const auto y = rng.unit_vector(3);
        const double base = eval_quartic(t, y);
        for (double s : {-2.0, 0.5, 3.0}) {
            Vector ys = y;
            for (double& v : ys) v *= s;
            EXPECT_NEAR(eval_quartic(t, ys), std::pow(s, 4) * base, 1e-10 * std::max(1.0, std::pow(s, 4) * std::abs(base)));
        }
    }
}

TEST(ApplyCubic, Examples)
{
    std::vector<double> raw(81, 0.0);
    raw[0] = 4.0;
    const auto t = SymTensor4::from_entries(3, raw);
    EXPECT_EQ(apply_cubic(t, Vector {1, 0, 0}), (Vector {4, 0, 0}));
    EXPECT_EQ(apply_cubic(SymTensor4::zero(3), Vector {1, 2, 3}), (Vector {0, 0, 0}));
}

TEST(ApplyCubic, InnerProductIsQuartic)
{
    SplitMix64 rng(19);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = random_sym4(rng);
        const auto y = rng.unit_vector(3);
        EXPECT_LE(rel_err(dot(y, apply_cubic(t, y)), eval_quartic(t, y)), 1e-12);
    }
}

TEST(Sub, Identities)
{
    SplitMix64 rng(23);
    const auto t = random_sym4(rng);
    EXPECT_EQ(sub(t, t), SymTensor4::zero(3));
    EXPECT_EQ(sub(t, SymTensor4::zero(3)), t);
    EXPECT_TRUE(sub(t, random_sym4(rng)).is_symmetric());
    EXPECT_THROW(sub(t, SymTensor4::zero(2)), DimensionMismatch);
}

TEST(Sub, LiftDifferenceOfSingleEntryPerturbation)
{
    const double c = 2.0, e = 0.1;
    const auto a = single_entry(3, 0, 0, 0, c);
    const auto d = sub(lift(a + single_entry(3, 0, 0, 0, e)), lift(a));
    for (std::size_t i = 0; i < 81; ++i) {
        if (i == 0) {
            EXPECT_NEAR(d.entries()[i], e * e + 2 * c * e, 1e-15);
        } else {
            EXPECT_EQ(d.entries()[i], 0.0);
        }
    }
}

TEST(Sub, LiftDifferenceMatchesExpansion)
{
    // (S_{A+E} - S_A) y^4 = S_E y^4 + 2 <A y y, E y y>
    SplitMix64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_piezo(rng);
        const auto e = random_piezo(rng, 3, 0.1);
        const auto d = sub(lift(a + e), lift(a));
        const auto y = rng.unit_vector(3);
        const double expect = eval_quartic(lift(e), y) + 2.0 * dot(apply_yy(a, y), apply_yy(e, y));
        EXPECT_NEAR(eval_quartic(d, y), expect, 1e-12);
    }
}

TEST(UnfoldSpectralNorm, Examples)
{
    EXPECT_NEAR(unfold_spectral_norm(single_entry(3, 0, 0, 0, 0.3)), 0.3, 1e-15);
    std::vector<double> raw(27, 0.0);
    for (std::size_t j = 0; j < 3; ++j) raw[j * 3 + j] = 1.0;
    EXPECT_NEAR(unfold_spectral_norm(make_piezo(3, raw, SymmetryMode::strict)), std::sqrt(3.0), 1e-14);
    EXPECT_EQ(unfold_spectral_norm(PiezoTensor::zero(3)), 0.0);
}

TEST(UnfoldSpectralNorm, MatchesDenseSvdAndNormSandwich)
{
    SplitMix64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const auto e = random_piezo(rng, n);
        const double s = unfold_spectral_norm(e);
        EXPECT_NEAR(s, dense_svd_norm(e), 1e-12);
        EXPECT_LE(s, e.frobenius_norm() + 1e-12);
        EXPECT_GE(s, max_slice_singular(e) - 1e-12);
    }
}

TEST(UnfoldSpectralNorm, ScalesLinearly)
{
    SplitMix64 rng(37);
    const auto e = random_piezo(rng);
    const double base = unfold_spectral_norm(e);
    for (double t : {1e-1, 1e-3, 1e-5}) EXPECT_LE(rel_err(unfold_spectral_norm(e.scaled(t)) / t, base), 1e-10);
}
