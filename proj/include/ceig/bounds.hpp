#pragma once

#include "ceig/spectral.hpp"
#include "ceig/tensor.hpp"

namespace ceig {

inline constexpr double kContainmentSlack = 1e-8;
inline constexpr double kRadicandSlack = 1e-8;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    bool contains(double v, double slack = 0.0) const noexcept
    {
        return v >= lo - slack && v <= hi + slack;
    }
    /// True iff *this is a subset of `outer`, endpoint-wise with slack.
    bool within(const Interval& outer, double slack = 0.0) const noexcept
    {
        return lo >= outer.lo - slack && hi <= outer.hi + slack;
    }
};

/// Perturbation intervals for the largest C-eigenvalue of A + E.
struct BoundReport {
    double lambda_a = 0.0;
    double lambda_e = 0.0;
    double norm_e2 = 0.0;
    double zmin_diff = 0.0;  // smallest Z-eigenvalue of lift(A+E) - lift(A)
    double zmax_diff = 0.0;  // largest Z-eigenvalue of lift(A+E) - lift(A)
    Interval interval_21;    // additive:  lambda_a -/+ lambda_e
    Interval interval_24;    // spectral:  lambda_a -/+ ||E||_2
    Interval interval_25;    // quadratic: sqrt(lambda_a^2 + z{min,max}_diff)
};

Interval bound_additive(double lambda_a, double lambda_e);
Interval bound_spectral(double lambda_a, double norm_e2);

/// Radicands in [-1e-8, 0) are clamped to 0; anything lower throws RadicandNegative.
Interval bound_quadratic(double lambda_a, double zmin_diff, double zmax_diff);

BoundReport full_report(const PiezoTensor& a, const PiezoTensor& e, const SolverConfig& cfg = {});

/// interval_25 within interval_21 within interval_24, each with 1e-8 slack.
bool check_nesting(const BoundReport& r);

/// True value inside all three intervals with 1e-8 slack.
bool check_containment(const BoundReport& r, double true_lambda);

} // namespace ceig
