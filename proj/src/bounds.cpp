#include "ceig/bounds.hpp"

#include <cmath>
#include <string>

#include "ceig/error.hpp"

namespace ceig {

namespace {

void require_nonnegative(const char* what, double v)
{
    if (!(v >= 0.0)) throw NegativeInput(std::string(what) + " must be nonnegative, got " + std::to_string(v));
}

double clamped_sqrt(const char* what, double radicand)
{
    if (radicand < 0.0) {
        if (radicand < -kRadicandSlack) {
            throw RadicandNegative(std::string(what) + " radicand " + std::to_string(radicand) + " is negative");
        }
        return 0.0;
    }
    return std::sqrt(radicand);
}

} // namespace

Interval bound_additive(double lambda_a, double lambda_e)
{
    require_nonnegative("lambda_a", lambda_a);
    require_nonnegative("lambda_e", lambda_e);
    // The lower end may go below zero; it is reported as is.
    return {lambda_a - lambda_e, lambda_a + lambda_e};
}

Interval bound_spectral(double lambda_a, double norm_e2)
{
    require_nonnegative("lambda_a", lambda_a);
    require_nonnegative("norm_e2", norm_e2);
    return {lambda_a - norm_e2, lambda_a + norm_e2};
}

Interval bound_quadratic(double lambda_a, double zmin_diff, double zmax_diff)
{
    require_nonnegative("lambda_a", lambda_a);
    if (zmin_diff > zmax_diff) {
        throw ValidationError("bound_quadratic: zmin_diff exceeds zmax_diff");
    }
    const double sq = lambda_a * lambda_a;
    return {clamped_sqrt("lower", sq + zmin_diff), clamped_sqrt("upper", sq + zmax_diff)};
}

BoundReport full_report(const PiezoTensor& a, const PiezoTensor& e, const SolverConfig& cfg)
{
    if (a.dim() != e.dim()) throw DimensionMismatch("full_report: A and E dimensions differ");
    const PiezoTensor perturbed = a + e;

    BoundReport r;
    r.lambda_a = c_max_via_lift(a, cfg).lambda;
    r.lambda_e = c_max_via_lift(e, cfg).lambda;
    r.norm_e2 = unfold_spectral_norm(e);

    const SymTensor4 diff = lift(perturbed) - lift(a);
    r.zmin_diff = z_min(diff, cfg).lambda;
    r.zmax_diff = z_max(diff, cfg).lambda;

    r.interval_21 = bound_additive(r.lambda_a, r.lambda_e);
    r.interval_24 = bound_spectral(r.lambda_a, r.norm_e2);
    r.interval_25 = bound_quadratic(r.lambda_a, r.zmin_diff, r.zmax_diff);
    return r;
}

bool check_nesting(const BoundReport& r)
{
    return r.interval_25.within(r.interval_21, kContainmentSlack) &&
           r.interval_21.within(r.interval_24, kContainmentSlack);
}

bool check_containment(const BoundReport& r, double true_lambda)
{
    return r.interval_21.contains(true_lambda, kContainmentSlack) &&
           r.interval_24.contains(true_lambda, kContainmentSlack) &&
           r.interval_25.contains(true_lambda, kContainmentSlack);
}

} // namespace ceig
