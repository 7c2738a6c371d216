#include "ceig/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "ceig/error.hpp"
#include "ceig/random.hpp"

namespace ceig {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kZeroLambda = 1e-10;
constexpr double kClampBand = 1e-8;

// T y^2 (n x n) and T y^3 for a dense symmetric quartic, without allocation.
class QuarticKernel {
public:
    explicit QuarticKernel(const SymTensor4& t)
        : n_(t.dim()), t_(t.entries()), yy_(n_ * n_), w_(n_ * n_)
    {
    }

    std::size_t dim() const noexcept { return n_; }

    // Fills w() = T y^2 and g = T y^3; returns <y, g> = T y^4.
    double evaluate(std::span<const double> y, std::span<double> g)
    {
        const std::size_t nn = n_ * n_;
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t l = 0; l < n_; ++l) yy_[k * n_ + l] = y[k] * y[l];
        for (std::size_t ij = 0; ij < nn; ++ij) {
            const double* row = t_.data() + ij * nn;
            double s = 0.0;
            for (std::size_t kl = 0; kl < nn; ++kl) s += row[kl] * yy_[kl];
            w_[ij] = s;
        }
        double quartic = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += w_[i * n_ + j] * y[j];
            g[i] = s;
            quartic += s * y[i];
        }
        return quartic;
    }

    std::span<const double> w() const noexcept { return w_; }

private:
    std::size_t n_;
    std::span<const double> t_;
    Vector yy_;
    Vector w_;
};

// Dense solve with partial pivoting; false when numerically singular.
bool solve_dense(std::size_t n, Vector& a, Vector& b)
{
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
        if (std::abs(a[piv * n + c]) <= 1e-13 * scale) return false;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            std::swap(b[c], b[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = n; c-- > 0;) {
        double s = b[c];
        for (std::size_t k = c + 1; k < n; ++k) s -= a[c * n + k] * b[k];
        b[c] = s / a[c * n + c];
    }
    return true;
}

double residual_of(QuarticKernel& kernel, std::span<const double> y, Vector& g, double& lambda)
{
    lambda = kernel.evaluate(y, g);
    double r = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = g[i] - lambda * y[i];
        r += d * d;
    }
    return std::sqrt(r);
}

struct StartResult {
    double lambda = -std::numeric_limits<double>::infinity();
    Vector y;
    bool converged = false;
};

// Shifted symmetric higher-order power iteration from one start. With
// alpha >= 3 ||T||_F the shifted form is convex on the sphere, so T y^4 never
// decreases along the iteration.
StartResult ascend(QuarticKernel& kernel, Vector y, double alpha, double tol, int max_iters)
{
    const std::size_t n = kernel.dim();
    Vector g(n);
    double lambda = kernel.evaluate(y, g);
    StartResult out;
    for (int it = 0; it < max_iters; ++it) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = g[i] + alpha * y[i];
            nrm += y[i] * y[i];
        }
        nrm = std::sqrt(nrm);
        for (double& v : y) v /= nrm;
        const double next = kernel.evaluate(y, g);
        const bool done = std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next));
        lambda = next;
        if (done) {
            out.converged = true;
            break;
        }
    }
    out.lambda = lambda;
    out.y = std::move(y);
    return out;
}

// Newton on (T y^3 - lambda y, 1 - y'y) from a converged ascent point. Steps that
// do not shrink the residual or that lose objective value are rejected.
void polish(QuarticKernel& kernel, Vector& y, double& lambda, double scale)
{
    const std::size_t n = kernel.dim();
    const std::size_t m = n + 1;
    Vector g(n);
    Vector trial_g(n);
    double res = residual_of(kernel, y, g, lambda);
    for (int it = 0; it < 12 && res > 1e-15 * scale; ++it) {
        Vector jac(m * m, 0.0);
        Vector rhs(m, 0.0);
        const auto w = kernel.w();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) jac[i * m + j] = 3.0 * w[i * n + j];
            jac[i * m + i] -= lambda;
            jac[i * m + n] = -y[i];
            jac[n * m + i] = -y[i];
            rhs[i] = -(g[i] - lambda * y[i]);
        }
        if (!solve_dense(m, jac, rhs)) break;
        Vector candidate(n);
        for (std::size_t i = 0; i < n; ++i) candidate[i] = y[i] + rhs[i];
        const double nrm = norm2(candidate);
        if (!(nrm > 0.0)) break;
        for (double& v : candidate) v /= nrm;
        double cand_lambda = 0.0;
        const double cand_res = residual_of(kernel, candidate, trial_g, cand_lambda);
        if (!(cand_res < res) || cand_lambda < lambda - 1e-12 * scale) {
            break;
        }
        y = std::move(candidate);
        res = cand_res;
        // Keep w() consistent with y for the next Jacobian.
        residual_of(kernel, y, g, lambda);
    }
}

std::optional<ZEigenpair> z_max_attempt(const SymTensor4& t, const SolverConfig& cfg, int starts,
                                        int max_iters, double& best_residual)
{
    const std::size_t n = t.dim();
    const double fro = t.frobenius_norm();
    const auto seeds = start_vectors(n, starts, cfg.seed);
    if (fro == 0.0) {
        return ZEigenpair {0.0, seeds.front()};
    }
    const double alpha = 3.0 * fro;
    const double scale = std::max(1.0, fro);

    QuarticKernel kernel(t);
    std::optional<StartResult> best;
    Vector g(n);
    for (const Vector& s : seeds) {
        StartResult r = ascend(kernel, s, alpha, cfg.tol, max_iters);
        if (!r.converged) {
            double lam = 0.0;
            best_residual = std::min(best_residual, residual_of(kernel, r.y, g, lam));
            continue;
        }
        if (!best || r.lambda > best->lambda) best = std::move(r);
    }
    if (!best) return std::nullopt;

    ZEigenpair out {best->lambda, std::move(best->y)};
    polish(kernel, out.y, out.lambda, scale);
    const double res = residual_of(kernel, out.y, g, out.lambda);
    best_residual = std::min(best_residual, res);
    if (res > kResidualTol) return std::nullopt;
    return out;
}

Vector left_null_vector(const PiezoTensor& a, std::span<const double> y)
{
    const std::size_t n = a.dim();
    Vector m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(i, j, k) * y[k];
            m[i * n + j] = s;
        }
    Vector gram(n * n, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += m[p * n + j] * m[q * n + j];
            gram[p * n + q] = s;
        }
    return jacobi_eigen(gram, n).vector(0);
}

void check_oracle_args(std::size_t n, int resolution)
{
    if (n != 3) {
        throw UnsupportedDimension("grid oracle needs n = 3, got n = " + std::to_string(n));
    }
    if (resolution < 100) {
        throw ValidationError("grid oracle resolution must be at least 100");
    }
}

template <typename F>
void for_each_grid_node(int resolution, F&& f)
{
    const double step = std::numbers::pi / resolution;
    std::array<double, 3> y {};
    for (int b = 0; b < resolution; ++b) {
        const double theta = (b + 0.5) * step;
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        for (int a = 0; a < 2 * resolution; ++a) {
            const double phi = a * step;
            y[0] = st * std::cos(phi);
            y[1] = st * std::sin(phi);
            y[2] = ct;
            f(std::span<const double>(y));
        }
    }
}

} // namespace

void SolverConfig::validate() const
{
    if (starts < 1) throw ValidationError("solver starts must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("solver tol must be > 0");
    if (max_iters < 10) throw ValidationError("solver max_iters must be >= 10");
}

double z_residual(const SymTensor4& t, const ZEigenpair& p)
{
    Vector r = apply_cubic(t, p.y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.lambda * p.y[i];
    return norm2(r);
}

double c_residual_ayy(const PiezoTensor& a, const CEigenpair& p)
{
    Vector r = apply_yy(a, p.y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.lambda * p.x[i];
    return norm2(r);
}

double c_residual_xay(const PiezoTensor& a, const CEigenpair& p)
{
    Vector r = apply_xay(a, p.x, p.y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.lambda * p.y[i];
    return norm2(r);
}

std::vector<Vector> start_vectors(std::size_t n, int starts, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(starts) + n);
    for (int s = 0; s < starts; ++s) out.push_back(rng.unit_vector(n));
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = 1.0;
        out.push_back(std::move(e));
    }
    return out;
}

ZEigenpair z_max(const SymTensor4& t, const SolverConfig& cfg)
{
    cfg.validate();
    double best_residual = std::numeric_limits<double>::infinity();
    if (auto r = z_max_attempt(t, cfg, cfg.starts, cfg.max_iters, best_residual)) return *r;
    if (auto r = z_max_attempt(t, cfg, 2 * cfg.starts, 2 * cfg.max_iters, best_residual)) return *r;
    throw NoConvergence("z_max: no start converged (best residual " + std::to_string(best_residual) + ")",
                        best_residual);
}

ZEigenpair z_min(const SymTensor4& t, const SolverConfig& cfg)
{
    ZEigenpair p = z_max(t.negated(), cfg);
    p.lambda = -p.lambda;
    return p;
}

CEigenpair c_max_via_lift(const PiezoTensor& a, const SolverConfig& cfg)
{
    const ZEigenpair z = z_max(lift(a), cfg);
    double mu = z.lambda;
    if (mu < 0.0) {
        if (mu < -kClampBand) {
            throw PropertyViolation("c_max_via_lift: lifted tensor has Z-eigenvalue " + std::to_string(mu) +
                                    " < 0");
        }
        mu = 0.0;
    }

    CEigenpair out;
    out.lambda = std::sqrt(mu);
    out.y = z.y;
    if (out.lambda > kZeroLambda) {
        out.x = apply_yy(a, out.y);
        for (double& v : out.x) v /= out.lambda;
    } else {
        out.x = left_null_vector(a, out.y);
    }

    const double r1 = c_residual_ayy(a, out);
    const double r2 = c_residual_xay(a, out);
    if (r1 > kResidualTol || r2 > kResidualTol) {
        throw NoConvergence("c_max_via_lift: C-eigen residuals " + std::to_string(r1) + ", " +
                                std::to_string(r2),
                            std::max(r1, r2));
    }
    return out;
}

CEigenpair c_max_alternating(const PiezoTensor& a, const SolverConfig& cfg)
{
    cfg.validate();
    const std::size_t n = a.dim();
    const auto seeds = start_vectors(n, cfg.starts, cfg.seed);
    if (a.frobenius_norm() == 0.0) {
        Vector x(n, 0.0);
        x[0] = 1.0;
        return CEigenpair {0.0, std::move(x), seeds.front()};
    }

    Vector nx(n * n);
    auto build_n = [&](std::span<const double> x) {
        // N(x)_{jk} = sum_i a_{ijk} x_i, symmetric.
        double fro = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += a(i, j, k) * x[i];
                nx[j * n + k] = s;
                fro += s * s;
            }
        return std::sqrt(fro);
    };
    auto ayy = [&](std::span<const double> y, Vector& g) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) s += a(i, j, k) * y[j] * y[k];
            g[i] = s;
            s2 += s * s;
        }
        return std::sqrt(s2);
    };

    std::optional<CEigenpair> best;
    double best_residual = std::numeric_limits<double>::infinity();
    Vector g(n);
    Vector v(n);
    for (const Vector& start : seeds) {
        Vector y = start;
        Vector x(n, 0.0);
        double f = ayy(y, g);
        if (f > 0.0) {
            for (std::size_t i = 0; i < n; ++i) x[i] = g[i] / f;
        } else {
            x[0] = 1.0;
        }
        bool converged = false;
        double residual = std::numeric_limits<double>::infinity();
        for (int it = 0; it < cfg.max_iters; ++it) {
            const double shift = build_n(x);
            double nrm = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double s = shift * y[j];
                for (std::size_t k = 0; k < n; ++k) s += nx[j * n + k] * y[k];
                v[j] = s;
                nrm += s * s;
            }
            nrm = std::sqrt(nrm);
            if (!(nrm > 0.0)) break;
            for (std::size_t j = 0; j < n; ++j) y[j] = v[j] / nrm;

            const double next = ayy(y, g);
            if (!(next > 0.0)) break;
            for (std::size_t i = 0; i < n; ++i) x[i] = g[i] / next;

            // x A y - lambda y with the updated pair.
            build_n(x);
            double r2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double s = -next * y[j];
                for (std::size_t k = 0; k < n; ++k) s += nx[j * n + k] * y[k];
                r2 += s * s;
            }
            residual = std::sqrt(r2);
            const bool stalled = next - f <= cfg.tol * std::max(1.0, next);
            f = next;
            if (stalled && residual <= 0.1 * kResidualTol) {
                converged = true;
                break;
            }
        }
        best_residual = std::min(best_residual, residual);
        if (!converged) continue;
        if (!best || f > best->lambda) best = CEigenpair {f, x, y};
    }
    if (!best) {
        throw NoConvergence("c_max_alternating: no start converged (best residual " +
                                std::to_string(best_residual) + ")",
                            best_residual);
    }
    return *best;
}

GridExtremes grid_oracle_z(const SymTensor4& t, int resolution)
{
    check_oracle_args(t.dim(), resolution);
    QuarticKernel kernel(t);
    Vector g(3);
    GridExtremes out {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for_each_grid_node(resolution, [&](std::span<const double> y) {
        const double q = kernel.evaluate(y, g);
        out.min = std::min(out.min, q);
        out.max = std::max(out.max, q);
    });
    return out;
}

double grid_oracle_c(const PiezoTensor& a, int resolution)
{
    check_oracle_args(a.dim(), resolution);
    double best = 0.0;
    for_each_grid_node(resolution, [&](std::span<const double> y) {
        double s2 = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k) s += a(i, j, k) * y[j] * y[k];
            s2 += s * s;
        }
        best = std::max(best, s2);
    });
    return std::sqrt(best);
}

} // namespace ceig
