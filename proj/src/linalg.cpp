#include "ceig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ceig/error.hpp"

namespace ceig {

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw DimensionMismatch("dot: lengths " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    }
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

Vector normalized(std::span<const double> a)
{
    const double nrm = norm2(a);
    if (!(nrm > 0.0)) {
        throw ValidationError("cannot normalize a zero vector");
    }
    Vector out(a.begin(), a.end());
    for (double& v : out) v /= nrm;
    return out;
}

Vector SymmetricEigen::vector(std::size_t j) const
{
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = vectors[i * n + j];
    return v;
}

SymmetricEigen jacobi_eigen(std::span<const double> a, std::size_t n, double tol)
{
    if (a.size() != n * n) {
        throw BadLength("jacobi_eigen: expected " + std::to_string(n * n) + " entries");
    }
    Vector m(a.begin(), a.end());
    Vector v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double total = 0.0;
    for (double x : m) total += x * x;
    const double threshold = tol * std::sqrt(total);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * m[p * n + q] * m[p * n + q];
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m[p * n + q];
                if (apq == 0.0) continue;
                const double app = m[p * n + p];
                const double aqq = m[q * n + q];
                // Rotation angle annihilating (p, q), taking the smaller root.
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m[k * n + p];
                    const double mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m[p * n + k];
                    const double mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m[i * n + i] < m[j * n + j]; });

    SymmetricEigen out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = m[order[j] * n + order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + j] = v[i * n + order[j]];
    }
    return out;
}

} // namespace ceig
