#include "ceig/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ceig/error.hpp"

namespace ceig {

namespace {

void check_vector(const char* what, std::span<const double> v, std::size_t n)
{
    if (v.size() != n) {
        throw DimensionMismatch(std::string(what) + ": vector length " + std::to_string(v.size()) +
                                ", tensor dimension " + std::to_string(n));
    }
    for (double x : v) {
        if (!std::isfinite(x)) throw NonFinite(std::string(what) + ": non-finite vector entry");
    }
}

std::size_t ipow(std::size_t n, int p)
{
    std::size_t r = 1;
    while (p-- > 0) r *= n;
    return r;
}

std::string index_label(std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

} // namespace

PiezoTensor PiezoTensor::make(std::size_t n, std::span<const double> raw, SymmetryMode mode)
{
    if (n == 0) throw BadLength("piezo tensor dimension must be at least 1");
    if (raw.size() != ipow(n, 3)) {
        throw BadLength("piezo tensor of dimension " + std::to_string(n) + " needs " +
                        std::to_string(ipow(n, 3)) + " entries, got " + std::to_string(raw.size()));
    }
    for (double x : raw) {
        if (!std::isfinite(x)) throw NonFinite("piezo tensor has a non-finite entry");
    }

    std::vector<double> e(raw.begin(), raw.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const double a = raw[(i * n + j) * n + k];
                const double b = raw[(i * n + k) * n + j];
                if (mode == SymmetryMode::strict) {
                    if (a != b) {
                        throw SymmetryViolation("entries " + index_label(i, j, k) + " and " +
                                                index_label(i, k, j) + " differ");
                    }
                } else {
                    const double avg = (a + b) / 2.0;
                    e[(i * n + j) * n + k] = avg;
                    e[(i * n + k) * n + j] = avg;
                }
            }
        }
    }
    return PiezoTensor(n, std::move(e));
}

PiezoTensor PiezoTensor::zero(std::size_t n)
{
    if (n == 0) throw BadLength("piezo tensor dimension must be at least 1");
    return PiezoTensor(n, std::vector<double>(ipow(n, 3), 0.0));
}

Vector PiezoTensor::slice(std::size_t i) const
{
    const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(i * n_ * n_);
    return Vector(first, first + static_cast<std::ptrdiff_t>(n_ * n_));
}

double PiezoTensor::frobenius_norm() const
{
    return norm2(entries_);
}

PiezoTensor PiezoTensor::scaled(double t) const
{
    std::vector<double> e = entries_;
    for (double& x : e) x *= t;
    return PiezoTensor(n_, std::move(e));
}

PiezoTensor operator+(const PiezoTensor& a, const PiezoTensor& b)
{
    if (a.n_ != b.n_) throw DimensionMismatch("piezo tensor sum: dimensions differ");
    std::vector<double> e(a.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] + b.entries_[i];
    return PiezoTensor(a.n_, std::move(e));
}

SymTensor4 SymTensor4::from_entries(std::size_t n, std::span<const double> raw)
{
    if (n == 0) throw BadLength("quartic tensor dimension must be at least 1");
    if (raw.size() != ipow(n, 4)) {
        throw BadLength("quartic tensor of dimension " + std::to_string(n) + " needs " +
                        std::to_string(ipow(n, 4)) + " entries");
    }
    for (double x : raw) {
        if (!std::isfinite(x)) throw NonFinite("quartic tensor has a non-finite entry");
    }
    SymTensor4 t(n, std::vector<double>(raw.begin(), raw.end()));
    if (!t.is_symmetric()) throw SymmetryViolation("quartic tensor is not fully symmetric");
    return t;
}

SymTensor4 SymTensor4::zero(std::size_t n)
{
    if (n == 0) throw BadLength("quartic tensor dimension must be at least 1");
    return SymTensor4(n, std::vector<double>(ipow(n, 4), 0.0));
}

double SymTensor4::frobenius_norm() const
{
    return norm2(entries_);
}

SymTensor4 SymTensor4::negated() const
{
    std::vector<double> e = entries_;
    for (double& x : e) x = -x;
    return SymTensor4(n_, std::move(e));
}

bool SymTensor4::is_symmetric() const
{
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    std::array<std::size_t, 4> idx {i, j, k, l};
                    const double ref = (*this)(i, j, k, l);
                    std::sort(idx.begin(), idx.end());
                    do {
                        if ((*this)(idx[0], idx[1], idx[2], idx[3]) != ref) return false;
                    } while (std::next_permutation(idx.begin(), idx.end()));
                }
    return true;
}

SymTensor4 operator-(const SymTensor4& a, const SymTensor4& b)
{
    if (a.n_ != b.n_) throw DimensionMismatch("quartic tensor difference: dimensions differ");
    std::vector<double> e(a.entries_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] - b.entries_[i];
    return SymTensor4(a.n_, std::move(e));
}

SymTensor4 lift(const PiezoTensor& a)
{
    const std::size_t n = a.dim();
    auto partial = [&](std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += a(i, p, q) * a(i, r, s);
        return sum;
    };

    std::vector<double> e(ipow(n, 4), 0.0);
    auto at = [n](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return ((i * n + j) * n + k) * n + l;
    };

    // Orbit representatives first, then every permutation copies its representative.
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p; q < n; ++q)
            for (std::size_t r = q; r < n; ++r)
                for (std::size_t s = r; s < n; ++s)
                    e[at(p, q, r, s)] = (partial(p, q, r, s) + partial(p, r, q, s) + partial(p, s, q, r)) / 3.0;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    std::array<std::size_t, 4> idx {i, j, k, l};
                    std::sort(idx.begin(), idx.end());
                    e[at(i, j, k, l)] = e[at(idx[0], idx[1], idx[2], idx[3])];
                }
    return SymTensor4(n, std::move(e));
}

Vector apply_yy(const PiezoTensor& a, std::span<const double> y)
{
    const std::size_t n = a.dim();
    check_vector("apply_yy", y, n);
    Vector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) s += a(i, j, k) * y[j] * y[k];
        out[i] = s;
    }
    return out;
}

Vector apply_xay(const PiezoTensor& a, std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = a.dim();
    check_vector("apply_xay", x, n);
    check_vector("apply_xay", y, n);
    Vector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) s += a(j, k, i) * x[j] * y[k];
        out[i] = s;
    }
    return out;
}

double form_xayy(const PiezoTensor& a, std::span<const double> x, std::span<const double> y)
{
    const double via_yy = dot(x, apply_yy(a, y));
    const double via_xay = dot(y, apply_xay(a, x, y));
    const double scale = std::max({1.0, std::abs(via_yy), a.frobenius_norm() * norm2(x) * dot(y, y)});
    if (std::abs(via_yy - via_xay) > 1e-12 * scale) {
        throw PropertyViolation("form_xayy: contraction routes disagree");
    }
    return via_yy;
}

double eval_quartic(const SymTensor4& t, std::span<const double> y)
{
    const std::size_t n = t.dim();
    check_vector("eval_quartic", y, n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) sum += t(i, j, k, l) * y[i] * y[j] * y[k] * y[l];
    return sum;
}

Vector apply_cubic(const SymTensor4& t, std::span<const double> y)
{
    const std::size_t n = t.dim();
    check_vector("apply_cubic", y, n);
    Vector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) s += t(i, j, k, l) * y[j] * y[k] * y[l];
        out[i] = s;
    }
    return out;
}

double unfold_spectral_norm(const PiezoTensor& e)
{
    const std::size_t n = e.dim();
    const std::size_t nn = n * n;
    const auto entries = e.entries();
    // G = M M^T for the n x n^2 slice unfolding; its spectrum does not depend on
    // how the slices are laid side by side.
    Vector gram(nn, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p; q < n; ++q) {
            double s = 0.0;
            for (std::size_t m = 0; m < nn; ++m) s += entries[p * nn + m] * entries[q * nn + m];
            gram[p * n + q] = s;
            gram[q * n + p] = s;
        }
    const SymmetricEigen eig = jacobi_eigen(gram, n, 1e-12);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

} // namespace ceig
