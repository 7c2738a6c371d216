#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ceig/linalg.hpp"

namespace ceig {

enum class SymmetryMode { strict, auto_symmetrize };

/// Third-order tensor a_{ijk} with a_{ijk} == a_{ikj} (bitwise) for all indices.
/// Dense row-major storage: entry (i, j, k) lives at (i * n + j) * n + k.
class PiezoTensor {
public:
    /// Strict mode rejects any raw_{ijk} != raw_{ikj}; auto_symmetrize averages the pair.
    static PiezoTensor make(std::size_t n, std::span<const double> raw, SymmetryMode mode);
    static PiezoTensor zero(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept
    {
        return entries_[(i * n_ + j) * n_ + k];
    }
    std::span<const double> entries() const noexcept { return entries_; }

    /// Horizontal slice A(i,:,:) as a row-major n x n symmetric matrix.
    Vector slice(std::size_t i) const;

    double frobenius_norm() const;
    PiezoTensor scaled(double t) const;

    friend PiezoTensor operator+(const PiezoTensor& a, const PiezoTensor& b);
    friend bool operator==(const PiezoTensor&, const PiezoTensor&) = default;

private:
    PiezoTensor(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {}

    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// Fully symmetric fourth-order tensor stored densely (n^4 entries, row-major).
class SymTensor4 {
public:
    /// Throws SymmetryViolation unless raw is invariant under all index permutations.
    static SymTensor4 from_entries(std::size_t n, std::span<const double> raw);
    static SymTensor4 zero(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept
    {
        return entries_[((i * n_ + j) * n_ + k) * n_ + l];
    }
    std::span<const double> entries() const noexcept { return entries_; }

    double frobenius_norm() const;
    SymTensor4 negated() const;
    bool is_symmetric() const;

    friend SymTensor4 operator-(const SymTensor4& a, const SymTensor4& b);
    friend SymTensor4 lift(const PiezoTensor& a);
    friend bool operator==(const SymTensor4&, const SymTensor4&) = default;

private:
    SymTensor4(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {}

    std::size_t n_ = 0;
    std::vector<double> entries_;
};

inline PiezoTensor make_piezo(std::size_t n, std::span<const double> raw, SymmetryMode mode)
{
    return PiezoTensor::make(n, raw, mode);
}

/// (A y y)_i = sum_{j,k} a_{ijk} y_j y_k
Vector apply_yy(const PiezoTensor& a, std::span<const double> y);

/// (x A y)_i = sum_{j,k} a_{jki} x_j y_k
Vector apply_xay(const PiezoTensor& a, std::span<const double> x, std::span<const double> y);

/// x A y y = sum a_{ijk} x_i y_j y_k. Cross-checked against <y, x A y>.
double form_xayy(const PiezoTensor& a, std::span<const double> x, std::span<const double> y);

/// Symmetric quartic S_A: b_{pqrs} = sum_i a_{ipq} a_{irs}, then averaged over the
/// three index pairings. Exactly symmetric: each orbit is computed once and copied.
SymTensor4 lift(const PiezoTensor& a);

/// T y^4 by full quadruple summation.
double eval_quartic(const SymTensor4& t, std::span<const double> y);

/// (T y^3)_i = sum_{j,k,l} t_{ijkl} y_j y_k y_l
Vector apply_cubic(const SymTensor4& t, std::span<const double> y);

inline SymTensor4 sub(const SymTensor4& a, const SymTensor4& b) { return a - b; }

/// Largest singular value of [E(1,:,:) ... E(n,:,:)], via the n x n Gram matrix.
double unfold_spectral_norm(const PiezoTensor& e);

} // namespace ceig
