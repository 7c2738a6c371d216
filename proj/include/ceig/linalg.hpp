#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ceig {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Returns a / ||a||. Throws ValidationError on a zero vector.
Vector normalized(std::span<const double> a);

/// Eigendecomposition of a small dense symmetric matrix by cyclic Jacobi rotations.
/// `values` ascend; column j of the row-major `vectors` belongs to values[j].
struct SymmetricEigen {
    std::size_t n = 0;
    Vector values;
    Vector vectors;

    Vector vector(std::size_t j) const;
};

SymmetricEigen jacobi_eigen(std::span<const double> a, std::size_t n, double tol = 1e-12);

} // namespace ceig
