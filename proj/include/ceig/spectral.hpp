#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ceig/linalg.hpp"
#include "ceig/tensor.hpp"

namespace ceig {

struct SolverConfig {
    int starts = 50;
    double tol = 1e-12;
    int max_iters = 5000;
    std::uint64_t seed = 0;

    /// Throws ValidationError when starts < 1, tol <= 0 or max_iters < 10.
    void validate() const;
};

/// Real pair with T y^3 = lambda y and ||y|| = 1.
struct ZEigenpair {
    double lambda = 0.0;
    Vector y;
};

/// lambda >= 0, A y y = lambda x, x A y = lambda y, ||x|| = ||y|| = 1.
struct CEigenpair {
    double lambda = 0.0;
    Vector x;
    Vector y;
};

struct GridExtremes {
    double min = 0.0;
    double max = 0.0;
};

// Residual norms of the defining equations.
double z_residual(const SymTensor4& t, const ZEigenpair& p);
double c_residual_ayy(const PiezoTensor& a, const CEigenpair& p);
double c_residual_xay(const PiezoTensor& a, const CEigenpair& p);

/// Deterministic start set: cfg.starts seeded unit vectors, then e_1 ... e_n.
std::vector<Vector> start_vectors(std::size_t n, int starts, std::uint64_t seed);

/// Largest Z-eigenvalue by multi-start shifted symmetric higher-order power iteration
/// with a Newton polish of the winning start.
ZEigenpair z_max(const SymTensor4& t, const SolverConfig& cfg = {});

/// Smallest Z-eigenvalue, computed as -z_max(-T).
ZEigenpair z_min(const SymTensor4& t, const SolverConfig& cfg = {});

/// Largest C-eigenpair through the Z-eigenproblem of lift(A).
CEigenpair c_max_via_lift(const PiezoTensor& a, const SolverConfig& cfg = {});

/// Largest C-eigenpair by block ascent on max x A y y over the product of spheres.
/// Shares nothing with the lifted route except the start vectors.
CEigenpair c_max_alternating(const PiezoTensor& a, const SolverConfig& cfg = {});

/// Extremes of T y^4 over a 2R x R (azimuth x polar) grid on S^2, polar nodes at
/// cell centres. n must be 3, resolution >= 100.
GridExtremes grid_oracle_z(const SymTensor4& t, int resolution);

/// max ||A y y|| over the same grid as grid_oracle_z.
double grid_oracle_c(const PiezoTensor& a, int resolution);

} // namespace ceig
