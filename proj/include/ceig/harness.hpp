#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ceig/bounds.hpp"
#include "ceig/random.hpp"
#include "ceig/spectral.hpp"
#include "ceig/tensor.hpp"

namespace ceig {

struct MaterialRecord {
    std::string name;
    PiezoTensor tensor;
};

// Tensor text format:
//   # comment
//   n <dim> [strict]
//   name <label>            (optional)
//   <i> <j> <k> <value>     (1-based; omitted entries are 0)
// A single entry fills both (i,j,k) and (i,k,j). When both orders are given,
// strict files must agree exactly and other files are averaged.
MaterialRecord parse_tensor_text(std::string_view text, std::string_view fallback_name);
MaterialRecord load_material(const std::filesystem::path& path);

/// Every *.tensor file in `dir`, sorted by file name.
std::vector<MaterialRecord> load_material_dir(const std::filesystem::path& dir);

std::string format_tensor_text(const MaterialRecord& m);

enum class PerturbationSign { nonnegative, symmetric };

/// n^3 uniforms from the stream (lexicographic (i,j,k) order), scaled by epsilon,
/// then averaged over the last two indices. Entries lie in [0, eps), or in
/// [-eps, eps) for PerturbationSign::symmetric.
PiezoTensor gen_perturbation(std::size_t n, double epsilon, SplitMix64& stream,
                             PerturbationSign sign = PerturbationSign::nonnegative);

struct ExperimentConfig {
    std::vector<double> epsilons {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    int trials = 1;
    std::uint64_t seed = 1;
    SolverConfig solver;
    PerturbationSign sign = PerturbationSign::nonnegative;
    bool shared_direction = false;  // one E per (material, trial), rescaled for each epsilon
    int workers = 1;

    void validate() const;
};

struct ResultRow {
    std::string material;
    double epsilon = 0.0;
    int trial = 0;
    double true_lambda = 0.0;
    double lo21 = 0.0, hi21 = 0.0;
    double lo24 = 0.0, hi24 = 0.0;
    double lo25 = 0.0, hi25 = 0.0;
    bool nested = false;
    bool contained = false;
    // Not serialized; kept for diagnostics and property checks.
    double lambda_a = 0.0;
    double norm_e2 = 0.0;
};

/// Seed of the perturbation stream for one experiment cell. The epsilon term is
/// dropped for shared-direction runs.
std::uint64_t cell_seed(std::uint64_t seed, std::string_view material, double epsilon, int trial,
                        bool shared_direction);

/// Rows ordered by (material, epsilon descending, trial). Throws PropertyViolation
/// when any row fails containment or nesting, and rethrows solver errors with the
/// failing cell named.
std::vector<ResultRow> run_experiment(const std::vector<MaterialRecord>& materials,
                                      const ExperimentConfig& cfg);

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_markdown(const std::vector<ResultRow>& rows, std::ostream& out);

/// Reads what emit_csv writes (only the serialized columns are filled).
std::vector<ResultRow> parse_csv(std::istream& in);

} // namespace ceig
