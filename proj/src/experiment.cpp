#include "ceig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "ceig/error.hpp"

namespace ceig {

PiezoTensor gen_perturbation(std::size_t n, double epsilon, SplitMix64& stream, PerturbationSign sign)
{
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw NegativeInput("perturbation epsilon must be finite and nonnegative");
    }
    std::vector<double> raw(n * n * n);
    for (double& v : raw) {
        const double u = stream.uniform();
        v = sign == PerturbationSign::nonnegative ? epsilon * u : epsilon * (2.0 * u - 1.0);
    }
    return PiezoTensor::make(n, raw, SymmetryMode::auto_symmetrize);
}

void ExperimentConfig::validate() const
{
    if (epsilons.empty()) throw ValidationError("no epsilon values given");
    for (double e : epsilons) {
        if (!(e >= 0.0) || !std::isfinite(e)) throw ValidationError("epsilon values must be finite and >= 0");
    }
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (workers < 1) throw ValidationError("workers must be >= 1");
    solver.validate();
}

std::uint64_t cell_seed(std::uint64_t seed, std::string_view material, double epsilon, int trial,
                        bool shared_direction)
{
    std::uint64_t h = hash_combine(seed, hash_string(material));
    if (!shared_direction) h = hash_combine(h, std::bit_cast<std::uint64_t>(epsilon));
    return hash_combine(h, static_cast<std::uint64_t>(trial));
}

namespace {

struct Cell {
    std::size_t material = 0;
    double epsilon = 0.0;
    int trial = 0;
};

std::string cell_label(const std::string& material, const Cell& c)
{
    std::ostringstream s;
    s << "[material " << material << ", epsilon " << c.epsilon << ", trial " << c.trial << "] ";
    return s.str();
}

ResultRow run_cell(const MaterialRecord& m, const Cell& c, const ExperimentConfig& cfg)
{
    SplitMix64 stream(cell_seed(cfg.seed, m.name, c.epsilon, c.trial, cfg.shared_direction));
    const PiezoTensor e = gen_perturbation(m.tensor.dim(), c.epsilon, stream, cfg.sign);
    const BoundReport r = full_report(m.tensor, e, cfg.solver);
    const double truth = c_max_via_lift(m.tensor + e, cfg.solver).lambda;

    ResultRow row;
    row.material = m.name;
    row.epsilon = c.epsilon;
    row.trial = c.trial;
    row.true_lambda = truth;
    row.lo21 = r.interval_21.lo;
    row.hi21 = r.interval_21.hi;
    row.lo24 = r.interval_24.lo;
    row.hi24 = r.interval_24.hi;
    row.lo25 = r.interval_25.lo;
    row.hi25 = r.interval_25.hi;
    row.nested = check_nesting(r);
    row.contained = check_containment(r, truth);
    row.lambda_a = r.lambda_a;
    row.norm_e2 = r.norm_e2;
    return row;
}

// Re-raise with the failing cell named, keeping the error category.
[[noreturn]] void rethrow_with_context(std::exception_ptr ep, const std::string& ctx)
{
    try {
        std::rethrow_exception(ep);
    } catch (const NoConvergence& e) {
        throw NoConvergence(ctx + e.what(), e.best_residual());
    } catch (const PropertyViolation& e) {
        throw PropertyViolation(ctx + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(ctx + e.what());
    }
}

} // namespace

std::vector<ResultRow> run_experiment(const std::vector<MaterialRecord>& materials, const ExperimentConfig& cfg)
{
    cfg.validate();
    for (const auto& m : materials) {
        if (m.tensor.dim() != materials.front().tensor.dim()) {
            throw DimensionMismatch("materials " + materials.front().name + " and " + m.name +
                                    " have different dimensions");
        }
    }

    std::vector<double> eps = cfg.epsilons;
    std::stable_sort(eps.begin(), eps.end(), std::greater<>());

    std::vector<Cell> cells;
    for (std::size_t m = 0; m < materials.size(); ++m)
        for (double e : eps)
            for (int t = 0; t < cfg.trials; ++t) cells.push_back({m, e, t});

    std::vector<ResultRow> rows(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next {0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                rows[i] = run_cell(materials[cells[i].material], cells[i], cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), cells.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (errors[i]) rethrow_with_context(errors[i], cell_label(materials[cells[i].material].name, cells[i]));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const ResultRow& r = rows[i];
        if (!r.contained || !r.nested) {
            std::ostringstream s;
            s.precision(17);
            s << cell_label(r.material, cells[i]) << (r.contained ? "" : "containment failed; ")
              << (r.nested ? "" : "nesting failed; ") << "true " << r.true_lambda << ", additive [" << r.lo21
              << ", " << r.hi21 << "], spectral [" << r.lo24 << ", " << r.hi24 << "], quadratic [" << r.lo25
              << ", " << r.hi25 << "]";
            throw PropertyViolation(s.str());
        }
    }
    return rows;
}

} // namespace ceig
