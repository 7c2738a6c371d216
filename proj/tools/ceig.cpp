// ceig: largest C-eigenvalue of piezoelectric-type tensors and its perturbation bounds.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ceig/bounds.hpp"
#include "ceig/error.hpp"
#include "ceig/harness.hpp"
#include "ceig/spectral.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInvalid = 2, kNoConvergence = 3, kPropertyViolation = 4 };

void add_solver_flags(CLI::App& cmd, ceig::SolverConfig& cfg, const std::string& seed_flag)
{
    cmd.add_option("--starts", cfg.starts, "random starts per solve")->check(CLI::PositiveNumber);
    cmd.add_option("--tol", cfg.tol, "eigenvalue stagnation tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--max-iters", cfg.max_iters, "iteration cap per start")->check(CLI::Range(10, 1 << 30));
    cmd.add_option(seed_flag, cfg.seed, "seed for solver start vectors");
}

std::string vec_str(const ceig::Vector& v)
{
    std::string out;
    char buf[40];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%s%.12f", out.empty() ? "" : " ", x);
        out += buf;
    }
    return out;
}

void print_interval(const char* label, const ceig::Interval& iv)
{
    std::printf("%-12s [%.12f, %.12f]  width %.6e\n", label, iv.lo, iv.hi, iv.width());
}

int cmd_compute(const std::string& path, const ceig::SolverConfig& cfg)
{
    const auto m = ceig::load_material(path);
    const auto p = ceig::c_max_via_lift(m.tensor, cfg);
    std::printf("material      %s\n", m.name.c_str());
    std::printf("lambda        %.12f\n", p.lambda);
    std::printf("x             %s\n", vec_str(p.x).c_str());
    std::printf("y             %s\n", vec_str(p.y).c_str());
    std::printf("residual_ayy  %.3e\n", ceig::c_residual_ayy(m.tensor, p));
    std::printf("residual_xay  %.3e\n", ceig::c_residual_xay(m.tensor, p));
    return kOk;
}

int cmd_bounds(const std::string& a_path, const std::string& e_path, const ceig::SolverConfig& cfg)
{
    const auto a = ceig::load_material(a_path);
    const auto e = ceig::load_material(e_path);
    const auto r = ceig::full_report(a.tensor, e.tensor, cfg);
    const double truth = ceig::c_max_via_lift(a.tensor + e.tensor, cfg).lambda;
    std::printf("lambda_a      %.12f\n", r.lambda_a);
    std::printf("lambda_e      %.12f\n", r.lambda_e);
    std::printf("norm_e2       %.12f\n", r.norm_e2);
    std::printf("zmin_diff     %.12e\n", r.zmin_diff);
    std::printf("zmax_diff     %.12e\n", r.zmax_diff);
    print_interval("additive", r.interval_21);
    print_interval("spectral", r.interval_24);
    print_interval("quadratic", r.interval_25);
    std::printf("lambda_a+e    %.12f\n", truth);
    const bool nested = ceig::check_nesting(r);
    const bool contained = ceig::check_containment(r, truth);
    std::printf("nested        %s\n", nested ? "true" : "false");
    std::printf("contained     %s\n", contained ? "true" : "false");
    return nested && contained ? kOk : kPropertyViolation;
}

int cmd_experiment(const std::string& dir, const ceig::ExperimentConfig& cfg, const std::string& csv_path,
                   const std::string& md_path)
{
    const auto materials = ceig::load_material_dir(dir);
    if (materials.empty()) throw ceig::ValidationError("no *.tensor files in " + dir);
    const auto rows = ceig::run_experiment(materials, cfg);

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + csv_path);
    ceig::emit_csv(rows, csv);
    if (!md_path.empty()) {
        std::ofstream md(md_path, std::ios::binary);
        if (!md) throw std::runtime_error("cannot write " + md_path);
        ceig::emit_markdown(rows, md);
    }
    std::fprintf(stderr, "%zu rows, all contained and nested\n", rows.size());
    return kOk;
}

int cmd_oracle(const std::string& path, int resolution)
{
    const auto m = ceig::load_material(path);
    const auto z = ceig::grid_oracle_z(ceig::lift(m.tensor), resolution);
    const double c = ceig::grid_oracle_c(m.tensor, resolution);
    std::printf("material        %s\n", m.name.c_str());
    std::printf("resolution      %d\n", resolution);
    std::printf("c_max_grid      %.12f\n", c);
    std::printf("z_max_lift_grid %.12f\n", z.max);
    std::printf("z_min_lift_grid %.12f\n", z.min);
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app {"Largest C-eigenvalue of piezoelectric-type tensors and its perturbation bounds"};
    app.require_subcommand(1);

    ceig::SolverConfig solver;

    auto* compute = app.add_subcommand("compute", "largest C-eigenpair of one tensor");
    std::string tensor_path;
    compute->add_option("tensor", tensor_path, "tensor file")->required()->check(CLI::ExistingFile);
    add_solver_flags(*compute, solver, "--seed");

    auto* bounds = app.add_subcommand("bounds", "perturbation intervals for A + E");
    std::string a_path, e_path;
    bounds->add_option("A", a_path, "unperturbed tensor file")->required()->check(CLI::ExistingFile);
    bounds->add_option("E", e_path, "perturbation tensor file")->required()->check(CLI::ExistingFile);
    add_solver_flags(*bounds, solver, "--seed");

    auto* experiment = app.add_subcommand("experiment", "seeded perturbation experiment over a material set");
    ceig::ExperimentConfig exp;
    std::string materials_dir, csv_path, md_path;
    bool signed_perturbation = false;
    experiment->add_option("--materials", materials_dir, "directory of *.tensor files")
        ->required()
        ->check(CLI::ExistingDirectory);
    experiment->add_option("--eps", exp.epsilons, "perturbation magnitudes")->delimiter(',');
    experiment->add_option("--trials", exp.trials, "trials per (material, epsilon) cell")->check(CLI::PositiveNumber);
    experiment->add_option("--seed", exp.seed, "experiment seed");
    experiment->add_option("--csv", csv_path, "CSV output path")->required();
    experiment->add_option("--md", md_path, "Markdown output path");
    experiment->add_flag("--signed", signed_perturbation, "draw perturbation entries from [-eps, eps)");
    experiment->add_flag("--shared-direction", exp.shared_direction, "rescale one perturbation across epsilons");
    experiment->add_option("--workers", exp.workers, "worker threads")->check(CLI::PositiveNumber);
    add_solver_flags(*experiment, solver, "--solver-seed");

    auto* oracle = app.add_subcommand("oracle", "sphere-grid reference values (n = 3)");
    int resolution = 800;
    oracle->add_option("tensor", tensor_path, "tensor file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--resolution", resolution, "polar grid nodes")->check(CLI::Range(100, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*compute) return cmd_compute(tensor_path, solver);
        if (*bounds) return cmd_bounds(a_path, e_path, solver);
        if (*experiment) {
            exp.solver = solver;
            exp.sign = signed_perturbation ? ceig::PerturbationSign::symmetric : ceig::PerturbationSign::nonnegative;
            return cmd_experiment(materials_dir, exp, csv_path, md_path);
        }
        if (*oracle) return cmd_oracle(tensor_path, resolution);
    } catch (const ceig::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ceig::NoConvergence& e) {
        std::cerr << "solver did not converge: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const ceig::PropertyViolation& e) {
        std::cerr << "property violation: " << e.what() << '\n';
        return kPropertyViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
