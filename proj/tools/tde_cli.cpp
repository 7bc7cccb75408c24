// tde: estimate a density on [-pi, pi]^d from samples.
//
//   tde generate --gaussian --mean 0,0 --cov 0.25,0.2,0.75 --m 400 --seed 7 --output run
//   tde estimate --input run/data.csv --config solver.json --output run
//   tde evaluate --coeffs run/coefficients.json --grid 128 --output run
//   tde moments  --coeffs run/coefficients.json
//
// Exit codes: 0 success, 2 input error, 3 numerical failure (no convergence,
// degenerate estimate).

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tde/density.hpp"
#include "tde/empirical.hpp"
#include "tde/errors.hpp"
#include "tde/io.hpp"
#include "tde/solver.hpp"
#include "tde/synth.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kInputError = 2, kNumericalError = 3 };

struct GlobalOptions {
    std::string config;
    std::string output = ".";
    std::uint64_t seed = 1;
    int grid = 128;
    std::vector<std::string> argv;
};

std::string timestamp()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

tde::Json manifest(const GlobalOptions& g, const std::string& command, const tde::Json& extra)
{
    tde::Json m{{"tool", "tde"}, {"version", kVersion}, {"command", command}, {"argv", g.argv}, {"timestamp", timestamp()}};
    for (const auto& [k, v] : extra.items()) m[k] = v;
    return m;
}

fs::path output_dir(const GlobalOptions& g)
{
    fs::path dir(g.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw tde::InputError("cannot create output directory " + dir.string());
    return dir;
}

tde::SolverConfig load_config(const GlobalOptions& g)
{
    if (g.config.empty()) return {};
    return tde::solver_config_from_json(tde::read_json_file(g.config));
}

Eigen::MatrixXd parse_covariance(const std::vector<double>& values, int d)
{
    Eigen::MatrixXd cov(d, d);
    const auto n = static_cast<int>(values.size());
    if (n == d * d) {
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) cov(r, c) = values[static_cast<std::size_t>(r * d + c)];
    } else if (n == d * (d + 1) / 2) {
        std::size_t i = 0;
        for (int r = 0; r < d; ++r)
            for (int c = r; c < d; ++c) cov(r, c) = cov(c, r) = values[i++];
    } else {
        throw tde::InputError("--cov needs d*d entries or the d*(d+1)/2 upper-triangle entries");
    }
    return cov;
}

struct GenerateOptions {
    bool gaussian = false;
    bool uniform = false;
    int dim = 2;
    std::vector<double> mean;
    std::vector<double> cov;
    long long m = 0;
};

int run_generate(const GlobalOptions& g, const GenerateOptions& o)
{
    if (o.m < 1) throw tde::InputError("--m must be >= 1");
    if (o.gaussian == o.uniform) throw tde::InputError("choose exactly one of --gaussian and --uniform");
    const auto m = static_cast<std::size_t>(o.m);
    tde::Json spec;
    std::optional<tde::Dataset> data;
    if (o.gaussian) {
        if (o.mean.empty()) throw tde::InputError("--gaussian needs --mean");
        const int d = static_cast<int>(o.mean.size());
        tde::GaussianSpec gs{Eigen::Map<const Eigen::VectorXd>(o.mean.data(), d), parse_covariance(o.cov, d)};
        data.emplace(tde::sample_truncated_gaussian(gs, m, g.seed));
        spec = {{"distribution", "truncated_gaussian"}, {"mean", o.mean}, {"cov", o.cov}};
    } else {
        data.emplace(tde::sample_uniform(o.dim, m, g.seed));
        spec = {{"distribution", "uniform"}, {"dim", o.dim}};
    }
    const auto dir = output_dir(g);
    std::ofstream csv(dir / "data.csv");
    tde::write_dataset_csv(csv, *data);
    tde::write_json_file(dir / "data.manifest.json",
                         manifest(g, "generate", {{"seed", g.seed}, {"m", m}, {"spec", spec}, {"outputs", {"data.csv"}}}));
    std::cout << "wrote " << m << " samples to " << (dir / "data.csv").string() << '\n';
    return kOk;
}

struct EstimateOptions {
    std::string input;
    std::string moments;
};

int run_estimate(const GlobalOptions& g, const EstimateOptions& o)
{
    if (o.input.empty() == o.moments.empty()) throw tde::InputError("give exactly one of --input and --moments");
    const auto config = load_config(g);
    auto load_moments = [&]() {
        if (!o.moments.empty()) return tde::moment_field_from_json(tde::read_json_file(o.moments));
        const auto data = tde::read_dataset_csv(fs::path(o.input));
        return tde::empirical_moments(data, tde::Window(data.dim(), config.n1));
    };
    const tde::MomentField moments = load_moments();
    const auto result = tde::estimate(moments, config);

    const auto dir = output_dir(g);
    const tde::Json man = manifest(g, "estimate",
                                   {{"config", tde::to_json(config)},
                                    {"input", o.input.empty() ? o.moments : o.input},
                                    {"outputs", {"coefficients.json", "report.json", "moments.json"}}});
    tde::DensityEstimate est{result.coeffs, config.target == tde::Target::shifted, config.n1, config.n2};
    auto coeffs_json = tde::to_json(est);
    coeffs_json["manifest"] = man;
    tde::write_json_file(dir / "coefficients.json", coeffs_json);
    auto report_json = tde::to_json(result.report);
    if (!result.axis_reports.empty()) {
        report_json["axis_reports"] = tde::Json::array();
        for (const auto& r : result.axis_reports) report_json["axis_reports"].push_back(tde::to_json(r));
    }
    report_json["manifest"] = man;
    tde::write_json_file(dir / "report.json", report_json);
    auto moments_json = tde::to_json(moments);
    moments_json["manifest"] = man;
    tde::write_json_file(dir / "moments.json", moments_json);

    std::cout << "termination: " << tde::to_string(result.report.termination) << ", iterations "
              << result.report.iterations << ", residual " << result.report.final_residual_norm << '\n';
    return result.report.converged() ? kOk : kNumericalError;
}

struct DensityOptions {
    std::string coeffs;
    bool clamp = false;
};

tde::Json moments_json(const GlobalOptions& g, const tde::DensityMoments& m)
{
    auto j = tde::to_json(m);
    j["grid"] = {{"points_per_axis", g.grid}, {"bounds", {-std::numbers::pi, std::numbers::pi}}};
    return j;
}

int run_evaluate(const GlobalOptions& g, const DensityOptions& o)
{
    const auto est = tde::density_estimate_from_json(tde::read_json_file(o.coeffs));
    const tde::GridSpec grid(est.coeffs.dim(), g.grid);
    const Eigen::VectorXd values = tde::density_on_grid(est, grid);
    const auto m = tde::moments_from_values(values, grid, {o.clamp});

    const auto dir = output_dir(g);
    std::ofstream csv(dir / "grid.csv");
    tde::write_grid_csv(csv, grid, values);
    auto side = moments_json(g, m);
    side["grid"]["dim"] = grid.dim();
    side["manifest"] = manifest(g, "evaluate", {{"input", o.coeffs}, {"outputs", {"grid.csv", "grid.json"}}});
    tde::write_json_file(dir / "grid.json", side);
    std::cout << "wrote " << grid.size() << " grid values to " << (dir / "grid.csv").string() << '\n';
    return kOk;
}

int run_moments(const GlobalOptions& g, const DensityOptions& o)
{
    const auto est = tde::density_estimate_from_json(tde::read_json_file(o.coeffs));
    const tde::GridSpec grid(est.coeffs.dim(), g.grid);
    const auto m = tde::moments_from_density(est, grid, {o.clamp});
    std::cout << moments_json(g, m).dump(2) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Density estimation on the torus from empirical characteristic-function moments"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    g.argv.assign(argv, argv + argc);
    app.add_option("--config", g.config, "Solver configuration JSON");
    app.add_option("--output", g.output, "Output directory");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--grid", g.grid, "Grid points per axis")->check(CLI::Range(2, 1 << 14));

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Draw a synthetic dataset");
    generate->add_flag("--gaussian", gen.gaussian, "Truncated Gaussian (needs --mean, --cov)");
    generate->add_flag("--uniform", gen.uniform, "Uniform on [-pi, pi]^d");
    generate->add_option("--dim", gen.dim, "Dimension for --uniform");
    generate->add_option("--mean", gen.mean, "Comma-separated mean")->delimiter(',');
    generate->add_option("--cov", gen.cov, "Comma-separated covariance (full or upper triangle)")->delimiter(',');
    generate->add_option("--m", gen.m, "Number of samples")->required();

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "Solve for the energy coefficients");
    estimate->add_option("--input", est.input, "Dataset CSV");
    estimate->add_option("--moments", est.moments, "Precomputed moment field JSON");

    DensityOptions dens;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate the density estimate on a grid");
    evaluate->add_option("--coeffs", dens.coeffs, "Coefficients JSON from estimate")->required();
    evaluate->add_flag("--clamp", dens.clamp, "Clamp negative density values to 0 for the moments");
    auto* moments = app.add_subcommand("moments", "Print mass, mean and covariance of the estimate");
    moments->add_option("--coeffs", dens.coeffs, "Coefficients JSON from estimate")->required();
    moments->add_flag("--clamp", dens.clamp, "Clamp negative density values to 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*generate) return run_generate(g, gen);
        if (*estimate) return run_estimate(g, est);
        if (*evaluate) return run_evaluate(g, dens);
        if (*moments) return run_moments(g, dens);
    } catch (const tde::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const tde::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
    return kInputError;
}
