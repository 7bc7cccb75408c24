#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "tde/io.hpp"
#include "tde/synth.hpp"
#include "test_support.hpp"

using namespace tde;

namespace {

bool message_contains(const std::function<void()>& f, const std::string& needle)
{
    try {
        f();
    } catch (const InputError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("format_double round-trips")
{
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(gen) * std::pow(10.0, (i % 40) - 20);
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("JSON round trips are exact")
{
    std::mt19937_64 gen(2);
    const auto field = tde::testing::random_field(Window(2, 2), gen);
    CHECK(coefficient_field_from_json(Json::parse(to_json(field).dump())) == field);

    const MomentField m{tde::testing::random_hermitian(Window(3, 1), gen, 2.0), 812};
    const auto m2 = moment_field_from_json(Json::parse(to_json(m).dump()));
    CHECK(m2.values == m.values);
    CHECK(m2.sample_count == 812);

    const DensityEstimate est{field, false, 2, 7};
    const auto est2 = density_estimate_from_json(Json::parse(to_json(est).dump()));
    CHECK(est2.coeffs == field);
    CHECK(!est2.shift_mode);
    CHECK(est2.n2 == 7);

    SolverConfig cfg;
    cfg.n1 = 4;
    cfg.tol_residual = 3e-11;
    cfg.damping.shrink = 0.3;
    cfg.mode = SolveMode::independent;
    cfg.target = Target::direct;
    const auto cfg2 = solver_config_from_json(Json::parse(to_json(cfg).dump()));
    CHECK(cfg2.n1 == 4);
    CHECK(cfg2.tol_residual == 3e-11);
    CHECK(cfg2.damping.shrink == 0.3);
    CHECK(cfg2.mode == SolveMode::independent);
    CHECK(cfg2.target == Target::direct);

    SolverReport r;
    r.iterations = 3;
    r.residual_history = {1.0, 0.1, 1e-12};
    r.step_sizes = {1.0, 0.5};
    r.final_residual_norm = 1e-12;
    r.termination = Termination::stalled;
    const auto r2 = solver_report_from_json(Json::parse(to_json(r).dump()));
    CHECK(r2.residual_history == r.residual_history);
    CHECK(r2.step_sizes == r.step_sizes);
    CHECK(r2.termination == Termination::stalled);
}

TEST_CASE("JSON validation")
{
    const auto defaults = solver_config_from_json(Json::object());
    CHECK(defaults.n1 == SolverConfig{}.n1);
    CHECK(defaults.max_iter == SolverConfig{}.max_iter);
    CHECK_THROWS_AS(solver_config_from_json(Json{{"n1", 0}}), InputError);
    CHECK_THROWS_AS(solver_config_from_json(Json{{"mode", "sideways"}}), InputError);
    CHECK_THROWS_AS(solver_config_from_json(Json{{"n2", "three"}}), InputError);
    CHECK_THROWS_AS(coefficient_field_from_json(Json{{"dim", 1}, {"radius", 1}}), InputError);
    CHECK_THROWS_AS(coefficient_field_from_json(Json::parse(R"({"dim":1,"radius":1,"entries":[[2,1,0]]})")), InputError);
    CHECK_THROWS_AS(coefficient_field_from_json(Json::parse(R"({"dim":1,"radius":1,"entries":[[1,1]]})")), InputError);
}

TEST_CASE("dataset CSV")
{
    const auto data = sample_uniform(3, 50, 4);
    std::stringstream buf;
    write_dataset_csv(buf, data);
    CHECK(buf.str().rfind("x1,x2,x3\n", 0) == 0);
    CHECK(read_dataset_csv(buf).points() == data.points());

    std::istringstream plain("0.1,0.2\n\n-1,3\n");
    const auto d = read_dataset_csv(plain);
    CHECK(d.size() == 2);
    CHECK(d.points()(1, 1) == 3.0);

    CHECK(message_contains([] {
        std::istringstream in("x1,x2\n0.1,0.2\n0.3,abc\n");
        read_dataset_csv(in);
    }, "row 3"));
    CHECK(message_contains([] {
        std::istringstream in("0.1,0.2\n0.3\n");
        read_dataset_csv(in);
    }, "row 2"));
    CHECK(message_contains([] {
        std::istringstream in("x1\n");
        read_dataset_csv(in);
    }, "no samples"));
    CHECK_THROWS_AS(
        [] {
            std::istringstream in("0.1\n4.0\n");
            read_dataset_csv(in);
        }(),
        InputError);
    CHECK_THROWS_AS(read_dataset_csv(std::filesystem::path("/nonexistent/data.csv")), InputError);
}

TEST_CASE("grid CSV")
{
    const GridSpec grid(2, 3);
    std::stringstream buf;
    write_grid_csv(buf, grid, Eigen::VectorXd::LinSpaced(9, 0.0, 8.0));
    std::string line;
    std::getline(buf, line);
    CHECK(line == "x1,x2,density");
    int rows = 0;
    while (std::getline(buf, line)) ++rows;
    CHECK(rows == 9);
}
