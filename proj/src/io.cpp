#include "tde/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "tde/errors.hpp"

namespace tde {

namespace {

template <typename T>
T get_field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing JSON field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad JSON field \"") + key + "\": " + e.what());
    }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    return get_field<T>(j, key);
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out)
{
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool is_header(const std::vector<std::string>& cells)
{
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (cells[k] != "x" + std::to_string(k + 1)) return false;
    return true;
}

}  // namespace

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json to_json(const CoefficientFieldd& field)
{
    Json entries = Json::array();
    const auto table = field.window().component_table();
    const auto d = static_cast<std::size_t>(field.dim());
    for (std::size_t o = 0; o < field.size(); ++o) {
        if (field(o) == std::complex<double>(0)) continue;
        Json e = Json::array();
        for (std::size_t k = 0; k < d; ++k) e.push_back(table[o * d + k]);
        e.push_back(field(o).real());
        e.push_back(field(o).imag());
        entries.push_back(std::move(e));
    }
    return Json{{"dim", field.dim()}, {"radius", field.radius()}, {"entries", std::move(entries)}};
}

CoefficientFieldd coefficient_field_from_json(const Json& j)
{
    const Window w(get_field<int>(j, "dim"), get_field<int>(j, "radius"));
    CoefficientFieldd field(w);
    const auto entries = get_field<Json>(j, "entries");
    if (!entries.is_array()) throw InputError("\"entries\" must be an array");
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != static_cast<std::size_t>(w.dim()) + 2)
            throw InputError("coefficient entry must hold dim indices plus re, im");
        MultiIndex alpha = MultiIndex::zero(w.dim());
        try {
            for (int k = 0; k < w.dim(); ++k) alpha[k] = e.at(static_cast<std::size_t>(k)).get<int>();
            if (!w.contains(alpha)) throw InputError("coefficient entry lies outside the window");
            field.set(alpha, {e.at(static_cast<std::size_t>(w.dim())).get<double>(),
                              e.at(static_cast<std::size_t>(w.dim()) + 1).get<double>()});
        } catch (const nlohmann::json::exception& ex) {
            throw InputError(std::string("bad coefficient entry: ") + ex.what());
        }
    }
    return field;
}

Json to_json(const MomentField& moments)
{
    Json j = to_json(moments.values);
    j["sample_count"] = moments.sample_count;
    return j;
}

MomentField moment_field_from_json(const Json& j)
{
    return {coefficient_field_from_json(j), get_field<std::size_t>(j, "sample_count")};
}

Json to_json(const DensityEstimate& est)
{
    Json j = to_json(est.coeffs);
    j["shift_mode"] = est.shift_mode;
    j["n1"] = est.n1;
    j["n2"] = est.n2;
    return j;
}

DensityEstimate density_estimate_from_json(const Json& j)
{
    DensityEstimate est{coefficient_field_from_json(j), get_or<bool>(j, "shift_mode", true), 0, 0};
    est.n1 = get_or<int>(j, "n1", est.coeffs.radius());
    est.n2 = get_or<int>(j, "n2", 0);
    return est;
}

Json to_json(const SolverConfig& c)
{
    return Json{{"n1", c.n1},
                {"n2", c.n2},
                {"max_iter", c.max_iter},
                {"tol_residual", c.tol_residual},
                {"tol_step", c.tol_step},
                {"damping", {{"shrink", c.damping.shrink}, {"min_step", c.damping.min_step}}},
                {"mode", to_string(c.mode)},
                {"target", to_string(c.target)}};
}

SolverConfig solver_config_from_json(const Json& j)
{
    if (!j.is_object()) throw InputError("solver config must be a JSON object");
    SolverConfig c;
    c.n1 = get_or(j, "n1", c.n1);
    c.n2 = get_or(j, "n2", c.n2);
    c.max_iter = get_or(j, "max_iter", c.max_iter);
    c.tol_residual = get_or(j, "tol_residual", c.tol_residual);
    c.tol_step = get_or(j, "tol_step", c.tol_step);
    if (j.contains("damping")) {
        const auto& d = j.at("damping");
        c.damping.shrink = get_or(d, "shrink", c.damping.shrink);
        c.damping.min_step = get_or(d, "min_step", c.damping.min_step);
    }
    const auto mode = get_or<std::string>(j, "mode", "full");
    if (mode == "full") c.mode = SolveMode::full;
    else if (mode == "independent") c.mode = SolveMode::independent;
    else throw InputError("unknown solver mode \"" + mode + "\"");
    const auto target = get_or<std::string>(j, "target", "shifted");
    if (target == "shifted") c.target = Target::shifted;
    else if (target == "direct") c.target = Target::direct;
    else throw InputError("unknown target \"" + target + "\"");
    c.validate();
    return c;
}

Json to_json(const SolverReport& r)
{
    return Json{{"iterations", r.iterations},
                {"final_residual_norm", r.final_residual_norm},
                {"residual_history", r.residual_history},
                {"step_sizes", r.step_sizes},
                {"termination", to_string(r.termination)}};
}

SolverReport solver_report_from_json(const Json& j)
{
    SolverReport r;
    r.iterations = get_field<int>(j, "iterations");
    r.final_residual_norm = get_field<double>(j, "final_residual_norm");
    r.residual_history = get_field<std::vector<double>>(j, "residual_history");
    r.step_sizes = get_or<std::vector<double>>(j, "step_sizes", {});
    const auto t = get_field<std::string>(j, "termination");
    if (t == "converged") r.termination = Termination::converged;
    else if (t == "max_iter") r.termination = Termination::max_iter;
    else if (t == "stalled") r.termination = Termination::stalled;
    else if (t == "singular_jacobian") r.termination = Termination::singular_jacobian;
    else throw InputError("unknown termination \"" + t + "\"");
    return r;
}

Json to_json(const DensityMoments& m)
{
    Json cov = Json::array();
    for (Eigen::Index r = 0; r < m.covariance.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.covariance.cols(); ++c) row.push_back(m.covariance(r, c));
        cov.push_back(std::move(row));
    }
    return Json{{"mass", m.mass},
                {"mean", std::vector<double>(m.mean.data(), m.mean.data() + m.mean.size())},
                {"covariance", std::move(cov)}};
}

Dataset read_dataset_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_commas(line);
        if (rows.empty() && dim == 0 && is_header(cells)) {
            dim = cells.size();
            continue;
        }
        std::vector<double> row(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (!parse_double(cells[k], row[k]))
                throw InputError("malformed CSV row " + std::to_string(line_no) + ": \"" + cells[k] + "\" is not a number");
        if (dim == 0) dim = row.size();
        if (row.size() != dim)
            throw InputError("malformed CSV row " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                             " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError("dataset CSV holds no samples");
    Eigen::MatrixXd points(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t n = 0; n < rows.size(); ++n)
        for (std::size_t k = 0; k < dim; ++k) points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = rows[n][k];
    return Dataset(static_cast<int>(dim), std::move(points));
}

Dataset read_dataset_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& data)
{
    for (int k = 0; k < data.dim(); ++k) out << (k ? "," : "") << "x" << k + 1;
    out << '\n';
    for (Eigen::Index n = 0; n < data.points().rows(); ++n) {
        for (int k = 0; k < data.dim(); ++k) out << (k ? "," : "") << format_double(data.points()(n, k));
        out << '\n';
    }
}

void write_grid_csv(std::ostream& out, const GridSpec& grid, const Eigen::VectorXd& values)
{
    for (int k = 0; k < grid.dim(); ++k) out << "x" << k + 1 << ',';
    out << "density\n";
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto x = grid.point(p);
        for (int k = 0; k < grid.dim(); ++k) out << format_double(x[k]) << ',';
        out << format_double(values[static_cast<Eigen::Index>(p)]) << '\n';
    }
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace tde
