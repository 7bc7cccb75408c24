#ifndef TDE_IO_HPP
#define TDE_IO_HPP

// File formats.
//
// CoefficientField: {"dim": d, "radius": N, "entries": [[a1, ..., ad, re, im], ...]}
//   listing nonzero entries in window (lexicographic) order.
// MomentField: the same plus "sample_count".
// DensityEstimate: a CoefficientField plus "shift_mode", "n1", "n2".
// Dataset: CSV, one sample per row, d columns, optional header x1,...,xd.
// Grid export: CSV with columns x1,...,xd,density in grid order.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tde/coefficient_field.hpp"
#include "tde/density.hpp"
#include "tde/empirical.hpp"
#include "tde/solver.hpp"

namespace tde {

using Json = nlohmann::ordered_json;

/// printf("%.17g"): round-trips every double.
std::string format_double(double x);

Json to_json(const CoefficientFieldd& field);
CoefficientFieldd coefficient_field_from_json(const Json& j);

Json to_json(const MomentField& moments);
MomentField moment_field_from_json(const Json& j);

Json to_json(const DensityEstimate& est);
DensityEstimate density_estimate_from_json(const Json& j);

/// Missing keys take the SolverConfig defaults.
Json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const Json& j);

Json to_json(const SolverReport& report);
SolverReport solver_report_from_json(const Json& j);

Json to_json(const DensityMoments& moments);

/// Throws InputError naming the 1-based line of a malformed row.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(std::ostream& out, const Dataset& data);

void write_grid_csv(std::ostream& out, const GridSpec& grid, const Eigen::VectorXd& values);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace tde

#endif
