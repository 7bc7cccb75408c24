#include "tde/empirical.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tde/errors.hpp"

namespace tde {

namespace {

bool in_window(double c) { return c >= -std::numbers::pi && c <= std::numbers::pi; }

}  // namespace

void require_in_window(const Eigen::Ref<const Eigen::VectorXd>& x)
{
    for (Eigen::Index k = 0; k < x.size(); ++k)
        if (!in_window(x[k]))
            throw InputError("coordinate " + std::to_string(k + 1) + " = " + std::to_string(x[k]) +
                             " lies outside [-pi, pi]");
}

Dataset::Dataset(int dim, Eigen::MatrixXd points) : dim_(dim), points_(std::move(points))
{
    if (dim < 1) throw InputError("dataset dimension must be >= 1");
    if (points_.rows() == 0) throw InputError("dataset is empty");
    if (points_.cols() != dim) throw InputError("dataset column count does not match dimension");
    for (Eigen::Index n = 0; n < points_.rows(); ++n) {
        for (Eigen::Index k = 0; k < points_.cols(); ++k) {
            if (!in_window(points_(n, k)))
                throw InputError("sample " + std::to_string(n) + " lies outside [-pi, pi]^" + std::to_string(dim));
        }
    }
}

Dataset Dataset::marginal(int axis) const
{
    if (axis < 0 || axis >= dim_) throw InputError("axis out of range");
    return Dataset(1, points_.col(axis));
}

MomentAccumulator::MomentAccumulator(const Window& window) : window_(window)
{
    const auto table = window.component_table();
    const auto d = static_cast<std::size_t>(window.dim());
    const std::size_t first = window.origin_offset();
    half_components_.assign(table.begin() + static_cast<std::ptrdiff_t>(first * d), table.end());
    sums_.resize(window.size() - first);
}

void MomentAccumulator::update(const Eigen::Ref<const Eigen::VectorXd>& x)
{
    if (x.size() != window_.dim()) throw InputError("point dimension does not match window");
    require_in_window(x);
    const auto d = static_cast<std::size_t>(window_.dim());
    for (std::size_t j = 0; j < sums_.size(); ++j) {
        double phase = 0.0;
        for (std::size_t k = 0; k < d; ++k) phase += half_components_[j * d + k] * x[static_cast<Eigen::Index>(k)];
        sums_[j].add({std::cos(phase), -std::sin(phase)});
    }
    ++count_;
}

MomentField MomentAccumulator::finalize() const
{
    if (count_ == 0) throw InputError("no samples were accumulated");
    CoefficientFieldd field(window_);
    const std::size_t first = window_.origin_offset();
    const double inv = 1.0 / static_cast<double>(count_);
    for (std::size_t j = 1; j < sums_.size(); ++j) {
        const auto v = sums_[j].value() * inv;
        field(first + j) = v;
        field(window_.mirror(first + j)) = std::conj(v);
    }
    field(first) = 1.0;
    return {field, count_};
}

MomentField empirical_moments(const Dataset& data, const Window& window)
{
    if (data.dim() != window.dim()) throw InputError("dataset dimension does not match window");
    MomentAccumulator acc(window);
    for (std::size_t n = 0; n < data.size(); ++n) {
        try {
            acc.update(data.points().row(static_cast<Eigen::Index>(n)).transpose());
        } catch (const InputError& e) {
            throw InputError("sample " + std::to_string(n) + ": " + e.what());
        }
    }
    return acc.finalize();
}

MomentField axis_moments(const MomentField& moments, int axis)
{
    const auto& w = moments.window();
    if (axis < 0 || axis >= w.dim()) throw InputError("axis out of range");
    const Window line(1, w.radius());
    CoefficientFieldd out(line);
    for (int eta = -w.radius(); eta <= w.radius(); ++eta)
        out.set(MultiIndex{eta}, moments.values[MultiIndex::axis(w.dim(), axis, eta)]);
    return {out, moments.sample_count};
}

}  // namespace tde
