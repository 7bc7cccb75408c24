#ifndef TDE_EMPIRICAL_HPP
#define TDE_EMPIRICAL_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "tde/coefficient_field.hpp"
#include "tde/compensated_sum.hpp"

namespace tde {

/// Ordered samples in the torus window [-pi, pi]^d, one per row.
///
/// Order is kept as given: the samples may come from an ergodic process rather
/// than i.i.d. draws. Coordinates outside the window are rejected, never wrapped.
class Dataset {
public:
    Dataset(int dim, Eigen::MatrixXd points);

    int dim() const { return dim_; }
    std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
    const Eigen::MatrixXd& points() const { return points_; }
    Eigen::VectorXd point(std::size_t n) const { return points_.row(static_cast<Eigen::Index>(n)).transpose(); }

    /// Single coordinate as a one-dimensional dataset.
    Dataset marginal(int axis) const;

private:
    int dim_;
    Eigen::MatrixXd points_;
};

/// Throws InputError unless every coordinate lies in [-pi, pi].
void require_in_window(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Empirical characteristic-function values (1/M) sum_n e^{-i alpha . x[n]}.
struct MomentField {
    CoefficientFieldd values;
    std::size_t sample_count = 0;

    const Window& window() const { return values.window(); }
};

/// Incremental form of empirical_moments. Sums run in update order with Kahan
/// compensation over the non-negative half of the lattice; the other half is
/// mirrored at finalization, and the alpha = 0 entry is pinned to 1.
class MomentAccumulator {
public:
    explicit MomentAccumulator(const Window& window);

    /// Rejects an out-of-window point and leaves the accumulator unchanged.
    void update(const Eigen::Ref<const Eigen::VectorXd>& x);

    std::size_t count() const { return count_; }
    const Window& window() const { return window_; }

    /// Throws InputError when no point has been added.
    MomentField finalize() const;

private:
    Window window_;
    std::vector<int> half_components_;  // components of offsets >= origin
    std::vector<CompensatedComplexSum<double>> sums_;
    std::size_t count_ = 0;
};

MomentField empirical_moments(const Dataset& data, const Window& window);

/// Entries of `moments` on axis `axis`, as a one-dimensional field. For moments
/// of a dataset these equal the moments of that coordinate alone.
MomentField axis_moments(const MomentField& moments, int axis);

}  // namespace tde

#endif
