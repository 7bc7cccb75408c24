#ifndef TDE_DENSITY_HPP
#define TDE_DENSITY_HPP

#include <cstddef>
#include <functional>

#include <Eigen/Core>

#include "tde/coefficient_field.hpp"

namespace tde {

/// Uniform grid on [-pi, pi)^d: points_per_axis nodes per axis, spacing
/// 2pi / points_per_axis, the right endpoint identified with the left one.
/// Points are enumerated row-major (first axis slowest).
class GridSpec {
public:
    GridSpec(int dim, int points_per_axis);

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    std::size_t size() const { return size_; }
    double spacing() const;
    double cell_volume() const;
    double coordinate(int j) const;
    Eigen::VectorXd point(std::size_t flat) const;

private:
    int dim_;
    int n_;
    std::size_t size_;
};

/// A solved energy together with how to turn it into a density.
struct DensityEstimate {
    CoefficientFieldd coeffs;
    bool shift_mode = true;  ///< true: e^{-E} - 1; false: e^{-E} (unnormalized)
    int n1 = 0;
    int n2 = 0;
};

using DensityFunction = std::function<double(const Eigen::VectorXd&)>;

/// E(x, y) = sum_alpha y_alpha e^{i alpha . x}. Throws NumericalError when the
/// imaginary part reaches 1e-10 (the coefficients are not hermitian).
double evaluate_energy(const CoefficientFieldd& coeffs, const Eigen::Ref<const Eigen::VectorXd>& x);

double evaluate_density(const DensityEstimate& est, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Energy at every grid point, same realness check as evaluate_energy.
Eigen::VectorXd energy_on_grid(const CoefficientFieldd& coeffs, const GridSpec& grid);

Eigen::VectorXd density_on_grid(const DensityEstimate& est, const GridSpec& grid);

/// Periodic trapezoid rule for the plain Lebesgue integral over [-pi, pi]^d.
double integrate_density(const DensityEstimate& est, const GridSpec& grid);

struct DensityMoments {
    double mass = 0.0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
};

struct MomentOptions {
    bool clamp_negative = false;  ///< integrate max(rho, 0) instead of rho
};

/// Mean and covariance of rho / mass, where mass = integral of rho.
///
/// The coordinate polynomials x_k and x_j x_k are not periodic, so the rule
/// integrates them against the trigonometric interpolant of rho using exact
/// weights for x^p e^{iax} on [-pi, pi]; mass uses the periodic trapezoid rule.
/// Throws NumericalError when the mass is not positive.
DensityMoments moments_from_density(const DensityEstimate& est, const GridSpec& grid, MomentOptions options = {});

/// Same computation on precomputed grid values.
DensityMoments moments_from_values(const Eigen::VectorXd& rho, const GridSpec& grid, MomentOptions options = {});

/// Quadrature weights on one axis for the integral of x^power f(x), power in {0, 1, 2}.
Eigen::VectorXd axis_moment_weights(int points_per_axis, int power);

/// Fourier coefficients of -ln(density) against dm = dx / (2pi)^d:
/// the energy whose canonical ensemble reproduces `density`. Throws InputError
/// at the first grid point where the density is not positive. Output is
/// hermitian-projected.
CoefficientFieldd log_density_fourier_oracle(const DensityFunction& density, const Window& window,
                                              const GridSpec& grid);

/// -integral p0 ln p0 dx.
double entropy(const DensityFunction& p0, const GridSpec& grid);

/// H(p0, p) = integral p0 (E + ln Z) dx with Z = integral e^{-E} dx, the cross
/// entropy of the normalized canonical ensemble p = e^{-E} / Z relative to p0.
/// Requires an unshifted estimate.
double cross_entropy(const DensityFunction& p0, const DensityEstimate& est, const GridSpec& grid);

/// dH/dy_alpha = integral e^{i alpha . x} (p0(x) - p(x)) dx on coeffs' window.
CoefficientFieldd gradient_cross_entropy(const DensityFunction& p0, const CoefficientFieldd& coeffs,
                                          const GridSpec& grid);

/// L1 distance between e^{-E}/Z_E and e^{-E_N}/Z_{E_N}, where E_N keeps the
/// entries with |alpha|_inf <= n_small.
double partial_sum_l1_distance(const CoefficientFieldd& coeffs, int n_small, const GridSpec& grid);

/// e^{tail + |ln(Z_E / Z_{E_N})|} - 1 with tail = sum_{|alpha|_inf > n_small} |y_alpha|,
/// an upper bound for partial_sum_l1_distance.
double partial_sum_l1_bound(const CoefficientFieldd& coeffs, int n_small, const GridSpec& grid);

}  // namespace tde

#endif
