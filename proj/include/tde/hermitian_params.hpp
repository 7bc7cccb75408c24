#ifndef TDE_HERMITIAN_PARAMS_HPP
#define TDE_HERMITIAN_PARAMS_HPP

// Real coordinates for hermitian coefficient fields.
//
// A hermitian field on a window of K = (2N+1)^d indices is determined by
// y_0 (real) and y_alpha for the (K-1)/2 indices enumerated after the origin.
// The packed vector is
//   [Re y_0, Re y_a1, Im y_a1, Re y_a2, Im y_a2, ...]
// with a1, a2, ... in window order, giving exactly K real numbers.

#include <Eigen/Core>

#include "tde/coefficient_field.hpp"

namespace tde {

/// Packs the origin and upper-half entries of `y`. The lower half is ignored.
Eigen::VectorXd pack_hermitian(const CoefficientFieldd& y);

/// Inverse of pack_hermitian; the result is exactly hermitian.
CoefficientFieldd unpack_hermitian(const Window& window, const Eigen::VectorXd& theta);

/// Derivative of a real function H(y) with respect to the packed coordinates,
/// given g_alpha = dH/dy_alpha for a hermitian field:
/// [g_0, 2 Re g_a, -2 Im g_a, ...].
Eigen::VectorXd pack_gradient(const CoefficientFieldd& g);

/// Real Jacobian of a hermitian-valued map F(y) in packed coordinates on both
/// sides, from the complex kernel J(alpha, beta) = kernel(alpha - beta).
/// `kernel` must cover radius 2N.
Eigen::MatrixXd packed_toeplitz_jacobian(const Window& window, const CoefficientFieldd& kernel);

}  // namespace tde

#endif
