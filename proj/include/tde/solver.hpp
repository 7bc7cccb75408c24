#ifndef TDE_SOLVER_HPP
#define TDE_SOLVER_HPP

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tde/coefficient_field.hpp"
#include "tde/empirical.hpp"

namespace tde {

enum class SolveMode { full, independent };

/// Which function e^{-E} models. `shifted`: e^{-E} = p0 + 1, so the moment
/// equations carry a -(2pi)^d delta_0 term and the density estimate is
/// e^{-E} - 1. `direct`: e^{-E} = p0 with the partition function absorbed
/// into y_0.
enum class Target { shifted, direct };

struct LineSearch {
    double shrink = 0.5;
    double min_step = 0x1p-20;
};

struct SolverConfig {
    int n1 = 5;  ///< lattice radius of the unknown coefficients
    int n2 = 3;  ///< order of the truncated exponential series
    int max_iter = 100;
    double tol_residual = 1e-10;  ///< sup-norm on the packed residual
    double tol_step = 1e-12;      ///< sup-norm on an accepted update
    LineSearch damping;
    SolveMode mode = SolveMode::full;
    Target target = Target::shifted;

    /// Throws InputError on out-of-range fields.
    void validate() const;
};

enum class Termination { converged, max_iter, stalled, singular_jacobian };

std::string to_string(SolveMode mode);
std::string to_string(Target target);
std::string to_string(Termination termination);

struct SolverReport {
    int iterations = 0;
    double final_residual_norm = 0.0;
    std::vector<double> residual_history;  ///< starts with the initial residual
    std::vector<double> step_sizes;        ///< line-search factor of each accepted step
    Termination termination = Termination::max_iter;

    bool converged() const { return termination == Termination::converged; }
};

struct SolveResult {
    CoefficientFieldd coeffs;
    SolverReport report;
};

/// Model side of the moment equations on y's window:
/// (2pi)^d [conv_exp_truncated(y, n2) - delta_0] for the shifted target,
/// (2pi)^d conv_exp_truncated(y, n2) for the direct one.
CoefficientFieldd forward_moments(const CoefficientFieldd& y, int n2, Target target = Target::shifted);

/// F(y) = forward_moments(y, n2) - moments.
CoefficientFieldd residual(const CoefficientFieldd& y, const MomentField& moments, int n2,
                           Target target = Target::shifted);

/// kernel(gamma) with dF_alpha/dy_beta = kernel(alpha - beta), on radius 2N:
/// (2pi)^d sum_{n=1}^{n2} (-1)^n / (n-1)! y^{*(n-1)}. Independent of the target.
CoefficientFieldd jacobian_kernel(const CoefficientFieldd& y, int n2);

/// Complex Jacobian dF_alpha/dy_beta over window offsets, treating every y_beta
/// as an independent complex variable.
Eigen::MatrixXcd complex_jacobian(const CoefficientFieldd& y, int n2);

/// Jacobian of the packed residual with respect to the packed unknowns
/// (see hermitian_params.hpp). Real-valued for hermitian y.
Eigen::MatrixXd jacobian(const CoefficientFieldd& y, int n2);

/// Constant energy y_0 solving the alpha = 0 equation for the uniform density:
/// -ln(1 + (2pi)^-d) when shifted, d ln(2pi) when direct.
double constant_solution(int dim, Target target);

/// Damped Newton iteration on the packed residual, starting from the constant
/// solution. Backtracks on the residual sup-norm; a line search that reaches the
/// minimum step twice in a row ends the run as `stalled`.
SolveResult newton_solve(const MomentField& moments, const SolverConfig& config);

/// Solves each one-dimensional system separately (config.mode must be
/// `independent`); moments_per_axis[k] holds the moments of coordinate k.
std::vector<SolveResult> solve_independent(const std::vector<MomentField>& moments_per_axis,
                                           const SolverConfig& config);

/// Places one-dimensional fields on the coordinate axes of a d-dimensional
/// field, adding their origin entries. For the direct target this is the
/// energy of the product density.
CoefficientFieldd assemble_axes(const std::vector<CoefficientFieldd>& axis_fields);

struct EstimateResult {
    CoefficientFieldd coeffs;
    SolverReport report;
    std::vector<SolverReport> axis_reports;  ///< filled in independent mode
};

/// Dispatches on config.mode. Independent mode solves the axis marginals of
/// `moments` and assembles them; its report aggregates the axis reports.
EstimateResult estimate(const MomentField& moments, const SolverConfig& config);

}  // namespace tde

#endif
