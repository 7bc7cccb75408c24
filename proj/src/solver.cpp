#include "tde/solver.hpp"

#include <algorithm>
#include <complex>
#include <numbers>

#include <Eigen/LU>

#include "tde/errors.hpp"
#include "tde/hermitian_params.hpp"
#include "tde/wiener_algebra.hpp"

namespace tde {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double torus_volume(int dim) { return std::pow(kTwoPi, dim); }

double sup(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

void SolverConfig::validate() const
{
    if (n1 < 1) throw InputError("n1 must be >= 1");
    if (n2 < 1) throw InputError("n2 must be >= 1");
    if (max_iter < 1) throw InputError("max_iter must be >= 1");
    if (!(tol_residual > 0) || !(tol_step > 0)) throw InputError("tolerances must be positive");
    if (!(damping.shrink > 0 && damping.shrink < 1)) throw InputError("line-search shrink factor must lie in (0, 1)");
    if (!(damping.min_step > 0 && damping.min_step <= 1)) throw InputError("line-search minimum step must lie in (0, 1]");
}

std::string to_string(SolveMode mode) { return mode == SolveMode::full ? "full" : "independent"; }

std::string to_string(Target target) { return target == Target::shifted ? "shifted" : "direct"; }

std::string to_string(Termination t)
{
    switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iter: return "max_iter";
    case Termination::stalled: return "stalled";
    case Termination::singular_jacobian: return "singular_jacobian";
    }
    return "unknown";
}

CoefficientFieldd forward_moments(const CoefficientFieldd& y, int n2, Target target)
{
    auto model = conv_exp_truncated(y, n2, y.window());
    if (target == Target::shifted) model(y.window().origin_offset()) -= 1.0;
    model.values() *= torus_volume(y.dim());
    return model;
}

CoefficientFieldd residual(const CoefficientFieldd& y, const MomentField& moments, int n2, Target target)
{
    if (!(y.window() == moments.window())) throw InputError("coefficient and moment windows differ");
    auto f = forward_moments(y, n2, target);
    f.values() -= moments.values.values();
    return f;
}

CoefficientFieldd jacobian_kernel(const CoefficientFieldd& y, int n2)
{
    if (n2 < 1) throw InputError("exponential series order must be >= 1");
    auto kernel = detail::conv_exp_series(y, n2 - 1, Window(y.dim(), 2 * y.radius()));
    kernel.values() *= -torus_volume(y.dim());
    return kernel;
}

Eigen::MatrixXcd complex_jacobian(const CoefficientFieldd& y, int n2)
{
    const auto kernel = jacobian_kernel(y, n2);
    const auto& w = y.window();
    const auto k = static_cast<Eigen::Index>(w.size());
    Eigen::MatrixXcd jac(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        const auto alpha = w.index(static_cast<std::size_t>(a));
        for (Eigen::Index b = 0; b < k; ++b) jac(a, b) = kernel[alpha - w.index(static_cast<std::size_t>(b))];
    }
    return jac;
}

Eigen::MatrixXd jacobian(const CoefficientFieldd& y, int n2)
{
    return packed_toeplitz_jacobian(y.window(), jacobian_kernel(y, n2));
}

double constant_solution(int dim, Target target)
{
    return target == Target::shifted ? -std::log1p(1.0 / torus_volume(dim)) : dim * std::log(kTwoPi);
}

SolveResult newton_solve(const MomentField& moments, const SolverConfig& config)
{
    config.validate();
    const Window& w = moments.window();
    if (w.radius() != config.n1) throw InputError("moment window radius differs from n1");

    auto packed_residual = [&](const Eigen::VectorXd& theta) {
        return pack_hermitian(residual(unpack_hermitian(w, theta), moments, config.n2, config.target));
    };

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(w.size()));
    theta[0] = constant_solution(w.dim(), config.target);
    Eigen::VectorXd f = packed_residual(theta);
    double norm = sup(f);

    SolverReport report;
    report.residual_history.push_back(norm);
    int failed_searches = 0;
    bool done = false;

    while (!done && report.iterations < config.max_iter) {
        if (norm <= config.tol_residual) {
            report.termination = Termination::converged;
            break;
        }
        ++report.iterations;

        const Eigen::MatrixXd jac = jacobian(unpack_hermitian(w, theta), config.n2);
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
        if (pivots.minCoeff() < 1e-12 * pivots.maxCoeff()) {
            report.termination = Termination::singular_jacobian;
            break;
        }
        const Eigen::VectorXd delta = lu.solve(-f);

        bool accepted = false;
        for (double t = 1.0; t >= config.damping.min_step; t *= config.damping.shrink) {
            const Eigen::VectorXd trial = theta + t * delta;
            const Eigen::VectorXd f_trial = packed_residual(trial);
            const double trial_norm = sup(f_trial);
            if (trial_norm < norm) {
                const double step = t * sup(delta);
                theta = trial;
                f = f_trial;
                norm = trial_norm;
                report.residual_history.push_back(norm);
                report.step_sizes.push_back(t);
                accepted = true;
                if (step <= config.tol_step) {
                    report.termination = norm <= config.tol_residual ? Termination::converged : Termination::stalled;
                    done = true;
                }
                break;
            }
        }
        if (accepted) {
            failed_searches = 0;
        } else if (++failed_searches >= 2) {
            report.termination = Termination::stalled;
            done = true;
        }
    }
    if (!done && report.termination != Termination::singular_jacobian)
        report.termination = norm <= config.tol_residual ? Termination::converged : Termination::max_iter;
    report.final_residual_norm = norm;
    return {unpack_hermitian(w, theta), report};
}

std::vector<SolveResult> solve_independent(const std::vector<MomentField>& moments_per_axis,
                                           const SolverConfig& config)
{
    if (config.mode != SolveMode::independent) throw InputError("solve_independent requires independent mode");
    if (moments_per_axis.empty()) throw InputError("no axis moments given");
    std::vector<SolveResult> out;
    out.reserve(moments_per_axis.size());
    for (const auto& m : moments_per_axis) {
        if (m.window().dim() != 1) throw InputError("axis moments must be one-dimensional");
        out.push_back(newton_solve(m, config));
    }
    return out;
}

CoefficientFieldd assemble_axes(const std::vector<CoefficientFieldd>& axis_fields)
{
    if (axis_fields.empty()) throw InputError("no axis fields given");
    const int d = static_cast<int>(axis_fields.size());
    const int n = axis_fields.front().radius();
    CoefficientFieldd out(Window(d, n));
    std::complex<double> origin = 0.0;
    for (int k = 0; k < d; ++k) {
        const auto& f = axis_fields[static_cast<std::size_t>(k)];
        if (f.dim() != 1 || f.radius() != n) throw InputError("axis fields must be one-dimensional with equal radius");
        origin += f.origin();
        for (int eta = -n; eta <= n; ++eta)
            if (eta != 0) out.set(MultiIndex::axis(d, k, eta), f[MultiIndex{eta}]);
    }
    out.set(MultiIndex::zero(d), origin);
    return out;
}

EstimateResult estimate(const MomentField& moments, const SolverConfig& config)
{
    config.validate();
    if (config.mode == SolveMode::full) {
        auto r = newton_solve(moments, config);
        return {r.coeffs, r.report, {}};
    }
    std::vector<MomentField> axes;
    for (int k = 0; k < moments.window().dim(); ++k) axes.push_back(axis_moments(moments, k));
    const auto solved = solve_independent(axes, config);

    std::vector<CoefficientFieldd> fields;
    EstimateResult result{CoefficientFieldd(moments.window()), {}, {}};
    result.report.termination = Termination::converged;
    for (const auto& s : solved) {
        fields.push_back(s.coeffs);
        result.axis_reports.push_back(s.report);
        result.report.iterations += s.report.iterations;
        result.report.final_residual_norm = std::max(result.report.final_residual_norm, s.report.final_residual_norm);
        result.report.residual_history.insert(result.report.residual_history.end(), s.report.residual_history.begin(),
                                              s.report.residual_history.end());
        result.report.step_sizes.insert(result.report.step_sizes.end(), s.report.step_sizes.begin(),
                                        s.report.step_sizes.end());
        if (result.report.converged() && !s.report.converged()) result.report.termination = s.report.termination;
    }
    result.coeffs = assemble_axes(fields);
    return result;
}

}  // namespace tde
