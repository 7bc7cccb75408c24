#include "tde/density.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "tde/errors.hpp"
#include "tde/hermitian_params.hpp"
#include "tde/wiener_algebra.hpp"

namespace tde {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kImagTolerance = 1e-10;

// e^{i a x_j} for |a| <= radius and every grid coordinate x_j of one axis.
class AxisPhases {
public:
    AxisPhases(int radius, const GridSpec& grid) : radius_(radius), n_(grid.points_per_axis())
    {
        table_.resize(static_cast<std::size_t>((2 * radius + 1) * n_));
        for (int a = -radius; a <= radius; ++a)
            for (int j = 0; j < n_; ++j) table_[index(a, j)] = std::polar(1.0, a * grid.coordinate(j));
    }

    Complex operator()(int a, int j) const { return table_[index(a, j)]; }

private:
    std::size_t index(int a, int j) const { return static_cast<std::size_t>((a + radius_) * n_ + j); }

    int radius_;
    int n_;
    std::vector<Complex> table_;
};

std::vector<int> grid_digits(std::size_t flat, const GridSpec& grid)
{
    std::vector<int> digits(static_cast<std::size_t>(grid.dim()));
    for (int k = grid.dim() - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(grid.points_per_axis()));
        flat /= static_cast<std::size_t>(grid.points_per_axis());
    }
    return digits;
}

void require_matching(const Window& w, const GridSpec& grid)
{
    if (w.dim() != grid.dim()) throw InputError("grid dimension does not match coefficients");
}

// sum_alpha y_alpha e^{i alpha . x_j} at every grid point.
Eigen::VectorXcd synthesize(const CoefficientFieldd& y, const GridSpec& grid)
{
    require_matching(y.window(), grid);
    const AxisPhases phases(y.radius(), grid);
    const auto table = y.window().component_table();
    const int d = y.dim();
    std::vector<std::size_t> nonzero;
    for (std::size_t o = 0; o < y.size(); ++o)
        if (y(o) != Complex(0)) nonzero.push_back(o);

    Eigen::VectorXcd out(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto digits = grid_digits(p, grid);
        Complex s = 0.0;
        for (std::size_t o : nonzero) {
            Complex term = y(o);
            for (int k = 0; k < d; ++k)
                term *= phases(table[o * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)], digits[static_cast<std::size_t>(k)]);
            s += term;
        }
        out[static_cast<Eigen::Index>(p)] = s;
    }
    return out;
}

// scale * sum_j v_j e^{sign i alpha . x_j} for every alpha in `w`.
CoefficientFieldd analyze(const Eigen::VectorXd& v, const Window& w, const GridSpec& grid, int sign, double scale)
{
    require_matching(w, grid);
    const AxisPhases phases(w.radius(), grid);
    const auto table = w.component_table();
    const int d = w.dim();
    std::vector<std::vector<int>> digits(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) digits[p] = grid_digits(p, grid);

    CoefficientFieldd out(w);
    for (std::size_t o = 0; o < w.size(); ++o) {
        Complex s = 0.0;
        for (std::size_t p = 0; p < grid.size(); ++p) {
            Complex e = v[static_cast<Eigen::Index>(p)];
            for (int k = 0; k < d; ++k)
                e *= phases(sign * table[o * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)], digits[p][static_cast<std::size_t>(k)]);
            s += e;
        }
        out(o) = scale * s;
    }
    return out;
}

Eigen::VectorXd real_part_checked(const Eigen::VectorXcd& z)
{
    for (Eigen::Index p = 0; p < z.size(); ++p)
        if (!(std::abs(z[p].imag()) < kImagTolerance))
            throw NumericalError("energy has an imaginary part; coefficients are not hermitian");
    return z.real();
}

Eigen::VectorXd sample_on_grid(const DensityFunction& f, const GridSpec& grid)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t p = 0; p < grid.size(); ++p) v[static_cast<Eigen::Index>(p)] = f(grid.point(p));
    return v;
}

Eigen::VectorXd positive_samples(const DensityFunction& f, const GridSpec& grid)
{
    Eigen::VectorXd v = sample_on_grid(f, grid);
    for (Eigen::Index p = 0; p < v.size(); ++p) {
        if (!(v[p] > 0) || !std::isfinite(v[p])) {
            std::ostringstream msg;
            msg << "density is not positive at grid point (" << grid.point(static_cast<std::size_t>(p)).transpose() << ")";
            throw InputError(msg.str());
        }
    }
    return v;
}

// e^{-E} / integral e^{-E} dx on the grid, and ln of that integral.
Eigen::VectorXd normalized_ensemble(const Eigen::VectorXd& energy, const GridSpec& grid, double& log_z)
{
    const double shift = energy.minCoeff();
    Eigen::VectorXd w = (-(energy.array() - shift)).exp().matrix();
    const double z = w.sum() * grid.cell_volume();
    log_z = std::log(z) - shift;
    return w / z;
}

}  // namespace

GridSpec::GridSpec(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis)
{
    if (dim < 1) throw InputError("grid dimension must be >= 1");
    if (points_per_axis < 2) throw InputError("grid needs at least 2 points per axis");
    size_ = 1;
    for (int k = 0; k < dim; ++k) size_ *= static_cast<std::size_t>(points_per_axis);
}

double GridSpec::spacing() const { return 2.0 * kPi / n_; }

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

double GridSpec::coordinate(int j) const { return -kPi + j * spacing(); }

Eigen::VectorXd GridSpec::point(std::size_t flat) const
{
    const auto digits = grid_digits(flat, *this);
    Eigen::VectorXd x(dim_);
    for (int k = 0; k < dim_; ++k) x[k] = coordinate(digits[static_cast<std::size_t>(k)]);
    return x;
}

double evaluate_energy(const CoefficientFieldd& coeffs, const Eigen::Ref<const Eigen::VectorXd>& x)
{
    if (x.size() != coeffs.dim()) throw InputError("point dimension does not match coefficients");
    const auto table = coeffs.window().component_table();
    const auto d = static_cast<std::size_t>(coeffs.dim());
    Complex s = 0.0;
    for (std::size_t o = 0; o < coeffs.size(); ++o) {
        if (coeffs(o) == Complex(0)) continue;
        double phase = 0.0;
        for (std::size_t k = 0; k < d; ++k) phase += table[o * d + k] * x[static_cast<Eigen::Index>(k)];
        s += coeffs(o) * std::polar(1.0, phase);
    }
    if (!(std::abs(s.imag()) < kImagTolerance))
        throw NumericalError("energy has an imaginary part; coefficients are not hermitian");
    return s.real();
}

double evaluate_density(const DensityEstimate& est, const Eigen::Ref<const Eigen::VectorXd>& x)
{
    const double q = std::exp(-evaluate_energy(est.coeffs, x));
    return est.shift_mode ? q - 1.0 : q;
}

Eigen::VectorXd energy_on_grid(const CoefficientFieldd& coeffs, const GridSpec& grid)
{
    return real_part_checked(synthesize(coeffs, grid));
}

Eigen::VectorXd density_on_grid(const DensityEstimate& est, const GridSpec& grid)
{
    Eigen::VectorXd q = (-energy_on_grid(est.coeffs, grid).array()).exp().matrix();
    if (est.shift_mode) q.array() -= 1.0;
    return q;
}

double integrate_density(const DensityEstimate& est, const GridSpec& grid)
{
    return density_on_grid(est, grid).sum() * grid.cell_volume();
}

Eigen::VectorXd axis_moment_weights(int n, int power)
{
    if (n < 2) throw InputError("grid needs at least 2 points per axis");
    if (power < 0 || power > 2) throw InputError("moment weights exist for powers 0, 1, 2");
    // I_p(a) = integral_{-pi}^{pi} x^p e^{iax} dx
    auto integral = [power](int a) -> Complex {
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        switch (power) {
        case 0: return a == 0 ? 2.0 * kPi : 0.0;
        case 1: return a == 0 ? Complex(0.0) : Complex(0.0, -2.0 * kPi * sign / a);
        default: return a == 0 ? Complex(2.0 * kPi * kPi * kPi / 3.0) : Complex(4.0 * kPi * sign / (double(a) * a));
        }
    };
    const GridSpec axis(1, n);
    const int top = (n - 1) / 2;  // frequencies resolved on both sides
    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) {
        const double x = axis.coordinate(j);
        double s = integral(0).real();
        for (int a = 1; a <= top; ++a) s += 2.0 * (std::polar(1.0, -a * x) * integral(a)).real();
        if (n % 2 == 0) s += (std::polar(1.0, -(n / 2) * x) * integral(n / 2)).real();
        w[j] = s / n;
    }
    return w;
}

DensityMoments moments_from_values(const Eigen::VectorXd& rho_in, const GridSpec& grid, MomentOptions options)
{
    if (static_cast<std::size_t>(rho_in.size()) != grid.size()) throw InputError("grid values do not match grid size");
    const Eigen::VectorXd rho = options.clamp_negative ? rho_in.cwiseMax(0.0).eval() : rho_in;
    const int d = grid.dim();
    const int n = grid.points_per_axis();
    const Eigen::VectorXd w0 = axis_moment_weights(n, 0);
    const Eigen::VectorXd w1 = axis_moment_weights(n, 1);
    const Eigen::VectorXd w2 = axis_moment_weights(n, 2);

    double mass = 0.0;
    Eigen::VectorXd first = Eigen::VectorXd::Zero(d);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto digits = grid_digits(p, grid);
        const double r = rho[static_cast<Eigen::Index>(p)];
        double base = r;
        for (int k = 0; k < d; ++k) base *= w0[digits[static_cast<std::size_t>(k)]];
        mass += base;
        // w0 is the constant spacing, so dividing it out is exact up to rounding.
        const double h = w0[0];
        for (int j = 0; j < d; ++j) {
            const int dj = digits[static_cast<std::size_t>(j)];
            first[j] += base / h * w1[dj];
            second(j, j) += base / h * w2[dj];
            for (int k = j + 1; k < d; ++k) second(j, k) += base / (h * h) * w1[dj] * w1[digits[static_cast<std::size_t>(k)]];
        }
    }
    if (!(mass > 0)) throw NumericalError("density estimate has non-positive mass");
    DensityMoments m;
    m.mass = mass;
    m.mean = first / mass;
    m.covariance = Eigen::MatrixXd(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) m.covariance(j, k) = m.covariance(k, j) = second(j, k) / mass - m.mean[j] * m.mean[k];
    return m;
}

DensityMoments moments_from_density(const DensityEstimate& est, const GridSpec& grid, MomentOptions options)
{
    return moments_from_values(density_on_grid(est, grid), grid, options);
}

CoefficientFieldd log_density_fourier_oracle(const DensityFunction& density, const Window& window, const GridSpec& grid)
{
    require_matching(window, grid);
    const Eigen::VectorXd f = -positive_samples(density, grid).array().log().matrix();
    return hermitian_project(analyze(f, window, grid, -1, 1.0 / static_cast<double>(grid.size())));
}

double entropy(const DensityFunction& p0, const GridSpec& grid)
{
    const Eigen::VectorXd p = positive_samples(p0, grid);
    return -(p.array() * p.array().log()).sum() * grid.cell_volume();
}

double cross_entropy(const DensityFunction& p0, const DensityEstimate& est, const GridSpec& grid)
{
    if (est.shift_mode) throw InputError("cross entropy needs an unshifted estimate");
    const Eigen::VectorXd p = positive_samples(p0, grid);
    const Eigen::VectorXd energy = energy_on_grid(est.coeffs, grid);
    double log_z = 0.0;
    normalized_ensemble(energy, grid, log_z);
    return (p.array() * (energy.array() + log_z)).sum() * grid.cell_volume();
}

CoefficientFieldd gradient_cross_entropy(const DensityFunction& p0, const CoefficientFieldd& coeffs, const GridSpec& grid)
{
    const Eigen::VectorXd p = positive_samples(p0, grid);
    double log_z = 0.0;
    const Eigen::VectorXd model = normalized_ensemble(energy_on_grid(coeffs, grid), grid, log_z);
    return analyze(p - model, coeffs.window(), grid, +1, grid.cell_volume());
}

double partial_sum_l1_distance(const CoefficientFieldd& coeffs, int n_small, const GridSpec& grid)
{
    if (n_small < 0 || n_small > coeffs.radius()) throw InputError("partial-sum order must lie in [0, radius]");
    double log_z = 0.0;
    const Eigen::VectorXd full = normalized_ensemble(energy_on_grid(coeffs, grid), grid, log_z);
    const Eigen::VectorXd part = normalized_ensemble(energy_on_grid(coeffs.truncated(n_small), grid), grid, log_z);
    return (full - part).cwiseAbs().sum() * grid.cell_volume();
}

double partial_sum_l1_bound(const CoefficientFieldd& coeffs, int n_small, const GridSpec& grid)
{
    if (n_small < 0 || n_small > coeffs.radius()) throw InputError("partial-sum order must lie in [0, radius]");
    const auto head = coeffs.truncated(n_small);
    CoefficientFieldd tail = coeffs;
    tail.values() -= head.values();
    double log_z = 0.0;
    double log_z_n = 0.0;
    normalized_ensemble(energy_on_grid(coeffs, grid), grid, log_z);
    normalized_ensemble(energy_on_grid(head, grid), grid, log_z_n);
    return std::expm1(l1_norm(tail) + std::abs(log_z - log_z_n));
}

}  // namespace tde
