#include "tde/hermitian_params.hpp"

#include <complex>

#include "tde/errors.hpp"

namespace tde {

namespace {

Eigen::Index packed_size(const Window& w) { return static_cast<Eigen::Index>(w.size()); }

}  // namespace

Eigen::VectorXd pack_hermitian(const CoefficientFieldd& y)
{
    const auto& w = y.window();
    const std::size_t origin = w.origin_offset();
    Eigen::VectorXd theta(packed_size(w));
    theta[0] = y(origin).real();
    for (std::size_t j = 1; origin + j < w.size(); ++j) {
        const auto v = y(origin + j);
        theta[static_cast<Eigen::Index>(2 * j - 1)] = v.real();
        theta[static_cast<Eigen::Index>(2 * j)] = v.imag();
    }
    return theta;
}

CoefficientFieldd unpack_hermitian(const Window& w, const Eigen::VectorXd& theta)
{
    if (theta.size() != packed_size(w)) throw InputError("packed vector length does not match window");
    const std::size_t origin = w.origin_offset();
    CoefficientFieldd y(w);
    y(origin) = theta[0];
    for (std::size_t j = 1; origin + j < w.size(); ++j) {
        const std::complex<double> v(theta[static_cast<Eigen::Index>(2 * j - 1)], theta[static_cast<Eigen::Index>(2 * j)]);
        y(origin + j) = v;
        y(w.mirror(origin + j)) = std::conj(v);
    }
    return y;
}

Eigen::VectorXd pack_gradient(const CoefficientFieldd& g)
{
    const auto& w = g.window();
    const std::size_t origin = w.origin_offset();
    Eigen::VectorXd out(packed_size(w));
    out[0] = g(origin).real();
    for (std::size_t j = 1; origin + j < w.size(); ++j) {
        const auto v = g(origin + j);
        out[static_cast<Eigen::Index>(2 * j - 1)] = 2.0 * v.real();
        out[static_cast<Eigen::Index>(2 * j)] = -2.0 * v.imag();
    }
    return out;
}

Eigen::MatrixXd packed_toeplitz_jacobian(const Window& w, const CoefficientFieldd& kernel)
{
    if (kernel.dim() != w.dim() || kernel.radius() < 2 * w.radius())
        throw InputError("Jacobian kernel must cover twice the window radius");
    const int d = w.dim();
    const auto table = w.component_table();
    const std::size_t origin = w.origin_offset();
    const std::size_t half = w.size() - origin;  // origin plus upper half
    const auto ks = static_cast<std::size_t>(kernel.window().side());
    const int kr = kernel.radius();

    // kernel(alpha + sign * beta) for window offsets alpha, beta
    auto k_at = [&](std::size_t a, std::size_t b, int sign) {
        std::size_t o = 0;
        for (int k = 0; k < d; ++k) {
            const int c = table[a * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] +
                          sign * table[b * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
            o = o * ks + static_cast<std::size_t>(c + kr);
        }
        return kernel(o);
    };

    Eigen::MatrixXd jac(packed_size(w), packed_size(w));
    auto put_row = [&](std::size_t ja, Eigen::Index col, std::complex<double> v) {
        if (ja == 0) {
            jac(0, col) = v.real();
        } else {
            jac(static_cast<Eigen::Index>(2 * ja - 1), col) = v.real();
            jac(static_cast<Eigen::Index>(2 * ja), col) = v.imag();
        }
    };
    for (std::size_t ja = 0; ja < half; ++ja) {
        const std::size_t a = origin + ja;
        put_row(ja, 0, k_at(a, origin, -1));
        for (std::size_t jb = 1; jb < half; ++jb) {
            const std::size_t b = origin + jb;
            const auto minus = k_at(a, b, -1);
            const auto plus = k_at(a, b, +1);
            put_row(ja, static_cast<Eigen::Index>(2 * jb - 1), minus + plus);
            put_row(ja, static_cast<Eigen::Index>(2 * jb), std::complex<double>(0, 1) * (minus - plus));
        }
    }
    return jac;
}

}  // namespace tde
