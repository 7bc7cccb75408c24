#ifndef TDE_WIENER_ALGEBRA_HPP
#define TDE_WIENER_ALGEBRA_HPP

// Arithmetic on truncated Fourier-coefficient sequences. The product of two
// trigonometric series corresponds to the (non-circular) convolution of their
// coefficients, and e^{-E} corresponds to the convolution exponential of the
// coefficients of E.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "tde/coefficient_field.hpp"
#include "tde/compensated_sum.hpp"

namespace tde {

namespace detail {

template <typename Real>
struct SparseEntries {
    std::vector<std::size_t> offsets;
    std::vector<std::complex<Real>> values;
    std::vector<int> components;  // offsets.size() * dim
};

template <typename Real>
SparseEntries<Real> nonzero_entries(const CoefficientField<Real>& f)
{
    SparseEntries<Real> s;
    const auto table = f.window().component_table();
    const auto d = static_cast<std::size_t>(f.dim());
    for (std::size_t o = 0; o < f.size(); ++o) {
        if (f(o) == std::complex<Real>(0)) continue;
        s.offsets.push_back(o);
        s.values.push_back(f(o));
        s.components.insert(s.components.end(), table.begin() + static_cast<std::ptrdiff_t>(o * d),
                            table.begin() + static_cast<std::ptrdiff_t>((o + 1) * d));
    }
    return s;
}

template <typename Real>
void require_same_dim(const CoefficientField<Real>& a, const Window& w)
{
    if (a.dim() != w.dim()) throw InputError("coefficient field dimension mismatch");
}

}  // namespace detail

/// result(gamma) = sum over alpha + beta = gamma of a(alpha) * b(beta), for every
/// gamma in `out`. All pairs are summed; nothing wraps around.
template <typename Real>
CoefficientField<Real> convolve(const CoefficientField<Real>& a, const CoefficientField<Real>& b, const Window& out)
{
    detail::require_same_dim(a, out);
    detail::require_same_dim(b, out);
    const auto sa = detail::nonzero_entries(a);
    const auto sb = detail::nonzero_entries(b);
    const int d = out.dim();
    const int r = out.radius();
    const auto side = static_cast<std::size_t>(out.side());

    CoefficientField<Real> result(out);
    for (std::size_t jb = 0; jb < sb.offsets.size(); ++jb) {
        const int* cb = &sb.components[jb * static_cast<std::size_t>(d)];
        for (std::size_t ja = 0; ja < sa.offsets.size(); ++ja) {
            const int* ca = &sa.components[ja * static_cast<std::size_t>(d)];
            std::size_t o = 0;
            bool inside = true;
            for (int k = 0; k < d; ++k) {
                const int c = ca[k] + cb[k];
                if (c > r || c < -r) {
                    inside = false;
                    break;
                }
                o = o * side + static_cast<std::size_t>(c + r);
            }
            if (inside) result(o) += sa.values[ja] * sb.values[jb];
        }
    }
    return result;
}

/// Convolution over the smallest window holding the full support of a * b.
template <typename Real>
CoefficientField<Real> convolve(const CoefficientField<Real>& a, const CoefficientField<Real>& b)
{
    return convolve(a, b, Window(a.dim(), a.radius() + b.radius()));
}

/// n-fold self-convolution y^{*n} restricted to `out`.
///
/// Intermediate products are never truncated in a way that affects the result:
/// after k factors only the indices with |alpha|_inf <= radius(out) + (n-k) N
/// can still reach `out`, so the k-th partial product is kept on
/// min(k N, radius(out) + (n-k) N). This equals growing the support to k N.
template <typename Real>
CoefficientField<Real> conv_power(const CoefficientField<Real>& y, int n, const Window& out)
{
    detail::require_same_dim(y, out);
    if (n < 0) throw InputError("convolution power must be non-negative");
    if (n == 0) return CoefficientField<Real>::delta(out);
    const int big_n = y.radius();
    const int r = out.radius();
    CoefficientField<Real> power = y;
    for (int k = 2; k <= n; ++k) {
        const int rk = std::min(k * big_n, r + (n - k) * big_n);
        power = convolve(power, y, Window(out.dim(), rk));
    }
    return power.restricted(out);
}

namespace detail {

// delta_0 + sum_{n=1}^{terms} (-1)^n / n! y^{*n}; terms == 0 gives delta_0.
template <typename Real>
CoefficientField<Real> conv_exp_series(const CoefficientField<Real>& y, int terms, const Window& out)
{
    using Complex = std::complex<Real>;
    const int big_n = y.radius();
    const int r = out.radius();
    std::vector<CompensatedComplexSum<Real>> acc(out.size());
    acc[out.origin_offset()].add(Complex(1));

    CoefficientField<Real> power = CoefficientField<Real>::delta(Window(out.dim(), 0));
    Real coef = 1;
    for (int k = 1; k <= terms; ++k) {
        const int rk = std::min(k * big_n, r + (terms - k) * big_n);
        power = convolve(power, y, Window(out.dim(), rk));
        coef = -coef / static_cast<Real>(k);
        const auto term = power.restricted(out);
        for (std::size_t o = 0; o < out.size(); ++o)
            if (term(o) != Complex(0)) acc[o].add(coef * term(o));
    }
    CoefficientField<Real> result(out);
    for (std::size_t o = 0; o < out.size(); ++o) result(o) = acc[o].value();
    return result;
}

}  // namespace detail

/// Truncated convolution exponential
///   delta_0 + sum_{n=1}^{n2} (-1)^n / n! y^{*n},
/// the coefficient image of the order-n2 Taylor polynomial of e^{-E}.
/// Terms are added in ascending n with compensated accumulation.
template <typename Real>
CoefficientField<Real> conv_exp_truncated(const CoefficientField<Real>& y, int n2, const Window& out)
{
    detail::require_same_dim(y, out);
    if (n2 < 1) throw InputError("exponential series order must be >= 1");
    return detail::conv_exp_series(y, n2, out);
}

template <typename Real>
Real l1_norm(const CoefficientField<Real>& y)
{
    CompensatedSum<Real> s;
    for (std::size_t o = 0; o < y.size(); ++o) s.add(std::abs(y(o)));
    return s.value();
}

template <typename Real>
Real sup_norm(const CoefficientField<Real>& y)
{
    Real m = 0;
    for (std::size_t o = 0; o < y.size(); ++o) m = std::max(m, std::abs(y(o)));
    return m;
}

/// (y(alpha) + conj(y(-alpha))) / 2. Idempotent bit for bit.
template <typename Real>
CoefficientField<Real> hermitian_project(const CoefficientField<Real>& y)
{
    CoefficientField<Real> out(y.window());
    const auto& w = y.window();
    for (std::size_t o = 0; o < y.size(); ++o) out(o) = (y(o) + std::conj(y(w.mirror(o)))) * Real(0.5);
    return out;
}

/// Largest |y(alpha) - conj(y(-alpha))|.
template <typename Real>
Real hermitian_defect(const CoefficientField<Real>& y)
{
    Real m = 0;
    const auto& w = y.window();
    for (std::size_t o = 0; o < y.size(); ++o) m = std::max(m, std::abs(y(o) - std::conj(y(w.mirror(o)))));
    return m;
}

template <typename Real>
bool is_hermitian(const CoefficientField<Real>& y, Real tol = 0)
{
    return hermitian_defect(y) <= tol;
}

}  // namespace tde

#endif
