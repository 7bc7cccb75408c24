#ifndef TDE_COEFFICIENT_FIELD_HPP
#define TDE_COEFFICIENT_FIELD_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Core>

#include "tde/window.hpp"

namespace tde {

/// Complex values on every multi-index of a Window; implicitly zero outside.
///
/// Values are stored in window enumeration order as an Eigen column vector, so
/// linear combinations can be written directly on `values()`.
template <typename Real>
class CoefficientField {
public:
    using Scalar = std::complex<Real>;
    using Values = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    explicit CoefficientField(const Window& window)
        : window_(window), values_(Values::Zero(static_cast<Eigen::Index>(window.size())))
    {
    }

    CoefficientField(const Window& window, Values values) : window_(window), values_(std::move(values))
    {
        if (static_cast<std::size_t>(values_.size()) != window_.size())
            throw InputError("coefficient vector length does not match window size");
    }

    /// scale * delta_0 on `window`.
    static CoefficientField delta(const Window& window, Scalar scale = Scalar(1))
    {
        CoefficientField f(window);
        f.values_[static_cast<Eigen::Index>(window.origin_offset())] = scale;
        return f;
    }

    const Window& window() const { return window_; }
    int dim() const { return window_.dim(); }
    int radius() const { return window_.radius(); }
    std::size_t size() const { return window_.size(); }

    const Values& values() const { return values_; }
    Values& values() { return values_; }

    Scalar operator()(std::size_t offset) const { return values_[static_cast<Eigen::Index>(offset)]; }
    Scalar& operator()(std::size_t offset) { return values_[static_cast<Eigen::Index>(offset)]; }

    /// Value at alpha, zero when alpha lies outside the window.
    Scalar operator[](const MultiIndex& alpha) const
    {
        if (!window_.contains(alpha)) return Scalar(0);
        return (*this)(window_.offset(alpha));
    }

    void set(const MultiIndex& alpha, Scalar value) { (*this)(window_.offset(alpha)) = value; }

    Scalar origin() const { return (*this)(window_.origin_offset()); }

    /// Copy onto another window of the same dimension: entries outside `target`
    /// are dropped, entries of `target` outside this window are zero.
    CoefficientField restricted(const Window& target) const
    {
        if (target.dim() != dim()) throw InputError("restriction changes dimension");
        if (target == window_) return *this;
        CoefficientField out(target);
        const Window& small = target.radius() < radius() ? target : window_;
        const auto table = small.component_table();
        const int d = dim();
        for (std::size_t o = 0; o < small.size(); ++o) {
            std::size_t src = 0;
            std::size_t dst = 0;
            for (int k = 0; k < d; ++k) {
                const int c = table[o * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)];
                src = src * static_cast<std::size_t>(window_.side()) + static_cast<std::size_t>(c + radius());
                dst = dst * static_cast<std::size_t>(target.side()) + static_cast<std::size_t>(c + target.radius());
            }
            out(dst) = (*this)(src);
        }
        return out;
    }

    /// Keeps only entries with |alpha|_inf <= n, on the same window.
    CoefficientField truncated(int n) const
    {
        CoefficientField out = *this;
        const auto table = window_.component_table();
        const int d = dim();
        for (std::size_t o = 0; o < size(); ++o) {
            int sup = 0;
            for (int k = 0; k < d; ++k) sup = std::max(sup, std::abs(table[o * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)]));
            if (sup > n) out(o) = Scalar(0);
        }
        return out;
    }

    friend bool operator==(const CoefficientField& a, const CoefficientField& b)
    {
        return a.window_ == b.window_ && a.values_ == b.values_;
    }

private:
    Window window_;
    Values values_;
};

using CoefficientFieldd = CoefficientField<double>;

}  // namespace tde

#endif
