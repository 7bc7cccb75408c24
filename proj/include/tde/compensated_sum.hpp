#ifndef TDE_COMPENSATED_SUM_HPP
#define TDE_COMPENSATED_SUM_HPP

#include <complex>

namespace tde {

/// Kahan-compensated running sum over a real scalar.
template <typename Real>
class CompensatedSum {
public:
    void add(Real x)
    {
        const Real y = x - carry_;
        const Real t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }

    Real value() const { return sum_; }

private:
    Real sum_{0};
    Real carry_{0};
};

/// Componentwise Kahan sum of complex terms.
template <typename Real>
class CompensatedComplexSum {
public:
    void add(const std::complex<Real>& z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }

    std::complex<Real> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<Real> re_;
    CompensatedSum<Real> im_;
};

}  // namespace tde

#endif
