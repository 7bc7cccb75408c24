#include "tde/synth.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "tde/errors.hpp"

namespace tde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxRejectionsPerSample = 100000;

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

bool in_window(double x) { return x >= -kPi && x <= kPi; }

void require_count(std::size_t m)
{
    if (m < 1) throw InputError("sample count must be >= 1");
}

}  // namespace

Rng::Rng(std::uint64_t seed)
{
    for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Rng::next()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1p-53; }

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

void GaussianSpec::validate() const
{
    const auto d = mean.size();
    if (d < 1) throw InputError("Gaussian mean must be non-empty");
    if (covariance.rows() != d || covariance.cols() != d) throw InputError("covariance shape does not match mean");
    if (!((covariance - covariance.transpose()).cwiseAbs().maxCoeff() <= 1e-14))
        throw InputError("covariance is not symmetric");
    const Eigen::LLT<Eigen::MatrixXd> llt(covariance);
    if (llt.info() != Eigen::Success) throw InputError("covariance is not positive definite");
    if (!(llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 0)) throw InputError("covariance is not positive definite");
}

Dataset sample_truncated_gaussian(const GaussianSpec& spec, std::size_t m, std::uint64_t seed)
{
    spec.validate();
    require_count(m);
    const auto d = spec.mean.size();
    const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(spec.covariance).matrixL();
    Rng rng(seed);
    Eigen::MatrixXd points(static_cast<Eigen::Index>(m), d);
    Eigen::VectorXd z(d);
    std::size_t rejected = 0;
    for (std::size_t n = 0; n < m;) {
        for (Eigen::Index k = 0; k < d; ++k) z[k] = rng.normal();
        const Eigen::VectorXd x = spec.mean + chol * z;
        if (x.unaryExpr([](double c) { return in_window(c) ? 0.0 : 1.0; }).sum() == 0.0) {
            points.row(static_cast<Eigen::Index>(n++)) = x.transpose();
        } else if (++rejected > kMaxRejectionsPerSample * m) {
            throw NumericalError("Gaussian puts too little mass inside [-pi, pi]^d");
        }
    }
    return Dataset(static_cast<int>(d), std::move(points));
}

std::complex<double> gaussian_char(const GaussianSpec& spec, const MultiIndex& alpha)
{
    if (alpha.dim() != spec.mean.size()) throw InputError("multi-index dimension does not match Gaussian");
    Eigen::VectorXd a(alpha.dim());
    for (int k = 0; k < alpha.dim(); ++k) a[k] = alpha[k];
    const double quad = a.dot(spec.covariance * a);
    return std::exp(std::complex<double>(-0.5 * quad, -a.dot(spec.mean)));
}

Dataset sample_uniform(int dim, std::size_t m, std::uint64_t seed)
{
    if (dim < 1) throw InputError("dimension must be >= 1");
    require_count(m);
    std::vector<AxisSampler> samplers(static_cast<std::size_t>(dim), uniform_axis_sampler());
    return sample_independent_product(samplers, m, seed);
}

Dataset sample_independent_product(const std::vector<AxisSampler>& axis_samplers, std::size_t m, std::uint64_t seed)
{
    if (axis_samplers.empty()) throw InputError("need at least one axis sampler");
    require_count(m);
    const auto d = static_cast<Eigen::Index>(axis_samplers.size());
    Rng rng(seed);
    Eigen::MatrixXd points(static_cast<Eigen::Index>(m), d);
    for (Eigen::Index n = 0; n < points.rows(); ++n)
        for (Eigen::Index k = 0; k < d; ++k) points(n, k) = axis_samplers[static_cast<std::size_t>(k)](rng);
    return Dataset(static_cast<int>(d), std::move(points));
}

AxisSampler uniform_axis_sampler()
{
    return [](Rng& rng) { return -kPi + 2.0 * kPi * rng.uniform01(); };
}

AxisSampler truncated_normal_axis_sampler(double mean, double sd)
{
    if (!(sd > 0)) throw InputError("standard deviation must be positive");
    return [mean, sd](Rng& rng) {
        for (std::size_t tries = 0; tries < kMaxRejectionsPerSample; ++tries) {
            const double x = mean + sd * rng.normal();
            if (in_window(x)) return x;
        }
        throw NumericalError("normal puts too little mass inside [-pi, pi]");
    };
}

AxisSampler von_mises_axis_sampler(double kappa, double mu)
{
    if (!(kappa >= 0)) throw InputError("concentration must be non-negative");
    return [kappa, mu](Rng& rng) {
        for (;;) {
            const double x = -kPi + 2.0 * kPi * rng.uniform01();
            if (rng.uniform01() < std::exp(kappa * (std::cos(x - mu) - 1.0))) return x;
        }
    };
}

}  // namespace tde
