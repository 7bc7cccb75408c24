#ifndef TDE_SYNTH_HPP
#define TDE_SYNTH_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "tde/empirical.hpp"
#include "tde/window.hpp"

namespace tde {

/// xoshiro256** seeded from a 64-bit value through splitmix64.
///
/// Derived variates are defined here rather than taken from <random>
/// distributions so that streams are identical across standard libraries:
///   uniform01: (next() >> 11) * 2^-53, in [0, 1)
///   normal:    Box-Muller on u1 = 1 - uniform01(), u2 = uniform01(),
///              returning r cos(2 pi u2) then r sin(2 pi u2)
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    double uniform01();
    double normal();

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct GaussianSpec {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;

    /// Throws InputError unless covariance is symmetric (1e-14) and positive definite.
    void validate() const;
};

/// I.i.d. draws x = mean + L z with L L^T = covariance and z standard normal,
/// discarding draws outside [-pi, pi]^d.
Dataset sample_truncated_gaussian(const GaussianSpec& spec, std::size_t m, std::uint64_t seed);

/// e^{-i alpha . mean - alpha^T Sigma alpha / 2}, ignoring window truncation.
std::complex<double> gaussian_char(const GaussianSpec& spec, const MultiIndex& alpha);

Dataset sample_uniform(int dim, std::size_t m, std::uint64_t seed);

/// Draws one coordinate in [-pi, pi] from a shared stream.
using AxisSampler = std::function<double(Rng&)>;

/// Each row draws coordinate 1, then 2, ... from its own sampler, all from one
/// stream seeded with `seed`.
Dataset sample_independent_product(const std::vector<AxisSampler>& axis_samplers, std::size_t m, std::uint64_t seed);

AxisSampler uniform_axis_sampler();

/// Normal(mean, sd) truncated to [-pi, pi] by rejection.
AxisSampler truncated_normal_axis_sampler(double mean, double sd);

/// Density proportional to e^{kappa cos(x - mu)} on [-pi, pi], by rejection
/// from the uniform density.
AxisSampler von_mises_axis_sampler(double kappa, double mu = 0.0);

}  // namespace tde

#endif
