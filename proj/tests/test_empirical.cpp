#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tde/empirical.hpp"
#include "tde/synth.hpp"
#include "test_support.hpp"

using namespace tde;
using tde::testing::kPi;

namespace {

GaussianSpec reference_gaussian()
{
    GaussianSpec g;
    g.mean = Eigen::Vector2d(0.0, 0.0);
    g.covariance.resize(2, 2);
    g.covariance << 0.25, 0.2, 0.2, 0.75;
    return g;
}

}  // namespace

TEST_CASE("single samples")
{
    const Window w(2, 3);
    const auto at_origin = empirical_moments(Dataset(2, Eigen::MatrixXd::Zero(1, 2)), w);
    for (std::size_t o = 0; o < w.size(); ++o) CHECK(at_origin.values(o) == std::complex<double>(1.0, 0.0));
    CHECK(at_origin.sample_count == 1);

    Eigen::MatrixXd p(1, 2);
    p << kPi / 2, 0.0;
    const auto m = empirical_moments(Dataset(2, p), w);
    const auto v = m.values[MultiIndex{1, 0}];
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(-1.0));
}

TEST_CASE("rejections")
{
    CHECK_THROWS_AS(Dataset(2, Eigen::MatrixXd(0, 2)), InputError);
    Eigen::MatrixXd bad(3, 1);
    bad << 0.1, 3.2, -0.5;
    try {
        Dataset d(1, bad);
        FAIL("expected rejection");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("sample 1") != std::string::npos);
    }
    const Dataset d1(1, Eigen::MatrixXd::Zero(2, 1));
    CHECK_THROWS_AS(empirical_moments(d1, Window(2, 1)), InputError);
}

TEST_CASE("truncated Gaussian moments match the characteristic function")
{
    const auto spec = reference_gaussian();
    const std::size_t m = 10000;
    const auto data = sample_truncated_gaussian(spec, m, 2024);
    const Window w(2, 2);
    const auto mom = empirical_moments(data, w);
    const double envelope = 5.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t o = 0; o < w.size(); ++o) {
        const auto alpha = w.index(o);
        CHECK(std::abs(mom.values(o) - gaussian_char(spec, alpha)) < envelope);
    }
}

TEST_CASE("moment invariants")
{
    const auto data = sample_uniform(2, 500, 77);
    const Window w(2, 4);
    const auto mom = empirical_moments(data, w);
    CHECK(mom.values.origin() == std::complex<double>(1.0, 0.0));
    for (std::size_t o = 0; o < w.size(); ++o) {
        CHECK(mom.values(w.mirror(o)) == std::conj(mom.values(o)));  // bitwise
        CHECK(std::abs(mom.values(o)) <= 1.0 + 1e-14);
    }

    SUBCASE("permutation invariance")
    {
        Eigen::MatrixXd shuffled = data.points();
        std::vector<Eigen::Index> order(static_cast<std::size_t>(shuffled.rows()));
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
        std::mt19937_64 gen(1);
        std::shuffle(order.begin(), order.end(), gen);
        for (std::size_t i = 0; i < order.size(); ++i) shuffled.row(static_cast<Eigen::Index>(i)) = data.points().row(order[i]);
        const auto other = empirical_moments(Dataset(2, shuffled), w);
        CHECK(tde::testing::max_abs_gap(other.values, mom.values) < 1e-12);
    }
}

TEST_CASE("streaming accumulator")
{
    const Window w(2, 2);
    MomentAccumulator empty(w);
    CHECK_THROWS_AS(empty.finalize(), InputError);

    MomentAccumulator one(w);
    one.update(Eigen::Vector2d::Zero());
    const auto ones = one.finalize();
    for (std::size_t o = 0; o < w.size(); ++o) CHECK(ones.values(o) == std::complex<double>(1.0, 0.0));

    SUBCASE("rejected point leaves the state unchanged")
    {
        MomentAccumulator acc(w);
        acc.update(Eigen::Vector2d(0.3, -1.0));
        const auto before = acc.finalize();
        CHECK_THROWS_AS(acc.update(Eigen::Vector2d(4.0, 0.0)), InputError);
        CHECK(acc.count() == 1);
        CHECK(acc.finalize().values == before.values);
    }

    SUBCASE("interleaved streams match the batch")
    {
        const auto a = sample_uniform(2, 300, 5);
        const auto b = sample_uniform(2, 200, 6);
        MomentAccumulator acc(w);
        Eigen::MatrixXd merged(500, 2);
        Eigen::Index row = 0;
        for (Eigen::Index i = 0; i < 300; ++i) {
            acc.update(a.points().row(i).transpose());
            merged.row(row++) = a.points().row(i);
            if (i < 200) {
                acc.update(b.points().row(i).transpose());
                merged.row(row++) = b.points().row(i);
            }
        }
        const auto batch = empirical_moments(Dataset(2, merged), w);
        CHECK(tde::testing::max_abs_gap(acc.finalize().values, batch.values) < 1e-13);
    }
}

TEST_CASE("axis moments equal the moments of the marginal")
{
    const auto data = sample_uniform(3, 400, 12);
    const Window w(3, 3);
    const auto joint = empirical_moments(data, w);
    for (int k = 0; k < 3; ++k) {
        const auto axis = axis_moments(joint, k);
        const auto marg = empirical_moments(data.marginal(k), Window(1, 3));
        CHECK(tde::testing::max_abs_gap(axis.values, marg.values) < 1e-15);
    }
}
