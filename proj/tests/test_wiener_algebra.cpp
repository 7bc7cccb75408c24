#include <doctest.h>

#include <cmath>
#include <random>

#include "tde/wiener_algebra.hpp"
#include "test_support.hpp"

using namespace tde;
using tde::testing::brute_force_convolve;
using tde::testing::max_relative_gap;
using tde::testing::random_field;
using tde::testing::random_hermitian;

TEST_CASE("window enumeration is lexicographic and invertible")
{
    const Window w(3, 2);
    CHECK(w.size() == 125);
    CHECK(w.index(0) == MultiIndex{-2, -2, -2});
    CHECK(w.index(1) == MultiIndex{-2, -2, -1});
    CHECK(w.index(w.origin_offset()) == MultiIndex::zero(3));
    for (std::size_t o = 0; o < w.size(); ++o) {
        const auto alpha = w.index(o);
        CHECK(alpha.sup_norm() <= 2);
        CHECK(w.offset(alpha) == o);
        CHECK(w.offset(-alpha) == w.mirror(o));
        CHECK((-alpha).sup_norm() == alpha.sup_norm());
        if (o > 0) CHECK(w.index(o - 1).components() < alpha.components());
    }
    CHECK_THROWS_AS(Window(0, 1), InputError);
    CHECK_THROWS_AS(Window(1, -1), InputError);
    CHECK_THROWS_AS(w.offset(MultiIndex{3, 0, 0}), InputError);
}

TEST_CASE("convolve: identity, shift and brute force")
{
    std::mt19937_64 gen(11);
    const Window w1(2, 1);
    const auto b = random_field(w1, gen);
    CHECK(convolve(CoefficientFieldd::delta(w1), b, w1) == b);

    const Window w2(2, 2);
    CoefficientFieldd a(w1), c(w1);
    a.set({1, 0}, 1.0);
    c.set({0, 1}, 1.0);
    CoefficientFieldd expected(w2);
    expected.set({1, 1}, 1.0);
    CHECK(convolve(a, c, w2) == expected);

    for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_field(w2, gen);
        const auto y = random_field(w2, gen);
        for (int r : {1, 2, 4}) {
            const Window out(2, r);
            CHECK(max_relative_gap(convolve(x, y, out), brute_force_convolve(x, y, out)) < 1e-13);
        }
    }

    CHECK_THROWS_AS(convolve(CoefficientFieldd(Window(1, 1)), b, w1), InputError);
}

TEST_CASE("conv_power")
{
    std::mt19937_64 gen(3);
    const Window w(1, 1);
    const auto c = std::complex<double>(0.7, -0.2);
    const auto cd = CoefficientFieldd::delta(w, c);
    const auto p = conv_power(cd, 4, Window(1, 3));
    CHECK(std::abs(p[MultiIndex{0}] - std::pow(c, 4)) < 1e-15);
    CHECK(std::abs(p[MultiIndex{1}]) == 0.0);

    const auto y = random_field(Window(2, 2), gen);
    CHECK(conv_power(y, 2, Window(2, 4)) == convolve(y, y, Window(2, 4)));
    CHECK(conv_power(y, 0, Window(2, 1)) == CoefficientFieldd::delta(Window(2, 1)));
    CHECK(conv_power(y, 1, Window(2, 1)) == y.restricted(Window(2, 1)));
    CHECK_THROWS_AS(conv_power(y, -1, Window(2, 1)), InputError);

    SUBCASE("exhaustive triple sum at the origin")
    {
        CoefficientFieldd t(Window(1, 1));
        t.set({-1}, 0.2);
        t.set({0}, -0.5);
        t.set({1}, 0.1);
        double expected = 0.0;
        for (int b1 = -1; b1 <= 1; ++b1)
            for (int b2 = -1; b2 <= 1; ++b2)
                for (int b3 = -1; b3 <= 1; ++b3)
                    if (b1 + b2 + b3 == 0)
                        expected += t[MultiIndex{b1}].real() * t[MultiIndex{b2}].real() * t[MultiIndex{b3}].real();
        // frozen from the enumeration above
        CHECK(expected == doctest::Approx(-0.185).epsilon(1e-14));
        const auto cube = conv_power(t, 3, Window(1, 1));
        CHECK(std::abs(cube[MultiIndex{0}] - expected) < 1e-15);
    }

    SUBCASE("truncated output equals the exact power restricted")
    {
        const auto y2 = random_field(Window(2, 2), gen);
        const auto full = convolve(convolve(convolve(y2, y2), y2), y2);
        CHECK(max_relative_gap(conv_power(y2, 4, Window(2, 2)), full.restricted(Window(2, 2))) < 1e-12);
    }
}

TEST_CASE("conv_exp_truncated")
{
    const Window w(2, 2);
    CHECK(conv_exp_truncated(CoefficientFieldd(w), 5, w) == CoefficientFieldd::delta(w));
    CHECK_THROWS_AS(conv_exp_truncated(CoefficientFieldd(w), 0, w), InputError);

    SUBCASE("scalar Taylor polynomial")
    {
        const auto e = conv_exp_truncated(CoefficientFieldd::delta(w, 0.3), 3, w);
        const double taylor = 1.0 - 0.3 + 0.09 / 2.0 - 0.027 / 6.0;
        CHECK(e.origin().real() == doctest::Approx(taylor).epsilon(1e-15));
        CHECK(std::abs(e.origin().real() - std::exp(-0.3)) < std::pow(0.3, 4) / 24.0);
    }

    SUBCASE("axis-supported fields factor into one-dimensional exponentials")
    {
        std::mt19937_64 gen(5);
        const Window line(1, 2);
        const auto y1 = random_hermitian(line, gen, 0.4);
        const auto y2 = random_hermitian(line, gen, 0.3);
        CoefficientFieldd joint(w);
        for (int e = -2; e <= 2; ++e) {
            joint.set({e, 0}, joint[MultiIndex{e, 0}] + y1[MultiIndex{e}]);
            joint.set({0, e}, joint[MultiIndex{0, e}] + y2[MultiIndex{e}]);
        }
        const int n2 = 30;  // both series converged well below rounding
        const auto lhs = conv_exp_truncated(joint, n2, w);
        const auto e1 = conv_exp_truncated(y1, n2, Window(1, 2));
        const auto e2 = conv_exp_truncated(y2, n2, Window(1, 2));
        CoefficientFieldd outer(w);
        for (std::size_t o = 0; o < w.size(); ++o) {
            const auto alpha = w.index(o);
            outer(o) = e1[MultiIndex{alpha[0]}] * e2[MultiIndex{alpha[1]}];
        }
        CHECK(max_relative_gap(lhs, outer) < 1e-12);
    }
}

TEST_CASE("l1 norm")
{
    const Window w(2, 3);
    CHECK(l1_norm(CoefficientFieldd(w)) == 0.0);
    CHECK(l1_norm(CoefficientFieldd::delta(w, -2.0)) == 2.0);
    std::mt19937_64 gen(9);
    const auto f = random_field(w, gen);
    double reversed = 0.0;
    for (std::size_t o = w.size(); o-- > 0;) reversed += std::abs(f(o));
    CHECK(std::abs(l1_norm(f) - reversed) < 1e-14 * reversed);
}

TEST_CASE("hermitian projection")
{
    const Window w(2, 2);
    std::mt19937_64 gen(4);
    const auto h = random_hermitian(w, gen, 1.0);
    CHECK(hermitian_project(h) == h);
    CHECK(is_hermitian(h));

    const auto i0 = CoefficientFieldd::delta(w, std::complex<double>(0.0, 1.0));
    CHECK(hermitian_project(i0).origin() == std::complex<double>(0.0, 0.0));

    const auto f = random_field(w, gen);
    const auto once = hermitian_project(f);
    CHECK(hermitian_project(once) == once);
    CHECK(hermitian_defect(once) == 0.0);
    CHECK(once.origin().imag() == 0.0);
}

TEST_CASE("algebra properties on random fields")
{
    std::mt19937_64 gen(2718);
    std::uniform_int_distribution<int> dim_pick(1, 3);
    std::uniform_int_distribution<int> radius_pick(0, 2);
    std::uniform_real_distribution<double> l1_pick(0.05, 2.0);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = dim_pick(gen);
        const Window w(d, d == 3 ? std::min(radius_pick(gen), 1) : radius_pick(gen));
        const auto a = random_hermitian(w, gen, l1_pick(gen));
        const auto b = random_field(w, gen, 0.5);
        const auto c = random_field(w, gen, 0.5);

        const auto ab = convolve(a, b);
        if (l1_norm(ab) > l1_norm(a) * l1_norm(b) * (1 + 1e-13)) ++failures;
        if (max_relative_gap(ab, convolve(b, a)) > 1e-14) ++failures;

        const Window wide(d, 3 * w.radius());
        if (max_relative_gap(convolve(convolve(a, b, wide), c, wide), convolve(a, convolve(b, c, wide), wide)) > 1e-13)
            ++failures;

        const auto e = conv_exp_truncated(a, 6, w);
        if (l1_norm(e) > std::exp(l1_norm(a)) * (1 + 1e-13)) ++failures;
        if (!is_hermitian(e, 1e-14 * std::exp(l1_norm(a)))) ++failures;
        if (!is_hermitian(convolve(a, a), 1e-14 * (1 + l1_norm(a) * l1_norm(a)))) ++failures;

        const Window out(d, 5 * w.radius());
        const auto lhs = convolve(conv_power(a, 2, out), conv_power(a, 3, out), out);
        if (max_relative_gap(lhs, conv_power(a, 5, out)) > 1e-11) ++failures;
    }
    CHECK(failures == 0);
}
