#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "muskat/singular.hpp"

using namespace muskat;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

int node_of(const GridSpec& s, double x) {
    return static_cast<int>(std::lround((x + s.L) / s.dx));
}
}  // namespace

TEST_CASE("hilbert_rational closed forms") {
    CHECK(hilbert_rational(0, 1, 0.0) == doctest::Approx(0.0));
    CHECK(hilbert_rational(0, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hilbert_rational(1, 1, 0.0) == doctest::Approx(-1.0).epsilon(1e-12));
    // x/(1+x^2) pair across a range.
    for (double x : {-2.5, -0.3, 0.7, 4.0})
        CHECK(hilbert_rational(0, 1, x) == doctest::Approx(x / (1 + x * x)).epsilon(1e-12));
    for (double x : {-2.5, -0.3, 0.7, 4.0})
        CHECK(hilbert_rational(1, 1, x) == doctest::Approx(-1.0 / (1 + x * x)).epsilon(1e-12));
    // Frozen adaptive-quadrature oracle values.
    CHECK(hilbert_rational(0, 5, 2.3) == doctest::Approx(0.12258592247595936).epsilon(1e-10));
    CHECK(hilbert_rational(3, 4, 1.7) == doctest::Approx(0.019733253666019811).epsilon(1e-10));
    CHECK_THROWS_AS(hilbert_rational(2, 1, 0.5), std::invalid_argument);
}

TEST_CASE("hilbert_rational_truncated") {
    CHECK(hilbert_rational_truncated(0, 1, 0.0, HilbertRegion::inner) == doctest::Approx(0.0));
    // Frozen oracle values.
    CHECK(hilbert_rational_truncated(0, 1, 3.0, HilbertRegion::inner) ==
          doctest::Approx(0.04035833709962693).epsilon(1e-10));
    CHECK(hilbert_rational_truncated(3, 4, 0.37, HilbertRegion::inner) ==
          doctest::Approx(-0.05816167696918055).epsilon(1e-10));
    // inner + outer = full.
    for (int n = 1; n <= 5; ++n)
        for (int m = 0; m < 2 * n; ++m)
            for (double x : {-1.7, 0.0, 0.41, 2.9}) {
                const double inner = hilbert_rational_truncated(m, n, x, HilbertRegion::inner);
                const double outer = hilbert_rational_truncated(m, n, x, HilbertRegion::outer);
                CHECK(inner + outer ==
                      doctest::Approx(hilbert_rational(m, n, x)).epsilon(1e-11));
            }
}

TEST_CASE("pv_integral trivial and closed-form identities") {
    const GridSpec spec = make_grid(10, 1001);
    const InterfaceState z(sample(spec, [](double) { return 0.0; }));
    const QuadratureScheme quad = make_scheme(spec, 40.0, 64);

    const int i0 = node_of(spec, 0.0);
    CHECK(pv_integral(z, i0, IntegrandId::VEL1, quad) == 0.0);
    CHECK(pv_integral(z, i0, IntegrandId::VEL2, quad) == 0.0);
    CHECK(std::abs(pv_integral(z, i0, IntegrandId::K_OVER_ALPHA, quad)) <= 1e-12);

    // PV int K/alpha = 2 pi x / (1 + 4 x^2) for g = 0; needs a large cutoff.
    const QuadratureScheme big = make_scheme(spec, 1000.0, 256);
    const int ih = node_of(spec, 0.5);
    CHECK(pv_integral(z, ih, IntegrandId::K_OVER_ALPHA, big) ==
          doctest::Approx(kPi / 2.0).epsilon(2e-4));

    // mean-zero kernels of the pure parabola.
    for (double x : {-3.0, 0.1, 2.5}) {
        const int i = node_of(spec, x);
        CHECK(std::abs(pv_integral(z, i, IntegrandId::MEAN_GAMMA_F, quad)) <= 1e-10);
        CHECK(std::abs(pv_integral(z, i, IntegrandId::MEAN_THETA_F, quad)) <= 1e-10);
    }

    // scheme/grid mismatch rejected.
    const GridSpec other = make_grid(5, 501);
    const QuadratureScheme qo = make_scheme(other, 20.0, 64);
    CHECK_THROWS_AS(pv_integral(z, i0, IntegrandId::VEL1, qo), std::invalid_argument);
}

TEST_CASE("pv_integral tail-cutoff and refinement behavior") {
    const GridSpec spec = make_grid(5, 401);
    const InterfaceState b(sample(spec, [](double x) { return bump(x, 0.3, 1.5, 0.3); }));
    const int i = node_of(spec, 0.5);
    const double vA = pv_integral(b, i, IntegrandId::VEL2, make_scheme(spec, 20.0, 256));
    const double v2A = pv_integral(b, i, IntegrandId::VEL2, make_scheme(spec, 40.0, 256));
    const double v4A = pv_integral(b, i, IntegrandId::VEL2, make_scheme(spec, 80.0, 256));
    // Tail-cutoff differences shrink with fitted exponent >= 0.9.
    const double d1 = std::abs(vA - v2A);
    const double d2 = std::abs(v2A - v4A);
    CHECK(d1 > 0.0);
    CHECK(std::log2(d1 / d2) >= 0.9);
}

TEST_CASE("discrete_hilbert against the rational pair") {
    const GridSpec spec = make_grid(50, 2001);
    const GridFunction f = sample(spec, [](double x) { return 1.0 / (1.0 + x * x); });
    const GridFunction hf = discrete_hilbert(f);
    for (double x : {-2.0, -0.5, 0.5, 1.0, 2.0}) {
        const int i = node_of(spec, x);
        CHECK(hf.at(i) == doctest::Approx(x / (1 + x * x)).epsilon(2e-2));
    }
    const GridFunction z = sample(spec, [](double) { return 0.0; });
    for (double v : discrete_hilbert(z).values) CHECK(v == 0.0);
    for (double v : lambda_op(z).values) CHECK(v == 0.0);
}

TEST_CASE("make_scheme validation") {
    const GridSpec spec = make_grid(10, 1001);
    CHECK_THROWS_AS(make_scheme(spec, 40.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(make_scheme(spec, 40.007, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_scheme(spec, 10.0, 64), std::invalid_argument);
}
