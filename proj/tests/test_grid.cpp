#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "rbyhj/grid.hpp"

using namespace rbyhj;
static const double kPi = std::acos(-1.0);

TEST_CASE("second differences of the quadratic are exactly the curvature") {
    auto u = GridFn::sample_line(257, -2.0, 1.0 / 64.0, [](double x) { return 0.5 * x * x; });
    auto rep = second_diff(u, 1);  // constant extension attenuates the end nodes
    CHECK(rep.max_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.max_minus <= -0.99);  // interior second differences all equal +1
}

TEST_CASE("kink of |x| measures 2/h at the kink node") {
    const double h = 1.0 / 128.0;
    auto u = GridFn::sample_line(257, -1.0, h, [](double x) { return std::fabs(x); });
    auto rep = second_diff(u);
    CHECK(rep.max_plus == doctest::Approx(2.0 / h).epsilon(1e-12));
    CHECK(rep.argmax_plus == 128);
}

TEST_CASE("sine examples at h = 2pi/629 within 1e-4") {
    const std::size_t n = 629;  // ~0.01 spacing on [0, 2pi)
    auto u = GridFn::sample_periodic(n, 0.0, 2.0 * kPi, [](double x) { return std::sin(x); });
    auto rep = second_diff(u);
    CHECK(rep.max_plus == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rep.max_minus == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(lipschitz_norm(u) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(oscillation(u) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("affine data: exact zero second differences, exact slope") {
    // dyadic data so the arithmetic is exact
    std::mt19937_64 eng(42);
    std::uniform_int_distribution<int> di(-512, 512);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = di(eng) / 256.0, b = di(eng) / 256.0;
        auto u = GridFn::sample_line(67, -0.5, 1.0 / 64.0, [&](double x) { return a + b * x; });
        auto rep = second_diff(u, 1);
        CHECK(rep.max_plus == 0.0);
        CHECK(rep.max_minus == 0.0);
        CHECK(lipschitz_norm(u) == std::fabs(b));
    }
}

TEST_CASE("scaling by a dyadic factor scales both maxima exactly") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> dv(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto u = GridFn::make_periodic(64, 0.0, 2.0);
        for (double& y : u.v) y = dv(eng);
        const double alpha = std::ldexp(1.0, (trial % 7) - 3);
        GridFn su = u;
        for (double& y : su.v) y *= alpha;
        auto r1 = second_diff(u), r2 = second_diff(su);
        CHECK(r2.max_plus == alpha * r1.max_plus);
        CHECK(r2.max_minus == alpha * r1.max_minus);
    }
}

TEST_CASE("lipschitz_norm and oscillation are non-expansive under max with a constant") {
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> dv(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        auto u = GridFn::make_periodic(48, 0.0, 1.0);
        for (double& y : u.v) y = dv(eng);
        const double c = dv(eng);
        GridFn m = u;
        for (double& y : m.v) y = std::max(y, c);
        CHECK(lipschitz_norm(m) <= lipschitz_norm(u));
        CHECK(oscillation(m) <= oscillation(u));
    }
}

TEST_CASE("constant and linear oscillation examples") {
    auto c = GridFn::sample_line(17, 0.0, 0.125, [](double) { return 3.25; });
    CHECK(oscillation(c) == 0.0);
    CHECK(lipschitz_norm(c) == 0.0);
    auto lin = GridFn::sample_line(17, 0.0, 1.0 / 16.0, [](double x) { return x; });
    CHECK(oscillation(lin) == 1.0);
    auto three = GridFn::sample_line(17, 0.0, 1.0 / 16.0, [](double x) { return 3.0 * x; });
    CHECK(lipschitz_norm(three) == 3.0);
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS(GridFn::make_line(2, 0.0, 0.1));
    CHECK_THROWS(GridFn::make_line(8, 0.0, -0.5));
    auto u = GridFn::make_periodic(8, 0.0, 1.0);
    u.v[3] = HUGE_VAL;
    CHECK_THROWS(u.validate());
}

TEST_CASE("csv round trip preserves values") {
    auto u = GridFn::sample_periodic(31, -1.0, 2.0, [](double x) { return std::sin(2.1 * x); });
    const std::string path = "grid_roundtrip_test.csv";
    write_csv(u, path);
    auto w = read_csv(path, Boundary::Periodic);
    REQUIRE(w.size() == u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        CHECK(w.v[i] == doctest::Approx(u.v[i]).epsilon(1e-14));
    std::remove(path.c_str());
}
