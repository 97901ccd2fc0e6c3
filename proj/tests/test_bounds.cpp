#include <doctest.h>

#include <cmath>

#include "rbyhj/bounds.hpp"

using namespace rbyhj;

TEST_CASE("catalog: x-independent first order gives the constant drift") {
    ProblemSpec spec;
    FirstOrderModel fo;
    fo.F = [](double p) { return 0.5 * 3.0 * p * p; };  // F_pp = 3
    spec.model = fo;
    spec.gradient_radius = 2.0;
    for (auto sign : {BoundSign::Plus, BoundSign::Minus}) {
        auto d = drift_for(spec, sign);
        for (double l : {0.1, 1.0, 5.0})
            CHECK(d.V(l) == doctest::Approx(-3.0).epsilon(0.02));  // sampled + 1% inflation
        CHECK(d.lipschitz_at_zero);
    }
}

TEST_CASE("catalog: quasilinear |p|^2 with R = 1 gives -2/l") {
    ProblemSpec spec;
    spec.model = QuasilinearModel{PowerLaw{1.0, 2}};  // a(p) = p^2, a_pp = 2
    spec.gradient_radius = 1.0;
    spec.dimension = 1;
    auto d = drift_for(spec, BoundSign::Plus);
    CHECK(d.V(1.0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(d.V(0.5) == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK_FALSE(d.lipschitz_at_zero);
    // flow closed form sqrt(l^2 - 4t)
    CHECK(flow(d, 0.1, 1.0) == doctest::Approx(std::sqrt(1.0 - 0.4)).epsilon(1e-12));
    auto dm = drift_for(spec, BoundSign::Minus);
    CHECK(dm.V(1.0) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("catalog: monotone fully nonlinear and zero classes have vanishing drift") {
    ProblemSpec fnl;
    fnl.model = FullyNonlinear1DModel{[](double r) { return std::tanh(r); }};
    for (auto sign : {BoundSign::Plus, BoundSign::Minus}) {
        auto d = drift_for(fnl, sign);
        for (double l : {0.2, 1.0, 3.0}) CHECK(d.V(l) == 0.0);
    }
    ProblemSpec zero;
    zero.model = ZeroModel{};
    CHECK(drift_for(zero, BoundSign::Plus).V(1.0) == 0.0);
}

TEST_CASE("phi-to-drift conversion") {
    auto z = phi_to_drift([](double) { return 0.0; });
    CHECK(z.V(0.7) == 0.0);
    const double fpp = 1.7;
    auto c = phi_to_drift([fpp](double lam) { return fpp * lam * lam; });
    for (double l : {0.2, 1.0, 4.0}) CHECK(c.V(l) == doctest::Approx(-fpp).epsilon(1e-12));
    const double N = 1.0, axx = 0.3, axp = 0.4, app = 0.5;
    auto q = phi_to_drift([=](double lam) {
        return N * lam * axx + 2.0 * N * lam * lam * axp + N * lam * lam * lam * app;
    });
    for (double l : {0.3, 1.0, 2.5})
        CHECK(q.V(l) ==
              doctest::Approx(-N * axx * l - 2.0 * N * axp - N * app / l).epsilon(1e-12));
}

TEST_CASE("bound curve for the zero class is the running extrema pair") {
    const double twopi = 2.0 * std::acos(-1.0);
    auto sine = deterministic_path(SineKind{1.0, 1.0}, twopi, 1024);
    ProblemSpec zero;
    zero.model = ZeroModel{};
    auto r = bound_curve(zero, sine, 0.0, 0.0);
    auto stats = running_extrema(sine);
    for (std::size_t i = 0; i < r.bound.size(); ++i) {
        CHECK(std::fabs(r.L_plus.L[i] - (sine.xi[i] - stats.running_min[i])) <= 1e-12);
        CHECK(std::fabs(r.L_minus.L[i] - (stats.running_max[i] - sine.xi[i])) <= 1e-12);
        const double m = std::min(r.L_plus.L[i], r.L_minus.L[i]);
        if (m > 0.0)
            CHECK(r.bound[i] == doctest::Approx(1.0 / m));
        else
            CHECK(std::isinf(r.bound[i]));
    }
}

TEST_CASE("bound curve for first order: drift-shifted running minimum") {
    auto br = brownian(1.0, 512, 1.0, 12);
    ProblemSpec spec;
    FirstOrderModel fo;
    fo.F = [](double p) { return 0.5 * p * p; };  // F_pp = 1
    spec.model = fo;
    spec.gradient_radius = 1.0;
    auto r = bound_curve(spec, br, 0.0, 0.0);
    const auto d = drift_for(spec, BoundSign::Plus);
    const double c = -d.V(1.0);
    DrivingPath shifted = br;
    for (std::size_t i = 0; i < shifted.xi.size(); ++i) shifted.xi[i] -= c * shifted.t(i);
    auto stats = running_extrema(shifted);
    // the stopped flow clips at 0 inside a cell, so the scheme sits within
    // O(sqrt(dt)) of the continuous running-min solution
    double worst = 0.0;
    for (std::size_t i = 0; i < r.L_plus.L.size(); ++i)
        worst = std::max(worst,
                         std::fabs(r.L_plus.L[i] - (shifted.xi[i] - stats.running_min[i])));
    MESSAGE("running-min gap ", worst);
    CHECK(worst <= 3.0 * (c + 1.0) * std::sqrt(br.dt()));
}

TEST_CASE("quasilinear curve with a silent path blows up at l0^2/(2c)") {
    auto zero = deterministic_path(ZeroKind{}, 0.5, 2000);
    ProblemSpec spec;
    spec.model = QuasilinearModel{PowerLaw{1.0, 2}};  // drift -2/l
    spec.gradient_radius = 1.0;
    auto r = bound_curve(spec, zero, 1.0, 1.0);
    for (std::size_t i = 0; i < r.bound.size(); ++i) {
        const double t = r.L_plus.times[i];
        if (t < 0.25 - 1e-9) {
            CHECK(r.bound[i] == doctest::Approx(1.0 / std::sqrt(1.0 - 4.0 * t)).epsilon(1e-6));
        } else if (t > 0.25 + 1e-9) {
            CHECK(std::isinf(r.bound[i]));
        }
    }
}

TEST_CASE("negating the path swaps the two bound processes exactly") {
    auto br = brownian(1.0, 256, 1.2, 5);
    ProblemSpec spec;
    spec.model = QuasilinearModel{PowerLaw{0.25, 2}};
    spec.gradient_radius = 1.0;
    auto a = bound_curve(spec, br, 0.4, 0.9);
    auto b = bound_curve(spec, negate(br), 0.9, 0.4);
    CHECK(a.L_plus.L == b.L_minus.L);
    CHECK(a.L_minus.L == b.L_plus.L);
}

TEST_CASE("lipschitz decay curve") {
    ReflectedTrajectory lp, lm;
    lp.times = {0.0, 0.5, 1.0};
    lp.L = {2.0, 2.0, 0.0};
    lm.times = lp.times;
    lm.L = {1.0, 0.5, 0.0};
    auto d = lipschitz_decay(1.0, lp, lm);
    CHECK(d[0] == doctest::Approx(1.0));  // sqrt(2*1/2)
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == doctest::Approx(1.0));  // running minimum retained at +inf max
    auto z = lipschitz_decay(0.0, lp, lm);
    for (double y : z) CHECK(y == 0.0);
    lp.L = {0.0, 0.0, 0.0};
    lm.L = {0.0, 0.0, 0.0};
    auto inf_curve = lipschitz_decay(1.0, lp, lm);
    CHECK(std::isinf(inf_curve[0]));
}
