#include <doctest.h>

#include <cmath>

#include "rbyhj/bounds.hpp"
#include "rbyhj/reflected.hpp"

using namespace rbyhj;

namespace {

DriftSpec numeric_only(const DriftSpec& d) {
    DriftSpec n = d;
    n.closed_flow = nullptr;
    return n;
}

DriftSpec drift_zero() {
    DriftSpec d;
    d.name = "zero";
    d.V = [](double) { return 0.0; };
    d.closed_flow = [](double, double l) { return l; };
    d.lipschitz_at_zero = true;
    return d;
}

DriftSpec drift_const(double c) {
    DriftSpec d;
    d.name = "const";
    d.V = [c](double) { return -c; };
    d.closed_flow = [c](double t, double l) { return std::max(l - c * t, 0.0); };
    d.lipschitz_at_zero = true;
    return d;
}

DriftSpec drift_inverse(double c) {
    DriftSpec d;
    d.name = "inverse";
    d.V = [c](double l) { return -c / l; };
    d.closed_flow = [c](double t, double l) {
        const double q = l * l - 2.0 * c * t;
        return q > 0.0 ? std::sqrt(q) : 0.0;
    };
    d.lipschitz_at_zero = false;
    return d;
}

DriftSpec drift_min_decay() {  // V(l) = -min(l, 1)
    DriftSpec d;
    d.name = "min-decay";
    d.V = [](double l) { return -std::min(l, 1.0); };
    d.closed_flow = [](double t, double l) {
        if (l <= 1.0) return l * std::exp(-t);
        const double t1 = l - 1.0;
        return t <= t1 ? l - t : std::exp(-(t - t1));
    };
    d.lipschitz_at_zero = true;
    return d;
}

}  // namespace

TEST_CASE("stopped flows: closed forms agree with the adaptive integrator") {
    auto check = [](const DriftSpec& d, double t, double l, double tol) {
        const double a = flow(d, t, l);
        const double b = flow(numeric_only(d), t, l);
        CHECK(std::fabs(a - b) <= tol * (1.0 + std::fabs(a)));
    };
    for (double t : {0.05, 0.3, 0.9, 2.0}) {
        for (double l : {0.1, 0.7, 1.9}) {
            check(drift_zero(), t, l, 1e-12);
            check(drift_const(0.8), t, l, 1e-10);
            check(drift_min_decay(), t, l, 1e-10);
            if (l * l > 2.0 * 0.5 * t * 1.1) check(drift_inverse(0.5), t, l, 1e-10);
        }
    }
    // V = -c: linear decay stopped at 0
    CHECK(flow(drift_const(2.0), 0.3, 1.0) == doctest::Approx(0.4));
    CHECK(flow(drift_const(2.0), 1.0, 1.0) == 0.0);
    // V = -c/l: sqrt law, then absorbed
    CHECK(flow(drift_inverse(0.5), 0.5, 1.0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(flow(drift_inverse(0.5), 1.5, 1.0) == 0.0);
    CHECK(flow(numeric_only(drift_inverse(0.5)), 1.5, 1.0) == 0.0);
    // identity at t = 0 and flow from the boundary
    CHECK(flow(drift_inverse(0.5), 0.0, 0.7) == 0.7);
    CHECK(flow(drift_inverse(0.5), 0.4, 0.0) == 0.0);
}

TEST_CASE("discrete scheme: positive linear path from zero tracks the path") {
    auto lin = deterministic_path(LinearKind{1.0}, 1.0, 128);
    auto tr = discrete_scheme(drift_zero(), lin, 0.0);
    for (std::size_t i = 0; i < tr.L.size(); ++i)
        CHECK(tr.L[i] == doctest::Approx(tr.times[i]).epsilon(1e-12));
    CHECK(tr.R.back() == 0.0);
}

TEST_CASE("discrete scheme with V = 0 equals the running-min formula") {
    const double twopi = 2.0 * std::acos(-1.0);
    auto sine = deterministic_path(SineKind{1.0, 1.0}, twopi, 2048);
    auto tr = discrete_scheme(drift_zero(), sine, 0.0);
    auto stats = running_extrema(sine);
    for (std::size_t i = 0; i < tr.L.size(); ++i)
        CHECK(std::fabs(tr.L[i] - (sine.xi[i] - stats.running_min[i])) <= 1e-12);
    CHECK(tr.L.back() == doctest::Approx(1.0).epsilon(1e-6));  // sin(2pi) - (-1)
    auto br = brownian(1.0, 1024, 1.0, 21);
    auto trb = discrete_scheme(drift_zero(), br, 0.0);
    auto sb = running_extrema(br);
    for (std::size_t i = 0; i < trb.L.size(); ++i)
        CHECK(std::fabs(trb.L[i] - (br.xi[i] - sb.running_min[i])) <= 1e-12);
}

TEST_CASE("discrete scheme reproduces the sqrt decay of the inverse drift") {
    auto zero = deterministic_path(ZeroKind{}, 1.5, 1500);
    auto tr = discrete_scheme(drift_inverse(0.5), zero, 1.0);
    for (std::size_t i = 0; i < tr.L.size(); ++i) {
        const double t = tr.times[i];
        const double expect = (t < 1.0) ? std::sqrt(1.0 - t) : 0.0;
        CHECK(std::fabs(tr.L[i] - expect) <= 5e-8);  // sqrt-cancellation at the graze cell
    }
}

TEST_CASE("skorokhod solver: full reflection absorbs the drift into R") {
    auto zero = deterministic_path(ZeroKind{}, 1.0, 256);
    auto tr = skorokhod_solve(drift_const(1.0), zero, 0.0);
    for (std::size_t i = 0; i < tr.L.size(); ++i) {
        CHECK(tr.L[i] == 0.0);
        CHECK(tr.R[i] == doctest::Approx(tr.times[i]).epsilon(1e-12));
    }
}

TEST_CASE("skorokhod equals the unreflected line while positive") {
    auto br = brownian(1.0, 512, 0.5, 7);
    auto tr = skorokhod_solve(drift_zero(), br, 10.0);
    for (std::size_t i = 0; i < tr.L.size(); ++i)
        CHECK(tr.L[i] == doctest::Approx(10.0 + br.xi[i]).epsilon(1e-12));
}

TEST_CASE("skorokhod and the discrete scheme coincide for V = 0") {
    auto br = brownian(1.0, 512, 1.0, 77);
    auto a = skorokhod_solve(drift_zero(), br, 0.0);
    auto b = discrete_scheme(drift_zero(), br, 0.0);
    CHECK(a.L == b.L);
    CHECK(a.R == b.R);
}

TEST_CASE("skorokhod rejects non-Lipschitz drifts") {
    auto br = brownian(1.0, 64, 1.0, 1);
    CHECK_THROWS(skorokhod_solve(drift_inverse(0.5), br, 1.0));
}

TEST_CASE("scheme convergence: discrete vs skorokhod gaps halve") {
    auto fine = brownian(1.0, 1 << 12, 1.0, 7);
    const DriftSpec d = drift_min_decay();
    double prev = HUGE_VAL;
    for (int p = 8; p <= 12; ++p) {
        const std::size_t stride = (1u << 12) >> p;
        auto a = discrete_scheme(d, fine, 0.7, stride);
        auto b = skorokhod_solve(d, fine, 0.7, stride);
        double gap = 0.0;
        for (std::size_t i = 0; i < a.L.size(); ++i)
            gap = std::max(gap, std::fabs(a.L[i] - b.L[i]));
        MESSAGE("n = 2^", p, " gap ", gap);
        CHECK(gap < prev);
        if (p == 12) CHECK(gap < 1e-2);
        prev = gap;
    }
}

TEST_CASE("comparison: ordered drifts produce ordered trajectories") {
    auto br = brownian(1.0, 1024, 1.0, 4242);
    auto rep = comparison_check(drift_zero(), drift_inverse(0.5), br, 0.8);
    CHECK(rep.drift_ordered);
    CHECK(rep.ordered);
    CHECK(rep.max_violation <= 0.0);
    auto same = comparison_check(drift_const(0.4), drift_const(0.4), br, 0.8);
    CHECK(same.max_violation == 0.0);
    // closed forms: (l - c t)+ >= (l - 2 c t)+
    auto zero = deterministic_path(ZeroKind{}, 1.0, 128);
    auto two = comparison_check(drift_const(0.5), drift_const(1.0), zero, 0.6);
    CHECK(two.ordered);
}

TEST_CASE("trajectories stay nonnegative with nondecreasing reflection") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto br = brownian(1.0, 512, 1.5, 9000 + seed);
        auto tr = discrete_scheme(drift_inverse(0.5), br, 0.3);
        for (std::size_t i = 0; i < tr.L.size(); ++i) {
            CHECK(tr.L[i] >= 0.0);
            if (i > 0) CHECK(tr.R[i] >= tr.R[i - 1]);
        }
    }
}

TEST_CASE("feller: unit-noise zero drift boundary is regular with I = 1/2") {
    auto bc = feller_classify(drift_zero(), 1.0);
    CHECK(bc.kind == BoundaryClass::Kind::Regular);
    CHECK(bc.I_plus == doctest::Approx(0.5).epsilon(2e-6));
    CHECK(bc.I_minus == doctest::Approx(0.5).epsilon(2e-6));
}

TEST_CASE("feller: inverse drift at unit noise exits with I+ = 1/4") {
    auto bc = feller_classify(drift_inverse(0.5), 1.0);
    CHECK(bc.kind == BoundaryClass::Kind::Exit);
    CHECK(bc.I_plus == doctest::Approx(0.25).epsilon(4e-6));
    CHECK(std::isinf(bc.I_minus));
}

TEST_CASE("feller: inverse drift at sigma = sqrt(2) is regular, I+ = 1/3, I- = 1") {
    auto bc = feller_classify(drift_inverse(0.5), std::sqrt(2.0));
    CHECK(bc.kind == BoundaryClass::Kind::Regular);
    CHECK(bc.I_plus == doctest::Approx(1.0 / 3.0).epsilon(4e-6));
    CHECK(bc.I_minus == doctest::Approx(1.0).epsilon(4e-6));
}

TEST_CASE("feller threshold flips exactly as sigma^2 crosses 2c") {
    for (double c : {0.5, 1.0}) {
        auto below = feller_classify(drift_inverse(c), std::sqrt(1.8 * c));
        auto above = feller_classify(drift_inverse(c), std::sqrt(2.2 * c));
        CHECK(below.kind == BoundaryClass::Kind::Exit);
        CHECK(above.kind == BoundaryClass::Kind::Regular);
    }
}

TEST_CASE("holder diagnostic: catalog examples") {
    DriftSpec c = drift_const(0.7);
    CHECK(holder_boundary_diagnostic(c, 1.0) == HolderVerdict::Inconclusive);

    DriftSpec rep;
    rep.name = "l^-3/2";
    rep.V = [](double l) { return std::pow(l, -1.5); };
    CHECK(holder_boundary_diagnostic(rep, 0.5) == HolderVerdict::Repelling);

    DriftSpec mild;
    mild.name = "l^-1";
    mild.V = [](double l) { return 1.0 / l; };
    CHECK(holder_boundary_diagnostic(mild, 1.0 / 3.0) == HolderVerdict::Inconclusive);

    DriftSpec absb = drift_inverse(0.5);  // -1/(2l), nondecreasing
    CHECK(holder_boundary_diagnostic(absb, 0.75) == HolderVerdict::Absorbing);

    DriftSpec wiggly;
    wiggly.name = "non-monotone";
    wiggly.V = [](double l) { return std::sin(50.0 / l); };
    CHECK_THROWS(holder_boundary_diagnostic(wiggly, 0.5));
    CHECK_THROWS(holder_boundary_diagnostic(mild, 0.0));
    CHECK_THROWS(holder_boundary_diagnostic(mild, 1.5));
}

TEST_CASE("trajectory csv") {
    auto br = brownian(1.0, 16, 1.0, 2);
    auto tr = discrete_scheme(drift_zero(), br, 0.0);
    write_trajectory_csv(tr, "traj_test.csv");
    std::remove("traj_test.csv");
}
