#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rbyhj/paths.hpp"

using namespace rbyhj;

TEST_CASE("brownian: determinism, zero intensity, initial value") {
    auto a = brownian(1.0, 256, 1.0, 42);
    auto b = brownian(1.0, 256, 1.0, 42);
    CHECK(a.xi == b.xi);
    auto c = brownian(1.0, 256, 1.0, 43);
    CHECK(a.xi != c.xi);
    auto z = brownian(1.0, 64, 0.0, 5);
    for (double y : z.xi) CHECK(y == 0.0);
    CHECK(a.xi[0] == 0.0);
}

TEST_CASE("brownian terminal variance matches T within Monte Carlo error") {
    const std::size_t N = 10000;
    const double T = 0.7;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t s = 0; s < N; ++s) {
        auto p = brownian(T, 16, 1.0, 10000 + s);
        const double x = p.xi.back();
        sum += x;
        sum2 += x * x;
    }
    const double var = sum2 / N - (sum / N) * (sum / N);
    // variance of the sample variance of N gaussians ~ 2 T^2 / N
    const double se = std::sqrt(2.0 / N) * T;
    CHECK(std::fabs(var - T) <= 5.0 * se);
}

TEST_CASE("fBm with H = 1/2 reproduces the Brownian covariance") {
    const std::size_t n = 8, N = 10000;
    const double T = 1.0;
    FbmSampler sampler(T, n, 0.5);
    std::vector<double> acc(n * n, 0.0);
    for (std::size_t s = 0; s < N; ++s) {
        auto p = sampler.sample(777 + s);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += p.xi[i + 1] * p.xi[j + 1];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ti = T * (i + 1) / n, tj = T * (j + 1) / n;
            const double expect = std::min(ti, tj);
            worst = std::max(worst, std::fabs(acc[i * n + j] / N - expect));
        }
    }
    // covariance entries have std error ~ sqrt((c_ii c_jj + c_ij^2)/N) <= sqrt(2/N)
    CHECK(worst <= 5.0 * std::sqrt(2.0 / N));
}

TEST_CASE("fBm terminal variance scales like T^(2H)") {
    for (double H : {0.3, 0.7}) {
        const std::size_t N = 10000;
        const double T = 1.3;
        FbmSampler sampler(T, 32, H);
        double sum2 = 0.0;
        for (std::size_t s = 0; s < N; ++s) {
            auto p = sampler.sample(31337 + s);
            sum2 += p.xi.back() * p.xi.back();
        }
        const double var = sum2 / N;
        const double expect = std::pow(T, 2.0 * H);
        CHECK(std::fabs(var - expect) <= 5.0 * std::sqrt(2.0 / N) * expect);
    }
}

TEST_CASE("fBm rejects bad parameters and is reproducible") {
    CHECK_THROWS(FbmSampler(1.0, 64, 0.0));
    CHECK_THROWS(FbmSampler(1.0, 64, 1.0));
    CHECK_THROWS(FbmSampler(1.0, 8192, 0.5));
    auto a = fractional_brownian(1.0, 64, 0.25, 9);
    auto b = fractional_brownian(1.0, 64, 0.25, 9);
    CHECK(a.xi == b.xi);
}

TEST_CASE("deterministic kinds") {
    auto z = deterministic_path(ZeroKind{}, 2.0, 10);
    for (double y : z.xi) CHECK(y == 0.0);
    auto lin = deterministic_path(LinearKind{1.0}, 2.0, 10);
    for (std::size_t i = 0; i <= 10; ++i) CHECK(lin.xi[i] == doctest::Approx(lin.t(i)));
    auto sine = deterministic_path(SineKind{0.3, 2.0}, 3.0, 12);
    for (std::size_t i = 0; i <= 12; ++i)
        CHECK(sine.xi[i] == doctest::Approx(0.3 * std::sin(2.0 * sine.t(i))));
}

TEST_CASE("running extrema bracket the path and are monotone") {
    auto p = brownian(1.0, 512, 1.3, 99);
    auto s = running_extrema(p);
    for (std::size_t i = 0; i < p.xi.size(); ++i) {
        CHECK(s.running_max[i] >= p.xi[i]);
        CHECK(s.running_min[i] <= p.xi[i]);
        if (i > 0) {
            CHECK(s.running_max[i] >= s.running_max[i - 1]);
            CHECK(s.running_min[i] <= s.running_min[i - 1]);
        }
    }
    // monotone increasing path: running min stays 0
    auto lin = deterministic_path(LinearKind{2.0}, 1.0, 64);
    auto ls = running_extrema(lin);
    for (double m : ls.running_min) CHECK(m == 0.0);
    // sine at t = 2 pi: max 1, min -1
    const double twopi = 2.0 * std::acos(-1.0);
    auto sine = deterministic_path(SineKind{1.0, 1.0}, twopi, 4096);
    auto ss = running_extrema(sine);
    CHECK(ss.running_max.back() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ss.running_min.back() == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("jump flattening: inserted cells carry exactly the jump sizes") {
    auto p = brownian(1.0, 32, 0.5, 3);
    p.jumps = {{8, 0.7}, {20, -0.4}};
    auto r = flatten_jumps(p);
    REQUIRE(r.inserted_cells.size() == 2);
    CHECK(r.flat.jumps.empty());
    CHECK(r.flat.xi.size() == p.xi.size() + 2);
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t c = r.inserted_cells[k];
        CHECK(r.flat.xi[c + 1] - r.flat.xi[c] == doctest::Approx(p.jumps[k].second));
    }
    // round trip: non-inserted increments match the continuous increments
    std::size_t flat_cell = 0;
    for (std::size_t cell = 0; cell < p.steps(); ++cell) {
        while (std::find(r.inserted_cells.begin(), r.inserted_cells.end(), flat_cell) !=
               r.inserted_cells.end())
            ++flat_cell;
        CHECK(r.flat.xi[flat_cell + 1] - r.flat.xi[flat_cell] ==
              doctest::Approx(p.xi[cell + 1] - p.xi[cell]).epsilon(1e-12));
        ++flat_cell;
    }
}

TEST_CASE("path csv serialization") {
    auto p = brownian(1.0, 16, 1.0, 11);
    p.jumps = {{4, 0.25}};
    write_path_csv(p, "path_test.csv", "path_test_jumps.csv");
    std::remove("path_test.csv");
    std::remove("path_test_jumps.csv");
}
