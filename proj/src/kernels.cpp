#include "rbyhj/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace rbyhj::kernels {

namespace {

inline double pow_small(double a, int k) {
    switch (k) {
        case 0: return 1.0;
        case 1: return a;
        case 2: return a * a;
        case 3: return (a * a) * a;
        case 4: { double a2 = a * a; return a2 * a2; }
        default: return std::pow(a, k);
    }
}

inline double wrap_prev(const double* u, std::size_t n, std::size_t i, bool periodic) {
    if (i > 0) return u[i - 1];
    return periodic ? u[n - 1] : u[0];
}

inline double wrap_next(const double* u, std::size_t n, std::size_t i, bool periodic) {
    if (i + 1 < n) return u[i + 1];
    return periodic ? u[0] : u[n - 1];
}

}  // namespace

namespace scalar {

Extrema second_diff_extrema(const double* u, std::size_t n, double inv_h2, bool periodic) {
    double mp = -HUGE_VAL, mm = -HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) {
        double d2 = (wrap_next(u, n, i, periodic) - 2.0 * u[i] + wrap_prev(u, n, i, periodic)) * inv_h2;
        mp = std::max(mp, d2);
        mm = std::max(mm, -d2);
    }
    return {mp, mm};
}

void second_differences(const double* u, double* out, std::size_t n, double inv_h2, bool periodic) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (wrap_next(u, n, i, periodic) - 2.0 * u[i] + wrap_prev(u, n, i, periodic)) * inv_h2;
}

void min_max(const double* u, std::size_t n, double& lo, double& hi) {
    double a = u[0], b = u[0];
    for (std::size_t i = 1; i < n; ++i) {
        a = std::min(a, u[i]);
        b = std::max(b, u[i]);
    }
    lo = a;
    hi = b;
}

double max_abs_adjacent_diff(const double* u, std::size_t n, bool periodic) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) m = std::max(m, std::fabs(u[i + 1] - u[i]));
    if (periodic && n > 1) m = std::max(m, std::fabs(u[0] - u[n - 1]));
    return m;
}

void quasilinear_power_step(const double* u, double* out, std::size_t n, bool periodic,
                            double dt_over_h2, double inv2h, double scale, int exponent,
                            double clampR) {
    for (std::size_t i = 0; i < n; ++i) {
        double up = wrap_next(u, n, i, periodic);
        double um = wrap_prev(u, n, i, periodic);
        double p = (up - um) * inv2h;
        p = std::min(std::max(p, -clampR), clampR);
        double a = scale * pow_small(std::fabs(p), exponent);
        out[i] = u[i] + dt_over_h2 * a * (up - 2.0 * u[i] + um);
    }
}

}  // namespace scalar

#ifdef RBYHJ_HAVE_AVX2_TU
namespace avx2 {
Extrema second_diff_extrema(const double* u, std::size_t n, double inv_h2, bool periodic);
void second_differences(const double* u, double* out, std::size_t n, double inv_h2, bool periodic);
void min_max(const double* u, std::size_t n, double& lo, double& hi);
double max_abs_adjacent_diff(const double* u, std::size_t n, bool periodic);
void quasilinear_power_step(const double* u, double* out, std::size_t n, bool periodic,
                            double dt_over_h2, double inv2h, double scale, int exponent,
                            double clampR);
bool supported();
}  // namespace avx2
#endif

namespace {

std::atomic<bool> g_force_scalar{false};

bool use_simd() {
#ifdef RBYHJ_HAVE_AVX2_TU
    static const bool hw = avx2::supported();
    return hw && !g_force_scalar.load(std::memory_order_relaxed);
#else
    return false;
#endif
}

}  // namespace

bool simd_active() { return use_simd(); }

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

const char* active_impl_name() { return use_simd() ? "avx2" : "scalar"; }

Extrema second_diff_extrema(const double* u, std::size_t n, double inv_h2, bool periodic) {
    if (n < 3) throw std::invalid_argument("second_diff_extrema: need n >= 3");
#ifdef RBYHJ_HAVE_AVX2_TU
    if (use_simd()) return avx2::second_diff_extrema(u, n, inv_h2, periodic);
#endif
    return scalar::second_diff_extrema(u, n, inv_h2, periodic);
}

void second_differences(const double* u, double* out, std::size_t n, double inv_h2, bool periodic) {
    if (n < 3) throw std::invalid_argument("second_differences: need n >= 3");
#ifdef RBYHJ_HAVE_AVX2_TU
    if (use_simd()) return avx2::second_differences(u, out, n, inv_h2, periodic);
#endif
    scalar::second_differences(u, out, n, inv_h2, periodic);
}

void min_max(const double* u, std::size_t n, double& lo, double& hi) {
    if (n == 0) throw std::invalid_argument("min_max: empty");
#ifdef RBYHJ_HAVE_AVX2_TU
    if (use_simd()) return avx2::min_max(u, n, lo, hi);
#endif
    scalar::min_max(u, n, lo, hi);
}

double max_abs_adjacent_diff(const double* u, std::size_t n, bool periodic) {
    if (n < 2) return 0.0;
#ifdef RBYHJ_HAVE_AVX2_TU
    if (use_simd()) return avx2::max_abs_adjacent_diff(u, n, periodic);
#endif
    return scalar::max_abs_adjacent_diff(u, n, periodic);
}

void quasilinear_power_step(const double* u, double* out, std::size_t n, bool periodic,
                            double dt_over_h2, double inv2h, double scale, int exponent,
                            double clampR) {
    if (n < 3) throw std::invalid_argument("quasilinear_power_step: need n >= 3");
    if (exponent < 0) throw std::invalid_argument("quasilinear_power_step: exponent < 0");
#ifdef RBYHJ_HAVE_AVX2_TU
    if (use_simd() && exponent <= 4)
        return avx2::quasilinear_power_step(u, out, n, periodic, dt_over_h2, inv2h, scale,
                                            exponent, clampR);
#endif
    scalar::quasilinear_power_step(u, out, n, periodic, dt_over_h2, inv2h, scale, exponent, clampR);
}

}  // namespace rbyhj::kernels
