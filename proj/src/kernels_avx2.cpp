#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rbyhj/kernels.hpp"

// AVX2 variants. Interior nodes go 4 doubles at a time; the two boundary nodes
// fall back to the scalar expressions. Operation order matches the scalar TU
// exactly so results are bit-identical.
namespace rbyhj::kernels::avx2 {

namespace {

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    __m128d s = _mm_unpackhi_pd(m, m);
    return _mm_cvtsd_f64(_mm_max_sd(m, s));
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    __m128d s = _mm_unpackhi_pd(m, m);
    return _mm_cvtsd_f64(_mm_min_sd(m, s));
}

inline __m256d vabs(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

inline double edge_d2(const double* u, std::size_t n, std::size_t i, bool periodic, double inv_h2) {
    double um = (i > 0) ? u[i - 1] : (periodic ? u[n - 1] : u[0]);
    double up = (i + 1 < n) ? u[i + 1] : (periodic ? u[0] : u[n - 1]);
    return (up - 2.0 * u[i] + um) * inv_h2;
}

}  // namespace

bool supported() { return __builtin_cpu_supports("avx2"); }

Extrema second_diff_extrema(const double* u, std::size_t n, double inv_h2, bool periodic) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d ih2 = _mm256_set1_pd(inv_h2);
    __m256d vmp = _mm256_set1_pd(-HUGE_VAL);
    __m256d vmm = _mm256_set1_pd(-HUGE_VAL);
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d um = _mm256_loadu_pd(u + i - 1);
        __m256d uc = _mm256_loadu_pd(u + i);
        __m256d up = _mm256_loadu_pd(u + i + 1);
        __m256d d2 = _mm256_mul_pd(
            _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um), ih2);
        vmp = _mm256_max_pd(vmp, d2);
        vmm = _mm256_max_pd(vmm, _mm256_sub_pd(_mm256_setzero_pd(), d2));
    }
    double mp = hmax(vmp), mm = hmax(vmm);
    for (std::size_t j = i; j < n; ++j) {
        double d2 = edge_d2(u, n, j, periodic, inv_h2);
        mp = std::max(mp, d2);
        mm = std::max(mm, -d2);
    }
    double d0 = edge_d2(u, n, 0, periodic, inv_h2);
    mp = std::max(mp, d0);
    mm = std::max(mm, -d0);
    return {mp, mm};
}

void second_differences(const double* u, double* out, std::size_t n, double inv_h2, bool periodic) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d ih2 = _mm256_set1_pd(inv_h2);
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d um = _mm256_loadu_pd(u + i - 1);
        __m256d uc = _mm256_loadu_pd(u + i);
        __m256d up = _mm256_loadu_pd(u + i + 1);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(
            _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um), ih2));
    }
    for (std::size_t j = i; j < n; ++j) out[j] = edge_d2(u, n, j, periodic, inv_h2);
    out[0] = edge_d2(u, n, 0, periodic, inv_h2);
}

void min_max(const double* u, std::size_t n, double& lo, double& hi) {
    if (n < 8) {
        double a = u[0], b = u[0];
        for (std::size_t i = 1; i < n; ++i) {
            a = std::min(a, u[i]);
            b = std::max(b, u[i]);
        }
        lo = a;
        hi = b;
        return;
    }
    __m256d vlo = _mm256_loadu_pd(u);
    __m256d vhi = vlo;
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(u + i);
        vlo = _mm256_min_pd(vlo, v);
        vhi = _mm256_max_pd(vhi, v);
    }
    double a = hmin(vlo), b = hmax(vhi);
    for (; i < n; ++i) {
        a = std::min(a, u[i]);
        b = std::max(b, u[i]);
    }
    lo = a;
    hi = b;
}

double max_abs_adjacent_diff(const double* u, std::size_t n, bool periodic) {
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 5 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(u + i);
        __m256d b = _mm256_loadu_pd(u + i + 1);
        vm = _mm256_max_pd(vm, vabs(_mm256_sub_pd(b, a)));
    }
    double m = hmax(vm);
    for (; i + 1 < n; ++i) m = std::max(m, std::fabs(u[i + 1] - u[i]));
    if (periodic && n > 1) m = std::max(m, std::fabs(u[0] - u[n - 1]));
    return m;
}

void quasilinear_power_step(const double* u, double* out, std::size_t n, bool periodic,
                            double dt_over_h2, double inv2h, double scale, int exponent,
                            double clampR) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vinv2h = _mm256_set1_pd(inv2h);
    const __m256d vscale = _mm256_set1_pd(scale);
    const __m256d vR = _mm256_set1_pd(clampR);
    const __m256d vmR = _mm256_set1_pd(-clampR);
    const __m256d vc = _mm256_set1_pd(dt_over_h2);
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d um = _mm256_loadu_pd(u + i - 1);
        __m256d uc = _mm256_loadu_pd(u + i);
        __m256d up = _mm256_loadu_pd(u + i + 1);
        __m256d p = _mm256_mul_pd(_mm256_sub_pd(up, um), vinv2h);
        p = _mm256_min_pd(_mm256_max_pd(p, vmR), vR);
        __m256d ap = vabs(p);
        __m256d pk;
        switch (exponent) {
            case 0: pk = _mm256_set1_pd(1.0); break;
            case 1: pk = ap; break;
            case 2: pk = _mm256_mul_pd(ap, ap); break;
            case 3: pk = _mm256_mul_pd(_mm256_mul_pd(ap, ap), ap); break;
            default: {
                __m256d a2 = _mm256_mul_pd(ap, ap);
                pk = _mm256_mul_pd(a2, a2);
                break;
            }
        }
        __m256d a = _mm256_mul_pd(vscale, pk);
        __m256d d2 = _mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um);
        __m256d r = _mm256_add_pd(uc, _mm256_mul_pd(_mm256_mul_pd(vc, a), d2));
        _mm256_storeu_pd(out + i, r);
    }
    auto one = [&](std::size_t j) {
        double um = (j > 0) ? u[j - 1] : (periodic ? u[n - 1] : u[0]);
        double up = (j + 1 < n) ? u[j + 1] : (periodic ? u[0] : u[n - 1]);
        double p = (up - um) * inv2h;
        p = std::min(std::max(p, -clampR), clampR);
        double ap = std::fabs(p);
        double pk = 1.0;
        switch (exponent) {
            case 0: pk = 1.0; break;
            case 1: pk = ap; break;
            case 2: pk = ap * ap; break;
            case 3: pk = (ap * ap) * ap; break;
            default: { double a2 = ap * ap; pk = a2 * a2; break; }
        }
        double a = scale * pk;
        out[j] = u[j] + dt_over_h2 * a * (up - 2.0 * u[j] + um);
    };
    for (std::size_t j = i; j < n; ++j) one(j);
    one(0);
}

}  // namespace rbyhj::kernels::avx2
