#pragma once

#include <cstddef>

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and an AVX2 variant selected once at runtime; both compute every element with
// the same operation sequence, so results are bit-identical (the build disables
// FP contraction).
namespace rbyhj::kernels {

struct Extrema {
    double max_plus;   // largest second difference * inv_h2
    double max_minus;  // largest negated second difference * inv_h2
};

// Second differences u[i+1]-2u[i]+u[i-1]; periodic wrap or constant extension.
Extrema second_diff_extrema(const double* u, std::size_t n, double inv_h2, bool periodic);
void second_differences(const double* u, double* out, std::size_t n, double inv_h2, bool periodic);

void min_max(const double* u, std::size_t n, double& lo, double& hi);

// max_i |u[i+1]-u[i]| (wrap pair included when periodic)
double max_abs_adjacent_diff(const double* u, std::size_t n, bool periodic);

// out[i] = u[i] + dt_over_h2 * scale*|clamp(p_i, +-clampR)|^exponent * (u[i+1]-2u[i]+u[i-1]),
// p_i = (u[i+1]-u[i-1]) * inv2h.  exponent in [0,4]; constant extension when !periodic.
void quasilinear_power_step(const double* u, double* out, std::size_t n, bool periodic,
                            double dt_over_h2, double inv2h, double scale, int exponent,
                            double clampR);

// Dispatch control (equivalence tests exercise both paths).
bool simd_active();
void force_scalar(bool on);
const char* active_impl_name();

}  // namespace rbyhj::kernels
