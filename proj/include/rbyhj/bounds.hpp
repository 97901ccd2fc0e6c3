#pragma once

#include <functional>

#include "rbyhj/pde_step.hpp"
#include "rbyhj/reflected.hpp"

namespace rbyhj {

enum class BoundSign { Plus, Minus };

// Drift catalog: the coefficient-derived drift of the bound process for the
// shipped problem classes, with closed-form stopped flows where available.
// The Minus sign uses the mirrored problem; for the shipped x-independent
// classes both signs coincide.
DriftSpec drift_for(const ProblemSpec& spec, BoundSign sign);

// V(l) = -l^2 * Phi(1/l)
DriftSpec phi_to_drift(std::function<double(double)> Phi, std::string name = "phi-derived");

struct BoundCurveResult {
    ReflectedTrajectory L_plus;   // driven by +xi
    ReflectedTrajectory L_minus;  // driven by -xi
    std::vector<double> bound;    // 1/(L+ ^ L-), +infinity where the min is 0
};

BoundCurveResult bound_curve(const ProblemSpec& spec, const DrivingPath& xi, double l0_plus,
                             double l0_minus, std::size_t stride = 1);

// t -> min_{s<=t} sqrt(2 osc / (L+(s) v L-(s))), +infinity where the max is 0.
std::vector<double> lipschitz_decay(double osc, const ReflectedTrajectory& Lp,
                                    const ReflectedTrajectory& Lm);

void write_bound_curve_csv(const BoundCurveResult& r, const std::string& path);

}  // namespace rbyhj
