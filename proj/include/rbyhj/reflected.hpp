#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rbyhj/paths.hpp"

namespace rbyhj {

// Drift V of the bound process, defined on (0, inf). A closed-form stopped
// flow may be attached; otherwise the flow is integrated adaptively with
// event detection at 0.
struct DriftSpec {
    std::string name;
    std::function<double(double)> V;
    std::function<double(double, double)> closed_flow;  // (t, l) -> value, optional
    bool lipschitz_at_zero = false;
    double tail_bound = 0.0;  // upper bound of V_+ on [1, inf)
    double monotone_radius = 0.1;  // neighborhood of 0 with declared monotonicity
};

// Stopped flow phi^V(t; l): closed form when present, else adaptive RK4 with
// bisection on the hitting time of 0. Blow-up reports +infinity.
double flow(const DriftSpec& d, double t, double l);

struct ReflectedTrajectory {
    std::vector<double> times;
    std::vector<double> L;
    std::vector<double> R;  // accumulated reflection, nondecreasing
};

// L(t_{i+1}) = (phi^V(dt, L(t_i)) + xi increment)_+, jumps applied as
// separate clipped kicks at their nodes.
ReflectedTrajectory discrete_scheme(const DriftSpec& d, const DrivingPath& xi, double l0,
                                    std::size_t stride = 1);

// Euler step L <- (L + V(L) dt + dxi)_+; requires a Lipschitz drift on [0,inf).
ReflectedTrajectory skorokhod_solve(const DriftSpec& d, const DrivingPath& xi, double l0,
                                    std::size_t stride = 1);

struct ComparisonReport {
    bool ordered = false;          // L1 >= L2 at every node
    double max_violation = 0.0;    // max(L2 - L1), <= 0 when ordered
    bool drift_ordered = false;    // V1 >= V2 sampled on the visited range
};
ComparisonReport comparison_check(const DriftSpec& V1, const DriftSpec& V2,
                                  const DrivingPath& xi, double l0, std::size_t stride = 1);

struct BoundaryClass {
    enum class Kind { Regular, Exit, Entrance, Natural };
    Kind kind = Kind::Regular;
    double I_plus = 0.0;   // +infinity encoded as INFINITY
    double I_minus = 0.0;
};
const char* to_string(BoundaryClass::Kind k);

// Feller test of the boundary 0 for dX = V(X)dt + sigma dB; the unit-noise
// integrals are applied to W = V/sigma^2.
BoundaryClass feller_classify(const DriftSpec& d, double sigma);

enum class HolderVerdict { Repelling, Absorbing, Inconclusive };
const char* to_string(HolderVerdict v);

// Behavior of 0 under an alpha-Hoelder driving signal: examines
// G(T) = T^{-alpha} * integral_0^T V(s^alpha) ds at T = 10^-k, k = 1..12.
HolderVerdict holder_boundary_diagnostic(const DriftSpec& d, double alpha);

void write_trajectory_csv(const ReflectedTrajectory& t, const std::string& path);

}  // namespace rbyhj
