#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <variant>

#include "rbyhj/grid.hpp"

namespace rbyhj {

// a(p) = scale * |p|^exponent; the SIMD quasilinear kernel handles
// exponents 0..4 directly.
struct PowerLaw {
    double scale = 1.0;
    int exponent = 0;
    double operator()(double p) const {
        if (exponent == 0) return scale;
        return scale * std::pow(std::fabs(p), exponent);
    }
};

struct ZeroModel {};

struct FirstOrderModel {
    std::function<double(double)> F;      // F(p)
    double dissipation_override = -1.0;   // alpha; < 0 means sample sup|F'|
};

struct QuasilinearModel {
    std::variant<PowerLaw, std::function<double(double)>> a;  // a(p) >= 0
};

struct FullyNonlinear1DModel {
    std::function<double(double)> F;  // F(u_xx), nondecreasing
};

struct ProblemSpec {
    std::variant<ZeroModel, FirstOrderModel, QuasilinearModel, FullyNonlinear1DModel> model;
    double gradient_radius = 0.0;  // R; 0 => computed from the initial data
    int dimension = 1;

    bool is_zero() const { return std::holds_alternative<ZeroModel>(model); }
};

// F^-(t,x,r,p,X) = -F(t,x,-r,-p,-X) restricted to the shipped classes.
ProblemSpec mirror_spec(const ProblemSpec& spec);

struct StepPlan {
    double dt = 0.0;
    std::size_t substeps = 0;
    double cfl_bound = 0.0;
};

struct CflError : std::invalid_argument {
    double admissible_dt;
    CflError(const std::string& msg, double adm)
        : std::invalid_argument(msg), admissible_dt(adm) {}
};

// sup over [-R, R] sampled at 1e-3*R resolution, inflated by 1%.
double sampled_sup_abs(const std::function<double(double)>& f, double R);
double sampled_sup_abs_derivative(const std::function<double(double)>& f, double R);

// u_i += dt*( F((u_{i+1}-u_{i-1})/2h) + alpha*(u_{i+1}-2u_i+u_{i-1})/(2h) )
GridFn step_first_order(const GridFn& u, const std::function<double(double)>& F, double dt,
                        double alpha, double clampR = HUGE_VAL);

// u_i += dt * a(clamped central gradient) * (u_{i+1}-2u_i+u_{i-1})/h^2
GridFn step_quasilinear(const GridFn& u, const PowerLaw& a, double dt, double clampR);
GridFn step_quasilinear(const GridFn& u, const std::function<double(double)>& a, double dt,
                        double clampR);

// u_i += dt * F((u_{i+1}-2u_i+u_{i-1})/h^2)
GridFn step_fully_nonlinear_1d(const GridFn& u, const std::function<double(double)>& F, double dt);

struct EvolveResult {
    GridFn u;
    StepPlan plan;
};

// Iterates the class-appropriate step with CFL-clamped dt over the duration.
EvolveResult evolve_F(const GridFn& u, const ProblemSpec& spec, double duration,
                      double dt_hint = 0.0);

double cfl_bound(const GridFn& u, const ProblemSpec& spec);

}  // namespace rbyhj
