#include "rbyhj/pde_step.hpp"

#include <algorithm>
#include <cmath>

#include "rbyhj/kernels.hpp"

namespace rbyhj {

namespace {

constexpr double kSampleResolution = 1e-3;
constexpr double kSafetyInflation = 1.01;

double clampp(double p, double R) { return std::min(std::max(p, -R), R); }

double sup_quasilinear_coeff(const QuasilinearModel& m, double R) {
    if (const auto* pl = std::get_if<PowerLaw>(&m.a)) {
        // |p|^k is monotone in |p|; the sup over [-R,R] sits at R
        return (*pl)(R);
    }
    return sampled_sup_abs(std::get<std::function<double(double)>>(m.a), R);
}

}  // namespace

double sampled_sup_abs(const std::function<double(double)>& f, double R) {
    const double r = std::max(R, 1e-12);
    const std::size_t n = static_cast<std::size_t>(2.0 / kSampleResolution) + 1;
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = -r + 2.0 * r * static_cast<double>(i) / static_cast<double>(n - 1);
        m = std::max(m, std::fabs(f(p)));
    }
    return m * kSafetyInflation;
}

double sampled_sup_abs_derivative(const std::function<double(double)>& f, double R) {
    const double r = std::max(R, 1e-12);
    const std::size_t n = static_cast<std::size_t>(2.0 / kSampleResolution) + 1;
    const double dp = 2.0 * r / static_cast<double>(n - 1);
    double m = 0.0;
    double prev = f(-r);
    for (std::size_t i = 1; i < n; ++i) {
        const double cur = f(-r + dp * static_cast<double>(i));
        m = std::max(m, std::fabs(cur - prev) / dp);
        prev = cur;
    }
    return m * kSafetyInflation;
}

ProblemSpec mirror_spec(const ProblemSpec& spec) {
    ProblemSpec out = spec;
    if (const auto* fo = std::get_if<FirstOrderModel>(&spec.model)) {
        auto F = fo->F;
        FirstOrderModel m;
        m.F = [F](double p) { return -F(-p); };
        m.dissipation_override = fo->dissipation_override;
        out.model = std::move(m);
    } else if (const auto* ql = std::get_if<QuasilinearModel>(&spec.model)) {
        QuasilinearModel m;
        if (const auto* pl = std::get_if<PowerLaw>(&ql->a)) {
            m.a = *pl;  // |.|^k is even
        } else {
            auto a = std::get<std::function<double(double)>>(ql->a);
            m.a = std::function<double(double)>([a](double p) { return a(-p); });
        }
        out.model = std::move(m);
    } else if (const auto* fn = std::get_if<FullyNonlinear1DModel>(&spec.model)) {
        auto F = fn->F;
        FullyNonlinear1DModel m;
        m.F = [F](double r) { return -F(-r); };
        out.model = std::move(m);
    }
    return out;
}

GridFn step_first_order(const GridFn& u, const std::function<double(double)>& F, double dt,
                        double alpha, double clampR) {
    u.validate();
    if (alpha < 0.0) throw std::invalid_argument("step_first_order: alpha must be >= 0");
    const double adm = (alpha > 0.0) ? u.h / alpha : HUGE_VAL;
    if (dt > adm)
        throw CflError("step_first_order: dt violates dt*alpha/h <= 1; admissible dt = " +
                           std::to_string(adm),
                       adm);
    const std::size_t n = u.size();
    const bool per = u.periodic();
    GridFn out = u;
    const double inv2h = 1.0 / (2.0 * u.h);
    for (std::size_t i = 0; i < n; ++i) {
        const double um = (i > 0) ? u.v[i - 1] : (per ? u.v[n - 1] : u.v[0]);
        const double up = (i + 1 < n) ? u.v[i + 1] : (per ? u.v[0] : u.v[n - 1]);
        const double p = clampp((up - um) * inv2h, clampR);
        out.v[i] = u.v[i] + dt * (F(p) + alpha * (up - 2.0 * u.v[i] + um) * inv2h);
    }
    return out;
}

GridFn step_quasilinear(const GridFn& u, const PowerLaw& a, double dt, double clampR) {
    u.validate();
    const double sup_a = a(clampR);
    const double adm = (sup_a > 0.0) ? u.h * u.h / (2.0 * sup_a) : HUGE_VAL;
    if (dt > adm)
        throw CflError("step_quasilinear: dt violates dt <= h^2/(2 sup a); admissible dt = " +
                           std::to_string(adm),
                       adm);
    GridFn out = u;
    kernels::quasilinear_power_step(u.v.data(), out.v.data(), u.size(), u.periodic(),
                                    dt / (u.h * u.h), 1.0 / (2.0 * u.h), a.scale, a.exponent,
                                    clampR);
    return out;
}

GridFn step_quasilinear(const GridFn& u, const std::function<double(double)>& a, double dt,
                        double clampR) {
    u.validate();
    const double sup_a = sampled_sup_abs(a, clampR);
    const double adm = (sup_a > 0.0) ? u.h * u.h / (2.0 * sup_a) : HUGE_VAL;
    if (dt > adm)
        throw CflError("step_quasilinear: dt violates dt <= h^2/(2 sup a); admissible dt = " +
                           std::to_string(adm),
                       adm);
    const std::size_t n = u.size();
    const bool per = u.periodic();
    GridFn out = u;
    const double inv2h = 1.0 / (2.0 * u.h);
    const double inv_h2 = 1.0 / (u.h * u.h);
    for (std::size_t i = 0; i < n; ++i) {
        const double um = (i > 0) ? u.v[i - 1] : (per ? u.v[n - 1] : u.v[0]);
        const double up = (i + 1 < n) ? u.v[i + 1] : (per ? u.v[0] : u.v[n - 1]);
        const double p = clampp((up - um) * inv2h, clampR);
        const double ap = a(p);
        if (ap < 0.0)
            throw std::invalid_argument("step_quasilinear: coefficient must be nonnegative");
        out.v[i] = u.v[i] + dt * ap * (up - 2.0 * u.v[i] + um) * inv_h2;
    }
    return out;
}

GridFn step_fully_nonlinear_1d(const GridFn& u, const std::function<double(double)>& F,
                               double dt) {
    u.validate();
    const std::size_t n = u.size();
    const bool per = u.periodic();
    const double inv_h2 = 1.0 / (u.h * u.h);
    // Lipschitz constant of F over the observed curvature range
    auto rep = second_diff(u);
    const double span = std::max(rep.max_plus, rep.max_minus) + 1.0;
    double lip = 0.0;
    {
        const std::size_t ns = 2001;
        double prev = F(-span);
        const double dr = 2.0 * span / static_cast<double>(ns - 1);
        for (std::size_t i = 1; i < ns; ++i) {
            const double cur = F(-span + dr * static_cast<double>(i));
            if (cur < prev - 1e-12 * (1.0 + std::fabs(prev)))
                throw std::invalid_argument("step_fully_nonlinear_1d: F must be nondecreasing");
            lip = std::max(lip, (cur - prev) / dr);
            prev = cur;
        }
        lip *= kSafetyInflation;
    }
    const double adm = (lip > 0.0) ? u.h * u.h / (2.0 * lip) : HUGE_VAL;
    if (dt > adm)
        throw CflError(
            "step_fully_nonlinear_1d: dt violates dt*2*Lip(F)/h^2 <= 1; admissible dt = " +
                std::to_string(adm),
            adm);
    GridFn out = u;
    for (std::size_t i = 0; i < n; ++i) {
        const double um = (i > 0) ? u.v[i - 1] : (per ? u.v[n - 1] : u.v[0]);
        const double up = (i + 1 < n) ? u.v[i + 1] : (per ? u.v[0] : u.v[n - 1]);
        out.v[i] = u.v[i] + dt * F((up - 2.0 * u.v[i] + um) * inv_h2);
    }
    return out;
}

double cfl_bound(const GridFn& u, const ProblemSpec& spec) {
    const double R = (spec.gradient_radius > 0.0) ? spec.gradient_radius : lipschitz_norm(u);
    if (spec.is_zero()) return HUGE_VAL;
    if (const auto* fo = std::get_if<FirstOrderModel>(&spec.model)) {
        double alpha = fo->dissipation_override;
        if (alpha < 0.0) alpha = sampled_sup_abs_derivative(fo->F, R);
        return (alpha > 0.0) ? u.h / alpha : HUGE_VAL;
    }
    if (const auto* ql = std::get_if<QuasilinearModel>(&spec.model)) {
        const double sup_a = sup_quasilinear_coeff(*ql, R);
        return (sup_a > 0.0) ? u.h * u.h / (2.0 * sup_a) : HUGE_VAL;
    }
    const auto& fn = std::get<FullyNonlinear1DModel>(spec.model);
    auto rep = second_diff(u);
    const double span = std::max(rep.max_plus, rep.max_minus) + 1.0;
    double lip = sampled_sup_abs_derivative(fn.F, span);
    return (lip > 0.0) ? u.h * u.h / (2.0 * lip) : HUGE_VAL;
}

EvolveResult evolve_F(const GridFn& u, const ProblemSpec& spec, double duration, double dt_hint) {
    u.validate();
    if (duration < 0.0) throw std::invalid_argument("evolve_F: negative duration");
    EvolveResult res{u, {}};
    if (duration == 0.0 || spec.is_zero()) {
        res.plan.cfl_bound = HUGE_VAL;
        return res;
    }
    const double R = (spec.gradient_radius > 0.0) ? spec.gradient_radius : lipschitz_norm(u);
    const double cfl = cfl_bound(u, spec);
    double dt = std::isfinite(cfl) ? 0.995 * cfl : duration;
    if (dt_hint > 0.0) dt = std::min(dt_hint, dt);
    std::size_t substeps = static_cast<std::size_t>(std::ceil(duration / dt));
    substeps = std::max<std::size_t>(substeps, 1);
    dt = duration / static_cast<double>(substeps);
    res.plan = {dt, substeps, cfl};

    double alpha = 0.0;
    const FirstOrderModel* fo = std::get_if<FirstOrderModel>(&spec.model);
    if (fo) {
        alpha = fo->dissipation_override;
        if (alpha < 0.0) alpha = sampled_sup_abs_derivative(fo->F, R);
    }
    const QuasilinearModel* ql = std::get_if<QuasilinearModel>(&spec.model);
    const FullyNonlinear1DModel* fnl = std::get_if<FullyNonlinear1DModel>(&spec.model);

    if (ql) {
        if (const auto* pl = std::get_if<PowerLaw>(&ql->a)) {
            // hot path: ping-pong buffers, CFL already guaranteed
            std::vector<double> a = res.u.v, b(res.u.size());
            const double dt_over_h2 = dt / (u.h * u.h);
            const double inv2h = 1.0 / (2.0 * u.h);
            for (std::size_t s = 0; s < substeps; ++s) {
                kernels::quasilinear_power_step(a.data(), b.data(), a.size(), u.periodic(),
                                                dt_over_h2, inv2h, pl->scale, pl->exponent, R);
                a.swap(b);
            }
            res.u.v = std::move(a);
            return res;
        }
        for (std::size_t s = 0; s < substeps; ++s)
            res.u = step_quasilinear(res.u, std::get<std::function<double(double)>>(ql->a), dt, R);
        return res;
    }
    for (std::size_t s = 0; s < substeps; ++s) {
        if (fo) {
            res.u = step_first_order(res.u, fo->F, dt, alpha, R);
        } else if (fnl) {
            res.u = step_fully_nonlinear_1d(res.u, fnl->F, dt);
        }
    }
    return res;
}

}  // namespace rbyhj
