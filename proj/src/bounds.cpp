#include "rbyhj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rbyhj {

namespace {

DriftSpec zero_drift() {
    DriftSpec d;
    d.name = "V=0";
    d.V = [](double) { return 0.0; };
    d.closed_flow = [](double, double l) { return l; };
    d.lipschitz_at_zero = true;
    d.tail_bound = 0.0;
    return d;
}

DriftSpec constant_drift(double c) {
    // V = -c, stopped flow (l - c t)_+
    DriftSpec d;
    d.name = "V=-" + std::to_string(c);
    d.V = [c](double) { return -c; };
    d.closed_flow = [c](double t, double l) { return std::max(l - c * t, 0.0); };
    d.lipschitz_at_zero = true;
    d.tail_bound = 0.0;
    return d;
}

DriftSpec inverse_drift(double c) {
    // V = -c/l, stopped flow sqrt((l^2 - 2 c t)_+)
    DriftSpec d;
    d.name = "V=-" + std::to_string(c) + "/l";
    d.V = [c](double l) { return -c / l; };
    d.closed_flow = [c](double t, double l) {
        const double q = l * l - 2.0 * c * t;
        return q > 0.0 ? std::sqrt(q) : 0.0;
    };
    d.lipschitz_at_zero = false;
    d.tail_bound = 0.0;
    return d;
}

DriftSpec semiconcave_drift(double C) {
    // V = -C (1 + l^2), stopped flow tan(atan l - C t) until the atan runs out
    DriftSpec d;
    d.name = "V=-C(1+l^2),C=" + std::to_string(C);
    d.V = [C](double l) { return -C * (1.0 + l * l); };
    d.closed_flow = [C](double t, double l) {
        const double a = std::atan(l) - C * t;
        return a > 0.0 ? std::tan(a) : 0.0;
    };
    d.lipschitz_at_zero = true;
    d.tail_bound = 0.0;
    return d;
}

double second_derivative_sup(const std::function<double(double)>& f, double R) {
    // dense central differences on [-R, R] at 1e-3 R resolution, 1% inflation
    const double r = std::max(R, 1e-9);
    const std::size_t n = 2001;
    const double dp = 2.0 * r / static_cast<double>(n - 1);
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double p = -r + dp * static_cast<double>(i);
        const double d2 = (f(p + dp) - 2.0 * f(p) + f(p - dp)) / (dp * dp);
        m = std::max(m, std::fabs(d2));
    }
    return m * 1.01;
}

}  // namespace

DriftSpec drift_for(const ProblemSpec& spec, BoundSign sign) {
    const ProblemSpec use = (sign == BoundSign::Minus) ? mirror_spec(spec) : spec;
    const double R = std::max(use.gradient_radius, 1e-9);
    const double N = static_cast<double>(use.dimension);

    if (use.is_zero()) return zero_drift();
    if (const auto* fo = std::get_if<FirstOrderModel>(&use.model)) {
        const double fpp = second_derivative_sup(fo->F, R);
        return constant_drift(fpp);
    }
    if (const auto* ql = std::get_if<QuasilinearModel>(&use.model)) {
        double app;
        if (const auto* pl = std::get_if<PowerLaw>(&ql->a)) {
            if (pl->exponent == 0)
                app = 0.0;
            else if (pl->exponent == 1)
                throw std::invalid_argument(
                    "drift_for: |p|^1 coefficient has no bounded second derivative");
            else
                app = pl->scale * static_cast<double>(pl->exponent) *
                      static_cast<double>(pl->exponent - 1) *
                      std::pow(R, static_cast<double>(pl->exponent - 2));
        } else {
            app = second_derivative_sup(std::get<std::function<double(double)>>(ql->a), R);
        }
        if (app == 0.0) return zero_drift();
        return inverse_drift(N * app);
    }
    // one-dimensional fully nonlinear F(u_xx): x,p-independent, so the
    // semiconcavity constant is 0 and the drift vanishes
    return zero_drift();
}

DriftSpec phi_to_drift(std::function<double(double)> Phi, std::string name) {
    DriftSpec d;
    d.name = std::move(name);
    d.V = [Phi](double l) { return -(l * l) * Phi(1.0 / l); };
    d.lipschitz_at_zero = false;
    d.tail_bound = 0.0;
    return d;
}

BoundCurveResult bound_curve(const ProblemSpec& spec, const DrivingPath& xi, double l0_plus,
                             double l0_minus, std::size_t stride) {
    BoundCurveResult out;
    const DriftSpec dp = drift_for(spec, BoundSign::Plus);
    const DriftSpec dm = drift_for(spec, BoundSign::Minus);
    out.L_plus = discrete_scheme(dp, xi, l0_plus, stride);
    const DrivingPath neg = negate(xi);
    out.L_minus = discrete_scheme(dm, neg, l0_minus, stride);
    out.bound.resize(out.L_plus.L.size());
    for (std::size_t i = 0; i < out.bound.size(); ++i) {
        const double m = std::min(out.L_plus.L[i], out.L_minus.L[i]);
        out.bound[i] = (m > 0.0) ? 1.0 / m : HUGE_VAL;
    }
    return out;
}

std::vector<double> lipschitz_decay(double osc, const ReflectedTrajectory& Lp,
                                    const ReflectedTrajectory& Lm) {
    if (osc < 0.0) throw std::invalid_argument("lipschitz_decay: negative oscillation");
    if (Lp.L.size() != Lm.L.size())
        throw std::invalid_argument("lipschitz_decay: trajectory lengths differ");
    std::vector<double> out(Lp.L.size());
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double mx = std::max(Lp.L[i], Lm.L[i]);
        double cur;
        if (osc == 0.0)
            cur = 0.0;
        else if (mx > 0.0)
            cur = std::sqrt(2.0 * osc / mx);
        else
            cur = HUGE_VAL;
        best = std::min(best, cur);
        out[i] = best;
    }
    return out;
}

void write_bound_curve_csv(const BoundCurveResult& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_bound_curve_csv: cannot open " + path);
    out << "t,L_plus,L_minus,bound\n";
    char buf[128];
    for (std::size_t i = 0; i < r.bound.size(); ++i) {
        if (std::isinf(r.bound[i]))
            std::snprintf(buf, sizeof buf, "%.15e,%.15e,%.15e,inf\n", r.L_plus.times[i],
                          r.L_plus.L[i], r.L_minus.L[i]);
        else
            std::snprintf(buf, sizeof buf, "%.15e,%.15e,%.15e,%.15e\n", r.L_plus.times[i],
                          r.L_plus.L[i], r.L_minus.L[i], r.bound[i]);
        out << buf;
    }
}

}  // namespace rbyhj
