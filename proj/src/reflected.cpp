#include "rbyhj/reflected.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "rbyhj/quadrature.hpp"

namespace rbyhj {

namespace {

constexpr double kBlowup = 1e100;

struct StageResult {
    double value = 0.0;
    bool crossed = false;  // some stage or the result left (0, blowup)
};

StageResult rk4_guarded(const std::function<double(double)>& V, double l, double dt) {
    StageResult r;
    const double k1 = V(l);
    const double a2 = l + 0.5 * dt * k1;
    if (!(a2 > 0.0) || !std::isfinite(a2)) return {0.0, true};
    const double k2 = V(a2);
    const double a3 = l + 0.5 * dt * k2;
    if (!(a3 > 0.0) || !std::isfinite(a3)) return {0.0, true};
    const double k3 = V(a3);
    const double a4 = l + dt * k3;
    if (!(a4 > 0.0) || !std::isfinite(a4)) return {0.0, true};
    const double k4 = V(a4);
    r.value = l + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(r.value > 0.0) || !std::isfinite(r.value)) r.crossed = true;
    return r;
}

StageResult rk4_two_halves(const std::function<double(double)>& V, double l, double dt) {
    StageResult h1 = rk4_guarded(V, l, 0.5 * dt);
    if (h1.crossed) return h1;
    return rk4_guarded(V, h1.value, 0.5 * dt);
}

double flow_numeric(const DriftSpec& d, double t_total, double l0) {
    if (l0 <= 0.0) {
        // at the boundary: stopped unless the drift pushes in with a
        // Lipschitz extension
        if (d.lipschitz_at_zero && d.V(0.0) > 0.0) {
            l0 = 0.0;
            // kick off with one explicit Euler micro-step
            const double dt0 = std::min(t_total, 1e-9 * std::max(t_total, 1.0));
            l0 = d.V(0.0) * dt0;
            if (l0 <= 0.0) return 0.0;
            t_total -= dt0;
        } else {
            return 0.0;
        }
    }
    const double tol = 1e-12;
    double l = l0, s = 0.0;
    double dt = t_total;
    // keep first guess conservative relative to the motion scale
    {
        const double v = std::fabs(d.V(l)) + 1e-300;
        dt = std::min(dt, 0.25 * l / v);
        if (!(dt > 0.0)) dt = t_total;
    }
    for (int iter = 0; iter < 20000000; ++iter) {
        if (s >= t_total) return l;
        dt = std::min(dt, t_total - s);
        StageResult one = rk4_guarded(d.V, l, dt);
        StageResult two = one.crossed ? one : rk4_two_halves(d.V, l, dt);
        if (one.crossed || two.crossed) {
            // hitting time inside this step; locate it and stop at 0
            double lo = 0.0, hi = dt;
            for (int b = 0; b < 200 && (hi - lo) > 1e-12 * std::max(1.0, s + hi); ++b) {
                const double mid = 0.5 * (lo + hi);
                StageResult m = rk4_two_halves(d.V, l, mid);
                if (m.crossed)
                    hi = mid;
                else {
                    lo = mid;
                    if (m.value < 1e-14 * std::max(1.0, l0)) break;
                }
            }
            return 0.0;
        }
        const double err = std::fabs(one.value - two.value) / 15.0;
        const double scale = tol * (std::fabs(l) + 1e-12);
        if (err <= scale) {
            l = two.value;
            s += dt;
            if (l > kBlowup) return HUGE_VAL;
            const double grow = (err > 0.0) ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
            dt *= std::min(2.0, std::max(0.5, grow));
        } else {
            dt *= std::max(0.1, 0.9 * std::pow(scale / err, 0.2));
        }
        // step-size underflow only happens against a singular stop; with an
        // inward drift the flow is absorbed
        if (!(dt > 1e-18 * std::max(1.0, t_total))) return (d.V(l) < 0.0) ? 0.0 : l;
    }
    throw std::runtime_error("flow: adaptive integration failed to terminate for drift " + d.name);
}

}  // namespace

double flow(const DriftSpec& d, double t, double l) {
    if (t < 0.0) throw std::invalid_argument("flow: negative time");
    if (l < 0.0) throw std::invalid_argument("flow: negative initial value");
    if (t == 0.0) return l;
    if (d.closed_flow) return d.closed_flow(t, l);
    return flow_numeric(d, t, l);
}

namespace {

void check_stride(const DrivingPath& xi, std::size_t stride) {
    if (stride == 0 || xi.steps() % stride != 0)
        throw std::invalid_argument("reflected: stride must divide the path step count");
}

}  // namespace

ReflectedTrajectory discrete_scheme(const DriftSpec& d, const DrivingPath& xi, double l0,
                                    std::size_t stride) {
    xi.validate();
    check_stride(xi, stride);
    if (l0 < 0.0) throw std::invalid_argument("discrete_scheme: l0 must be >= 0");
    const std::size_t cells = xi.steps() / stride;
    const double dt = xi.dt() * static_cast<double>(stride);
    ReflectedTrajectory out;
    out.times.resize(cells + 1);
    out.L.resize(cells + 1);
    out.R.resize(cells + 1);
    out.times[0] = 0.0;
    out.L[0] = l0;
    out.R[0] = 0.0;
    double L = l0, R = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t lo = c * stride, hi = lo + stride;
        double pre = flow(d, dt, L) + (xi.xi[hi] - xi.xi[lo]);
        if (pre < 0.0) {
            R += -pre;
            pre = 0.0;
        }
        L = pre;
        for (const auto& [idx, jump] : xi.jumps) {
            if (idx > lo && idx <= hi) {
                double q = L + jump;
                if (q < 0.0) {
                    R += -q;
                    q = 0.0;
                }
                L = q;
            }
        }
        out.times[c + 1] = xi.t(hi);
        out.L[c + 1] = L;
        out.R[c + 1] = R;
    }
    return out;
}

ReflectedTrajectory skorokhod_solve(const DriftSpec& d, const DrivingPath& xi, double l0,
                                    std::size_t stride) {
    xi.validate();
    check_stride(xi, stride);
    if (!d.lipschitz_at_zero)
        throw std::invalid_argument(
            "skorokhod_solve: drift must extend Lipschitz to [0,inf); use discrete_scheme");
    if (l0 < 0.0) throw std::invalid_argument("skorokhod_solve: l0 must be >= 0");
    const std::size_t cells = xi.steps() / stride;
    const double dt = xi.dt() * static_cast<double>(stride);
    ReflectedTrajectory out;
    out.times.resize(cells + 1);
    out.L.resize(cells + 1);
    out.R.resize(cells + 1);
    out.times[0] = 0.0;
    out.L[0] = l0;
    out.R[0] = 0.0;
    double L = l0, R = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t lo = c * stride, hi = lo + stride;
        double pre = L + d.V(L) * dt + (xi.xi[hi] - xi.xi[lo]);
        if (pre < 0.0) {
            R += -pre;
            pre = 0.0;
        }
        L = pre;
        for (const auto& [idx, jump] : xi.jumps) {
            if (idx > lo && idx <= hi) {
                double q = L + jump;
                if (q < 0.0) {
                    R += -q;
                    q = 0.0;
                }
                L = q;
            }
        }
        out.times[c + 1] = xi.t(hi);
        out.L[c + 1] = L;
        out.R[c + 1] = R;
    }
    return out;
}

ComparisonReport comparison_check(const DriftSpec& V1, const DriftSpec& V2,
                                  const DrivingPath& xi, double l0, std::size_t stride) {
    ReflectedTrajectory a = discrete_scheme(V1, xi, l0, stride);
    ReflectedTrajectory b = discrete_scheme(V2, xi, l0, stride);
    ComparisonReport rep;
    double viol = -HUGE_VAL;
    double lo = HUGE_VAL, hi = 0.0;
    for (std::size_t i = 0; i < a.L.size(); ++i) {
        viol = std::max(viol, b.L[i] - a.L[i]);
        lo = std::min({lo, a.L[i], b.L[i]});
        hi = std::max({hi, a.L[i], b.L[i]});
    }
    rep.max_violation = viol;
    rep.ordered = viol <= 0.0;
    lo = std::max(lo, 1e-9);
    hi = std::max(hi, lo * 2.0);
    rep.drift_ordered = true;
    for (int i = 0; i <= 256; ++i) {
        const double x = lo * std::pow(hi / lo, static_cast<double>(i) / 256.0);
        if (V1.V(x) < V2.V(x) - 1e-12 * (1.0 + std::fabs(V2.V(x)))) {
            rep.drift_ordered = false;
            break;
        }
    }
    return rep;
}

const char* to_string(BoundaryClass::Kind k) {
    switch (k) {
        case BoundaryClass::Kind::Regular: return "Regular";
        case BoundaryClass::Kind::Exit: return "Exit";
        case BoundaryClass::Kind::Entrance: return "Entrance";
        default: return "Natural";
    }
}

const char* to_string(HolderVerdict v) {
    switch (v) {
        case HolderVerdict::Repelling: return "Repelling";
        case HolderVerdict::Absorbing: return "Absorbing";
        default: return "Inconclusive";
    }
}

namespace {

// Cached G(x) = 2 * integral_x^1 W(u) du on dyadic shells.
class ScaleExponent {
  public:
    explicit ScaleExponent(std::function<double(double)> W) : W_(std::move(W)) { cum_.push_back(0.0); }

    double operator()(double x) {
        const int shell = shell_of(x);
        extend(shell);
        const double top = std::ldexp(1.0, -shell);  // 2^-shell >= x
        double g = cum_[static_cast<std::size_t>(shell)];
        if (x < top) g += 2.0 * quad::gauss_legendre_15(W_, x, top);
        return g;
    }

  private:
    static int shell_of(double x) {
        int s = 0;
        double top = 1.0;
        while (x < 0.5 * top && s < 4000) {
            top *= 0.5;
            ++s;
        }
        return s;  // x in (2^-s-1, 2^-s]
    }
    void extend(int shell) {
        while (static_cast<int>(cum_.size()) <= shell) {
            const int k = static_cast<int>(cum_.size()) - 1;
            const double top = std::ldexp(1.0, -k);
            const double bot = 0.5 * top;
            double seg = 0.0;  // 2*int_bot^top W, split for safety near 0
            const double m = 0.5 * (bot + top);
            seg += 2.0 * quad::gauss_legendre_15(W_, bot, m);
            seg += 2.0 * quad::gauss_legendre_15(W_, m, top);
            cum_.push_back(cum_[static_cast<std::size_t>(k)] + seg);
        }
    }

    std::function<double(double)> W_;
    std::vector<double> cum_;  // cum_[k] = G(2^-k)
};

// I = integral_0^1 Q(x) dx with Q(x) = integral_x^1 exp(sgn*(G(x)-G(y))) dy,
// both in log coordinates, dyadic shells in x with divergence detection.
double feller_integral(ScaleExponent& G, int sgn, const char* label) {
    auto Q = [&](double x) {
        const double gx = G(x);
        auto f = [&](double v) {
            const double y = std::exp(v);
            return std::exp(static_cast<double>(sgn) * (gx - G(y)) + v);
        };
        return quad::adaptive_simpson(f, std::log(x), 0.0, 1e-9, 1e-13);
    };
    double total = 0.0;
    double prev = -1.0, prev2 = -1.0;
    int growing = 0;
    const double ratio_margin = std::pow(2.0, -0.05);
    for (int k = 0;; ++k) {
        if (k > 400)
            throw std::runtime_error(std::string("feller_classify: ") + label +
                                     " did not converge nor diverge within 400 dyadic shells");
        const double top = std::ldexp(1.0, -k);
        const double bot = 0.5 * top;
        auto f = [&](double w) {
            const double x = std::exp(w);
            return Q(x) * x;
        };
        const double s = quad::adaptive_simpson(f, std::log(bot), std::log(top), 1e-8, 1e-14);
        total += s;
        // sustained shell growth in the asymptotic regime (past the burn-in
        // shells, where near-marginal convergent integrands still transition)
        if (k >= 6 && prev > 0.0 && s >= ratio_margin * prev)
            ++growing;
        else
            growing = 0;
        if (growing >= 4) return HUGE_VAL;
        if (prev > 0.0 && s < prev) {
            const double r = s / prev;
            const double rr = (prev2 > 0.0) ? std::max(r, prev / prev2) : r;
            if (rr < ratio_margin) {
                const double tail = s * rr / (1.0 - rr);
                if (tail < 1e-8) return total + tail;
            }
        }
        if (s < 1e-14 * std::max(total, 1e-30)) return total;
        prev2 = prev;
        prev = s;
    }
}

}  // namespace

BoundaryClass feller_classify(const DriftSpec& d, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("feller_classify: sigma must be positive");
    const double inv_s2 = 1.0 / (sigma * sigma);
    auto W = [V = d.V, inv_s2](double u) { return V(u) * inv_s2; };
    BoundaryClass out;
    {
        ScaleExponent G(W);
        out.I_plus = feller_integral(G, +1, "I+");
    }
    {
        ScaleExponent G(W);
        out.I_minus = feller_integral(G, -1, "I-");
    }
    const bool pf = std::isfinite(out.I_plus), mf = std::isfinite(out.I_minus);
    if (pf && mf)
        out.kind = BoundaryClass::Kind::Regular;
    else if (pf && !mf)
        out.kind = BoundaryClass::Kind::Exit;
    else if (!pf && mf)
        out.kind = BoundaryClass::Kind::Entrance;
    else
        out.kind = BoundaryClass::Kind::Natural;
    return out;
}

HolderVerdict holder_boundary_diagnostic(const DriftSpec& d, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("holder_boundary_diagnostic: alpha must lie in (0,1]");
    // monotonicity of V on the declared neighborhood of 0
    const double r = std::max(d.monotone_radius, 1e-6);
    bool noninc = true, nondec = true;
    double prev = d.V(r * std::pow(1e-8, 0.0));
    for (int i = 1; i <= 64; ++i) {
        const double x = r * std::pow(1e-8, static_cast<double>(i) / 64.0);
        const double cur = d.V(x);  // x decreasing toward 0
        const double tol = 1e-12 * (1.0 + std::fabs(cur) + std::fabs(prev));
        if (cur > prev + tol) nondec = false;  // V grows toward 0 => nonincreasing in l
        if (cur < prev - tol) noninc = false;
        prev = cur;
    }
    if (!noninc && !nondec)
        throw std::invalid_argument(
            "holder_boundary_diagnostic: drift is not monotone near 0; diagnostic undefined");

    auto G_of = [&](double T) -> double {
        // integral_0^T V(s^alpha) ds over dyadic shells with divergence test
        double total = 0.0;
        double prev_mag = -1.0;
        int growing = 0;
        int sign_dir = 0;
        for (int j = 0;; ++j) {
            if (j > 600) break;  // remaining mass negligible for integrable drifts
            const double top = T * std::ldexp(1.0, -j);
            const double bot = 0.5 * top;
            auto f = [&](double s) { return d.V(std::pow(s, alpha)); };
            const double m = 0.5 * (bot + top);
            const double seg =
                quad::gauss_legendre_15(f, bot, m) + quad::gauss_legendre_15(f, m, top);
            total += seg;
            const double mag = std::fabs(seg);
            if (prev_mag > 0.0 && mag >= 0.999 * prev_mag && mag > 1e-13) {
                ++growing;
                if (growing >= 4) {
                    sign_dir = (seg > 0.0) ? 1 : -1;
                    break;
                }
            } else {
                growing = 0;
            }
            if (mag < 1e-15 * (std::fabs(total) + 1e-300)) break;
            prev_mag = mag;
        }
        if (sign_dir != 0) return sign_dir > 0 ? HUGE_VAL : -HUGE_VAL;
        return total * std::pow(T, -alpha);
    };

    double G[13];
    for (int k = 1; k <= 12; ++k) G[k] = G_of(std::pow(10.0, -k));

    auto diverges_up = [&]() {
        for (int k = 1; k <= 12; ++k)
            if (G[k] == HUGE_VAL) return true;
        if (!(G[12] > 0.0)) return false;
        for (int k = 7; k <= 11; ++k)
            if (!(G[k + 1] >= 1.05 * G[k]) || !(G[k] > 0.0)) return false;
        return true;
    };
    auto diverges_down = [&]() {
        for (int k = 1; k <= 12; ++k)
            if (G[k] == -HUGE_VAL) return true;
        if (!(G[12] < 0.0)) return false;
        for (int k = 7; k <= 11; ++k)
            if (!(G[k + 1] <= 1.05 * G[k]) || !(G[k] < 0.0)) return false;
        return true;
    };

    if (noninc && diverges_up()) return HolderVerdict::Repelling;
    if (nondec && diverges_down()) return HolderVerdict::Absorbing;
    return HolderVerdict::Inconclusive;
}

void write_trajectory_csv(const ReflectedTrajectory& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    out << "t,L,R\n";
    char buf[96];
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.15e,%.15e,%.15e\n", t.times[i], t.L[i], t.R[i]);
        out << buf;
    }
}

}  // namespace rbyhj
