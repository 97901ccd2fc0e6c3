#include "rbyhj/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbyhj {

namespace {

double central_second_diff_at(const GridFn& u, std::size_t i) {
    const std::size_t n = u.size();
    const double um = (i > 0) ? u.v[i - 1] : (u.periodic() ? u.v[n - 1] : u.v[0]);
    const double up = (i + 1 < n) ? u.v[i + 1] : (u.periodic() ? u.v[0] : u.v[n - 1]);
    return (up - 2.0 * u.v[i] + um) / (u.h * u.h);
}

}  // namespace

SplitRun trotter_kato(const ProblemSpec& spec, const DrivingPath& xi, const GridFn& u0,
                      const SplitOptions& opt) {
    xi.validate();
    u0.validate();
    const std::size_t cells = (opt.cells == 0) ? xi.steps() : opt.cells;
    if (cells == 0 || xi.steps() % cells != 0)
        throw std::invalid_argument("trotter_kato: cells must divide the path step count");
    const std::size_t stride = xi.steps() / cells;
    const double cell_dt = xi.T / static_cast<double>(cells);

    ProblemSpec base = spec;
    if (base.gradient_radius <= 0.0) base.gradient_radius = lipschitz_norm(u0);
    const ProblemSpec mirrored = mirror_spec(base);

    const bool paired = opt.paired_states && opt.rec == Reconstruction::Arcs;

    SplitRun run;
    run.cells = cells;
    run.T = xi.T;
    run.transform_mode =
        (opt.rec == Reconstruction::Arcs) ? (paired ? "arcs+paired" : "arcs") : "nodes";
    run.state = u0;
    GridFn twin;
    if (paired) {
        twin = u0;
        for (double& y : twin.v) y = -y;
    }
    run.increments.reserve(cells);

    auto snapshot = [&](std::size_t cell_idx) {
        SplitSnapshot s;
        s.cell = cell_idx;
        s.t = cell_dt * static_cast<double>(cell_idx);
        auto rep = second_diff(run.state, opt.seam_skip);
        s.max_plus = rep.max_plus;
        if (paired) {
            auto mrep = second_diff(twin, opt.seam_skip);
            s.max_minus = mrep.max_plus;  // max_minus(u) == max_plus(-u)
            double gap = 0.0;
            for (std::size_t i = 0; i < twin.size(); ++i)
                gap = std::max(gap, std::fabs(run.state.v[i] + twin.v[i]));
            s.state_gap = gap;
        } else {
            s.max_minus = rep.max_minus;
            s.state_gap = 0.0;
        }
        s.lipschitz = lipschitz_norm(run.state);
        s.oscillation = oscillation(run.state);
        s.curvature_origin = central_second_diff_at(run.state, 0);
        run.snapshots.push_back(s);
        if (opt.keep_snapshots) run.stored_states.push_back(run.state);
    };

    snapshot(0);
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t lo = c * stride, hi = lo + stride;
        if (!base.is_zero()) {
            run.state = evolve_F(run.state, base, cell_dt, opt.dt_hint).u;
            if (paired) twin = evolve_F(twin, mirrored, cell_dt, opt.dt_hint).u;
        }
        const double inc = xi.xi[hi] - xi.xi[lo];
        run.increments.push_back(inc);
        if (inc != 0.0 && below_delta_guard(inc, run.state.h)) ++run.guarded_steps;
        run.state = one_sided_step(run.state, inc, opt.rec);
        if (paired) twin = one_sided_step(twin, -inc, opt.rec);
        for (const auto& [idx, jump] : xi.jumps) {
            if (idx > lo && idx <= hi) {
                run.state = one_sided_step(run.state, jump, opt.rec);
                if (paired) twin = one_sided_step(twin, -jump, opt.rec);
            }
        }
        const bool last = (c + 1 == cells);
        if (last || (opt.snapshot_every > 0 && (c + 1) % opt.snapshot_every == 0)) snapshot(c + 1);
    }
    if (paired) run.twin = std::move(twin);
    return run;
}

double default_slack(double h, std::size_t cells) {
    return 10.0 * h + 2.0 / std::sqrt(static_cast<double>(cells));
}

BoundCheckReport verify_main_bound(const SplitRun& run, const BoundCurveResult& curve,
                                   double slack) {
    if (curve.L_plus.L.size() != run.cells + 1)
        throw std::invalid_argument("verify_main_bound: curve partition does not match the run");
    BoundCheckReport rep;
    for (const auto& s : run.snapshots) {
        BoundCheckRow row{};
        row.t = s.t;
        const double Lp = curve.L_plus.L[s.cell];
        const double Lm = curve.L_minus.L[s.cell];
        row.curve_plus = (Lp > 0.0) ? 1.0 / Lp : HUGE_VAL;
        row.curve_minus = (Lm > 0.0) ? 1.0 / Lm : HUGE_VAL;
        row.max_plus = s.max_plus;
        row.max_minus = s.max_minus;
        double m = -HUGE_VAL;
        if (std::isfinite(row.curve_plus)) m = std::max(m, s.max_plus - (row.curve_plus + slack));
        if (std::isfinite(row.curve_minus))
            m = std::max(m, s.max_minus - (row.curve_minus + slack));
        row.margin = m;
        if (m > rep.worst_margin) {
            rep.worst_margin = m;
            rep.worst_time = s.t;
        }
        if (m > 0.0) rep.pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

bool check_u_class(const GridFn& u, double slack, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!u.periodic()) return fail("not periodic");
    if (std::fabs(u.period - 2.0) > 1e-12) return fail("period is not 2");
    const std::size_t n = u.size();
    if (n % 2 != 0) return fail("node count must be even (node at x = 1)");
    for (std::size_t i = 1; i < n / 2; ++i) {
        if (std::fabs(u.v[i] - u.v[n - i]) > slack) return fail("not even about 0");
        const std::size_t a = (n / 2 + i) % n, b = (n / 2 - i + n) % n;
        if (std::fabs(u.v[a] - u.v[b]) > slack) return fail("not even about 1");
    }
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) {
        const double d = (u.v[i + 1] - u.v[i]) / u.h;
        if (d < -slack || d > 1.0 + slack) return fail("slope outside [0,1] on (0,1)");
    }
    // nonincreasing curvature on (0,1)
    double prev = HUGE_VAL;
    for (std::size_t i = 1; i < half; ++i) {
        const double kappa = central_second_diff_at(u, i);
        if (kappa > prev + slack / u.h) return fail("curvature increases on (0,1)");
        prev = kappa;
    }
    if (why) why->clear();
    return true;
}

OptimalityReport optimality_experiment(const DrivingPath& xi, double beta, std::size_t n_nodes,
                                       std::size_t cells, std::size_t snapshot_every,
                                       double tracking_cutoff) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("optimality_experiment: beta must lie in (0,1]");
    if (n_nodes % 2 != 0)
        throw std::invalid_argument("optimality_experiment: need an even node count");
    const double pi = std::acos(-1.0);
    GridFn u0 = GridFn::sample_periodic(n_nodes, 0.0, 2.0, [&](double x) {
        return beta * (1.0 - std::cos(pi * x)) / pi;
    });
    std::string why;
    if (!check_u_class(u0, 20.0 * u0.h * u0.h + 1e-9, &why))
        throw std::runtime_error("optimality_experiment: initial data left the class: " + why);

    ProblemSpec spec;
    spec.model = QuasilinearModel{PowerLaw{0.25, 2}};
    spec.gradient_radius = beta;

    SplitOptions opt;
    opt.cells = cells;
    opt.snapshot_every = snapshot_every;
    opt.rec = Reconstruction::Arcs;
    opt.paired_states = true;

    OptimalityReport rep;
    rep.run = trotter_kato(spec, xi, u0, opt);

    const double l0 = 1.0 / (beta * pi);
    const std::size_t stride = xi.steps() / cells;
    rep.curve = bound_curve(spec, xi, l0, l0, stride);

    const auto& Lp = rep.curve.L_plus;
    rep.tau_plus = HUGE_VAL;
    for (std::size_t i = 0; i < Lp.L.size(); ++i) {
        if (Lp.L[i] <= 0.0) {
            rep.tau_plus = Lp.times[i];
            break;
        }
    }
    rep.state_gap = 0.0;
    const double h = rep.run.state.h;
    rep.blowup_after_tau = true;
    for (const auto& s : rep.run.snapshots) {
        const double L = Lp.L[s.cell];
        rep.times.push_back(s.t);
        rep.curvature0.push_back(s.curvature_origin);
        rep.Lplus.push_back(L);
        rep.product.push_back(s.curvature_origin * L);
        rep.state_gap = std::max(rep.state_gap, s.state_gap);
        if (L >= tracking_cutoff)
            rep.worst_product_dev =
                std::max(rep.worst_product_dev, std::fabs(s.curvature_origin * L - 1.0));
        if (std::isfinite(rep.tau_plus) &&
            s.t > rep.tau_plus + 2.0 * xi.T / static_cast<double>(cells)) {
            const double curv = std::max(s.max_plus, s.max_minus);
            if (curv <= 1.0 / (10.0 * h)) rep.blowup_after_tau = false;
        }
    }
    return rep;
}

}  // namespace rbyhj
