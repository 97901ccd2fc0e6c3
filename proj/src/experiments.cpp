#include "rbyhj/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rbyhj/bounds.hpp"
#include "rbyhj/io.hpp"
#include "rbyhj/kernels.hpp"
#include "rbyhj/splitting.hpp"

namespace rbyhj {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";
const double kPi = std::acos(-1.0);

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double jnum(const json& j, const std::string& key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) throw ConfigError("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double jnum_req(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ConfigError("missing required field '" + ctx + "." + key + "'");
    if (!j.at(key).is_number()) throw ConfigError("field '" + ctx + "." + key + "' must be a number");
    return j.at(key).get<double>();
}

std::size_t jsize(const json& j, const std::string& key, std::size_t dflt) {
    if (!j.contains(key)) return dflt;
    const double v = j.at(key).get<double>();
    if (v < 0 || v != std::floor(v)) throw ConfigError("field '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(v);
}

json num_or_inf(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

std::vector<std::uint64_t> seed_list(const json& path_cfg,
                                     std::optional<std::uint64_t> seed_override) {
    if (seed_override) return {*seed_override};
    std::vector<std::uint64_t> seeds;
    if (path_cfg.contains("seeds")) {
        for (const auto& s : path_cfg.at("seeds")) seeds.push_back(s.get<std::uint64_t>());
    } else if (path_cfg.contains("seed")) {
        seeds.push_back(path_cfg.at("seed").get<std::uint64_t>());
    } else {
        seeds.push_back(1);
    }
    if (seeds.empty()) throw ConfigError("path.seeds must not be empty");
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

DrivingPath make_path(const json& path_cfg, std::uint64_t seed) {
    const std::string kind = path_cfg.value("kind", "brownian");
    const double T = jnum(path_cfg, "T", 1.0);
    const std::size_t n = jsize(path_cfg, "n_steps", 2048);
    if (kind == "brownian") return brownian(T, n, jnum(path_cfg, "sigma", 1.0), seed);
    if (kind == "fbm") return fractional_brownian(T, n, jnum_req(path_cfg, "H", "path"), seed);
    if (kind == "zero") return deterministic_path(ZeroKind{}, T, n);
    if (kind == "linear") return deterministic_path(LinearKind{jnum(path_cfg, "slope", 1.0)}, T, n);
    if (kind == "sine")
        return deterministic_path(
            SineKind{jnum(path_cfg, "amplitude", 1.0), jnum(path_cfg, "omega", 1.0)}, T, n);
    throw ConfigError("path.kind must be one of brownian|fbm|zero|linear|sine");
}

GridFn make_u0(const json& grid_cfg) {
    const std::size_t n = jsize(grid_cfg, "n_nodes", 1024);
    const double period = jnum(grid_cfg, "period", 2.0);
    const double origin = jnum(grid_cfg, "origin", 0.0);
    const json u0 = grid_cfg.value("u0", json{{"kind", "abs_sin"}, {"amplitude", 1.0}});
    const std::string kind = u0.value("kind", "abs_sin");
    const double A = jnum(u0, "amplitude", 1.0);
    if (kind == "abs_sin")
        return GridFn::sample_periodic(n, origin, period,
                                       [&](double x) { return A * std::fabs(std::sin(kPi * x)); });
    if (kind == "sin")
        return GridFn::sample_periodic(n, origin, period,
                                       [&](double x) { return A * std::sin(kPi * x); });
    if (kind == "cos_well")
        return GridFn::sample_periodic(
            n, origin, period, [&](double x) { return A * (1.0 - std::cos(kPi * x)) / kPi; });
    throw ConfigError("grid.u0.kind must be one of abs_sin|sin|cos_well");
}

DriftSpec drift_from_json(const json& d) {
    const std::string kind = d.value("kind", "zero");
    if (kind == "zero") {
        DriftSpec s;
        s.name = "V=0";
        s.V = [](double) { return 0.0; };
        s.closed_flow = [](double, double l) { return l; };
        s.lipschitz_at_zero = true;
        return s;
    }
    if (kind == "constant") {
        const double c = jnum_req(d, "c", "drift");
        DriftSpec s;
        s.name = "V=-c, c=" + std::to_string(c);
        s.V = [c](double) { return -c; };
        s.closed_flow = [c](double t, double l) { return std::max(l - c * t, 0.0); };
        s.lipschitz_at_zero = true;
        return s;
    }
    if (kind == "inverse") {
        const double c = jnum_req(d, "c", "drift");
        DriftSpec s;
        s.name = "V=-c/l, c=" + std::to_string(c);
        s.V = [c](double l) { return -c / l; };
        s.closed_flow = [c](double t, double l) {
            const double q = l * l - 2.0 * c * t;
            return q > 0.0 ? std::sqrt(q) : 0.0;
        };
        s.lipschitz_at_zero = false;
        return s;
    }
    if (kind == "power") {
        const double c = jnum(d, "c", 1.0);
        const double q = jnum_req(d, "q", "drift");
        DriftSpec s;
        s.name = "V=c*l^q, c=" + std::to_string(c) + ", q=" + std::to_string(q);
        s.V = [c, q](double l) { return c * std::pow(l, q); };
        s.lipschitz_at_zero = q >= 1.0 || c == 0.0;
        s.tail_bound = (c > 0.0 && q <= 0.0) ? c : 0.0;
        return s;
    }
    throw ConfigError("drift.kind must be one of zero|constant|inverse|power");
}

struct Assertions {
    json rows = json::array();
    bool pass = true;

    void add(const std::string& name, bool ok, json detail = json::object()) {
        detail["name"] = name;
        detail["pass"] = ok;
        rows.push_back(detail);
        pass = pass && ok;
    }
    void add_le(const std::string& name, double value, double bound) {
        add(name, value <= bound, json{{"value", num_or_inf(value)}, {"bound", num_or_inf(bound)}});
    }
    void add_in(const std::string& name, double value, double lo, double hi) {
        add(name, value >= lo && value <= hi,
            json{{"value", num_or_inf(value)}, {"low", lo}, {"high", hi}});
    }
};

double auto_l0(double measured_curvature) {
    if (measured_curvature <= 0.0) return 1e12;  // concave side never binds
    return 1.0 / measured_curvature;
}

struct SplitSetup {
    GridFn u0;
    std::size_t cells;
    std::size_t snapshot_every;
    double slack_c1, slack_c2;
    double slack(double h) const {
        return slack_c1 * h + slack_c2 / std::sqrt(static_cast<double>(cells));
    }
};

SplitSetup split_setup(const json& cfg) {
    SplitSetup s{make_u0(cfg.value("grid", json::object())),
                 jsize(cfg, "cells", 0),
                 jsize(cfg, "snapshot_every", 64),
                 0.0, 0.0};
    const json slack = cfg.value("slack", json::object());
    s.slack_c1 = jnum(slack, "c1", 10.0);
    s.slack_c2 = jnum(slack, "c2", 2.0);
    return s;
}

// One splitting run against its two-sided bound curve.
struct PipelineResult {
    SplitRun run;
    BoundCurveResult curve;
    BoundCheckReport check;
    std::vector<double> lip_bound;  // decay curve sampled at snapshots
    double osc0 = 0.0;
};

PipelineResult run_pipeline(const ProblemSpec& spec, const DrivingPath& path, const GridFn& u0,
                            std::size_t cells, std::size_t snapshot_every, double slack) {
    SplitOptions opt;
    opt.cells = (cells == 0) ? path.steps() : cells;
    opt.snapshot_every = snapshot_every;
    PipelineResult pr;
    pr.run = trotter_kato(spec, path, u0, opt);
    auto rep0 = second_diff(u0);
    const double l0p = auto_l0(rep0.max_plus);
    const double l0m = auto_l0(rep0.max_minus);
    ProblemSpec spec_r = spec;
    if (spec_r.gradient_radius <= 0.0) spec_r.gradient_radius = lipschitz_norm(u0);
    pr.curve = bound_curve(spec_r, path, l0p, l0m, path.steps() / opt.cells);
    pr.check = verify_main_bound(pr.run, pr.curve, slack);
    pr.osc0 = oscillation(u0);
    const auto decay = lipschitz_decay(pr.osc0, pr.curve.L_plus, pr.curve.L_minus);
    pr.lip_bound.reserve(pr.run.snapshots.size());
    for (const auto& s : pr.run.snapshots) pr.lip_bound.push_back(decay[s.cell]);
    return pr;
}

void write_pipeline_artifacts(const std::string& dir, const std::string& tag,
                              const PipelineResult& pr, bool plots) {
    write_bound_curve_csv(pr.curve, dir + "/bound_" + tag + ".csv");
    io::ensure_dir(dir + "/snapshots");
    write_csv(pr.run.state, dir + "/snapshots/final_" + tag + ".csv");
    if (plots) {
        io::Series mp{"measured D2+", {}, {}}, cp{"1/L+", {}, {}};
        for (const auto& r : pr.check.rows) {
            mp.x.push_back(r.t);
            mp.y.push_back(r.max_plus);
            cp.x.push_back(r.t);
            cp.y.push_back(std::isfinite(r.curve_plus) ? r.curve_plus : NAN);
        }
        io::write_svg_plot(dir + "/bound_" + tag + ".svg", "curvature vs bound (" + tag + ")",
                           {mp, cp});
    }
}

// ---------------------------------------------------------------- burgers --
json exp_burgers(const json& cfg, const std::string& dir, bool plots,
                 std::optional<std::uint64_t> seed_override, Assertions& as) {
    SplitSetup setup = split_setup(cfg);
    const json path_cfg = cfg.value("path", json::object());
    const auto seeds = seed_list(path_cfg, seed_override);
    ProblemSpec spec;
    spec.model = ZeroModel{};
    json per_seed = json::array();
    const double h = setup.u0.h;
    for (auto seed : seeds) {
        DrivingPath path = make_path(path_cfg, seed);
        PipelineResult pr = run_pipeline(spec, path, setup.u0, setup.cells, setup.snapshot_every,
                                         setup.slack(h));
        const std::string tag = "seed" + std::to_string(seed);
        write_pipeline_artifacts(dir, tag, pr, plots);
        as.add("main_bound_" + tag, pr.check.pass,
               json{{"worst_margin", pr.check.worst_margin}, {"slack", setup.slack(h)}});
        per_seed.push_back(json{{"seed", seed},
                                {"pass", pr.check.pass},
                                {"worst_margin", pr.check.worst_margin},
                                {"state_gap", pr.run.snapshots.back().state_gap},
                                {"guarded_steps", pr.run.guarded_steps}});
    }
    return json{{"per_seed", per_seed}};
}

// ------------------------------------------------------------------ decay --
json exp_decay(const json& cfg, const std::string& dir, bool plots,
               std::optional<std::uint64_t> seed_override, Assertions& as) {
    SplitSetup setup = split_setup(cfg);
    const json path_cfg = cfg.value("path", json::object());
    const auto seeds = seed_list(path_cfg, seed_override);
    ProblemSpec spec;
    spec.model = ZeroModel{};
    const double h = setup.u0.h;
    const double lip_slack = 10.0 * h;
    json per_seed = json::array();
    for (auto seed : seeds) {
        DrivingPath path = make_path(path_cfg, seed);
        PipelineResult pr = run_pipeline(spec, path, setup.u0, setup.cells, setup.snapshot_every,
                                         setup.slack(h));
        double worst = -HUGE_VAL;
        for (std::size_t i = 0; i < pr.run.snapshots.size(); ++i) {
            const double bound = pr.lip_bound[i];
            if (!std::isfinite(bound)) continue;
            worst = std::max(worst, pr.run.snapshots[i].lipschitz - (bound + lip_slack));
        }
        as.add("lipschitz_decay_seed" + std::to_string(seed), worst <= 0.0,
               json{{"worst_margin", worst}, {"slack", lip_slack}});
        per_seed.push_back(json{{"seed", seed}, {"worst_margin", worst}});
        if (plots) {
            io::Series lm{"lipschitz", {}, {}}, lb{"decay bound", {}, {}};
            for (std::size_t i = 0; i < pr.run.snapshots.size(); ++i) {
                lm.x.push_back(pr.run.snapshots[i].t);
                lm.y.push_back(pr.run.snapshots[i].lipschitz);
                lb.x.push_back(pr.run.snapshots[i].t);
                lb.y.push_back(std::isfinite(pr.lip_bound[i]) ? pr.lip_bound[i] : NAN);
            }
            io::write_svg_plot(dir + "/decay_seed" + std::to_string(seed) + ".svg",
                               "gradient decay", {lm, lb});
        }
    }
    return json{{"per_seed", per_seed}};
}

// --------------------------------------------------------------- plaplace --
json exp_plaplace(const json& cfg, const std::string& dir, bool plots,
                  std::optional<std::uint64_t> seed_override, Assertions& as) {
    SplitSetup setup = split_setup(cfg);
    const double m = jnum(cfg, "m", 3.0);
    if (m < 3.0) throw ConfigError("plaplace: m must be >= 3");
    if (m != std::floor(m)) throw ConfigError("plaplace: m must be an integer");
    const json path_cfg = cfg.value("path", json::object());
    const auto seeds = seed_list(path_cfg, seed_override);
    ProblemSpec spec;
    spec.model = QuasilinearModel{PowerLaw{1.0, static_cast<int>(m) - 1}};
    json per_seed = json::array();
    const double h = setup.u0.h;
    for (auto seed : seeds) {
        DrivingPath path = make_path(path_cfg, seed);
        PipelineResult pr = run_pipeline(spec, path, setup.u0, setup.cells, setup.snapshot_every,
                                         setup.slack(h));
        const std::string tag = "seed" + std::to_string(seed);
        write_pipeline_artifacts(dir, tag, pr, plots);
        as.add("main_bound_" + tag, pr.check.pass,
               json{{"worst_margin", pr.check.worst_margin}, {"slack", setup.slack(h)}});
        per_seed.push_back(json{{"seed", seed},
                                {"pass", pr.check.pass},
                                {"worst_margin", pr.check.worst_margin}});
    }
    // noise-intensity threshold implied by the drift catalog
    const DriftSpec d = drift_for(spec, BoundSign::Plus);
    json extra{{"per_seed", per_seed}, {"drift", d.name}};
    return extra;
}

// --------------------------------------------------------- first_order_fbm --
json exp_first_order_fbm(const json& cfg, const std::string& dir, bool plots,
                         std::optional<std::uint64_t> seed_override, Assertions& as) {
    SplitSetup setup = split_setup(cfg);
    const json path_cfg = cfg.value("path", json::object());
    const auto seeds = seed_list(path_cfg, seed_override);
    ProblemSpec spec;
    FirstOrderModel fo;
    fo.F = [](double p) { return 0.5 * p * p; };
    spec.model = fo;
    const double h = setup.u0.h;
    json per_seed = json::array();
    for (auto seed : seeds) {
        json pc = path_cfg;
        if (!pc.contains("kind")) pc["kind"] = "fbm";
        if (!pc.contains("H")) pc["H"] = 0.5;
        DrivingPath path = make_path(pc, seed);
        PipelineResult pr = run_pipeline(spec, path, setup.u0, setup.cells, setup.snapshot_every,
                                         setup.slack(h));
        const std::string tag = "seed" + std::to_string(seed);
        write_pipeline_artifacts(dir, tag, pr, plots);
        // closed-form check of the bound process: with V = -c the scheme
        // equals the running-min formula for the drift-shifted path
        const DriftSpec d = drift_for(spec, BoundSign::Plus);
        const double c = -d.V(1.0);
        DrivingPath shifted = path;
        for (std::size_t i = 0; i < shifted.xi.size(); ++i) shifted.xi[i] -= c * shifted.t(i);
        auto stats = running_extrema(shifted);
        const auto& Lp = pr.curve.L_plus;
        const std::size_t stride = path.steps() / (pr.run.cells);
        double worst = 0.0;
        auto rep0 = second_diff(setup.u0);
        if (rep0.max_plus > 1e6) {  // l0 = 0 case: closed form applies
            for (std::size_t cidx = 0; cidx < Lp.L.size(); ++cidx) {
                const std::size_t node = cidx * stride;
                const double ref = shifted.xi[node] - stats.running_min[node];
                worst = std::max(worst, std::fabs(Lp.L[cidx] - ref));
            }
            // boundary clipping inside a cell keeps the scheme within
            // O(sqrt(dt)) of the continuous running-min solution
            as.add_le("running_min_formula_" + tag, worst,
                      3.0 * (c + 1.0) * std::sqrt(path.dt()));
        }
        as.add("main_bound_" + tag, pr.check.pass,
               json{{"worst_margin", pr.check.worst_margin}, {"slack", setup.slack(h)}});
        double finite_frac = 0.0;
        for (const auto& s : pr.run.snapshots)
            if (std::max(s.max_plus, s.max_minus) < 1.0 / (10.0 * h)) finite_frac += 1.0;
        finite_frac /= static_cast<double>(pr.run.snapshots.size());
        per_seed.push_back(json{{"seed", seed},
                                {"pass", pr.check.pass},
                                {"worst_margin", pr.check.worst_margin},
                                {"finite_curvature_fraction", finite_frac}});
    }
    return json{{"per_seed", per_seed}};
}

// ------------------------------------------------------------- optimality --
json exp_optimality(const json& cfg, const std::string& dir, bool plots,
                    std::optional<std::uint64_t> seed_override, Assertions& as) {
    const double beta = jnum(cfg, "beta", 1.0);
    const std::size_t n_nodes = jsize(cfg.value("grid", json::object()), "n_nodes", 512);
    const std::size_t cells = jsize(cfg, "cells", 4096);
    const json path_cfg = cfg.value("path", json::object());
    const double tol = jnum(cfg, "tracking_tolerance", 0.05);
    const double h = 2.0 / static_cast<double>(n_nodes);

    const bool ensemble = path_cfg.contains("seeds") && !seed_override;
    if (!ensemble) {
        std::uint64_t seed = seed_override ? *seed_override : 0;
        if (path_cfg.contains("seed")) seed = path_cfg.at("seed").get<std::uint64_t>();
        DrivingPath path = make_path(path_cfg, seed);
        const std::size_t snap = jsize(cfg, "snapshot_every", std::max<std::size_t>(cells / 512, 1));
        OptimalityReport rep = optimality_experiment(path, beta, n_nodes, cells, snap,
                                                     jnum(cfg, "tracking_cutoff", 0.1));
        as.add_le("product_tracking_dev", rep.worst_product_dev, tol);
        if (std::isfinite(rep.tau_plus))
            as.add("blowup_after_tau", rep.blowup_after_tau,
                   json{{"tau_plus", rep.tau_plus}, {"threshold", 1.0 / (10.0 * h)}});
        // table of t, u_xx(t,0), L+, product
        std::ofstream tab(dir + "/tracking.csv");
        tab << "t,curvature0,L_plus,product\n";
        char buf[160];
        for (std::size_t i = 0; i < rep.times.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.15e,%.15e,%.15e,%.15e\n", rep.times[i],
                          rep.curvature0[i], rep.Lplus[i], rep.product[i]);
            tab << buf;
        }
        if (plots) {
            io::Series c0{"u_xx(t,0)", rep.times, rep.curvature0};
            io::Series ib{"1/L+", rep.times, {}};
            for (double L : rep.Lplus) ib.y.push_back(L > 0 ? 1.0 / L : NAN);
            io::write_svg_plot(dir + "/tracking.svg", "curvature tracking", {c0, ib});
        }
        return json{{"tau_plus", num_or_inf(rep.tau_plus)},
                    {"worst_product_dev", rep.worst_product_dev},
                    {"state_gap", rep.state_gap}};
    }

    // ensemble mode: fraction with finite curvature at T, absorption behavior
    const auto seeds = seed_list(path_cfg, seed_override);
    const double sigma = jnum(path_cfg, "sigma", 1.0);
    const double T = jnum(path_cfg, "T", 1.0);
    const std::size_t n_steps = jsize(path_cfg, "n_steps", cells);
    ProblemSpec spec;
    spec.model = QuasilinearModel{PowerLaw{0.25, 2}};
    spec.gradient_radius = beta;
    GridFn u0 = GridFn::sample_periodic(n_nodes, 0.0, 2.0, [&](double x) {
        return beta * (1.0 - std::cos(kPi * x)) / kPi;
    });
    const double thr_blow = 1.0 / (10.0 * h);
    const double thr_back = 1.0 / (5.0 * h);
    std::size_t finite_at_T = 0, blew_count = 0, absorbed = 0;
    json per_seed = json::array();
    for (auto seed : seeds) {
        DrivingPath path = brownian(T, n_steps, sigma, seed);
        SplitOptions opt;
        opt.cells = cells;
        opt.snapshot_every = 1;
        SplitRun run = trotter_kato(spec, path, u0, opt);
        bool blew = false, recovered = false;
        for (const auto& s : run.snapshots) {
            const double curv = std::max(s.max_plus, s.max_minus);
            if (blew && curv < thr_back) recovered = true;
            if (curv > thr_blow) blew = true;
        }
        const auto& fin = run.snapshots.back();
        const bool finite = std::max(fin.max_plus, fin.max_minus) < thr_blow;
        finite_at_T += finite ? 1 : 0;
        blew_count += blew ? 1 : 0;
        if (blew && !recovered) ++absorbed;
        per_seed.push_back(json{{"seed", seed},
                                {"finite_at_T", finite},
                                {"blew", blew},
                                {"recovered", recovered}});
    }
    const double frac_finite = static_cast<double>(finite_at_T) / static_cast<double>(seeds.size());
    const double frac_absorbed =
        blew_count ? static_cast<double>(absorbed) / static_cast<double>(blew_count) : 1.0;
    if (cfg.contains("assert_finite_fraction"))
        as.add("finite_fraction", frac_finite >= cfg.at("assert_finite_fraction").get<double>(),
               json{{"value", frac_finite},
                    {"bound", cfg.at("assert_finite_fraction").get<double>()}});
    if (cfg.contains("assert_absorption_fraction"))
        as.add("absorption_fraction",
               frac_absorbed >= cfg.at("assert_absorption_fraction").get<double>(),
               json{{"value", frac_absorbed},
                    {"bound", cfg.at("assert_absorption_fraction").get<double>()}});
    return json{{"sigma", sigma},
                {"finite_fraction", frac_finite},
                {"blowup_fraction",
                 static_cast<double>(blew_count) / static_cast<double>(seeds.size())},
                {"absorption_fraction", frac_absorbed},
                {"per_seed", per_seed}};
}

// ------------------------------------------------------------ feller_table --
json exp_feller(const json& cfg, const std::string& dir, bool plots, Assertions& as) {
    (void)plots;
    json rows = json::array();
    std::ofstream tab(dir + "/feller_table.csv");
    tab << "drift,sigma,I_plus,I_minus,kind\n";
    if (cfg.contains("rows")) {
        for (const auto& row : cfg.at("rows")) {
            DriftSpec d = drift_from_json(row.at("drift"));
            const double sigma = jnum_req(row, "sigma", "rows");
            BoundaryClass bc = feller_classify(d, sigma);
            json jr{{"drift", d.name},
                    {"sigma", sigma},
                    {"I_plus", num_or_inf(bc.I_plus)},
                    {"I_minus", num_or_inf(bc.I_minus)},
                    {"kind", to_string(bc.kind)}};
            tab << d.name << "," << sigma << ","
                << (std::isinf(bc.I_plus) ? "inf" : std::to_string(bc.I_plus)) << ","
                << (std::isinf(bc.I_minus) ? "inf" : std::to_string(bc.I_minus)) << ","
                << to_string(bc.kind) << "\n";
            if (row.contains("expect_kind"))
                as.add("kind[" + d.name + ",sigma=" + std::to_string(sigma) + "]",
                       row.at("expect_kind").get<std::string>() == to_string(bc.kind),
                       json{{"value", to_string(bc.kind)}, {"expected", row.at("expect_kind")}});
            if (row.contains("expect_I_plus"))
                as.add_in("I_plus[" + d.name + ",sigma=" + std::to_string(sigma) + "]", bc.I_plus,
                          row.at("expect_I_plus").get<double>() - 1e-6,
                          row.at("expect_I_plus").get<double>() + 1e-6);
            if (row.contains("expect_I_minus") && row.at("expect_I_minus").is_number())
                as.add_in("I_minus[" + d.name + ",sigma=" + std::to_string(sigma) + "]",
                          bc.I_minus, row.at("expect_I_minus").get<double>() - 1e-6,
                          row.at("expect_I_minus").get<double>() + 1e-6);
            rows.push_back(jr);
        }
    }
    json scan_result;
    if (cfg.contains("scan")) {
        const json& sc = cfg.at("scan");
        const double c = jnum_req(sc, "c", "scan");
        const double res = jnum(sc, "resolution", 0.1);
        DriftSpec d = drift_from_json(json{{"kind", "inverse"}, {"c", c}});
        const double target = 2.0 * c;
        double flip = -1.0;
        double prev_s2 = 0.0;
        bool prev_exit = true;
        for (double f = 0.5; f <= 1.5 + 1e-12; f += res) {
            const double s2 = f * target;
            BoundaryClass bc = feller_classify(d, std::sqrt(s2));
            const bool exit = bc.kind == BoundaryClass::Kind::Exit;
            if (prev_exit && !exit && flip < 0.0 && f > 0.5) flip = 0.5 * (prev_s2 + s2);
            prev_exit = exit;
            prev_s2 = s2;
        }
        scan_result = json{{"c", c}, {"flip_sigma2", flip}, {"target_sigma2", target}};
        as.add("threshold_scan", flip > 0.0 && std::fabs(flip - target) <= res * target,
               json{{"flip_sigma2", flip}, {"target", target}, {"resolution", res * target}});
    }
    return json{{"rows", rows}, {"scan", scan_result}};
}

// ------------------------------------------------------------- holder_diag --
json exp_holder(const json& cfg, Assertions& as) {
    json rows = json::array();
    for (const auto& row : cfg.value("rows", json::array())) {
        DriftSpec d = drift_from_json(row.at("drift"));
        const double alpha = jnum_req(row, "alpha", "rows");
        HolderVerdict v = holder_boundary_diagnostic(d, alpha);
        rows.push_back(json{{"drift", d.name}, {"alpha", alpha}, {"verdict", to_string(v)}});
        if (row.contains("expect"))
            as.add("verdict[" + d.name + ",alpha=" + std::to_string(alpha) + "]",
                   row.at("expect").get<std::string>() == to_string(v),
                   json{{"value", to_string(v)}, {"expected", row.at("expect")}});
    }
    return json{{"rows", rows}};
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
    static const std::vector<ExperimentInfo> kList = {
        {"burgers", "two-sided curvature bound along Brownian splitting, gradient-flow-free case"},
        {"plaplace", "quasilinear p-Laplace splitting with inverse-drift bound process"},
        {"first_order_fbm", "first-order Hamiltonian flow driven by fractional Brownian paths"},
        {"optimality", "sharpness: measured curvature times bound process stays at 1"},
        {"feller_table", "boundary classification of the bound process at 0 (I+/I- integrals)"},
        {"decay", "gradient-norm decay estimate from the running bound process"},
        {"holder_diag", "boundary behavior under Hoelder-regular driving signals"},
    };
    return kList;
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return j;
}

RunOutcome run_experiment(json config, const std::string& out_dir, bool plots,
                          std::optional<std::uint64_t> seed_override) {
    RunOutcome out;
    try {
        if (!config.contains("experiment"))
            throw ConfigError("missing required field 'experiment'");
        const std::string name = config.at("experiment").get<std::string>();
        io::ensure_dir(out_dir);

        json meta{{"experiment", name},
                  {"version", kVersion},
                  {"rng", GaussianRng::version()},
                  {"kernels", kernels::active_impl_name()},
                  {"transform", "envelope steps: increments > 0 contract the upper curvature "
                                "certificate via min-envelopes; paired mirrored state certifies "
                                "the lower side"},
                  {"config", config}};
        io::write_text(out_dir + "/meta.json", meta.dump(2) + "\n");

        Assertions as;
        json detail;
        if (name == "burgers")
            detail = exp_burgers(config, out_dir, plots, seed_override, as);
        else if (name == "decay")
            detail = exp_decay(config, out_dir, plots, seed_override, as);
        else if (name == "plaplace")
            detail = exp_plaplace(config, out_dir, plots, seed_override, as);
        else if (name == "first_order_fbm")
            detail = exp_first_order_fbm(config, out_dir, plots, seed_override, as);
        else if (name == "optimality")
            detail = exp_optimality(config, out_dir, plots, seed_override, as);
        else if (name == "feller_table")
            detail = exp_feller(config, out_dir, plots, as);
        else if (name == "holder_diag")
            detail = exp_holder(config, as);
        else
            throw ConfigError("unknown experiment '" + name + "'");

        out.report = json{{"experiment", name},
                          {"pass", as.pass},
                          {"assertions", as.rows},
                          {"detail", detail}};
        io::write_text(out_dir + "/report.json", out.report.dump(2) + "\n");
        out.pass = as.pass;
        out.exit_code = as.pass ? 0 : 1;
    } catch (const ConfigError& e) {
        out.report = json{{"error", e.what()}, {"kind", "config"}};
        out.pass = false;
        out.exit_code = 2;
        try {
            io::write_text(out_dir + "/report.json", out.report.dump(2) + "\n");
        } catch (...) {
        }
    } catch (const std::exception& e) {
        out.report = json{{"error", e.what()}, {"kind", "runtime"}};
        out.pass = false;
        out.exit_code = 1;
        try {
            io::write_text(out_dir + "/report.json", out.report.dump(2) + "\n");
        } catch (...) {
        }
    }
    return out;
}

}  // namespace rbyhj
