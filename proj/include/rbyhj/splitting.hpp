#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbyhj/bounds.hpp"
#include "rbyhj/grid.hpp"
#include "rbyhj/hopf_lax.hpp"
#include "rbyhj/paths.hpp"
#include "rbyhj/pde_step.hpp"

namespace rbyhj {

// Per partition cell the driver applies the deterministic step first, then
// the envelope step with the cell's path increment (jumps afterwards, at
// their nodes).
//
// In Arcs mode the driver evolves two states: the primary one with
// upper-calibrated envelopes (its max_plus obeys the discrete certificate
// chain exactly) and a mirrored twin (negated data, negated path, mirrored
// operator) whose max_plus certifies the primary's max_minus. The states
// agree up to the scheme error; their gap is reported. Nodes mode evolves a
// single state with node-restricted envelopes, which are exactly monotone
// and non-expansive but carry no sharp curvature certificate.
struct SplitOptions {
    std::size_t cells = 0;            // 0 => one cell per path step
    std::size_t snapshot_every = 0;   // in cells; 0 => final state only
    Reconstruction rec = Reconstruction::Arcs;
    bool paired_states = true;        // Arcs mode: mirrored twin for the minus side
    double dt_hint = 0.0;
    std::size_t seam_skip = 2;        // line-mode seam exclusion for measurements
    bool keep_snapshots = false;      // store the grid functions, not just measurements
};

struct SplitSnapshot {
    double t = 0.0;
    std::size_t cell = 0;
    double max_plus = 0.0;       // from the primary state
    double max_minus = 0.0;      // from the twin (Arcs+paired) or the primary
    double lipschitz = 0.0;
    double oscillation = 0.0;
    double curvature_origin = 0.0;  // central second difference at node 0
    double state_gap = 0.0;         // ||primary + twin||_inf (paired mode)
};

struct SplitRun {
    GridFn state;                     // primary state at the final time
    std::optional<GridFn> twin;       // mirrored state (negated solution)
    std::vector<SplitSnapshot> snapshots;
    std::vector<GridFn> stored_states;
    std::vector<double> increments;
    std::size_t guarded_steps = 0;    // envelope steps skipped by the delta guard
    std::size_t cells = 0;
    double T = 0.0;
    std::string transform_mode;
};

SplitRun trotter_kato(const ProblemSpec& spec, const DrivingPath& xi, const GridFn& u0,
                      const SplitOptions& opt);

struct BoundCheckRow {
    double t;
    double max_plus, curve_plus;   // curve = 1/L
    double max_minus, curve_minus;
    double margin;                 // max one-sided excess over curve+slack (<=0 passes)
};

struct BoundCheckReport {
    bool pass = true;
    double worst_margin = -HUGE_VAL;
    double worst_time = 0.0;
    std::vector<BoundCheckRow> rows;
};

// max_plus(t) <= 1/L+(t) + slack and max_minus(t) <= 1/L-(t) + slack at every
// snapshot; infinite curve entries are vacuous.
BoundCheckReport verify_main_bound(const SplitRun& run, const BoundCurveResult& curve,
                                   double slack);

double default_slack(double h, std::size_t cells);  // 10 h + 2/sqrt(n)

struct OptimalityReport {
    std::vector<double> times;
    std::vector<double> curvature0;    // measured u_xx(t, 0)
    std::vector<double> Lplus;
    std::vector<double> product;       // u_xx(t,0) * L+(t)
    double tau_plus = HUGE_VAL;        // first time L+ hits 0
    double worst_product_dev = 0.0;    // max |product-1| while L+ > cutoff
    bool blowup_after_tau = true;      // measured curvature > 1/(10h) post tau+
    double state_gap = 0.0;
    SplitRun run;
    BoundCurveResult curve;
};

// The sharp-equality experiment: u0 = beta (1 - cos pi x)/pi on the 2-periodic
// grid, quasilinear coefficient a(p) = p^2/4, bound drift V = -1/(2 l).
OptimalityReport optimality_experiment(const DrivingPath& xi, double beta, std::size_t n_nodes,
                                       std::size_t cells, std::size_t snapshot_every = 1,
                                       double tracking_cutoff = 0.1);

// Discrete membership in the even 2-periodic class with 0 <= u_x <= 1 and
// nonincreasing u_xx on (0,1); slack covers the finite differences.
bool check_u_class(const GridFn& u, double slack, std::string* why = nullptr);

}  // namespace rbyhj
