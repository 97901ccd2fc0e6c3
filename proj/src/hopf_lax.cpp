#include "rbyhj/hopf_lax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rbyhj/kernels.hpp"

namespace rbyhj {

namespace {

enum class ArcRule { Upper, Lower };

struct Extended {
    std::vector<double> vals;  // tiled copies (periodic) or the values themselves
    std::size_t base = 0;      // ext index of output node 0
};

Extended extend(const std::vector<double>& v, bool periodic, double h, double delta,
                double reach) {
    Extended e;
    const std::size_t n = v.size();
    if (!periodic) {
        e.vals = v;
        e.base = 0;
        return e;
    }
    const double period = h * static_cast<double>(n);
    const std::size_t copies =
        static_cast<std::size_t>(std::ceil((std::sqrt(std::max(2.0 * delta * reach, 0.0)) + 2.0 * h) / period));
    const std::size_t reps = 2 * copies + 1;
    e.vals.resize(reps * n);
    for (std::size_t r = 0; r < reps; ++r)
        std::copy(v.begin(), v.end(), e.vals.begin() + static_cast<std::ptrdiff_t>(r * n));
    e.base = copies * n;
    return e;
}

// Upper envelope of the parabolas p_j(i) = f[j] - c (i-j)^2 over integer i;
// winners per output position, evaluated with the same formula a brute-force
// scan would use.
void node_envelope(const std::vector<double>& f, double h, double inv2delta, std::size_t base,
                   std::size_t n_out, std::vector<double>& out) {
    const std::size_t m = f.size();
    const double c = h * h * inv2delta;  // penalty between adjacent indices
    std::vector<std::size_t> hull(m);
    std::vector<double> zb(m + 1);
    std::size_t k = 0;
    hull[0] = 0;
    zb[0] = -HUGE_VAL;
    zb[1] = HUGE_VAL;
    auto intersect = [&](std::size_t q, std::size_t p) {
        // upper envelope of downward parabolas f_j - c (x - j)^2
        const double fq = c * static_cast<double>(q) * static_cast<double>(q) - f[q];
        const double fp = c * static_cast<double>(p) * static_cast<double>(p) - f[p];
        return (fq - fp) / (2.0 * c * (static_cast<double>(q) - static_cast<double>(p)));
    };
    for (std::size_t q = 1; q < m; ++q) {
        double s = intersect(q, hull[k]);
        while (s <= zb[k]) {
            --k;
            s = intersect(q, hull[k]);
        }
        ++k;
        hull[k] = q;
        zb[k] = s;
        zb[k + 1] = HUGE_VAL;
    }
    auto value = [&](std::size_t j, double xi) {
        const double d = xi - static_cast<double>(j) * h;
        return f[j] - d * d * inv2delta;
    };
    std::size_t ki = 0;
    for (std::size_t i = 0; i < n_out; ++i) {
        const double pos = static_cast<double>(base + i);
        while (zb[ki + 1] < pos) ++ki;
        const double xi = pos * h;
        double best = value(hull[ki], xi);
        if (ki > 0) best = std::max(best, value(hull[ki - 1], xi));
        if (ki < k) best = std::max(best, value(hull[ki + 1], xi));
        out[i] = best;
    }
}

std::vector<double> cell_curvatures(const std::vector<double>& v, bool periodic, double h,
                                    ArcRule rule) {
    const std::size_t n = v.size();
    std::vector<double> kappa(n);
    kernels::second_differences(v.data(), kappa.data(), n, 1.0 / (h * h), periodic);
    const std::size_t cells = periodic ? n : n - 1;
    std::vector<double> s(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        const double a = kappa[k];
        const double b = kappa[(k + 1) % n];
        s[k] = (rule == ArcRule::Upper) ? std::max(a, b) : std::min(a, b);
    }
    return s;
}

// max-envelope over the arc reconstruction: adds, for every cell whose
// interior tangency window covers an output node, the closed-form tangency
// value to the node-envelope result.
void arc_candidates(const std::vector<double>& ext, const std::vector<double>& s_cells,
                    std::size_t n_vals, bool periodic, double h, double delta,
                    std::size_t base, std::size_t n_out, std::vector<double>& out) {
    const std::size_t m = ext.size();
    const double inv2delta = 1.0 / (2.0 * delta);
    const std::size_t cells = m - 1;
    for (std::size_t kcell = 0; kcell < cells; ++kcell) {
        const double s = s_cells[periodic ? (kcell % n_vals) : kcell];
        if (!(delta * s < 1.0)) continue;  // objective convex in y: nodes dominate
        const double ya = static_cast<double>(kcell) * h;
        const double yb = ya + h;
        const double sl = (ext[kcell + 1] - ext[kcell]) / h;
        const double half = s * h * 0.5;
        const double xa = ya - delta * (sl - half);
        const double xb = yb - delta * (sl + half);
        // output nodes strictly inside (xa, xb), in ext index units
        double lo = xa / h, hi = xb / h;
        std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(std::floor(lo)) + 1;
        std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(std::ceil(hi)) - 1;
        i0 = std::max(i0, static_cast<std::ptrdiff_t>(base));
        i1 = std::min(i1, static_cast<std::ptrdiff_t>(base + n_out - 1));
        if (i0 > i1) continue;
        const double mid = ya + 0.5 * h;
        const double denom = 1.0 - delta * s;
        for (std::ptrdiff_t p = i0; p <= i1; ++p) {
            const double x = static_cast<double>(p) * h;
            if (!(x > xa && x < xb)) continue;
            const double yc = (x + delta * sl - delta * s * mid) / denom;
            const double dy = x - yc;
            const double val = ext[kcell] + sl * (yc - ya) + 0.5 * s * (yc - ya) * (yc - yb) -
                               dy * dy * inv2delta;
            double& g = out[static_cast<std::size_t>(p) - base];
            if (val > g) g = val;
        }
    }
}

std::vector<double> core_sup(const std::vector<double>& v, bool periodic, double h, double delta,
                             Reconstruction rec, ArcRule rule) {
    const std::size_t n = v.size();
    double lo, hi;
    kernels::min_max(v.data(), n, lo, hi);
    double reach = hi - lo;
    std::vector<double> s_cells;
    if (rec == Reconstruction::Arcs) {
        s_cells = cell_curvatures(v, periodic, h, rule);
        double smax = 0.0;
        for (double s : s_cells) smax = std::max(smax, std::fabs(s));
        reach += smax * h * h * 0.125;  // arc bulge above the chords
    }
    Extended e = extend(v, periodic, h, delta, reach);
    std::vector<double> out(n);
    node_envelope(e.vals, h, 1.0 / (2.0 * delta), e.base, n, out);
    if (rec == Reconstruction::Arcs)
        arc_candidates(e.vals, s_cells, n, periodic, h, delta, e.base, n, out);
    return out;
}

GridFn with_values(const GridFn& u, std::vector<double> vals) {
    GridFn g = u;
    g.v = std::move(vals);
    return g;
}

std::vector<double> negated(const std::vector<double>& v) {
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
    return w;
}

}  // namespace

bool below_delta_guard(double delta, double h) { return std::fabs(delta) < 10.0 * h * h; }

GridFn sup_convolution(const GridFn& u, double delta, Reconstruction rec) {
    u.validate();
    if (!(delta > 0.0)) throw std::invalid_argument("sup_convolution: delta must be positive");
    if (below_delta_guard(delta, u.h)) return u;
    return with_values(u, core_sup(u.v, u.periodic(), u.h, delta, rec, ArcRule::Upper));
}

GridFn inf_convolution(const GridFn& u, double delta, Reconstruction rec) {
    u.validate();
    if (!(delta > 0.0)) throw std::invalid_argument("inf_convolution: delta must be positive");
    if (below_delta_guard(delta, u.h)) return u;
    std::vector<double> r = core_sup(negated(u.v), u.periodic(), u.h, delta, rec, ArcRule::Upper);
    return with_values(u, negated(r));
}

GridFn apply_signed(const GridFn& u, double delta, Reconstruction rec) {
    if (delta == 0.0) return u;
    if (below_delta_guard(delta, u.h)) return u;
    return delta > 0.0 ? sup_convolution(u, delta, rec) : inf_convolution(u, -delta, rec);
}

GridFn one_sided_step(const GridFn& u, double increment, Reconstruction rec) {
    if (increment == 0.0 || below_delta_guard(increment, u.h)) return u;
    if (increment < 0.0)
        return with_values(u, core_sup(u.v, u.periodic(), u.h, -increment, rec, ArcRule::Upper));
    // min-envelope of the upper reconstruction == -max-envelope of the
    // negated values with lower-rule arcs
    std::vector<double> r =
        core_sup(negated(u.v), u.periodic(), u.h, increment, rec, ArcRule::Lower);
    return with_values(u, negated(r));
}

}  // namespace rbyhj
