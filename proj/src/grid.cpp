#include "rbyhj/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rbyhj/kernels.hpp"

namespace rbyhj {

GridFn GridFn::make_periodic(std::size_t n, double origin, double period) {
    if (n < 3) throw std::invalid_argument("GridFn: node count must be >= 3");
    if (!(period > 0.0)) throw std::invalid_argument("GridFn: period must be positive");
    GridFn g;
    g.v.assign(n, 0.0);
    g.h = period / static_cast<double>(n);
    g.origin = origin;
    g.boundary = Boundary::Periodic;
    g.period = period;
    return g;
}

GridFn GridFn::make_line(std::size_t n, double origin, double h) {
    if (n < 3) throw std::invalid_argument("GridFn: node count must be >= 3");
    if (!(h > 0.0)) throw std::invalid_argument("GridFn: spacing must be positive");
    GridFn g;
    g.v.assign(n, 0.0);
    g.h = h;
    g.origin = origin;
    g.boundary = Boundary::Line;
    g.period = 0.0;
    return g;
}

void GridFn::validate() const {
    if (v.size() < 3) throw std::invalid_argument("GridFn: node count must be >= 3");
    if (!(h > 0.0)) throw std::invalid_argument("GridFn: spacing must be positive");
    if (periodic()) {
        double n_h = static_cast<double>(v.size()) * h;
        if (std::fabs(n_h - period) > 4.0 * 1e-16 * std::fabs(period) * v.size())
            throw std::invalid_argument("GridFn: node count * h must equal the period");
    }
    for (double y : v)
        if (!std::isfinite(y)) throw std::invalid_argument("GridFn: values must be finite");
}

SecondDiffReport second_diff(const GridFn& u, std::size_t skip_edges) {
    u.validate();
    const std::size_t n = u.size();
    const double inv_h2 = 1.0 / (u.h * u.h);
    std::size_t lo = 0, hi = n;
    if (!u.periodic() && skip_edges > 0 && 2 * skip_edges + 3 <= n) {
        lo = skip_edges;
        hi = n - skip_edges;
    }
    std::vector<double> d2(n);
    kernels::second_differences(u.v.data(), d2.data(), n, inv_h2, u.periodic());
    SecondDiffReport r;
    r.max_plus = -HUGE_VAL;
    r.max_minus = -HUGE_VAL;
    for (std::size_t i = lo; i < hi; ++i) {
        if (d2[i] > r.max_plus) {
            r.max_plus = d2[i];
            r.argmax_plus = i;
        }
        if (-d2[i] > r.max_minus) {
            r.max_minus = -d2[i];
            r.argmax_minus = i;
        }
    }
    return r;
}

double lipschitz_norm(const GridFn& u) {
    u.validate();
    return kernels::max_abs_adjacent_diff(u.v.data(), u.size(), u.periodic()) / u.h;
}

double oscillation(const GridFn& u) {
    u.validate();
    double lo, hi;
    kernels::min_max(u.v.data(), u.size(), lo, hi);
    return hi - lo;
}

void write_csv(const GridFn& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << "x,value\n";
    char buf[80];
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.15e,%.15e\n", u.x(i), u.v[i]);
        out << buf;
    }
}

GridFn read_csv(const std::string& path, Boundary boundary) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        xs.push_back(std::stod(a));
        vs.push_back(std::stod(b));
    }
    if (xs.size() < 3) throw std::runtime_error("read_csv: fewer than 3 nodes in " + path);
    const double h = xs[1] - xs[0];
    GridFn g;
    if (boundary == Boundary::Periodic) {
        g = GridFn::make_periodic(vs.size(), xs[0], h * static_cast<double>(vs.size()));
    } else {
        g = GridFn::make_line(vs.size(), xs[0], h);
    }
    g.v = std::move(vs);
    g.validate();
    return g;
}

}  // namespace rbyhj
