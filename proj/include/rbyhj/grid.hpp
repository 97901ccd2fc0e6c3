#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rbyhj {

enum class Boundary { Periodic, Line };

// Real-valued function sampled on a uniform 1D grid. Periodic mode wraps with
// period = n*h; line mode extends by constants beyond the ends.
struct GridFn {
    std::vector<double> v;
    double h = 1.0;
    double origin = 0.0;
    Boundary boundary = Boundary::Periodic;
    double period = 0.0;

    std::size_t size() const { return v.size(); }
    double x(std::size_t i) const { return origin + static_cast<double>(i) * h; }
    bool periodic() const { return boundary == Boundary::Periodic; }

    static GridFn make_periodic(std::size_t n, double origin, double period);
    static GridFn make_line(std::size_t n, double origin, double h);

    template <class F>
    static GridFn sample_periodic(std::size_t n, double origin, double period, F&& f) {
        GridFn g = make_periodic(n, origin, period);
        for (std::size_t i = 0; i < n; ++i) g.v[i] = f(g.x(i));
        return g;
    }
    template <class F>
    static GridFn sample_line(std::size_t n, double origin, double h, F&& f) {
        GridFn g = make_line(n, origin, h);
        for (std::size_t i = 0; i < n; ++i) g.v[i] = f(g.x(i));
        return g;
    }

    void validate() const;  // throws std::invalid_argument on violated invariants
};

struct SecondDiffReport {
    double max_plus = 0.0;
    double max_minus = 0.0;
    std::size_t argmax_plus = 0;
    std::size_t argmax_minus = 0;
};

// Central second differences; skip_edges nodes are excluded at each end in
// line mode (extension artifacts), ignored for periodic grids.
SecondDiffReport second_diff(const GridFn& u, std::size_t skip_edges = 0);
double lipschitz_norm(const GridFn& u);
double oscillation(const GridFn& u);

void write_csv(const GridFn& u, const std::string& path);
GridFn read_csv(const std::string& path, Boundary boundary);

}  // namespace rbyhj
