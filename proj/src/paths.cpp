#include "rbyhj/paths.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rbyhj {

double DrivingPath::jump_at(std::size_t node) const {
    double s = 0.0;
    for (const auto& [idx, d] : jumps)
        if (idx == node) s += d;
    return s;
}

void DrivingPath::validate() const {
    if (xi.size() < 2) throw std::invalid_argument("DrivingPath: need at least 2 nodes");
    if (xi[0] != 0.0) throw std::invalid_argument("DrivingPath: xi(0) must be 0");
    if (!(T > 0.0)) throw std::invalid_argument("DrivingPath: T must be positive");
    for (double y : xi)
        if (!std::isfinite(y)) throw std::invalid_argument("DrivingPath: values must be finite");
    for (const auto& [idx, d] : jumps) {
        if (idx == 0 || idx >= xi.size())
            throw std::invalid_argument("DrivingPath: jump index out of range");
        if (!std::isfinite(d)) throw std::invalid_argument("DrivingPath: jump size not finite");
    }
}

double GaussianRng::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double v1, v2, s;
    do {
        const double u1 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        v1 = 2.0 * u1 - 1.0;
        v2 = 2.0 * u2 - 1.0;
        s = v1 * v1 + v2 * v2;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v2 * f;
    have_spare_ = true;
    return v1 * f;
}

DrivingPath brownian(double T, std::size_t n_steps, double sigma, std::uint64_t seed) {
    if (n_steps < 2) throw std::invalid_argument("brownian: need n_steps >= 2");
    if (!(T > 0.0)) throw std::invalid_argument("brownian: T must be positive");
    GaussianRng g(seed);
    DrivingPath p;
    p.T = T;
    p.xi.resize(n_steps + 1);
    p.xi[0] = 0.0;
    const double sdt = sigma * std::sqrt(T / static_cast<double>(n_steps));
    for (std::size_t i = 0; i < n_steps; ++i) p.xi[i + 1] = p.xi[i] + sdt * g.next();
    return p;
}

FbmSampler::FbmSampler(double T, std::size_t n_steps, double hurst)
    : T_(T), n_(n_steps), H_(hurst) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("FbmSampler: Hurst parameter must lie in (0,1)");
    if (n_steps < 2 || n_steps > 4096)
        throw std::invalid_argument("FbmSampler: n_steps must lie in [2, 4096]");
    const double dt = T / static_cast<double>(n_steps);
    const double twoH = 2.0 * hurst;
    std::vector<double> C(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const double ti = dt * static_cast<double>(i + 1);
        for (std::size_t j = 0; j <= i; ++j) {
            const double tj = dt * static_cast<double>(j + 1);
            const double c = 0.5 * (std::pow(ti, twoH) + std::pow(tj, twoH) -
                                    std::pow(std::fabs(ti - tj), twoH));
            C[i * n_ + j] = c;
            C[j * n_ + i] = c;
        }
    }
    // in-place Cholesky, lower triangle
    chol_.assign(n_ * n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        double d = C[j * n_ + j];
        for (std::size_t k = 0; k < j; ++k) d -= chol_[j * n_ + k] * chol_[j * n_ + k];
        if (!(d > 0.0))
            throw std::runtime_error(
                "FbmSampler: covariance not numerically positive definite (H=" +
                std::to_string(hurst) + ", n=" + std::to_string(n_steps) + ")");
        const double dj = std::sqrt(d);
        chol_[j * n_ + j] = dj;
        for (std::size_t i = j + 1; i < n_; ++i) {
            double s = C[i * n_ + j];
            for (std::size_t k = 0; k < j; ++k) s -= chol_[i * n_ + k] * chol_[j * n_ + k];
            chol_[i * n_ + j] = s / dj;
        }
    }
}

DrivingPath FbmSampler::sample(std::uint64_t seed) const {
    GaussianRng g(seed);
    std::vector<double> z(n_);
    for (double& zi : z) zi = g.next();
    DrivingPath p;
    p.T = T_;
    p.xi.assign(n_ + 1, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n_ + k] * z[k];
        p.xi[i + 1] = s;
    }
    return p;
}

DrivingPath fractional_brownian(double T, std::size_t n_steps, double hurst,
                                std::uint64_t seed) {
    return FbmSampler(T, n_steps, hurst).sample(seed);
}

DrivingPath deterministic_path(ZeroKind, double T, std::size_t n_steps) {
    DrivingPath p;
    p.T = T;
    p.xi.assign(n_steps + 1, 0.0);
    return p;
}

DrivingPath deterministic_path(LinearKind k, double T, std::size_t n_steps) {
    DrivingPath p;
    p.T = T;
    p.xi.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i)
        p.xi[i] = k.slope * T * static_cast<double>(i) / static_cast<double>(n_steps);
    return p;
}

DrivingPath deterministic_path(SineKind k, double T, std::size_t n_steps) {
    DrivingPath p;
    p.T = T;
    p.xi.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = T * static_cast<double>(i) / static_cast<double>(n_steps);
        p.xi[i] = k.amplitude * std::sin(k.omega * t);
    }
    return p;
}

PathStats running_extrema(const DrivingPath& p) {
    p.validate();
    PathStats s;
    s.running_max.resize(p.xi.size());
    s.running_min.resize(p.xi.size());
    double mx = p.xi[0], mn = p.xi[0];
    for (std::size_t i = 0; i < p.xi.size(); ++i) {
        mx = std::max(mx, p.xi[i]);
        mn = std::min(mn, p.xi[i]);
        s.running_max[i] = mx;
        s.running_min[i] = mn;
    }
    return s;
}

DrivingPath negate(const DrivingPath& p) {
    DrivingPath q = p;
    for (double& y : q.xi) y = -y;
    for (auto& [idx, d] : q.jumps) {
        (void)idx;
        d = -d;
    }
    return q;
}

FlattenResult flatten_jumps(const DrivingPath& p) {
    p.validate();
    std::vector<std::pair<std::size_t, double>> js = p.jumps;
    std::sort(js.begin(), js.end());
    FlattenResult r;
    r.flat.T = p.T + p.dt() * static_cast<double>(js.size());
    r.flat.xi.reserve(p.xi.size() + js.size());
    r.flat.xi.push_back(p.xi[0]);
    std::size_t jpos = 0;
    double carry = 0.0;
    for (std::size_t node = 1; node < p.xi.size(); ++node) {
        // continuous part of the cell ending at `node`
        double pre_jump = p.xi[node] + carry;
        // jumps at `node` get their own fictitious cell(s)
        double here = pre_jump;
        r.flat.xi.push_back(here);
        while (jpos < js.size() && js[jpos].first == node) {
            here += js[jpos].second;
            carry += js[jpos].second;
            r.inserted_cells.push_back(r.flat.xi.size() - 1);
            r.flat.xi.push_back(here);
            ++jpos;
        }
    }
    return r;
}

void write_path_csv(const DrivingPath& p, const std::string& path,
                    const std::string& jump_sidecar) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_path_csv: cannot open " + path);
    out << "t,xi\n";
    char buf[80];
    for (std::size_t i = 0; i < p.xi.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.15e,%.15e\n", p.t(i), p.xi[i]);
        out << buf;
    }
    if (!jump_sidecar.empty()) {
        std::ofstream js(jump_sidecar);
        if (!js) throw std::runtime_error("write_path_csv: cannot open " + jump_sidecar);
        js << "t_index,delta\n";
        for (const auto& [idx, d] : p.jumps) {
            std::snprintf(buf, sizeof buf, "%zu,%.15e\n", idx, d);
            js << buf;
        }
    }
}

}  // namespace rbyhj
