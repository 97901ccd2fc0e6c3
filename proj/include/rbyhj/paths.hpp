#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace rbyhj {

// Driving signal xi on a uniform time grid with xi(0) = 0. Jumps are stored
// separately as (node index, jump size); the increment over the cell ending
// at a jump node carries the jump in addition to the continuous part.
struct DrivingPath {
    double T = 1.0;
    std::vector<double> xi;  // size steps+1
    std::vector<std::pair<std::size_t, double>> jumps;

    std::size_t steps() const { return xi.empty() ? 0 : xi.size() - 1; }
    double dt() const { return T / static_cast<double>(steps()); }
    double t(std::size_t i) const { return T * static_cast<double>(i) / static_cast<double>(steps()); }
    double continuous_increment(std::size_t cell) const { return xi[cell + 1] - xi[cell]; }
    double jump_at(std::size_t node) const;
    void validate() const;
};

struct PathStats {
    std::vector<double> running_max;
    std::vector<double> running_min;
};

// Deterministic generator: mt19937_64 driven standard normals via the
// Marsaglia polar method ("mt19937_64+polar/v1" in output metadata).
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}
    double next();
    static const char* version() { return "mt19937_64+polar/v1"; }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

DrivingPath brownian(double T, std::size_t n_steps, double sigma, std::uint64_t seed);

// Exact fractional Brownian motion sampler: Cholesky factor of the fBm
// covariance, computed once and reused across seeds.
class FbmSampler {
  public:
    FbmSampler(double T, std::size_t n_steps, double hurst);
    DrivingPath sample(std::uint64_t seed) const;
    double hurst() const { return H_; }

  private:
    double T_;
    std::size_t n_;
    double H_;
    std::vector<double> chol_;  // lower triangular, row-major packed n x n
};

DrivingPath fractional_brownian(double T, std::size_t n_steps, double hurst, std::uint64_t seed);

struct LinearKind { double slope = 1.0; };
struct SineKind { double amplitude = 1.0; double omega = 1.0; };
struct ZeroKind {};

DrivingPath deterministic_path(ZeroKind, double T, std::size_t n_steps);
DrivingPath deterministic_path(LinearKind k, double T, std::size_t n_steps);
DrivingPath deterministic_path(SineKind k, double T, std::size_t n_steps);

PathStats running_extrema(const DrivingPath& p);

DrivingPath negate(const DrivingPath& p);

// Fictitious-time flattening: one extra cell per jump over which xi moves by
// the jump size; the result is jump-free on a uniform grid with the same dt.
struct FlattenResult {
    DrivingPath flat;
    std::vector<std::size_t> inserted_cells;  // cell indices in the flat path
};
FlattenResult flatten_jumps(const DrivingPath& p);

void write_path_csv(const DrivingPath& p, const std::string& path,
                    const std::string& jump_sidecar = "");
}  // namespace rbyhj
