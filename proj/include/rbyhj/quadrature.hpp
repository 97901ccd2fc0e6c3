#pragma once

#include <functional>

namespace rbyhj::quad {

double gauss_legendre_15(const std::function<double(double)>& f, double a, double b);

// Recursive Simpson with absolute/relative termination.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol, int max_depth = 48);

}  // namespace rbyhj::quad
