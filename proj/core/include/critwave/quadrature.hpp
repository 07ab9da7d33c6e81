#pragma once

#include <functional>

namespace critwave {

// Adaptive Simpson quadrature of f over [a, b] to the given relative
// tolerance (absolute floor abs_floor guards integrals near zero). Throws
// std::runtime_error when the recursion cannot reach the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_floor = 1e-300);

}  // namespace critwave
