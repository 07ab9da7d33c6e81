#include "critwave/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace critwave {

namespace {

struct Quad {
  const std::function<double(double)>& f;
  double tol_scale;  // tolerance in absolute terms for the whole interval
  int max_depth;

  double simpson(double a, double fa, double fm, double b, double fb) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double fa, double b, double fb, double whole,
                 double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double fm_l = f(0.5 * (a + m));
    const double fm_r = f(0.5 * (m + b));
    const double fm = f(m);
    const double left = simpson(a, fa, fm_l, m, fm);
    const double right = simpson(m, fm, fm_r, b, fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth >= max_depth)
      throw std::runtime_error("integrate: adaptive refinement exhausted");
    return recurse(a, fa, m, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, fm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor) {
  if (!(b >= a)) throw std::invalid_argument("integrate: b must be >= a");
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double rough = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(std::abs(rough) * rel_tol, abs_floor);
  Quad q{f, tol, 60};
  return q.recurse(a, fa, b, fb, rough, tol, 0);
}

}  // namespace critwave
