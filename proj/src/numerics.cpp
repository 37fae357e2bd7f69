#include "galcurve/numerics.hpp"

#include <cmath>

namespace galcurve {

namespace {

struct Simpson {
  const std::function<double(double)>& f;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Simpson{f}.recurse(a, b, fa, fm, fb, whole, tol, 50);
}

double involute_arc_length(const InvolutePair& pair, double s0, double s1, double tol) {
  return adaptive_simpson([&](double s) { return involute_frame(pair, s).dsstar_ds; }, s0, s1,
                          tol);
}

}  // namespace galcurve
