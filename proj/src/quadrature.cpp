#include "distfree/quadrature.hpp"

#include <cmath>

namespace distfree {

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, abs_tol, max_depth);
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  // Split once up front so integrands symmetric about the midpoint cannot
  // fool the first error estimate.
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const Panel left{a, m, fa, flm, fm, (m - a) / 6.0 * (fa + 4.0 * flm + fm)};
  const Panel right{m, b, fm, frm, fb, (b - m) / 6.0 * (fm + 4.0 * frm + fb)};
  return refine(f, left, 0.5 * abs_tol, max_depth) + refine(f, right, 0.5 * abs_tol, max_depth);
}

}  // namespace distfree
