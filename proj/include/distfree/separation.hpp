#pragma once

#include <map>
#include <string>

#include "distfree/convex_ops.hpp"
#include "distfree/distributions.hpp"
#include "distfree/loss_families.hpp"

namespace distfree {

/// Total variation, half-L1 convention: (1/2) sum |P0(z) - P1(z)|.
double tv(const DiscreteDist& p0, const DiscreteDist& p1);

/// Squared Hellinger distance (1/2) sum (sqrt p0 - sqrt p1)^2, in [0, 1].
double hellinger2(const DiscreteDist& p0, const DiscreteDist& p1);

/// Bound on TV(P0^n, P1^n) from TV(P0, P1) <= gamma: sqrt(1 - (1-gamma)^(2n)).
double tv_product_bound(double gamma, int n);

/// Exact TV between n-fold products by enumeration. Throws CapacityError
/// when the union support exceeds 4 atoms or n exceeds 4.
double tv_product_exact(const DiscreteDist& p0, const DiscreteDist& p1, int n);

/// Optimization distance: the largest delta at which the delta-sublevel
/// intervals of f0 and f1 (relative to their own infima) are disjoint,
/// located by bisection to absolute tolerance `tol`. +inf when they stay
/// disjoint beyond 1e12. Throws DomainError when either function is
/// unbounded below.
ExtReal dopt(const ConvexFn& f0, const ConvexFn& f1, double tol = 1e-9);

/// dopt_lb / 2 * (1 - tv_n).
double minimax_testing_lb(double dopt_lb, double tv_n);

/// L_P = E_P l_Z as an exact finite mixture.
ConvexFn population_loss(const LossFamily& family, const DiscreteDist& p);

/// Two distributions that no estimator can tell apart from n samples but
/// whose population minimizers are far apart in loss.
struct HardInstance {
  std::string constructor;
  std::map<std::string, double> params;
  LossFamily family;
  DiscreteDist p0;
  DiscreteDist p1;
  int n;
  double dopt_lb;
  double tv_upper;
  double minimax_floor;
};

/// Recomputes dopt and TV and throws ValidationError unless
/// dopt >= dopt_lb - 1e-6, TV <= tv_upper + 1e-12 and the stored floor
/// matches its formula.
void verify(const HardInstance& instance);

/// P0 = (1-alpha+delta) d_z0 + (alpha-delta) d_z1 and the mirror P1 over the
/// quantile family on R; dopt_lb = (delta/2)|z1-z0|, tv_upper = 2 delta.
/// n defaults to the sample size with delta = 1/(2n).
HardInstance quantile_pair(double alpha, double z0, double z1, double delta, int n = 0);

/// P0 = d_0, P1 = (1-delta) d_0 + delta d_1 over norate_family(rate);
/// dopt_lb = 1/(2 r(2/delta)), tv_upper = delta. n defaults to round(1/delta).
HardInstance norate_pair(const RateFunction& rate, double delta, int n = 0);

/// P0 = d_{z+}, P1 = (1 - 1/n^2) d_{z+} + (1/n^2) d_{zL} with zL chosen so
/// that the mixed slope at theta0 + delta_gap is <= -n/2. With a = D+
/// l_{z+}(theta0) this certifies dopt >= a n delta_gap / (2a + n).
/// Throws ConstructionError when inf_dminus(theta0 + delta_gap) is finite,
/// when a <= 0, or when no steep enough zL exists.
HardInstance blowup_pair(const LossFamily& family, double theta0, double delta_gap, int n, double z_plus);

}  // namespace distfree
