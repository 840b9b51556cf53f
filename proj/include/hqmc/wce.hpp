#pragma once

#include <cstdint>
#include <vector>

#include "hqmc/pointset.hpp"

namespace hqmc {

/// Squared worst-case error together with the theoretical envelopes.
struct ErrorReport {
  double e2 = 0.0;  // clamped to 0 in reports when a tiny negative rounds up
  std::uint64_t n_points = 0;
  int d1 = 0;
  int d2 = 0;
  double lower_bound_sq = 0.0;
  double upper_bound_sq = 0.0;
};

struct HybridPoint {
  std::vector<BaseFraction> x;
  std::vector<LatticeCoord> y;
};

/// Kernel value K(p, q) via the one-dimensional closed forms:
/// prod_j (1 + gamma1_j omega_a1(x_j (-) x'_j)) *
/// prod_j (1 + gamma2_j tau_a2(y_j - y'_j)).
double kernel_eval(const HybridPoint& p, const HybridPoint& q, const SpaceParams& params,
                   double korobov_tol = 1e-10);

/// Generic double-sum error formula, -1 + (1/N^2) sum_{n,n'} K. The
/// permanent oracle; O(N^2 (s1+s2)) time, meant for N <= 256.
double wce_sq_naive(const HybridPointSet& points, const SpaceParams& params,
                    double korobov_tol = 1e-10);

/// The same squared worst-case error computed by collapsing the double sum
/// over the per-part difference classes of the rule's point set (walsh
/// classes are digitwise, trig classes are mod N; see diffsum.hpp). Agrees
/// with wce_sq_naive to rounding error.
double wce_sq_group(const HybridRule& rule, const SpaceParams& params,
                    double korobov_tol = 1e-10);

/// Per-class factor vectors of a rule: walsh_class[d] is the product over
/// the walsh coordinates of row d of (1 + gamma omega), trig_class[r]
/// likewise with tau. Exposed for the CBC scan and for tests.
struct ClassProducts {
  std::vector<double> walsh;  // indexed by walsh class d = 0..N-1
  std::vector<double> trig;   // indexed by trig class r = 0..N-1
};
ClassProducts class_products(const HybridRule& rule, const SpaceParams& params,
                             double korobov_tol = 1e-10);

}  // namespace hqmc
