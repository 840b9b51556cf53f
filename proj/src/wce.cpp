#include "hqmc/wce.hpp"

#include <stdexcept>

#include "hqmc/diffsum.hpp"

namespace hqmc {

double kernel_eval(const HybridPoint& p, const HybridPoint& q, const SpaceParams& params,
                   double korobov_tol) {
  params.validate();
  if (static_cast<int>(p.x.size()) != params.s1 || static_cast<int>(q.x.size()) != params.s1 ||
      static_cast<int>(p.y.size()) != params.s2 || static_cast<int>(q.y.size()) != params.s2)
    throw std::invalid_argument("kernel_eval: point dimensions do not match params");
  double prod = 1.0;
  for (int j = 0; j < params.s1; ++j)
    prod *= 1.0 + params.gamma1[j] * walsh_kernel_sum(digit_sub(p.x[j], q.x[j]), params.alpha1);
  for (int j = 0; j < params.s2; ++j) {
    const LatticeCoord &a = p.y[j], &c = q.y[j];
    if (a.den != c.den) throw std::invalid_argument("kernel_eval: lattice denominators differ");
    const std::int64_t num = ((a.num - c.num) % a.den + a.den) % a.den;
    prod *= 1.0 + params.gamma2[j] *
                      korobov_kernel_sum(static_cast<double>(num) / static_cast<double>(a.den),
                                         params.alpha2, korobov_tol);
  }
  return prod;
}

double wce_sq_naive(const HybridPointSet& points, const SpaceParams& params, double korobov_tol) {
  params.validate();
  const std::uint64_t N = points.n_points();
  if (N == 0) throw std::invalid_argument("wce_sq_naive: empty point set");
  if (points.trig_part.size() != N)
    throw std::invalid_argument("wce_sq_naive: part row counts differ");
  CompensatedSum acc;
  HybridPoint p, q;
  for (std::uint64_t n = 0; n < N; ++n) {
    p.x = points.walsh_part[n];
    p.y = points.trig_part[n];
    for (std::uint64_t np = 0; np < N; ++np) {
      q.x = points.walsh_part[np];
      q.y = points.trig_part[np];
      acc.add(kernel_eval(p, q, params, korobov_tol));
    }
  }
  return -1.0 + acc.get() / (static_cast<double>(N) * static_cast<double>(N));
}

ClassProducts class_products(const HybridRule& rule, const SpaceParams& params,
                             double korobov_tol) {
  const std::uint64_t N = rule.n_points();
  const int d1 = rule.d1(), d2 = rule.d2();
  if (d1 > static_cast<int>(params.gamma1.size()) || d2 > static_cast<int>(params.gamma2.size()))
    throw std::invalid_argument("class_products: rule dimensions exceed weight sequences");

  ClassProducts cp;
  cp.walsh.assign(N, 1.0);
  cp.trig.assign(N, 1.0);

  // Walsh coordinate j of class d is nu_m(h_d g_j / f); omega depends only
  // on the leading-zero count, evaluated from the exact numerator.
  for (int j = 0; j < d1; ++j) {
    const double gamma = params.gamma1[j];
    for (std::uint64_t d = 0; d < N; ++d) {
      const PolyGF r = poly_mul_mod(PolyGF::from_encoding(rule.base, d), rule.g[j], rule.f);
      const BaseFraction x = BaseFraction::from_digits(rule.base, laurent_expand(r, rule.f, rule.m).digits);
      cp.walsh[d] *= 1.0 + gamma * walsh_kernel_sum(x, params.alpha1);
    }
  }
  for (int j = 0; j < d2; ++j) {
    const double gamma = params.gamma2[j];
    const std::uint64_t zj = static_cast<std::uint64_t>(rule.z[j]);
    for (std::uint64_t r = 0; r < N; ++r) {
      const double y = static_cast<double>(r * zj % N) / static_cast<double>(N);
      cp.trig[r] *= 1.0 + gamma * korobov_kernel_sum(y, params.alpha2, korobov_tol);
    }
  }
  return cp;
}

double wce_sq_group(const HybridRule& rule, const SpaceParams& params, double korobov_tol) {
  params.validate();
  rule.validate();
  const std::uint64_t N = rule.n_points();
  const ClassProducts cp = class_products(rule, params, korobov_tol);
  const std::vector<double> C = walsh_class_cross_sum(cp.trig, rule.base, rule.m);
  CompensatedSum acc;
  for (std::uint64_t d = 0; d < N; ++d) acc.add(cp.walsh[d] * C[d]);
  return -1.0 + acc.get() / (static_cast<double>(N) * static_cast<double>(N));
}

}  // namespace hqmc
