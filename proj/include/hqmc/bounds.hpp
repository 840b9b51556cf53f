#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hqmc/kernels.hpp"

namespace hqmc {

/// Any-point-set lower bound on the squared worst-case error:
/// -1 + (1/N) prod_j (1 + gamma1_j mu(alpha1)) prod_j (1 + 2 gamma2_j zeta(alpha2)).
double lower_bound_sq(const SpaceParams& params, std::uint64_t N);

/// CBC upper bound on the squared worst-case error after (d1, d2) components:
/// (2/N) prod_{j<=d1} (1 + 2 gamma1_j mu(alpha1)) prod_{j<=d2} (1 + 4 gamma2_j zeta(alpha2)).
double upper_bound_sq(const SpaceParams& params, int d1, int d2, std::uint64_t N);

struct NminResult {
  std::uint64_t n = 0;        // b^m, the guaranteed information-complexity bound
  int m = 0;                  // chosen power
  double cbc_bound_sq = 0.0;  // the CBC bound at that N
  /// Looser companion bound b * ceil(C eps^-2) with C = 2 exp(sum 2 gamma mu)
  /// exp(sum 4 gamma zeta); reported for comparison only.
  double exp_form_n = 0.0;
};

/// Smallest N = b^m whose CBC bound is <= epsilon^2.
NminResult nmin_upper(const SpaceParams& params, double epsilon);

/// Symbolic per-coordinate weight family.
struct WeightFamily {
  enum class Kind { Explicit, Power, Constant };
  Kind kind = Kind::Constant;
  double c = 1.0;  // scale; power family is gamma_j = c * j^-a
  double a = 0.0;  // decay exponent (Power only)
  std::vector<double> values;  // Explicit only

  /// Grammar: "explicit:v1,v2,..." | "power:c,a" | "const:c".
  static WeightFamily parse(const std::string& spec);
  std::string to_string() const;

  /// First `count` weights of the family.
  std::vector<double> generate(int count) const;

  /// Validation: positive weights, non-increasing (a >= 0 for Power).
  void validate() const;
};

struct TractabilityVerdict {
  bool strong_poly = false;
  bool poly = false;
  bool weak = false;
  std::string witness;
};

/// Evaluates the three partial-sum growth conditions for symbolic weight
/// families (bounded sums / sums over log s / sums over s). Explicit finite
/// lists admit no asymptotics and are refused with std::invalid_argument.
TractabilityVerdict classify_tractability(const WeightFamily& fam1, const WeightFamily& fam2);

}  // namespace hqmc
