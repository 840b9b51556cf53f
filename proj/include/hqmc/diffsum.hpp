#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hqmc/algebra.hpp"

namespace hqmc {

/// Encoding of the digitwise base-b difference of two m-digit encodings.
/// For b = 2 this is XOR.
std::uint64_t digitwise_sub_enc(std::uint64_t n, std::uint64_t np, int b, int m);

/// Encoding of the digitwise base-b sum.
std::uint64_t digitwise_add_enc(std::uint64_t n, std::uint64_t np, int b, int m);

/// The hybrid point set carries two incompatible index-group structures:
/// walsh rows differ digitwise (row n minus row n' is row n (-) n'), trig
/// rows differ mod N (row (n - n') mod N). A pair (n, n') therefore lands
/// in walsh class d = n (-) n' and trig class r = (n - n') mod N, and the
/// pair sum over any function F(d) G(r) collapses to single sums against
/// the cross-class tallies computed here.
///
/// walsh_class_cross_sum: C[d] = sum_{n'} G[((n' (+) d) - n') mod N].
/// Then sum_{n,n'} F[n (-) n'] G[(n-n') mod N] = sum_d F[d] C[d].
std::vector<double> walsh_class_cross_sum(const std::vector<double>& trig_class_values,
                                          PrimeBase base, int m);

/// trig_class_cross_sum: H[r] = sum_{n'} F[((n' + r) mod N) (-) n'], the
/// same tally resolved by trig class: sum_{n,n'} F G = sum_r H[r] G[r].
std::vector<double> trig_class_cross_sum(const std::vector<double>& walsh_class_values,
                                         PrimeBase base, int m);

/// Deterministic compensated (Neumaier) accumulator.
class CompensatedSum {
public:
  void add(double t) {
    const double s = sum_ + t;
    if (std::abs(sum_) >= std::abs(t))
      comp_ += (sum_ - s) + t;
    else
      comp_ += (t - s) + sum_;
    sum_ = s;
  }
  double get() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace hqmc
