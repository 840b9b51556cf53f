#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hqmc/algebra.hpp"

namespace hqmc {

/// Exact b-adic rational numerator / b^precision in [0, 1). Digit i
/// (1-based) is the i-th most significant base-b digit of the numerator
/// padded to `precision` digits.
class BaseFraction {
public:
  BaseFraction(PrimeBase base, std::uint64_t numerator, int precision);

  static BaseFraction zero(PrimeBase base, int precision) {
    return BaseFraction(base, 0, precision);
  }
  static BaseFraction from_digits(PrimeBase base, const std::vector<int>& digits);

  PrimeBase base() const { return base_; }
  std::uint64_t numerator() const { return num_; }
  int precision() const { return prec_; }
  bool is_zero() const { return num_ == 0; }

  /// i in [1, precision], most significant first.
  int digit(int i) const;

  /// 1-based index of the first nonzero digit; 0 for the zero fraction.
  int first_nonzero_digit() const;

  /// Same value carried at a higher precision (appends zero digits).
  BaseFraction with_precision(int precision) const;

  double value() const;

  friend bool operator==(const BaseFraction& a, const BaseFraction& b) {
    return a.base_ == b.base_ && a.num_ == b.num_ && a.prec_ == b.prec_;
  }

private:
  PrimeBase base_;
  std::uint64_t num_;
  int prec_;
};

/// Parameters of the hybrid tensor-product space: a Walsh part of dimension
/// s1 (base b, smoothness alpha1, weights gamma1) and a trigonometric part
/// of dimension s2 (alpha2, gamma2).
struct SpaceParams {
  PrimeBase base;
  double alpha1 = 2.0;
  double alpha2 = 2.0;
  std::vector<double> gamma1;
  std::vector<double> gamma2;
  int s1 = 0;
  int s2 = 0;

  /// Throws std::invalid_argument on violated invariants (alphas <= 1,
  /// non-positive or increasing weights, short weight sequences, s1+s2 < 1).
  void validate() const;
};

/// floor(log_b k) by repeated integer division. k >= 1.
int psi_b(std::uint64_t k, PrimeBase base);

/// Exponent t in wal_k(x) = e(t/b). Requires x.precision() >= psi_b(k)+1
/// for k >= 1; k = 0 yields 0.
int wal_exponent(std::uint64_t k, const BaseFraction& x);

/// wal_k(x) as a complex number.
std::complex<double> wal(std::uint64_t k, const BaseFraction& x);

/// Digitwise subtraction modulo b. Operands must share base and precision.
BaseFraction digit_sub(const BaseFraction& x, const BaseFraction& y);

/// mu(alpha) = b^alpha (b-1) / (b^alpha - b), the Walsh kernel sum at 0.
double mu(double alpha, PrimeBase base);

/// omega_alpha(z) = sum_{k>=1} b^{-alpha psi_b(k)} wal_k(z), in closed form.
double walsh_kernel_sum(const BaseFraction& z, double alpha);

/// Truncated-series oracle for walsh_kernel_sum: sums k = 1 .. b^blocks - 1
/// directly. The imaginary part of the accumulation is reported; it must
/// vanish to rounding error.
struct WalshBruteForceResult {
  double value = 0.0;
  double tail_bound = 0.0;
  double imag_part = 0.0;
};
WalshBruteForceResult walsh_kernel_sum_bruteforce(const BaseFraction& z, double alpha, int blocks);

/// tau_alpha(z) = sum_{l != 0} e(lz) / |l|^alpha. Closed Bernoulli form for
/// even integer alpha in {2,...,12}; truncated symmetric cosine series with
/// tail bound below `tolerance` otherwise.
double korobov_kernel_sum(double z, double alpha, double tolerance = 1e-10);

/// Truncated symmetric series 2 sum_{l<=terms} cos(2 pi l z)/l^alpha.
/// Series oracle for the Bernoulli closed form.
double korobov_kernel_sum_series(double z, double alpha, std::uint64_t terms);

/// Riemann zeta for alpha > 1, Euler-Maclaurin corrected direct series.
double zeta(double alpha);

/// Bernoulli polynomial B_n(z) for even n in {2, 4, 6, 8, 10, 12}.
double bernoulli_poly(int n, double z);

}  // namespace hqmc
