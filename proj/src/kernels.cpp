#include "hqmc/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqmc {

BaseFraction::BaseFraction(PrimeBase base, std::uint64_t numerator, int precision)
    : base_(base), num_(numerator), prec_(precision) {
  if (precision < 0) throw std::invalid_argument("BaseFraction: negative precision");
  if (numerator >= pow_u64(static_cast<std::uint64_t>(base.value()), precision))
    throw std::invalid_argument("BaseFraction: numerator out of range for precision");
}

BaseFraction BaseFraction::from_digits(PrimeBase base, const std::vector<int>& digits) {
  const std::uint64_t b = static_cast<std::uint64_t>(base.value());
  std::uint64_t num = 0;
  for (int d : digits) {
    if (d < 0 || d >= base.value()) throw std::invalid_argument("BaseFraction: digit out of range");
    num = num * b + static_cast<std::uint64_t>(d);
  }
  return BaseFraction(base, num, static_cast<int>(digits.size()));
}

int BaseFraction::digit(int i) const {
  if (i < 1 || i > prec_) throw std::out_of_range("BaseFraction::digit: index out of range");
  const std::uint64_t b = static_cast<std::uint64_t>(base_.value());
  return static_cast<int>(num_ / pow_u64(b, prec_ - i) % b);
}

int BaseFraction::first_nonzero_digit() const {
  if (num_ == 0) return 0;
  const std::uint64_t b = static_cast<std::uint64_t>(base_.value());
  // num_ in [b^(prec-i0), b^(prec-i0+1)) exactly when digit i0 is the first
  // nonzero one.
  std::uint64_t p = 1;
  int msd = 0;  // position of the most significant digit, counted from 1
  while (p <= num_ / b) {
    p *= b;
    ++msd;
  }
  return prec_ - msd;
}

BaseFraction BaseFraction::with_precision(int precision) const {
  if (precision < prec_)
    throw std::invalid_argument("BaseFraction::with_precision: cannot reduce precision");
  const std::uint64_t scale = pow_u64(static_cast<std::uint64_t>(base_.value()), precision - prec_);
  return BaseFraction(base_, num_ * scale, precision);
}

double BaseFraction::value() const {
  return static_cast<double>(num_) /
         static_cast<double>(pow_u64(static_cast<std::uint64_t>(base_.value()), prec_));
}

void SpaceParams::validate() const {
  if (s1 < 0 || s2 < 0 || s1 + s2 < 1)
    throw std::invalid_argument("SpaceParams: need s1, s2 >= 0 and s1 + s2 >= 1");
  if (alpha1 <= 1.0 || alpha2 <= 1.0)
    throw std::invalid_argument("SpaceParams: alpha1 and alpha2 must exceed 1");
  if (static_cast<int>(gamma1.size()) < s1 || static_cast<int>(gamma2.size()) < s2)
    throw std::invalid_argument("SpaceParams: weight sequence shorter than dimension");
  auto check = [](const std::vector<double>& g, const char* name) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!(g[j] > 0.0)) throw std::invalid_argument(std::string("SpaceParams: ") + name + " must be positive");
      if (j > 0 && g[j] > g[j - 1])
        throw std::invalid_argument(std::string("SpaceParams: ") + name + " must be non-increasing");
    }
  };
  check(gamma1, "gamma1");
  check(gamma2, "gamma2");
}

int psi_b(std::uint64_t k, PrimeBase base) {
  if (k == 0) throw std::invalid_argument("psi_b: undefined for k = 0");
  const std::uint64_t b = static_cast<std::uint64_t>(base.value());
  int a = 0;
  while (k >= b) {
    k /= b;
    ++a;
  }
  return a;
}

int wal_exponent(std::uint64_t k, const BaseFraction& x) {
  if (k == 0) return 0;
  const int b = x.base().value();
  const int a = psi_b(k, x.base());
  if (x.precision() < a + 1)
    throw std::invalid_argument("wal_exponent: fraction precision too small for k");
  int t = 0;
  std::uint64_t kk = k;
  for (int i = 1; i <= a + 1; ++i) {
    const int kappa = static_cast<int>(kk % static_cast<std::uint64_t>(b));
    kk /= static_cast<std::uint64_t>(b);
    t = (t + x.digit(i) * kappa) % b;
  }
  return t;
}

std::complex<double> wal(std::uint64_t k, const BaseFraction& x) {
  const double ang = 2.0 * std::numbers::pi * wal_exponent(k, x) / x.base().value();
  return {std::cos(ang), std::sin(ang)};
}

BaseFraction digit_sub(const BaseFraction& x, const BaseFraction& y) {
  if (x.base() != y.base() || x.precision() != y.precision())
    throw std::invalid_argument("digit_sub: base or precision mismatch");
  const std::uint64_t b = static_cast<std::uint64_t>(x.base().value());
  std::uint64_t xr = x.numerator(), yr = y.numerator(), out = 0, place = 1;
  for (int i = 0; i < x.precision(); ++i) {
    const std::uint64_t d = (xr % b + b - yr % b) % b;
    out += d * place;
    place *= b;
    xr /= b;
    yr /= b;
  }
  return BaseFraction(x.base(), out, x.precision());
}

double mu(double alpha, PrimeBase base) {
  if (alpha <= 1.0) throw std::invalid_argument("mu: alpha must exceed 1");
  const double ba = std::pow(static_cast<double>(base.value()), alpha);
  return ba * (base.value() - 1) / (ba - base.value());
}

double walsh_kernel_sum(const BaseFraction& z, double alpha) {
  if (alpha <= 1.0) throw std::invalid_argument("walsh_kernel_sum: alpha must exceed 1");
  const int b = z.base().value();
  if (z.is_zero()) return mu(alpha, z.base());
  const int i0 = z.first_nonzero_digit();
  // Blockwise evaluation: digit blocks a <= i0-2 contribute (b-1) b^{(1-alpha)a},
  // block i0-1 contributes -b^{(1-alpha)(i0-1)}, all later blocks vanish.
  const double q = std::pow(static_cast<double>(b), 1.0 - alpha);
  double geo = 0.0, term = 1.0;
  for (int a = 0; a <= i0 - 2; ++a) {
    geo += term;
    term *= q;
  }
  return (b - 1) * geo - std::pow(q, static_cast<double>(i0 - 1));
}

WalshBruteForceResult walsh_kernel_sum_bruteforce(const BaseFraction& z, double alpha, int blocks) {
  if (blocks < 1) throw std::invalid_argument("walsh_kernel_sum_bruteforce: blocks must be >= 1");
  const int b = z.base().value();
  const BaseFraction zz = z.precision() >= blocks ? z : z.with_precision(blocks);
  std::vector<std::complex<double>> roots(b);
  for (int t = 0; t < b; ++t) {
    const double ang = 2.0 * std::numbers::pi * t / b;
    roots[t] = {std::cos(ang), std::sin(ang)};
  }
  // Neumaier-compensated accumulation: the oracle must not lose accuracy to
  // rounding over up to b^blocks terms when the tail bound is tiny.
  double re = 0.0, rec = 0.0, im = 0.0, imc = 0.0;
  const auto add = [](double& s, double& c, double t) {
    const double n = s + t;
    if (std::abs(s) >= std::abs(t))
      c += (s - n) + t;
    else
      c += (t - n) + s;
    s = n;
  };
  const std::uint64_t kmax = pow_u64(static_cast<std::uint64_t>(b), blocks);
  double weight = 1.0;
  const double q = std::pow(static_cast<double>(b), -alpha);
  std::uint64_t next_block = static_cast<std::uint64_t>(b);
  for (std::uint64_t k = 1; k < kmax; ++k) {
    if (k == next_block) {
      weight *= q;
      next_block *= static_cast<std::uint64_t>(b);
    }
    const std::complex<double> w = roots[wal_exponent(k, zz)];
    add(re, rec, weight * w.real());
    add(im, imc, weight * w.imag());
  }
  WalshBruteForceResult out;
  out.value = re + rec;
  out.imag_part = im + imc;
  // tail: (b-1) sum_{a >= blocks} b^{(1-alpha)a}
  const double r = std::pow(static_cast<double>(b), 1.0 - alpha);
  out.tail_bound = (b - 1) * std::pow(r, static_cast<double>(blocks)) / (1.0 - r);
  return out;
}

double bernoulli_poly(int n, double z) {
  // Coefficients of B_n, highest power first.
  static const double b2[] = {1, -1, 1.0 / 6};
  static const double b4[] = {1, -2, 1, 0, -1.0 / 30};
  static const double b6[] = {1, -3, 2.5, 0, -0.5, 0, 1.0 / 42};
  static const double b8[] = {1, -4, 14.0 / 3, 0, -7.0 / 3, 0, 2.0 / 3, 0, -1.0 / 30};
  static const double b10[] = {1, -5, 7.5, 0, -7, 0, 5, 0, -1.5, 0, 5.0 / 66};
  static const double b12[] = {1,       -6, 11, 0, -33.0 / 2,  0, 22, 0,
                               -33.0 / 5, 0,  1,  0, -691.0 / 2730};
  const double* c = nullptr;
  switch (n) {
    case 2: c = b2; break;
    case 4: c = b4; break;
    case 6: c = b6; break;
    case 8: c = b8; break;
    case 10: c = b10; break;
    case 12: c = b12; break;
    default: throw std::invalid_argument("bernoulli_poly: order must be even, in [2, 12]");
  }
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) acc = acc * z + c[i];
  return acc;
}

namespace {

double reduce_unit(double z) {
  z -= std::floor(z);
  if (z >= 1.0) z = 0.0;  // guards against -1e-18 flooring to -1
  return z;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double korobov_kernel_sum(double z, double alpha, double tolerance) {
  if (alpha <= 1.0) throw std::invalid_argument("korobov_kernel_sum: alpha must exceed 1");
  z = reduce_unit(z);
  const int n = static_cast<int>(std::lround(alpha));
  if (std::abs(alpha - n) < 1e-14 && n % 2 == 0 && n >= 2 && n <= 12) {
    const double sign = (n / 2 % 2 == 0) ? -1.0 : 1.0;  // (-1)^{alpha/2+1}
    return sign * std::pow(2.0 * std::numbers::pi, static_cast<double>(n)) *
           bernoulli_poly(n, z) / factorial(n);
  }
  // tail of the symmetric series: 2 sum_{l>L} l^-alpha < 2 L^{1-alpha}/(alpha-1)
  const double need = std::pow(2.0 / (tolerance * (alpha - 1.0)), 1.0 / (alpha - 1.0));
  if (!(need < 2.0e7))
    throw std::domain_error("korobov_kernel_sum: tolerance unattainable by direct series for this alpha");
  return korobov_kernel_sum_series(z, alpha, static_cast<std::uint64_t>(need) + 1);
}

double korobov_kernel_sum_series(double z, double alpha, std::uint64_t terms) {
  z = reduce_unit(z);
  const double w = 2.0 * std::numbers::pi * z;
  // Neumaier-compensated accumulation; the terms alternate in sign and the
  // sum is much smaller than the partial magnitudes for small alpha.
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t l = 1; l <= terms; ++l) {
    const double t = std::cos(w * static_cast<double>(l)) / std::pow(static_cast<double>(l), alpha);
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return 2.0 * (sum + comp);
}

double zeta(double alpha) {
  if (alpha <= 1.0) throw std::invalid_argument("zeta: alpha must exceed 1");
  const int N = 10000;
  double sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -alpha);
  const double x = static_cast<double>(N);
  const double s = alpha;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  tail += s * std::pow(x, -s - 1.0) / 12.0;
  tail -= s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0;
  tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(x, -s - 5.0) / 30240.0;
  return sum + tail;
}

}  // namespace hqmc
