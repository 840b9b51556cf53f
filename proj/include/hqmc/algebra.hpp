#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqmc {

/// Prime modulus for the coefficient field F_b. Construction rejects
/// non-prime values.
class PrimeBase {
public:
  explicit PrimeBase(int b);
  int value() const { return b_; }

  friend bool operator==(PrimeBase a, PrimeBase b) { return a.b_ == b.b_; }
  friend bool operator!=(PrimeBase a, PrimeBase b) { return a.b_ != b.b_; }

private:
  int b_;
};

/// Polynomial over F_b. Coefficients are stored little-endian: coeffs()[i]
/// is the coefficient of x^i. The zero polynomial has an empty coefficient
/// vector and no degree.
class PolyGF {
public:
  PolyGF(PrimeBase base, std::vector<int> coeffs);

  static PolyGF zero(PrimeBase base);
  static PolyGF one(PrimeBase base);
  static PolyGF from_encoding(PrimeBase base, std::uint64_t enc);

  /// Parses the digit-string format: most significant coefficient first,
  /// e.g. "111" is x^2+x+1 in base 2. "0" is the zero polynomial.
  static PolyGF parse(PrimeBase base, std::string_view text);
  std::string to_string() const;

  PrimeBase base() const { return base_; }
  const std::vector<int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, or nullopt for the zero polynomial.
  std::optional<int> degree() const;
  bool is_monic() const;
  int coeff(int i) const;

  /// Base-b integer encoding sum_i coeff_i * b^i. Canonical candidate
  /// ordering and tie-breaking use this value.
  std::uint64_t encoding() const;

  friend bool operator==(const PolyGF& a, const PolyGF& b) {
    return a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
  }

private:
  PrimeBase base_;
  std::vector<int> coeffs_;
};

PolyGF poly_add(const PolyGF& a, const PolyGF& c);
PolyGF poly_sub(const PolyGF& a, const PolyGF& c);
PolyGF poly_mul(const PolyGF& a, const PolyGF& c);

/// Quotient and remainder of a / f. f must be nonzero.
std::pair<PolyGF, PolyGF> poly_divmod(const PolyGF& a, const PolyGF& f);

/// (a * c) mod f, with deg(result) < deg(f).
PolyGF poly_mul_mod(const PolyGF& a, const PolyGF& c, const PolyGF& f);

/// Exhaustive trial division by all monic polynomials of degree <= deg(f)/2.
/// Requires deg(f) >= 1.
bool is_irreducible(const PolyGF& f);

/// The monic irreducible polynomial of degree m over F_b with the smallest
/// base-b integer encoding. Deterministic.
PolyGF find_irreducible(PrimeBase base, int m);

/// First m digits t_1..t_m of the formal Laurent expansion
/// r(x)/f(x) = sum_{l>=1} t_l x^{-l}. Each digit lies in [0, b).
struct LaurentDigits {
  std::vector<int> digits;
  int precision() const { return static_cast<int>(digits.size()); }
};

/// Synthetic long division of r/f in F_b((x^-1)). Requires deg(r) < deg(f).
LaurentDigits laurent_expand(const PolyGF& r, const PolyGF& f, int m);

/// phi(b^m) = b^m - b^(m-1) for prime b, m >= 1.
std::uint64_t euler_totient_prime_power(PrimeBase base, int m);

/// b^e as a 64-bit integer; throws on overflow.
std::uint64_t pow_u64(std::uint64_t b, int e);

}  // namespace hqmc
