#include "hqmc/algebra.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hqmc {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int mod_pow(int a, int e, int p) {
  long long r = 1, base = ((a % p) + p) % p;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

// Multiplicative inverse in F_p, p prime.
int mod_inv(int a, int p) { return mod_pow(a, p - 2, p); }

}  // namespace

PrimeBase::PrimeBase(int b) : b_(b) {
  if (!is_prime(b)) throw std::invalid_argument("PrimeBase: " + std::to_string(b) + " is not prime");
}

PolyGF::PolyGF(PrimeBase base, std::vector<int> coeffs) : base_(base), coeffs_(std::move(coeffs)) {
  const int b = base_.value();
  for (int& c : coeffs_) {
    c %= b;
    if (c < 0) c += b;
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyGF PolyGF::zero(PrimeBase base) { return PolyGF(base, {}); }
PolyGF PolyGF::one(PrimeBase base) { return PolyGF(base, {1}); }

PolyGF PolyGF::from_encoding(PrimeBase base, std::uint64_t enc) {
  const std::uint64_t b = static_cast<std::uint64_t>(base.value());
  std::vector<int> coeffs;
  while (enc > 0) {
    coeffs.push_back(static_cast<int>(enc % b));
    enc /= b;
  }
  return PolyGF(base, std::move(coeffs));
}

PolyGF PolyGF::parse(PrimeBase base, std::string_view text) {
  if (text.empty()) throw std::invalid_argument("PolyGF::parse: empty string");
  if (base.value() > 10)
    throw std::invalid_argument("PolyGF::parse: digit-string format supports b < 10 only");
  std::vector<int> coeffs(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("PolyGF::parse: invalid digit character");
    const int d = ch - '0';
    if (d >= base.value())
      throw std::invalid_argument("PolyGF::parse: digit out of range for base");
    // text is most-significant first
    coeffs[text.size() - 1 - i] = d;
  }
  return PolyGF(base, std::move(coeffs));
}

std::string PolyGF::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    out.push_back(static_cast<char>('0' + *it));
  return out;
}

std::optional<int> PolyGF::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

bool PolyGF::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

int PolyGF::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

std::uint64_t PolyGF::encoding() const {
  const std::uint64_t b = static_cast<std::uint64_t>(base_.value());
  std::uint64_t enc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) enc = enc * b + *it;
  return enc;
}

namespace {

void require_same_base(const PolyGF& a, const PolyGF& c) {
  if (a.base() != c.base()) throw std::invalid_argument("polynomial bases differ");
}

}  // namespace

PolyGF poly_add(const PolyGF& a, const PolyGF& c) {
  require_same_base(a, c);
  std::vector<int> out(std::max(a.coeffs().size(), c.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) + c.coeff(static_cast<int>(i));
  return PolyGF(a.base(), std::move(out));
}

PolyGF poly_sub(const PolyGF& a, const PolyGF& c) {
  require_same_base(a, c);
  std::vector<int> out(std::max(a.coeffs().size(), c.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) - c.coeff(static_cast<int>(i));
  return PolyGF(a.base(), std::move(out));
}

PolyGF poly_mul(const PolyGF& a, const PolyGF& c) {
  require_same_base(a, c);
  if (a.is_zero() || c.is_zero()) return PolyGF::zero(a.base());
  std::vector<int> out(a.coeffs().size() + c.coeffs().size() - 1, 0);
  const int b = a.base().value();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < c.coeffs().size(); ++j)
      out[i + j] = (out[i + j] + a.coeffs()[i] * c.coeffs()[j]) % b;
  return PolyGF(a.base(), std::move(out));
}

std::pair<PolyGF, PolyGF> poly_divmod(const PolyGF& a, const PolyGF& f) {
  require_same_base(a, f);
  if (f.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  const int b = a.base().value();
  const int df = *f.degree();
  std::vector<int> rem(a.coeffs());
  if (static_cast<int>(rem.size()) - 1 < df)
    return {PolyGF::zero(a.base()), PolyGF(a.base(), std::move(rem))};
  std::vector<int> quot(rem.size() - df, 0);
  const int lc_inv = mod_inv(f.coeffs().back(), b);
  for (int d = static_cast<int>(rem.size()) - 1; d >= df; --d) {
    const int q = rem[d] * lc_inv % b;
    if (q == 0) continue;
    quot[d - df] = q;
    for (int i = 0; i <= df; ++i) {
      int& r = rem[d - df + i];
      r = (r - q * f.coeff(i)) % b;
      if (r < 0) r += b;
    }
  }
  return {PolyGF(a.base(), std::move(quot)), PolyGF(a.base(), std::move(rem))};
}

PolyGF poly_mul_mod(const PolyGF& a, const PolyGF& c, const PolyGF& f) {
  require_same_base(a, f);
  if (f.is_zero()) throw std::invalid_argument("poly_mul_mod: zero modulus");
  return poly_divmod(poly_mul(a, c), f).second;
}

bool is_irreducible(const PolyGF& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 1) throw std::invalid_argument("is_irreducible: constant or zero input");
  if (*deg == 1) return true;
  const std::uint64_t b = static_cast<std::uint64_t>(f.base().value());
  for (int d = 1; 2 * d <= *deg; ++d) {
    // Monic divisor candidates of degree d: encodings b^d .. 2*b^d - 1.
    const std::uint64_t lo = pow_u64(b, d);
    for (std::uint64_t enc = lo; enc < 2 * lo; ++enc) {
      const PolyGF cand = PolyGF::from_encoding(f.base(), enc);
      if (poly_divmod(f, cand).second.is_zero()) return false;
    }
  }
  return true;
}

PolyGF find_irreducible(PrimeBase base, int m) {
  if (m < 1) throw std::invalid_argument("find_irreducible: m must be >= 1");
  const std::uint64_t b = static_cast<std::uint64_t>(base.value());
  const std::uint64_t lo = pow_u64(b, m);
  for (std::uint64_t enc = lo; enc < 2 * lo; ++enc) {
    const PolyGF cand = PolyGF::from_encoding(base, enc);
    if (is_irreducible(cand)) return cand;
  }
  throw std::logic_error("find_irreducible: unreachable");  // one always exists
}

LaurentDigits laurent_expand(const PolyGF& r, const PolyGF& f, int m) {
  if (r.base() != f.base()) throw std::invalid_argument("laurent_expand: bases differ");
  const auto df = f.degree();
  if (!df || *df < 1) throw std::invalid_argument("laurent_expand: f must have degree >= 1");
  if (m < 1) throw std::invalid_argument("laurent_expand: m must be >= 1");
  if (!r.is_zero() && *r.degree() >= *df)
    throw std::invalid_argument("laurent_expand: deg(r) must be < deg(f)");

  const int b = r.base().value();
  const int d = *df;
  const int lc_inv = mod_inv(f.coeffs().back(), b);

  // Invariant: cur/f equals the still-unexpanded tail, deg(cur) < d.
  // Each round: t_l = lc(cur at x^{d-1}) / lc(f); cur <- x*cur - t_l*f.
  std::vector<int> cur(d, 0);
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) cur[i] = r.coeffs()[i];

  LaurentDigits out;
  out.digits.resize(m);
  for (int l = 0; l < m; ++l) {
    const int t = cur[d - 1] * lc_inv % b;
    out.digits[l] = t;
    // cur = x*cur - t*f, truncated back to degree < d
    for (int i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (t != 0) {
      for (int i = 0; i < d; ++i) {
        cur[i] = (cur[i] - t * f.coeff(i)) % b;
        if (cur[i] < 0) cur[i] += b;
      }
    }
  }
  return out;
}

std::uint64_t euler_totient_prime_power(PrimeBase base, int m) {
  if (m < 1) throw std::invalid_argument("euler_totient_prime_power: m must be >= 1");
  const std::uint64_t b = static_cast<std::uint64_t>(base.value());
  return pow_u64(b, m) - pow_u64(b, m - 1);
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  if (e < 0) throw std::invalid_argument("pow_u64: negative exponent");
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / b)
      throw std::overflow_error("pow_u64: overflow");
    r *= b;
  }
  return r;
}

}  // namespace hqmc
