#include "hqmc/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hqmc {

double lower_bound_sq(const SpaceParams& params, std::uint64_t N) {
  params.validate();
  if (N < 1) throw std::invalid_argument("lower_bound_sq: N must be >= 1");
  double prod = 1.0;
  const double m1 = mu(params.alpha1, params.base);
  const double z2 = zeta(params.alpha2);
  for (int j = 0; j < params.s1; ++j) prod *= 1.0 + params.gamma1[j] * m1;
  for (int j = 0; j < params.s2; ++j) prod *= 1.0 + 2.0 * params.gamma2[j] * z2;
  return -1.0 + prod / static_cast<double>(N);
}

double upper_bound_sq(const SpaceParams& params, int d1, int d2, std::uint64_t N) {
  params.validate();
  if (d1 < 0 || d1 > params.s1 || d2 < 0 || d2 > params.s2)
    throw std::invalid_argument("upper_bound_sq: dimension out of range");
  double prod = 1.0;
  const double m1 = mu(params.alpha1, params.base);
  const double z2 = zeta(params.alpha2);
  for (int j = 0; j < d1; ++j) prod *= 1.0 + 2.0 * params.gamma1[j] * m1;
  for (int j = 0; j < d2; ++j) prod *= 1.0 + 4.0 * params.gamma2[j] * z2;
  return 2.0 * prod / static_cast<double>(N);
}

NminResult nmin_upper(const SpaceParams& params, double epsilon) {
  params.validate();
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("nmin_upper: epsilon must be in (0, 1]");
  NminResult out;
  const double eps2 = epsilon * epsilon;
  for (int m = 1; m <= 62; ++m) {
    std::uint64_t N;
    try {
      N = pow_u64(static_cast<std::uint64_t>(params.base.value()), m);
    } catch (const std::overflow_error&) {
      break;
    }
    const double bound = upper_bound_sq(params, params.s1, params.s2, N);
    if (bound <= eps2) {
      out.n = N;
      out.m = m;
      out.cbc_bound_sq = bound;
      double expsum = 0.0;
      const double m1 = mu(params.alpha1, params.base);
      const double z2 = zeta(params.alpha2);
      for (int j = 0; j < params.s1; ++j) expsum += 2.0 * params.gamma1[j] * m1;
      for (int j = 0; j < params.s2; ++j) expsum += 4.0 * params.gamma2[j] * z2;
      out.exp_form_n = params.base.value() * std::ceil(2.0 * std::exp(expsum) / eps2);
      return out;
    }
  }
  throw std::overflow_error("nmin_upper: required N exceeds 64-bit range");
}

WeightFamily WeightFamily::parse(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("weight family: expected kind:args, got " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  WeightFamily fam;
  if (kind == "const") {
    fam.kind = Kind::Constant;
    fam.c = std::stod(args);
  } else if (kind == "power") {
    const std::size_t comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("weight family: power needs c,a");
    fam.kind = Kind::Power;
    fam.c = std::stod(args.substr(0, comma));
    fam.a = std::stod(args.substr(comma + 1));
  } else if (kind == "explicit") {
    fam.kind = Kind::Explicit;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) fam.values.push_back(std::stod(tok));
    if (fam.values.empty()) throw std::invalid_argument("weight family: empty explicit list");
  } else {
    throw std::invalid_argument("weight family: unknown kind " + kind);
  }
  fam.validate();
  return fam;
}

std::string WeightFamily::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Constant:
      os << "const:" << c;
      break;
    case Kind::Power:
      os << "power:" << c << "," << a;
      break;
    case Kind::Explicit: {
      os << "explicit:";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ",";
        os << values[i];
      }
      break;
    }
  }
  return os.str();
}

std::vector<double> WeightFamily::generate(int count) const {
  validate();
  std::vector<double> out;
  out.reserve(count);
  for (int j = 1; j <= count; ++j) {
    switch (kind) {
      case Kind::Constant:
        out.push_back(c);
        break;
      case Kind::Power:
        out.push_back(c * std::pow(static_cast<double>(j), -a));
        break;
      case Kind::Explicit:
        if (j > static_cast<int>(values.size()))
          throw std::invalid_argument("weight family: explicit list shorter than dimension");
        out.push_back(values[j - 1]);
        break;
    }
  }
  return out;
}

void WeightFamily::validate() const {
  if (kind == Kind::Explicit) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!(values[j] > 0.0)) throw std::invalid_argument("weight family: weights must be positive");
      if (j > 0 && values[j] > values[j - 1])
        throw std::invalid_argument("weight family: weights must be non-increasing");
    }
    return;
  }
  if (!(c > 0.0)) throw std::invalid_argument("weight family: scale must be positive");
  if (kind == Kind::Power && a < 0.0)
    throw std::invalid_argument("weight family: decay exponent must be >= 0 (non-increasing)");
}

namespace {

// Growth class of the partial sums sum_{j<=s} c j^-a.
enum class Growth { Bounded, Log, Polynomial, Linear };

Growth partial_sum_growth(const WeightFamily& fam) {
  const double a = fam.kind == WeightFamily::Kind::Constant ? 0.0 : fam.a;
  if (a > 1.0) return Growth::Bounded;
  if (a == 1.0) return Growth::Log;
  if (a > 0.0) return Growth::Polynomial;  // Theta(s^{1-a})
  return Growth::Linear;
}

const char* growth_name(Growth g) {
  switch (g) {
    case Growth::Bounded: return "bounded";
    case Growth::Log: return "Theta(log s)";
    case Growth::Polynomial: return "Theta(s^(1-a))";
    case Growth::Linear: return "Theta(s)";
  }
  return "?";
}

}  // namespace

TractabilityVerdict classify_tractability(const WeightFamily& fam1, const WeightFamily& fam2) {
  if (fam1.kind == WeightFamily::Kind::Explicit || fam2.kind == WeightFamily::Kind::Explicit)
    throw std::invalid_argument(
        "classify_tractability: explicit finite weight lists determine no limit as the dimension "
        "grows; use a symbolic family");
  fam1.validate();
  fam2.validate();
  const Growth g1 = partial_sum_growth(fam1);
  const Growth g2 = partial_sum_growth(fam2);

  TractabilityVerdict v;
  v.strong_poly = g1 == Growth::Bounded && g2 == Growth::Bounded;
  v.poly = (g1 == Growth::Bounded || g1 == Growth::Log) &&
           (g2 == Growth::Bounded || g2 == Growth::Log);
  v.weak = g1 != Growth::Linear && g2 != Growth::Linear;

  std::ostringstream os;
  os << "partial sums: part1 " << growth_name(g1) << ", part2 " << growth_name(g2) << "; ";
  if (v.strong_poly)
    os << "both bounded => strong polynomial";
  else if (v.poly)
    os << "both O(log s) => polynomial, not strong (some sum unbounded)";
  else if (v.weak)
    os << "both o(s) => weak only (some sum grows faster than log s)";
  else
    os << "a partial sum grows linearly => not weakly tractable";
  v.witness = os.str();
  return v;
}

}  // namespace hqmc
