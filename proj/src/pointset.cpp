#include "hqmc/pointset.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hqmc {

std::uint64_t HybridRule::n_points() const {
  return pow_u64(static_cast<std::uint64_t>(base.value()), m);
}

void HybridRule::validate() const {
  if (m < 1) throw std::invalid_argument("HybridRule: m must be >= 1");
  if (f.base() != base) throw std::invalid_argument("HybridRule: modulus base mismatch");
  if (!f.degree() || *f.degree() != m)
    throw std::invalid_argument("HybridRule: deg(f) must equal m");
  if (!is_irreducible(f)) throw std::invalid_argument("HybridRule: f is not irreducible");
  for (const PolyGF& gj : g) {
    if (gj.base() != base) throw std::invalid_argument("HybridRule: generator base mismatch");
    if (gj.degree() && *gj.degree() >= m)
      throw std::invalid_argument("HybridRule: generator degree must be < m");
  }
  const std::uint64_t N = n_points();
  for (std::int64_t zj : z) {
    if (zj < 1 || static_cast<std::uint64_t>(zj) >= N)
      throw std::invalid_argument("HybridRule: lattice component out of [1, N)");
    if (zj % base.value() == 0)
      throw std::invalid_argument("HybridRule: lattice component divisible by b");
  }
}

void HybridRule::save(std::ostream& os) const {
  os << "b=" << base.value() << "\n";
  os << "m=" << m << "\n";
  os << "f=" << f.to_string() << "\n";
  os << "g=";
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (j) os << ",";
    os << g[j].to_string();
  }
  os << "\n";
  os << "z=";
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j) os << ",";
    os << z[j];
  }
  os << "\n";
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(',', pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

HybridRule HybridRule::load(std::istream& is) {
  int b = 0, m = 0;
  std::string f_text, g_text, z_text;
  bool have_b = false, have_m = false, have_f = false, have_g = false, have_z = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("rule file: malformed line: " + line);
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "b") {
      b = std::stoi(val);
      have_b = true;
    } else if (key == "m") {
      m = std::stoi(val);
      have_m = true;
    } else if (key == "f") {
      f_text = val;
      have_f = true;
    } else if (key == "g") {
      g_text = val;
      have_g = true;
    } else if (key == "z") {
      z_text = val;
      have_z = true;
    } else {
      throw std::invalid_argument("rule file: unknown key: " + key);
    }
  }
  if (!(have_b && have_m && have_f && have_g && have_z))
    throw std::invalid_argument("rule file: missing keys");
  PrimeBase base(b);
  HybridRule rule{base, m, PolyGF::parse(base, f_text), {}, {}};
  for (const std::string& t : split_commas(g_text)) rule.g.push_back(PolyGF::parse(base, t));
  for (const std::string& t : split_commas(z_text)) rule.z.push_back(std::stoll(t));
  rule.validate();
  return rule;
}

std::vector<BaseFraction> polynomial_lattice_row(const PolyGF& f, const std::vector<PolyGF>& g,
                                                 int m, std::uint64_t h_encoding) {
  const PrimeBase base = f.base();
  const PolyGF h = PolyGF::from_encoding(base, h_encoding);
  std::vector<BaseFraction> row;
  row.reserve(g.size());
  for (const PolyGF& gj : g) {
    const PolyGF r = poly_mul_mod(h, gj, f);
    row.push_back(BaseFraction::from_digits(base, laurent_expand(r, f, m).digits));
  }
  return row;
}

std::vector<std::vector<BaseFraction>> polynomial_lattice_points(const PolyGF& f,
                                                                 const std::vector<PolyGF>& g,
                                                                 int m) {
  const std::uint64_t N = pow_u64(static_cast<std::uint64_t>(f.base().value()), m);
  std::vector<std::vector<BaseFraction>> rows;
  rows.reserve(N);
  for (std::uint64_t h = 0; h < N; ++h) rows.push_back(polynomial_lattice_row(f, g, m, h));
  return rows;
}

std::vector<LatticeCoord> lattice_row(const std::vector<std::int64_t>& z, std::uint64_t N,
                                      std::uint64_t n) {
  std::vector<LatticeCoord> row;
  row.reserve(z.size());
  for (std::int64_t zj : z) {
    const std::int64_t num = static_cast<std::int64_t>(
        n % N * (static_cast<std::uint64_t>(zj) % N) % N);
    row.push_back(LatticeCoord{num, static_cast<std::int64_t>(N)});
  }
  return row;
}

std::vector<std::vector<LatticeCoord>> lattice_points(const std::vector<std::int64_t>& z,
                                                      std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("lattice_points: N must be >= 1");
  std::vector<std::vector<LatticeCoord>> rows;
  rows.reserve(N);
  for (std::uint64_t n = 0; n < N; ++n) rows.push_back(lattice_row(z, N, n));
  return rows;
}

HybridPointSet assemble(const HybridRule& rule) {
  rule.validate();
  HybridPointSet ps;
  ps.walsh_part = polynomial_lattice_points(rule.f, rule.g, rule.m);
  ps.trig_part = lattice_points(rule.z, rule.n_points());
  return ps;
}

}  // namespace hqmc
