#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hqmc/kernels.hpp"

namespace hqmc {

/// Exact lattice coordinate num/den with num already reduced mod den.
struct LatticeCoord {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const LatticeCoord& a, const LatticeCoord& b) {
    return a.num == b.num && a.den == b.den;
  }
};

/// A constructed hybrid rule: irreducible modulus f of degree m over F_b,
/// polynomial generating vector g (Walsh part) and integer generating
/// vector z (trigonometric part). N = b^m points.
struct HybridRule {
  PrimeBase base = PrimeBase(2);
  int m = 1;
  PolyGF f = PolyGF::zero(PrimeBase(2));
  std::vector<PolyGF> g;
  std::vector<std::int64_t> z;

  std::uint64_t n_points() const;
  int d1() const { return static_cast<int>(g.size()); }
  int d2() const { return static_cast<int>(z.size()); }

  /// Checks irreducibility of f, degree bounds on g, and that every z_j is
  /// in [1, N) and not divisible by b. Throws std::invalid_argument.
  void validate() const;

  /// Line-oriented plain-text format: b=, m=, f=, g=, z=. Round-trips
  /// byte-exactly.
  void save(std::ostream& os) const;
  static HybridRule load(std::istream& is);
};

struct HybridPointSet {
  std::vector<std::vector<BaseFraction>> walsh_part;  // N x d1
  std::vector<std::vector<LatticeCoord>> trig_part;   // N x d2
  std::uint64_t n_points() const { return walsh_part.size(); }
};

/// Row h (given by its integer encoding) of the polynomial lattice with
/// modulus f and generating vector g: coordinate j is nu_m(h g_j / f).
std::vector<BaseFraction> polynomial_lattice_row(const PolyGF& f, const std::vector<PolyGF>& g,
                                                 int m, std::uint64_t h_encoding);

/// All b^m rows, enumerated by the integer encoding of h in G_{b,m}.
std::vector<std::vector<BaseFraction>> polynomial_lattice_points(const PolyGF& f,
                                                                 const std::vector<PolyGF>& g,
                                                                 int m);

/// Row n of the rank-1 lattice: coordinate j is (n z_j mod N) / N.
std::vector<LatticeCoord> lattice_row(const std::vector<std::int64_t>& z, std::uint64_t N,
                                      std::uint64_t n);

std::vector<std::vector<LatticeCoord>> lattice_points(const std::vector<std::int64_t>& z,
                                                      std::uint64_t N);

/// Pairs row n of the polynomial lattice part with row n of the lattice
/// part, n running over the common enumeration 0..N-1.
HybridPointSet assemble(const HybridRule& rule);

}  // namespace hqmc
