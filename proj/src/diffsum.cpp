#include "hqmc/diffsum.hpp"

#include <stdexcept>

namespace hqmc {

std::uint64_t digitwise_sub_enc(std::uint64_t n, std::uint64_t np, int b, int m) {
  if (b == 2) return n ^ np;
  const std::uint64_t ub = static_cast<std::uint64_t>(b);
  std::uint64_t out = 0, place = 1;
  for (int i = 0; i < m; ++i) {
    out += (n % ub + ub - np % ub) % ub * place;
    place *= ub;
    n /= ub;
    np /= ub;
  }
  return out;
}

std::uint64_t digitwise_add_enc(std::uint64_t n, std::uint64_t np, int b, int m) {
  if (b == 2) return n ^ np;
  const std::uint64_t ub = static_cast<std::uint64_t>(b);
  std::uint64_t out = 0, place = 1;
  for (int i = 0; i < m; ++i) {
    out += (n % ub + np % ub) % ub * place;
    place *= ub;
    n /= ub;
    np /= ub;
  }
  return out;
}

namespace {

// Binary fast path for C[d]. (n' xor d) - n' = sum over set bits i of d of
// (1 - 2 n'_i) 2^i, so the offset depends only on the sign choices at those
// bits; each sign pattern is realized by 2^(m - popcount(d)) values of n'.
// Total work over all d is 3^m leaf visits.
double xor_offset_sum(const std::vector<double>& G, std::int64_t N, const int* bits, int nbits,
                      std::int64_t offset) {
  if (nbits == 0) {
    std::int64_t r = offset % N;
    if (r < 0) r += N;
    return G[static_cast<std::size_t>(r)];
  }
  const std::int64_t p = std::int64_t{1} << bits[0];
  return xor_offset_sum(G, N, bits + 1, nbits - 1, offset + p) +
         xor_offset_sum(G, N, bits + 1, nbits - 1, offset - p);
}

std::vector<double> walsh_cross_binary(const std::vector<double>& G, int m) {
  const std::int64_t N = std::int64_t{1} << m;
  std::vector<double> C(static_cast<std::size_t>(N));
  int bits[64];
  for (std::int64_t d = 0; d < N; ++d) {
    int nbits = 0;
    for (int i = 0; i < m; ++i)
      if (d >> i & 1) bits[nbits++] = i;
    const double scale = static_cast<double>(std::int64_t{1} << (m - nbits));
    C[static_cast<std::size_t>(d)] = scale * xor_offset_sum(G, N, bits, nbits, 0);
  }
  return C;
}

// Binary fast path for H[r]. Bit i of ((n' + r) mod N) xor n' equals
// r_i xor c_i where c is the addition carry chain; when r_i == c_i the
// carry is forced and n'_i is free (weight doubles), otherwise n'_i picks
// the outgoing carry (two branches). 3^m leaves in total.
void carry_paths(const std::vector<double>& F, std::int64_t r, int m, int i, int carry,
                 std::int64_t delta, double weight, double& acc) {
  if (i == m) {
    acc += weight * F[static_cast<std::size_t>(delta)];
    return;
  }
  const int ri = static_cast<int>(r >> i & 1);
  if (ri == carry) {
    carry_paths(F, r, m, i + 1, carry, delta, weight * 2.0, acc);
  } else {
    const std::int64_t d2 = delta | (std::int64_t{1} << i);
    carry_paths(F, r, m, i + 1, 0, d2, weight, acc);
    carry_paths(F, r, m, i + 1, 1, d2, weight, acc);
  }
}

std::vector<double> trig_cross_binary(const std::vector<double>& F, int m) {
  const std::int64_t N = std::int64_t{1} << m;
  std::vector<double> H(static_cast<std::size_t>(N));
  for (std::int64_t r = 0; r < N; ++r) {
    double acc = 0.0;
    carry_paths(F, r, m, 0, 0, 0, 1.0, acc);
    H[static_cast<std::size_t>(r)] = acc;
  }
  return H;
}

}  // namespace

std::vector<double> walsh_class_cross_sum(const std::vector<double>& trig_class_values,
                                          PrimeBase base, int m) {
  const int b = base.value();
  const std::uint64_t N = pow_u64(static_cast<std::uint64_t>(b), m);
  if (trig_class_values.size() != N)
    throw std::invalid_argument("walsh_class_cross_sum: vector length must be N");
  if (b == 2) return walsh_cross_binary(trig_class_values, m);
  std::vector<double> C(N, 0.0);
  for (std::uint64_t d = 0; d < N; ++d) {
    double acc = 0.0;
    for (std::uint64_t np = 0; np < N; ++np) {
      const std::uint64_t n = digitwise_add_enc(np, d, b, m);
      const std::uint64_t r = (n + N - np % N) % N;
      acc += trig_class_values[r];
    }
    C[d] = acc;
  }
  return C;
}

std::vector<double> trig_class_cross_sum(const std::vector<double>& walsh_class_values,
                                         PrimeBase base, int m) {
  const int b = base.value();
  const std::uint64_t N = pow_u64(static_cast<std::uint64_t>(b), m);
  if (walsh_class_values.size() != N)
    throw std::invalid_argument("trig_class_cross_sum: vector length must be N");
  if (b == 2) return trig_cross_binary(walsh_class_values, m);
  std::vector<double> H(N, 0.0);
  for (std::uint64_t r = 0; r < N; ++r) {
    double acc = 0.0;
    for (std::uint64_t np = 0; np < N; ++np) {
      const std::uint64_t n = (np + r) % N;
      acc += walsh_class_values[digitwise_sub_enc(n, np, b, m)];
    }
    H[r] = acc;
  }
  return H;
}

}  // namespace hqmc
