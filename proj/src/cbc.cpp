#include "hqmc/cbc.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hqmc/bounds.hpp"
#include "hqmc/diffsum.hpp"
#include "hqmc/format.hpp"

namespace hqmc {

CbcStrategy CbcStrategy::parse(const std::string& text) {
  CbcStrategy st;
  if (text == "alternate") {
    st.order = Order::Alternate;
  } else if (text == "walsh_first") {
    st.order = Order::WalshFirst;
  } else if (text == "korobov_first") {
    st.order = Order::KorobovFirst;
  } else {
    std::string sched = text;
    if (sched.rfind("explicit:", 0) == 0) sched = sched.substr(9);
    if (sched.empty() || sched.find_first_not_of("WK") != std::string::npos)
      throw std::invalid_argument("CbcStrategy: unknown strategy " + text);
    st.order = Order::Explicit;
    st.schedule = sched;
  }
  return st;
}

std::string CbcStrategy::to_string() const {
  switch (order) {
    case Order::Alternate: return "alternate";
    case Order::WalshFirst: return "walsh_first";
    case Order::KorobovFirst: return "korobov_first";
    case Order::Explicit: return "explicit:" + schedule;
  }
  return "?";
}

std::string CbcStrategy::expand(int s1, int s2) const {
  if (s1 < 1 || s2 < 1)
    throw std::invalid_argument("CbcStrategy: both dimensions must be >= 1");
  std::string out;
  auto fill_rest = [&](char first, char second) {
    int left1 = s1 - 1, left2 = s2 - 1;  // after the forced W K prefix
    out = "WK";
    // alternate starting from `first`, exhausting a side when its budget ends
    char turn = first;
    while (left1 + left2 > 0) {
      int& budget = turn == 'W' ? left1 : left2;
      if (budget > 0) {
        out.push_back(turn);
        --budget;
      }
      turn = turn == first ? second : first;
      if (left1 == 0) turn = 'K';
      if (left2 == 0) turn = 'W';
    }
  };
  switch (order) {
    case Order::Alternate:
      fill_rest('W', 'K');
      break;
    case Order::WalshFirst:
      out = "WK" + std::string(s1 - 1, 'W') + std::string(s2 - 1, 'K');
      break;
    case Order::KorobovFirst:
      out = "WK" + std::string(s2 - 1, 'K') + std::string(s1 - 1, 'W');
      break;
    case Order::Explicit: {
      if (static_cast<int>(schedule.size()) != s1 + s2)
        throw std::invalid_argument("CbcStrategy: schedule length != s1 + s2");
      if (schedule.rfind("WK", 0) != 0)
        throw std::invalid_argument("CbcStrategy: schedule must begin with WK");
      const auto w = std::count(schedule.begin(), schedule.end(), 'W');
      if (static_cast<int>(w) != s1)
        throw std::invalid_argument("CbcStrategy: schedule symbol counts do not match dimensions");
      out = schedule;
      break;
    }
  }
  return out;
}

std::string CbcTrace::to_csv() const {
  std::ostringstream os;
  os << "step,d1,d2,kind,choice,e2,thm3_bound\n";
  for (const CbcStepRecord& r : steps)
    os << r.step << "," << r.d1 << "," << r.d2 << "," << r.kind << "," << r.choice << ","
       << format_g17(r.e2) << "," << format_g17(r.thm3_bound) << "\n";
  return os.str();
}

namespace {

// Smallest-encoding generator of the multiplicative group of G_{b,m} \ {0}
// modulo f (cyclic of order b^m - 1).
std::uint64_t find_generator(const PolyGF& f, std::uint64_t order) {
  const PrimeBase base = f.base();
  std::vector<std::uint64_t> prime_factors;
  std::uint64_t rest = order;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      prime_factors.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) prime_factors.push_back(rest);

  auto pow_mod = [&](const PolyGF& a, std::uint64_t e) {
    PolyGF r = PolyGF::one(base), x = a;
    while (e) {
      if (e & 1) r = poly_mul_mod(r, x, f);
      x = poly_mul_mod(x, x, f);
      e >>= 1;
    }
    return r;
  };

  for (std::uint64_t enc = 2;; ++enc) {
    const PolyGF cand = PolyGF::from_encoding(base, enc);
    bool primitive = true;
    for (std::uint64_t q : prime_factors)
      if (pow_mod(cand, order / q) == PolyGF::one(base)) {
        primitive = false;
        break;
      }
    if (primitive) return enc;
  }
}

// Partitions [0, total) into near-equal chunks and runs `work` on each,
// possibly on separate threads. Chunk boundaries never affect results: each
// index is processed by exactly one invocation with identical arithmetic.
void scan_range(std::uint64_t total, const CbcOptions& options,
                const std::function<void(std::uint64_t, std::uint64_t)>& work) {
  unsigned t = options.parallel
                   ? (options.threads > 0 ? static_cast<unsigned>(options.threads)
                                          : std::max(1u, std::thread::hardware_concurrency()))
                   : 1u;
  if (t <= 1 || total < 2 * t) {
    work(0, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + t - 1) / t;
  for (unsigned i = 0; i < t; ++i) {
    const std::uint64_t lo = i * chunk, hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace

CbcBuilder::CbcBuilder(const SpaceParams& params, int m, std::optional<PolyGF> f,
                       const CbcOptions& options)
    : params_(params), options_(options) {
  params_.validate();
  if (params_.s1 < 1 || params_.s2 < 1)
    throw std::invalid_argument("cbc: both s1 and s2 must be >= 1");
  if (m < 1) throw std::invalid_argument("cbc: m must be >= 1");

  rule_.base = params_.base;
  rule_.m = m;
  if (f) {
    if (f->base() != params_.base || f->degree() != m || !is_irreducible(*f))
      throw std::invalid_argument("cbc: f must be irreducible of degree m over F_b");
    rule_.f = *f;
  } else {
    rule_.f = find_irreducible(params_.base, m);
  }

  n_ = pow_u64(static_cast<std::uint64_t>(params_.base.value()), m);
  mu1_ = mu(params_.alpha1, params_.base);

  const std::uint64_t order = n_ - 1;
  explog_.resize(order);
  log_.assign(n_, 0);
  if (order == 1) {
    explog_[0] = 1;
  } else {
    const PolyGF xi = PolyGF::from_encoding(params_.base, find_generator(rule_.f, order));
    PolyGF p = PolyGF::one(params_.base);
    for (std::uint64_t i = 0; i < order; ++i) {
      explog_[i] = p.encoding();
      p = poly_mul_mod(p, xi, rule_.f);
    }
  }
  for (std::uint64_t i = 0; i < order; ++i) log_[explog_[i]] = i;

  omega_residue_.resize(n_);
  omega_residue_[0] = mu1_;
  for (std::uint64_t r = 1; r < n_; ++r) {
    const LaurentDigits d = laurent_expand(PolyGF::from_encoding(params_.base, r), rule_.f, m);
    omega_residue_[r] =
        walsh_kernel_sum(BaseFraction::from_digits(params_.base, d.digits), params_.alpha1);
  }
  tau_index_.resize(n_);
  for (std::uint64_t v = 0; v < n_; ++v)
    tau_index_[v] = korobov_kernel_sum(static_cast<double>(v) / static_cast<double>(n_),
                                       params_.alpha2, options_.korobov_tol);

  walsh_class_.assign(n_, 1.0);
  trig_class_.assign(n_, 1.0);
}

std::uint64_t CbcBuilder::mul_residue(std::uint64_t d, std::uint64_t g) const {
  if (d == 0 || g == 0) return 0;
  return explog_[(log_[d] + log_[g]) % (n_ - 1)];
}

double CbcBuilder::current_e2() const {
  const std::vector<double> C = walsh_class_cross_sum(trig_class_, params_.base, rule_.m);
  CompensatedSum acc;
  for (std::uint64_t d = 0; d < n_; ++d) acc.add(walsh_class_[d] * C[d]);
  return -1.0 + acc.get() / (static_cast<double>(n_) * static_cast<double>(n_));
}

CbcStepRecord CbcBuilder::record_step(char kind, std::uint64_t choice, double e2) {
  CbcStepRecord rec;
  rec.step = static_cast<int>(trace_.steps.size()) + 1;
  rec.d1 = d1();
  rec.d2 = d2();
  rec.kind = kind;
  rec.choice = choice;
  rec.e2 = e2;
  rec.thm3_bound = upper_bound_sq(params_, rec.d1, rec.d2, n_);
  trace_.steps.push_back(rec);
  return rec;
}

CbcStepRecord CbcBuilder::step_walsh_forced_one() {
  if (d1() != 0 || d2() != 0 || !trace_.steps.empty())
    throw std::logic_error("cbc: g_1 = 1 only as the first step");
  const double gamma = params_.gamma1[0];
  for (std::uint64_t d = 0; d < n_; ++d)
    walsh_class_[d] = 1.0 + gamma * omega_residue_[d];  // residue of d * 1 is d
  rule_.g.push_back(PolyGF::one(params_.base));
  return record_step('W', 1, current_e2());
}

CbcStepRecord CbcBuilder::step_walsh() {
  if (d1() >= params_.s1) throw std::logic_error("cbc: walsh dimension budget exhausted");
  if (d1() == 0) throw std::logic_error("cbc: the first walsh step is forced to g_1 = 1");
  const double gamma = params_.gamma1[d1()];
  const std::uint64_t order = n_ - 1;

  const std::vector<double> C = walsh_class_cross_sum(trig_class_, params_.base, rule_.m);
  std::vector<double> fc(n_);
  CompensatedSum b0;
  for (std::uint64_t d = 0; d < n_; ++d) {
    fc[d] = walsh_class_[d] * C[d];
    b0.add(fc[d]);
  }
  const double B0 = b0.get();
  const double fc0 = fc[0];

  // log-ordered views: candidate g shifts the omega table by log(g)
  std::vector<double> fc_log(order), omega_log2(2 * order);
  for (std::uint64_t i = 0; i < order; ++i) {
    fc_log[i] = fc[explog_[i]];
    omega_log2[i] = omega_log2[i + order] = omega_residue_[explog_[i]];
  }

  const double inv_n2 = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
  std::vector<double> score(n_, std::numeric_limits<double>::infinity());
  scan_range(n_, options_, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t g = lo; g < hi; ++g) {
      if (g == 0) {
        if (!options_.exclude_zero_poly) score[0] = -1.0 + (B0 + gamma * mu1_ * B0) * inv_n2;
        continue;
      }
      const double* om = omega_log2.data() + log_[g];
      double corr = fc0 * mu1_;
      for (std::uint64_t i = 0; i < order; ++i) corr += fc_log[i] * om[i];
      score[g] = -1.0 + (B0 + gamma * corr) * inv_n2;
    }
  });

  std::uint64_t best = options_.exclude_zero_poly ? 1 : 0;
  for (std::uint64_t g = best + 1; g < n_; ++g)
    if (score[g] < score[best]) best = g;

  for (std::uint64_t d = 0; d < n_; ++d)
    walsh_class_[d] *= 1.0 + gamma * omega_residue_[mul_residue(d, best)];
  rule_.g.push_back(PolyGF::from_encoding(params_.base, best));
  return record_step('W', best, score[best]);
}

CbcStepRecord CbcBuilder::step_korobov() {
  if (d2() >= params_.s2) throw std::logic_error("cbc: korobov dimension budget exhausted");
  if (d1() == 0) throw std::logic_error("cbc: g_1 = 1 precedes the first korobov step");
  const double gamma = params_.gamma2[d2()];
  const int b = params_.base.value();

  const std::vector<double> H = trig_class_cross_sum(walsh_class_, params_.base, rule_.m);
  std::vector<double> gh(n_);
  CompensatedSum b0;
  for (std::uint64_t r = 0; r < n_; ++r) {
    gh[r] = trig_class_[r] * H[r];
    b0.add(gh[r]);
  }
  const double B0 = b0.get();

  const double inv_n2 = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
  std::vector<double> score(n_, std::numeric_limits<double>::infinity());
  scan_range(n_, options_, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t z = lo; z < hi; ++z) {
      if (z == 0 || z % static_cast<std::uint64_t>(b) == 0) continue;
      double corr = 0.0;
      std::uint64_t idx = 0;
      for (std::uint64_t r = 0; r < n_; ++r) {
        corr += gh[r] * tau_index_[idx];
        idx += z;
        if (idx >= n_) idx -= n_;
      }
      score[z] = -1.0 + (B0 + gamma * corr) * inv_n2;
    }
  });

  std::uint64_t best = 1;
  for (std::uint64_t z = 2; z < n_; ++z)
    if (score[z] < score[best]) best = z;

  std::uint64_t idx = 0;
  for (std::uint64_t r = 0; r < n_; ++r) {
    trig_class_[r] *= 1.0 + gamma * tau_index_[idx];
    idx += best;
    if (idx >= n_) idx -= n_;
  }
  rule_.z.push_back(static_cast<std::int64_t>(best));
  return record_step('K', best, score[best]);
}

CbcResult cbc_construct(const SpaceParams& params, int m, const CbcStrategy& strategy,
                        std::optional<PolyGF> f, const CbcOptions& options) {
  CbcBuilder builder(params, m, std::move(f), options);
  const std::string schedule = strategy.expand(params.s1, params.s2);
  builder.step_walsh_forced_one();
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] == 'W')
      builder.step_walsh();
    else
      builder.step_korobov();
  }
  return CbcResult{builder.rule(), builder.trace()};
}

}  // namespace hqmc
