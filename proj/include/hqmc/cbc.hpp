#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqmc/wce.hpp"

namespace hqmc {

/// Interleaving of Walsh (polynomial lattice) and Korobov (lattice) steps.
/// The first two steps are always W then K, as the algorithm fixes g_1 and
/// then searches z_1.
struct CbcStrategy {
  enum class Order { Alternate, WalshFirst, KorobovFirst, Explicit };
  Order order = Order::Alternate;
  std::string schedule;  // Explicit only: 'W'/'K' symbols, full length s1+s2

  static CbcStrategy parse(const std::string& text);
  std::string to_string() const;

  /// Full per-step schedule of length s1 + s2. Throws on invalid explicit
  /// schedules (wrong counts, or not starting with "WK").
  std::string expand(int s1, int s2) const;
};

struct CbcStepRecord {
  int step = 0;  // 1-based
  int d1 = 0;    // dimensions after this step
  int d2 = 0;
  char kind = 'W';            // 'W' or 'K'
  std::uint64_t choice = 0;   // polynomial encoding, or lattice component
  double e2 = 0.0;            // squared worst-case error after the step
  double thm3_bound = 0.0;    // CBC bound at (d1, d2)
};

struct CbcTrace {
  std::vector<CbcStepRecord> steps;
  /// CSV with header "step,d1,d2,kind,choice,e2,thm3_bound".
  std::string to_csv() const;
};

struct CbcOptions {
  bool exclude_zero_poly = false;  // drop g = 0 from the step (a) candidate set
  bool parallel = false;           // scan candidates on multiple threads
  int threads = 0;                 // 0 = hardware concurrency
  double korobov_tol = 1e-10;
};

struct CbcResult {
  HybridRule rule;
  CbcTrace trace;
};

/// Stepwise component-by-component driver. Keeps the per-difference-class
/// product vectors of the partial rule so each candidate scan costs O(N)
/// on top of an O(N)-to-O(N^2) per-step cross-class tally (see diffsum.hpp).
class CbcBuilder {
public:
  CbcBuilder(const SpaceParams& params, int m, std::optional<PolyGF> f = std::nullopt,
             const CbcOptions& options = {});

  /// Algorithm step 1: fixes g_1 = 1 without a scan.
  CbcStepRecord step_walsh_forced_one();
  /// Step (a): scans all of G_{b,m} for the next polynomial component.
  CbcStepRecord step_walsh();
  /// Step (b) (and step 2): scans Z_N for the next lattice component.
  CbcStepRecord step_korobov();

  int d1() const { return static_cast<int>(rule_.g.size()); }
  int d2() const { return static_cast<int>(rule_.z.size()); }
  const HybridRule& rule() const { return rule_; }
  const CbcTrace& trace() const { return trace_; }

private:
  CbcStepRecord record_step(char kind, std::uint64_t choice, double e2);
  double current_e2() const;
  std::uint64_t mul_residue(std::uint64_t d, std::uint64_t g) const;

  SpaceParams params_;
  CbcOptions options_;
  HybridRule rule_;
  CbcTrace trace_;
  std::uint64_t n_ = 0;
  double mu1_ = 0.0;

  // multiplicative group of G_{b,m} \ {0} mod f
  std::vector<std::uint64_t> explog_;   // explog_[i] = encoding of xi^i
  std::vector<std::uint64_t> log_;      // inverse table, log_[enc]
  std::vector<double> omega_residue_;   // omega(nu_m(r / f)) by residue encoding
  std::vector<double> tau_index_;       // tau(v / N) by numerator v

  std::vector<double> walsh_class_;  // running product over chosen g's, by class d
  std::vector<double> trig_class_;   // running product over chosen z's, by class r
};

/// Runs the full construction following the strategy's schedule.
CbcResult cbc_construct(const SpaceParams& params, int m, const CbcStrategy& strategy,
                        std::optional<PolyGF> f = std::nullopt, const CbcOptions& options = {});

}  // namespace hqmc
