#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "hqmc/bounds.hpp"
#include "hqmc/cbc.hpp"

namespace hqmc {

/// Run configuration shared by all subcommands. Same line-oriented key=value
/// grammar as the rule file; '#' starts a comment, blank lines are skipped.
///
/// Keys: b, m (single value or "lo..hi" range), s1, s2, alpha1, alpha2,
/// gamma1, gamma2 (weight family specs), strategy, korobov_tol, parallel,
/// threads, exclude_zero_poly, rule_out, trace_out, csv_out.
struct RunConfig {
  int base = 2;
  std::optional<int> m;
  std::optional<std::pair<int, int>> m_range;
  int s1 = 1;
  int s2 = 1;
  double alpha1 = 2.0;
  double alpha2 = 2.0;
  WeightFamily gamma1;  // defaults to const:1
  WeightFamily gamma2;
  CbcStrategy strategy;
  double korobov_tol = 1e-10;
  bool parallel = false;
  int threads = 0;
  bool exclude_zero_poly = false;
  std::string rule_out;
  std::string trace_out;
  std::string csv_out;

  static RunConfig load(std::istream& is);
  static RunConfig load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  /// Materializes SpaceParams for the configured dimensions (validates).
  SpaceParams space_params() const;
  CbcOptions cbc_options() const;
};

}  // namespace hqmc
