#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "hqmc/bounds.hpp"
#include "hqmc/cbc.hpp"
#include "hqmc/config.hpp"
#include "hqmc/format.hpp"
#include "hqmc/wce.hpp"

namespace {

using namespace hqmc;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailed = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << content;
  if (!os) throw IoError("write to " + path + " failed");
}

std::string rule_text(const HybridRule& rule) {
  std::ostringstream os;
  rule.save(os);
  return os.str();
}

int require_single_m(const RunConfig& cfg) {
  if (cfg.m_range) throw std::invalid_argument("this subcommand needs a single m, not a range");
  if (!cfg.m) throw std::invalid_argument("m is required");
  return *cfg.m;
}

int cmd_construct(const RunConfig& cfg) {
  const int m = require_single_m(cfg);
  const SpaceParams params = cfg.space_params();
  const CbcResult res = cbc_construct(params, m, cfg.strategy, std::nullopt, cfg.cbc_options());
  const std::string rtext = rule_text(res.rule);
  const std::string ttext = res.trace.to_csv();
  if (!cfg.rule_out.empty())
    write_file(cfg.rule_out, rtext);
  else
    std::cout << rtext;
  if (!cfg.trace_out.empty())
    write_file(cfg.trace_out, ttext);
  else
    std::cout << ttext;
  return kExitOk;
}

int cmd_error(const RunConfig& cfg, const std::string& rule_path) {
  std::ifstream is(rule_path);
  if (!is) throw IoError("cannot open " + rule_path);
  const HybridRule rule = HybridRule::load(is);
  const SpaceParams params = cfg.space_params();
  if (rule.base.value() != cfg.base || rule.d1() != params.s1 || rule.d2() != params.s2)
    throw std::invalid_argument("rule file dimensions do not match the configuration");

  const std::uint64_t N = rule.n_points();
  const double e2 = wce_sq_group(rule, params, cfg.korobov_tol);
  const double lo = lower_bound_sq(params, N);
  const double up = upper_bound_sq(params, params.s1, params.s2, N);
  const bool ok = e2 >= lo - 1e-9 && e2 <= up + 1e-9;

  std::cout << "e2=" << format_g17(e2) << "\n"
            << "lower_sq=" << format_g17(lo) << "\n"
            << "upper_sq=" << format_g17(up) << "\n"
            << "sandwich=" << (ok ? "ok" : "violated") << "\n";
  std::ostringstream csv;
  csv << "N,d1,d2,e2,lower_sq,upper_sq\n"
      << N << "," << rule.d1() << "," << rule.d2() << "," << format_g17(e2) << ","
      << format_g17(lo) << "," << format_g17(up) << "\n";
  if (!cfg.csv_out.empty())
    write_file(cfg.csv_out, csv.str());
  else
    std::cout << csv.str();
  return ok ? kExitOk : kExitFailed;
}

int cmd_table(const RunConfig& cfg) {
  if (!cfg.m_range) throw std::invalid_argument("table needs an m range (m=lo..hi)");
  const auto [m_lo, m_hi] = *cfg.m_range;
  if (m_lo < 1 || m_hi < m_lo) throw std::invalid_argument("invalid m range");
  const SpaceParams params = cfg.space_params();

  std::ostringstream csv;
  csv << "m,N,e2,lower_sq,upper_sq,ratio\n";
  for (int m = m_lo; m <= m_hi; ++m) {
    const CbcResult res = cbc_construct(params, m, cfg.strategy, std::nullopt, cfg.cbc_options());
    const std::uint64_t N = res.rule.n_points();
    const double e2 = res.trace.steps.back().e2;
    const double lo = lower_bound_sq(params, N);
    const double up = upper_bound_sq(params, params.s1, params.s2, N);
    csv << m << "," << N << "," << format_g17(e2) << "," << format_g17(lo) << ","
        << format_g17(up) << "," << format_g17(up / e2) << "\n";
  }
  if (!cfg.csv_out.empty())
    write_file(cfg.csv_out, csv.str());
  else
    std::cout << csv.str();
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, bool inject_mu_error) {
  const int m = cfg.m ? *cfg.m : 3;
  const SpaceParams params = cfg.space_params();
  const std::uint64_t N = pow_u64(static_cast<std::uint64_t>(cfg.base), m);
  if (N > 256) {
    std::cerr << "verify: N = " << N
              << " exceeds the N^2-oracle budget (N <= 256); choose a smaller m\n";
    return kExitInvalid;
  }

  bool all_ok = true;
  const auto report = [&](const std::string& suite, bool ok, const std::string& detail) {
    std::cout << suite << ": " << (ok ? "pass" : "FAIL") << "\n";
    if (!ok) {
      if (all_ok) std::cout << "first counterexample: " << detail << "\n";
      all_ok = false;
    }
  };

  // mu/omega consistency: the closed-form kernel sum at zero must be mu.
  {
    double mu_val = mu(params.alpha1, params.base);
    if (inject_mu_error) mu_val += 1e-3;
    const BaseFraction zero = BaseFraction::zero(params.base, m);
    const double omega0 = walsh_kernel_sum(zero, params.alpha1);
    const WalshBruteForceResult bf = walsh_kernel_sum_bruteforce(zero, params.alpha1, 10);
    const bool ok = std::abs(mu_val - omega0) <= 1e-12 &&
                    std::abs(mu_val - bf.value) <= bf.tail_bound + 1e-12;
    std::ostringstream d;
    d << "mu=" << format_g17(mu_val) << " omega(0)=" << format_g17(omega0)
      << " series=" << format_g17(bf.value) << " tail=" << format_g17(bf.tail_bound);
    report("mu-omega-consistency", ok, d.str());
  }

  const CbcResult res = cbc_construct(params, m, cfg.strategy, std::nullopt, cfg.cbc_options());

  // naive double sum vs the collapsed single sum on the constructed rule
  {
    const double group = wce_sq_group(res.rule, params, cfg.korobov_tol);
    const double naive = wce_sq_naive(assemble(res.rule), params, cfg.korobov_tol);
    std::ostringstream d;
    d << "naive=" << format_g17(naive) << " group=" << format_g17(group);
    report("naive-vs-group", std::abs(naive - group) <= 1e-10, d.str());
  }

  // walsh closed form vs truncated series at random grid points
  {
    std::mt19937_64 rng(20260823);
    bool ok = true;
    std::ostringstream d;
    for (int i = 0; i < 25 && ok; ++i) {
      const int prec = 1 + static_cast<int>(rng() % 8);
      const std::uint64_t denom = pow_u64(static_cast<std::uint64_t>(cfg.base), prec);
      const BaseFraction z(params.base, rng() % denom, prec);
      const double closed = walsh_kernel_sum(z, params.alpha1);
      const WalshBruteForceResult bf = walsh_kernel_sum_bruteforce(z, params.alpha1, 10);
      if (std::abs(closed - bf.value) > bf.tail_bound + 1e-12) {
        ok = false;
        d << "z=" << z.numerator() << "/" << denom << " closed=" << format_g17(closed)
          << " series=" << format_g17(bf.value);
      }
    }
    report("walsh-closed-vs-series", ok, d.str());
  }

  // korobov Bernoulli closed form vs the raw cosine series
  {
    bool ok = true;
    std::ostringstream d;
    for (int v = 0; v < 16 && ok; ++v) {
      const double z = v / 16.0;
      const double closed = korobov_kernel_sum(z, 2.0);
      const double series = korobov_kernel_sum_series(z, 2.0, 1000000);
      if (std::abs(closed - series) > 1e-5) {
        ok = false;
        d << "z=" << format_g17(z) << " closed=" << format_g17(closed)
          << " series=" << format_g17(series);
      }
    }
    report("korobov-closed-vs-series", ok, d.str());
  }

  // full-period Walsh character sums over the grid {g/b^m}
  {
    bool ok = true;
    std::ostringstream d;
    for (std::uint64_t k = 0; k < N * N && ok; ++k) {
      std::complex<double> acc = 0.0;
      for (std::uint64_t g = 0; g < N; ++g)
        acc += wal(k, BaseFraction(params.base, g, m).with_precision(2 * m));
      const double expect = k % N == 0 ? static_cast<double>(N) : 0.0;
      if (std::abs(acc.real() - expect) > 1e-9 || std::abs(acc.imag()) > 1e-9) {
        ok = false;
        d << "k=" << k << " sum=(" << format_g17(acc.real()) << "," << format_g17(acc.imag())
          << ")";
      }
    }
    report("character-sums", ok, d.str());
  }

  // Theorem 2 / Theorem 3 sandwich on the constructed rule
  {
    const double e2 = res.trace.steps.back().e2;
    const double lo = lower_bound_sq(params, N);
    const double up = upper_bound_sq(params, params.s1, params.s2, N);
    std::ostringstream d;
    d << "lower=" << format_g17(lo) << " e2=" << format_g17(e2) << " upper=" << format_g17(up);
    report("bound-sandwich", e2 >= lo - 1e-9 && e2 <= up + 1e-9, d.str());
  }

  return all_ok ? kExitOk : kExitFailed;
}

int cmd_classify(const RunConfig& cfg) {
  TractabilityVerdict v;
  try {
    v = classify_tractability(cfg.gamma1, cfg.gamma2);
  } catch (const std::invalid_argument& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return kExitInvalid;
  }
  std::cout << "strong_poly=" << (v.strong_poly ? "yes" : "no") << "\n"
            << "poly=" << (v.poly ? "yes" : "no") << "\n"
            << "weak=" << (v.weak ? "yes" : "no") << "\n"
            << "witness=" << v.witness << "\n";
  return kExitOk;
}

// Registers the RunConfig keys as flags on a subcommand; values given on the
// command line override the config file.
void add_config_flags(CLI::App* sub, std::vector<std::pair<std::string, std::string>>* overrides,
                      std::string* config_path) {
  sub->add_option("--config", *config_path, "key=value configuration file");
  static const char* keys[] = {"b",          "m",           "s1",       "s2",
                               "alpha1",     "alpha2",      "gamma1",   "gamma2",
                               "strategy",   "korobov_tol", "parallel", "threads",
                               "exclude_zero_poly", "rule_out", "trace_out", "csv_out"};
  for (const char* key : keys) {
    sub->add_option_function<std::string>(
        "--" + std::string(key),
        [overrides, key](const std::string& v) { overrides->emplace_back(key, v); },
        "config key " + std::string(key));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid Walsh/Korobov lattice construction and verification"};
  app.require_subcommand(1);

  std::string config_path, rule_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool inject_mu_error = false;

  CLI::App* construct = app.add_subcommand("construct", "run the CBC construction");
  CLI::App* error_cmd = app.add_subcommand("error", "evaluate a rule file");
  CLI::App* table = app.add_subcommand("table", "error/bound table over an m range");
  CLI::App* verify = app.add_subcommand("verify", "run the oracle property suites");
  CLI::App* classify = app.add_subcommand("classify", "tractability verdict for weight families");
  for (CLI::App* sub : {construct, error_cmd, table, verify, classify})
    add_config_flags(sub, &overrides, &config_path);
  error_cmd->add_option("--rule", rule_path, "rule file to evaluate")->required();
  verify->add_flag("--inject-mu-error", inject_mu_error, "fault-injection test hook");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw IoError("cannot open " + config_path);
      cfg = RunConfig::load(is);
    }
    for (const auto& [k, v] : overrides) cfg.set(k, v);

    if (construct->parsed()) return cmd_construct(cfg);
    if (error_cmd->parsed()) return cmd_error(cfg, rule_path);
    if (table->parsed()) return cmd_table(cfg);
    if (verify->parsed()) return cmd_verify(cfg, inject_mu_error);
    if (classify->parsed()) return cmd_classify(cfg);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::logic_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}
