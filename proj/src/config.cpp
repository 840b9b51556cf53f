#include "hqmc/config.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

namespace hqmc {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument("config: boolean expected, got " + v);
}

}  // namespace

RunConfig RunConfig::load(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing '='");
    cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  return load(is);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "b") {
    base = std::stoi(value);
  } else if (key == "m") {
    const std::size_t dots = value.find("..");
    if (dots == std::string::npos) {
      m = std::stoi(value);
      m_range.reset();
    } else {
      m_range = {std::stoi(value.substr(0, dots)), std::stoi(value.substr(dots + 2))};
      m.reset();
    }
  } else if (key == "s1") {
    s1 = std::stoi(value);
  } else if (key == "s2") {
    s2 = std::stoi(value);
  } else if (key == "alpha1") {
    alpha1 = std::stod(value);
  } else if (key == "alpha2") {
    alpha2 = std::stod(value);
  } else if (key == "gamma1") {
    gamma1 = WeightFamily::parse(value);
  } else if (key == "gamma2") {
    gamma2 = WeightFamily::parse(value);
  } else if (key == "strategy") {
    strategy = CbcStrategy::parse(value);
  } else if (key == "korobov_tol") {
    korobov_tol = std::stod(value);
  } else if (key == "parallel") {
    parallel = parse_bool(value);
  } else if (key == "threads") {
    threads = std::stoi(value);
  } else if (key == "exclude_zero_poly") {
    exclude_zero_poly = parse_bool(value);
  } else if (key == "rule_out") {
    rule_out = value;
  } else if (key == "trace_out") {
    trace_out = value;
  } else if (key == "csv_out") {
    csv_out = value;
  } else {
    throw std::invalid_argument("config: unknown key " + key);
  }
}

SpaceParams RunConfig::space_params() const {
  SpaceParams p{PrimeBase(base)};
  p.alpha1 = alpha1;
  p.alpha2 = alpha2;
  p.s1 = s1;
  p.s2 = s2;
  p.gamma1 = gamma1.generate(s1);
  p.gamma2 = gamma2.generate(s2);
  p.validate();
  return p;
}

CbcOptions RunConfig::cbc_options() const {
  CbcOptions o;
  o.exclude_zero_poly = exclude_zero_poly;
  o.parallel = parallel;
  o.threads = threads;
  o.korobov_tol = korobov_tol;
  return o;
}

}  // namespace hqmc
