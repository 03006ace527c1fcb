#include "grig/growth_forms.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "grig/errors.hpp"

namespace grig {

namespace {

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("growth form: bad number '" + std::string(s) + "' in '" + std::string(whole) + "'");
  return v;
}

bool strip(std::string_view& s, std::string_view prefix, std::string_view suffix) {
  if (s.size() < prefix.size() + suffix.size() || s.substr(0, prefix.size()) != prefix ||
      s.substr(s.size() - suffix.size()) != suffix)
    return false;
  s = s.substr(prefix.size(), s.size() - prefix.size() - suffix.size());
  return true;
}

}  // namespace

GrowthForm GrowthForm::parse(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (ch != ' ') compact.push_back(ch);
  std::string_view s = compact;
  GrowthForm f;
  f.name_ = compact;
  if (s.substr(0, 6) == "table:") {
    auto t = from_csv(std::string(text.substr(text.find(':') + 1)));
    t.name_ = compact;
    return t;
  }
  if (s == "2^n") {
    f.kind_ = Kind::TwoPow;
    return f;
  }
  std::string_view inner = s;
  if (strip(inner, "poly(", ")")) {
    f.kind_ = Kind::Poly;
    f.param_ = parse_number(inner, text);
    return f;
  }
  inner = s;
  if (strip(inner, "exp(n/log(n)^", ")")) {
    f.kind_ = Kind::ExpOverLog;
    f.param_ = parse_number(inner, text);
    return f;
  }
  inner = s;
  if (strip(inner, "exp(n^", ")")) {
    f.kind_ = Kind::ExpPower;
    f.param_ = parse_number(inner, text);
    if (f.param_ <= 0) throw ParseError("growth form: exponent must be positive in '" + compact + "'");
    return f;
  }
  if (s == "exp(n)") {
    f.kind_ = Kind::ExpPower;
    f.param_ = 1;
    return f;
  }
  throw ParseError("unknown growth form '" + std::string(text) +
                   "'; expected exp(n^a), exp(n/log(n)^a), poly(d), 2^n or table:<path>");
}

GrowthForm GrowthForm::from_counts(const std::vector<std::uint64_t>& counts, std::string name) {
  std::vector<double> logs;
  logs.reserve(counts.size());
  for (auto c : counts) logs.push_back(std::log(static_cast<double>(c)));
  return from_log_table(std::move(logs), std::move(name));
}

GrowthForm GrowthForm::from_log_table(std::vector<double> log_values, std::string name) {
  if (log_values.empty()) throw EmptyInput("growth table is empty");
  GrowthForm f;
  f.kind_ = Kind::Table;
  f.name_ = std::move(name);
  f.table_ = std::move(log_values);
  return f;
}

GrowthForm GrowthForm::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open growth table '" + path + "'");
  std::vector<double> logs;
  std::string line;
  std::uint64_t expected = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("growth table row without comma: '" + line + "'");
    const std::string_view ns(line.data(), comma);
    std::string_view vs(line.data() + comma + 1, line.size() - comma - 1);
    if (!vs.empty() && vs.back() == '\r') vs.remove_suffix(1);
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), n);
    if (ec != std::errc() || p != ns.data() + ns.size()) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw ParseError("growth table: bad argument '" + std::string(ns) + "'");
    }
    if (first && n == 1) {
      logs.push_back(std::numeric_limits<double>::quiet_NaN());
      expected = 1;
    }
    first = false;
    if (n != expected) throw ParseError("growth table rows must be consecutive from 0 or 1 in '" + path + "'");
    // Values may exceed 64 bits; long double keeps the logarithm accurate.
    std::istringstream vss{std::string(vs)};
    long double v = 0;
    if (!(vss >> v) || v < 0) throw ParseError("growth table: bad value '" + std::string(vs) + "'");
    logs.push_back(static_cast<double>(std::log(v)));
    ++expected;
  }
  if (logs.empty()) throw EmptyInput("growth table '" + path + "' has no rows");
  return from_log_table(std::move(logs), "table:" + path);
}

bool GrowthForm::defined_at(std::uint64_t n) const {
  switch (kind_) {
    case Kind::Table: return n < table_.size() && !std::isnan(table_[n]);
    case Kind::ExpOverLog: return n >= 2;
    default: return true;
  }
}

double GrowthForm::log_value(std::uint64_t n) const {
  if (!defined_at(n)) throw RangeExceeded(name_ + " is not defined at n=" + std::to_string(n));
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::ExpPower: return std::pow(x, param_);
    case Kind::ExpOverLog: return x / std::pow(std::log(x), param_);
    case Kind::Poly: return param_ * std::log(x);
    case Kind::TwoPow: return x * std::log(2.0);
    case Kind::Table: return table_[n];
  }
  return 0;
}

std::optional<std::uint64_t> GrowthForm::max_argument() const {
  if (kind_ != Kind::Table) return std::nullopt;
  return table_.size() - 1;
}

const char* to_string(CompareEntry::Status s) {
  switch (s) {
    case CompareEntry::Status::Holds: return "holds";
    case CompareEntry::Status::Violated: return "violated";
    case CompareEntry::Status::NotEvaluable: return "not-evaluable";
  }
  return "?";
}

namespace {

// Strict comparison with a relative slack for rounding in log space.
bool less_than(double lhs, double rhs) { return lhs < rhs - 1e-12 * std::max(1.0, std::fabs(rhs)); }

}  // namespace

CompareResult compare_growth(const GrowthForm& f, const GrowthForm& g, unsigned C_max, std::uint64_t n_lo,
                             std::uint64_t n_hi) {
  if (C_max == 0 || n_lo > n_hi) throw InvalidArgument("compare_growth needs C_max >= 1 and n_lo <= n_hi");
  for (std::uint64_t n = n_lo; n <= n_hi; ++n)
    if (!f.defined_at(n)) throw RangeExceeded(f.name() + " is not defined at n=" + std::to_string(n));
  if (!g.defined_at(n_lo)) throw RangeExceeded(g.name() + " is not defined at n=" + std::to_string(n_lo));

  CompareResult out;
  out.n_lo = n_lo;
  out.n_hi = n_hi;
  for (unsigned C = 1; C <= C_max; ++C) {
    CompareEntry e{C, CompareEntry::Status::Holds, 0};
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
      if (!g.defined_at(C * n)) {
        e = {C, CompareEntry::Status::NotEvaluable, n};
        break;
      }
      if (less_than(g.log_value(C * n), f.log_value(n))) {
        e = {C, CompareEntry::Status::Violated, n};
        break;
      }
    }
    if (e.status == CompareEntry::Status::Holds && !out.witness) out.witness = C;
    out.per_c.push_back(e);
  }
  return out;
}

bool OscillationResult::lower_found() const {
  for (const auto& e : lower)
    if (e.argument) return true;
  return false;
}

bool OscillationResult::upper_found() const {
  for (const auto& e : upper)
    if (e.argument) return true;
  return false;
}

OscillationResult oscillation_witness(const GrowthForm& gamma, const GrowthForm& gamma1, const GrowthForm& gamma2,
                                      unsigned C_max, unsigned D_max, std::optional<std::uint64_t> n_max) {
  OscillationResult out;
  if (n_max)
    out.n_max = *n_max;
  else if (auto m = gamma.max_argument())
    out.n_max = *m;
  else
    throw InvalidArgument("oscillation_witness needs a table or an explicit n_max");
  if (auto m = gamma.max_argument(); m && out.n_max > *m)
    throw RangeExceeded("n_max " + std::to_string(out.n_max) + " beyond the table of " + gamma.name());

  for (unsigned C = 1; C <= C_max; ++C) {
    OscillationEntry e{C, std::nullopt};
    for (std::uint64_t m = 1; C * m <= out.n_max; ++m) {
      if (!gamma.defined_at(C * m) || !gamma1.defined_at(m)) continue;
      if (less_than(gamma.log_value(C * m), gamma1.log_value(m))) {
        e.argument = m;
        break;
      }
    }
    out.lower.push_back(e);
  }
  for (unsigned D = 1; D <= D_max; ++D) {
    OscillationEntry e{D, std::nullopt};
    for (std::uint64_t k = 1; k <= out.n_max; ++k) {
      if (!gamma.defined_at(k) || !gamma2.defined_at(D * k)) continue;
      if (less_than(gamma2.log_value(D * k), gamma.log_value(k))) {
        e.argument = k;
        break;
      }
    }
    out.upper.push_back(e);
  }
  return out;
}

}  // namespace grig
