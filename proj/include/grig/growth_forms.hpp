#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grig {

/// A growth function evaluated in natural-log space: either a named form
/// from the grammar
///   exp(n^a) | exp(n/log(n)^a) | poly(d) | 2^n | table:<path>
/// or a finite table of values γ(0..N).
class GrowthForm {
 public:
  enum class Kind { ExpPower, ExpOverLog, Poly, TwoPow, Table };

  static GrowthForm parse(std::string_view text);
  static GrowthForm from_counts(const std::vector<std::uint64_t>& counts, std::string name = "table");
  static GrowthForm from_log_table(std::vector<double> log_values, std::string name = "table");
  /// Reads `n,gamma` rows; '#' lines and a header row are skipped, n must run 0..N or 1..N.
  static GrowthForm from_csv(const std::string& path);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// ln f(n). Throws RangeExceeded outside the domain.
  double log_value(std::uint64_t n) const;
  bool defined_at(std::uint64_t n) const;
  /// Largest argument of a table; empty for named forms.
  std::optional<std::uint64_t> max_argument() const;

 private:
  Kind kind_ = Kind::TwoPow;
  double param_ = 0;
  std::string name_;
  std::vector<double> table_;  // ln γ(n); NaN where absent
};

struct CompareEntry {
  enum class Status { Holds, Violated, NotEvaluable };
  unsigned C = 0;
  Status status = Status::NotEvaluable;
  std::uint64_t n = 0;  // counterexample, or first n with C·n outside g's table
};

const char* to_string(CompareEntry::Status s);

/// Finite-range test of f ≼ g: the smallest C <= C_max with f(n) <= g(Cn)
/// for all n in [n_lo, n_hi], plus the outcome for every C.
struct CompareResult {
  std::optional<unsigned> witness;
  std::vector<CompareEntry> per_c;
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
};

CompareResult compare_growth(const GrowthForm& f, const GrowthForm& g, unsigned C_max, std::uint64_t n_lo,
                             std::uint64_t n_hi);

struct OscillationEntry {
  unsigned factor = 0;                  // C or D
  std::optional<std::uint64_t> argument;  // m or k; empty when not found in range
};

/// Finite witnesses for oscillating growth of type (γ1, γ2):
///   lower: γ(C·m) < γ1(m)     upper: γ2(D·k) < γ(k)
/// for C in 1..C_max and D in 1..D_max, with arguments inside γ's range.
struct OscillationResult {
  std::vector<OscillationEntry> lower;
  std::vector<OscillationEntry> upper;
  std::uint64_t n_max = 0;

  bool lower_found() const;
  bool upper_found() const;
};

/// `n_max` bounds the scanned arguments; defaults to γ's table size.
OscillationResult oscillation_witness(const GrowthForm& gamma, const GrowthForm& gamma1, const GrowthForm& gamma2,
                                      unsigned C_max, unsigned D_max, std::optional<std::uint64_t> n_max = {});

}  // namespace grig
