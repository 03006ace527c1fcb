#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace grig {

/// Letter of the oracle alphabet {0,1,2}.
using Letter = std::uint8_t;

/// Probability triple over {0,1,2}, kept exact.
using Weights = std::array<mpq_class, 3>;

Weights uniform_weights();

/// Parses "1/3,1/3,1/3" or "0.5,0.25,0.25"; the entries must sum to one.
Weights parse_weights(std::string_view text);
std::string weights_to_string(const Weights& w);

/// The parameter sequence ω over {0,1,2}.
///
/// Two flavours exist. Eventually periodic sequences are stored as a
/// preperiod and a primitive period, normalized so that equal sequences
/// have equal representations. Seeded Bernoulli streams draw letter i from a
/// counter-based generator, so the letter is a pure function of
/// (seed, weights, offset + i) and never depends on query order.
///
/// Textual grammar: `[preperiod](period)` such as `01(2)` or `(012)`, and
/// `bernoulli:w0,w1,w2:seed[@offset]`.
class OmegaSeq {
 public:
  enum class Kind { EventuallyPeriodic, SeededRandom };

  static OmegaSeq periodic(std::vector<Letter> preperiod, std::vector<Letter> period);
  static OmegaSeq bernoulli(const Weights& weights, std::uint64_t seed,
                            std::uint64_t offset = 0);
  static OmegaSeq parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == Kind::EventuallyPeriodic; }

  /// Letter at 0-based index i, i.e. letter(0) is the first letter of ω.
  Letter letter(std::uint64_t i) const;
  std::vector<Letter> prefix(std::size_t n) const;

  /// τ^k(ω).
  OmegaSeq shifted(std::uint64_t k = 1) const;

  const std::vector<Letter>& preperiod() const { return preperiod_; }
  const std::vector<Letter>& period() const { return period_; }
  const Weights& weights() const { return weights_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t offset() const { return offset_; }

  std::string to_string() const;

  friend bool operator==(const OmegaSeq& x, const OmegaSeq& y);

 private:
  OmegaSeq() = default;
  void normalize();

  Kind kind_ = Kind::EventuallyPeriodic;
  std::vector<Letter> preperiod_;
  std::vector<Letter> period_;
  Weights weights_;
  std::uint64_t seed_ = 0;
  std::uint64_t offset_ = 0;
  // Cumulative weights scaled by 2^64; a draw u maps to the first letter
  // whose threshold exceeds u.
  std::array<unsigned __int128, 2> thresholds_{};
};

/// Finite word followed by a periodic tail, e.g. the surrogate splice
/// prefix_n(ω)·(012)^∞.
OmegaSeq splice(std::span<const Letter> head, std::span<const Letter> period);

OmegaSeq shift(const OmegaSeq& omega);

enum class OmegaClass { EventuallyConstant, AllLettersInfinitelyOften, Other };

const char* to_string(OmegaClass c);

/// Throws NotDecidable for seeded streams.
OmegaClass classify(const OmegaSeq& omega);

std::vector<Letter> parse_letters(std::string_view digits);
std::string letters_to_string(std::span<const Letter> w);

/// T(w): number of disjoint consecutive blocks each containing 0, 1 and 2,
/// found by a greedy left-to-right scan. Throws AlphabetViolation.
int block_count(std::span<const Letter> w);
int block_count(std::string_view digits);

struct BlockStats {
  std::vector<std::uint64_t> t_values;  // t_1..t_n, 1-based letter positions
  std::vector<std::uint64_t> q_values;  // q_i = t_i - t_{i-1}, t_0 = 0
};

/// t_1..t_n of ω. Throws Diverges when some letter never recurs, and
/// BudgetExceeded when a random stream needs more than `letter_budget`
/// letters.
BlockStats t_sequence(const OmegaSeq& omega, std::size_t n,
                      std::uint64_t letter_budget = std::uint64_t{1} << 32);

/// N_k = #{w in {0,1,2}^m : T(w) = k}, by exhaustive enumeration (m <= 15).
std::map<int, std::uint64_t> count_by_T(int m);

/// I_m = E[T(w)] for a Bernoulli word of length m, computed exactly.
mpq_class expected_T_exact(int m, const Weights& weights);

struct C0Estimate {
  double mean = 0;
  double stddev = 0;
  double ci95_lo = 0;
  double ci95_hi = 0;
  std::size_t trials = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;  // t_n / n for each trial, in trial order
};

/// Monte-Carlo estimate of lim t_n/n under the Bernoulli measure. Trial i
/// uses a seed derived from (seed, i), so the result does not depend on
/// `threads`.
C0Estimate estimate_C0(const Weights& weights, std::size_t n, std::size_t trials,
                       std::uint64_t seed, unsigned threads = 1);

enum class Membership { Member, NonMember, MemberAtHorizon, UndecidedAtHorizon };

const char* to_string(Membership m);

struct MembershipReport {
  Membership verdict = Membership::UndecidedAtHorizon;
  bool exact = false;
  // Periodic input: asymptotic slope lim t_n/n = cycle_letters/cycle_blocks.
  std::uint64_t cycle_letters = 0;
  std::uint64_t cycle_blocks = 0;
  // Random input: extremes over the tail window [horizon/2, horizon].
  double max_t_over_n = 0;
  double max_q_over_t = 0;
  std::size_t horizon = 0;
};

/// Decides ω ∈ Ω_{2,C,ε}. Exact for eventually periodic ω; over a finite
/// horizon for seeded streams.
MembershipReport omega_membership(const OmegaSeq& omega, double C, double eps,
                                  std::size_t horizon);

/// Counter-based mixer used by seeded streams; exposed for derived seeds.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace grig
