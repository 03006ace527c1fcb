#include "grig/omega.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "grig/errors.hpp"

namespace grig {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

mpq_class parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty weight");
  if (text.find('/') != std::string_view::npos) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) throw ParseError("bad weight '" + std::string(text) + "'");
    q.canonicalize();
    return q;
  }
  // Decimal literal, converted exactly: "0.25" -> 25/100.
  auto dot = text.find('.');
  std::string digits(text);
  mpz_class den = 1;
  if (dot != std::string_view::npos) {
    std::string frac(text.substr(dot + 1));
    digits = std::string(text.substr(0, dot)) + frac;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad weight '" + std::string(text) + "'");
  mpq_class q(mpz_class(digits, 10), den);
  q.canonicalize();
  return q;
}

std::uint64_t parse_u64(std::string_view text, const char* what) {
  text = trim(text);
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'");
  try {
    return std::stoull(std::string(text));
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
}

unsigned __int128 scaled_threshold(const mpq_class& cumulative) {
  mpz_class scaled = cumulative.get_num() << 64;
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), cumulative.get_den_mpz_t());
  mpz_class hi = scaled >> 64;
  mpz_class lo = scaled - (hi << 64);
  return (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
}

void check_weights(const Weights& w) {
  for (const auto& x : w)
    if (sgn(x) < 0) throw InvalidArgument("negative weight");
  if (w[0] + w[1] + w[2] != 1) throw InvalidArgument("weights must sum to 1");
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

Weights uniform_weights() {
  return {mpq_class(1, 3), mpq_class(1, 3), mpq_class(1, 3)};
}

Weights parse_weights(std::string_view text) {
  auto parts = split(trim(text), ',');
  if (parts.size() != 3) throw ParseError("expected three weights, got '" + std::string(text) + "'");
  Weights w{parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2])};
  if (w[0] + w[1] + w[2] != 1) throw ParseError("weights must sum to 1: '" + std::string(text) + "'");
  return w;
}

std::string weights_to_string(const Weights& w) {
  return w[0].get_str() + "," + w[1].get_str() + "," + w[2].get_str();
}

// ---------------------------------------------------------------------------
// OmegaSeq

OmegaSeq OmegaSeq::periodic(std::vector<Letter> preperiod, std::vector<Letter> period) {
  if (period.empty()) throw InvalidArgument("period must be nonempty");
  for (auto l : preperiod)
    if (l > 2) throw AlphabetViolation("letter outside {0,1,2}");
  for (auto l : period)
    if (l > 2) throw AlphabetViolation("letter outside {0,1,2}");
  OmegaSeq s;
  s.kind_ = Kind::EventuallyPeriodic;
  s.preperiod_ = std::move(preperiod);
  s.period_ = std::move(period);
  s.normalize();
  return s;
}

OmegaSeq OmegaSeq::bernoulli(const Weights& weights, std::uint64_t seed, std::uint64_t offset) {
  check_weights(weights);
  OmegaSeq s;
  s.kind_ = Kind::SeededRandom;
  s.weights_ = weights;
  s.seed_ = seed;
  s.offset_ = offset;
  s.thresholds_[0] = scaled_threshold(weights[0]);
  s.thresholds_[1] = scaled_threshold(weights[0] + weights[1]);
  return s;
}

OmegaSeq OmegaSeq::parse(std::string_view text) {
  text = trim(text);
  constexpr std::string_view kBern = "bernoulli:";
  if (text.substr(0, kBern.size()) == kBern) {
    auto rest = text.substr(kBern.size());
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("expected bernoulli:w0,w1,w2:seed");
    Weights w = parse_weights(rest.substr(0, colon));
    auto tail = rest.substr(colon + 1);
    std::uint64_t offset = 0;
    if (auto at = tail.find('@'); at != std::string_view::npos) {
      offset = parse_u64(tail.substr(at + 1), "offset");
      tail = tail.substr(0, at);
    }
    return bernoulli(w, parse_u64(tail, "seed"), offset);
  }
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')' || text.find('(', open + 1) != std::string_view::npos)
    throw ParseError("expected [preperiod](period) or bernoulli:w0,w1,w2:seed, got '" + std::string(text) + "'");
  auto pre = text.substr(0, open);
  auto per = text.substr(open + 1, text.size() - open - 2);
  if (per.empty()) throw ParseError("empty period in '" + std::string(text) + "'");
  try {
    return periodic(parse_letters(pre), parse_letters(per));
  } catch (const AlphabetViolation& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

void OmegaSeq::normalize() {
  const std::size_t n = period_.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = period_[i] == period_[i - d];
    if (ok) {
      period_.resize(d);
      break;
    }
  }
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    preperiod_.pop_back();
  }
}

Letter OmegaSeq::letter(std::uint64_t i) const {
  if (kind_ == Kind::EventuallyPeriodic) {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
  }
  const std::uint64_t u = mix64(seed_ + kGolden * (offset_ + i + 1));
  if (u < thresholds_[0]) return 0;
  if (u < thresholds_[1]) return 1;
  return 2;
}

std::vector<Letter> OmegaSeq::prefix(std::size_t n) const {
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = letter(i);
  return out;
}

OmegaSeq OmegaSeq::shifted(std::uint64_t k) const {
  OmegaSeq s = *this;
  if (kind_ == Kind::SeededRandom) {
    s.offset_ += k;
    return s;
  }
  const std::uint64_t drop = std::min<std::uint64_t>(k, s.preperiod_.size());
  s.preperiod_.erase(s.preperiod_.begin(), s.preperiod_.begin() + static_cast<std::ptrdiff_t>(drop));
  const std::uint64_t rot = (k - drop) % s.period_.size();
  std::rotate(s.period_.begin(), s.period_.begin() + static_cast<std::ptrdiff_t>(rot), s.period_.end());
  s.normalize();
  return s;
}

std::string OmegaSeq::to_string() const {
  if (kind_ == Kind::SeededRandom) {
    std::string out = "bernoulli:" + weights_to_string(weights_) + ":" + std::to_string(seed_);
    if (offset_ != 0) out += "@" + std::to_string(offset_);
    return out;
  }
  return letters_to_string(preperiod_) + "(" + letters_to_string(period_) + ")";
}

bool operator==(const OmegaSeq& x, const OmegaSeq& y) {
  if (x.kind_ != y.kind_) return false;
  if (x.kind_ == OmegaSeq::Kind::EventuallyPeriodic)
    return x.preperiod_ == y.preperiod_ && x.period_ == y.period_;
  return x.weights_ == y.weights_ && x.seed_ == y.seed_ && x.offset_ == y.offset_;
}

OmegaSeq splice(std::span<const Letter> head, std::span<const Letter> period) {
  return OmegaSeq::periodic({head.begin(), head.end()}, {period.begin(), period.end()});
}

OmegaSeq shift(const OmegaSeq& omega) { return omega.shifted(1); }

const char* to_string(OmegaClass c) {
  switch (c) {
    case OmegaClass::EventuallyConstant: return "EventuallyConstant";
    case OmegaClass::AllLettersInfinitelyOften: return "AllLettersInfinitelyOften";
    case OmegaClass::Other: return "Other";
  }
  return "?";
}

OmegaClass classify(const OmegaSeq& omega) {
  if (!omega.is_periodic())
    throw NotDecidable("classification of a random stream is not decidable from finite data");
  const auto& p = omega.period();
  if (p.size() == 1) return OmegaClass::EventuallyConstant;
  unsigned mask = 0;
  for (auto l : p) mask |= 1u << l;
  return mask == 7 ? OmegaClass::AllLettersInfinitelyOften : OmegaClass::Other;
}

std::vector<Letter> parse_letters(std::string_view digits) {
  std::vector<Letter> out;
  out.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '2') throw AlphabetViolation(std::string("letter '") + ch + "' outside {0,1,2}");
    out.push_back(static_cast<Letter>(ch - '0'));
  }
  return out;
}

std::string letters_to_string(std::span<const Letter> w) {
  std::string s;
  s.reserve(w.size());
  for (auto l : w) s.push_back(static_cast<char>('0' + l));
  return s;
}

// ---------------------------------------------------------------------------
// Block combinatorics

int block_count(std::span<const Letter> w) {
  int count = 0;
  unsigned mask = 0;
  for (auto l : w) {
    if (l > 2) throw AlphabetViolation("letter outside {0,1,2}");
    mask |= 1u << l;
    if (mask == 7) {
      ++count;
      mask = 0;
    }
  }
  return count;
}

int block_count(std::string_view digits) { return block_count(parse_letters(digits)); }

BlockStats t_sequence(const OmegaSeq& omega, std::size_t n, std::uint64_t letter_budget) {
  if (omega.is_periodic()) {
    if (classify(omega) != OmegaClass::AllLettersInfinitelyOften)
      throw Diverges("t_n diverges: some letter does not occur infinitely often in " + omega.to_string());
  } else {
    for (const auto& w : omega.weights())
      if (sgn(w) == 0) throw Diverges("t_n diverges: a letter has zero weight in " + omega.to_string());
  }
  BlockStats out;
  out.t_values.reserve(n);
  out.q_values.reserve(n);
  unsigned mask = 0;
  std::uint64_t last = 0;
  for (std::uint64_t i = 0; out.t_values.size() < n; ++i) {
    if (i >= letter_budget) throw BudgetExceeded("t_sequence exceeded its letter budget");
    mask |= 1u << omega.letter(i);
    if (mask == 7) {
      out.t_values.push_back(i + 1);
      out.q_values.push_back(i + 1 - last);
      last = i + 1;
      mask = 0;
    }
  }
  return out;
}

std::map<int, std::uint64_t> count_by_T(int m) {
  if (m < 0) throw InvalidArgument("word length must be nonnegative");
  if (m > 15) throw BudgetExceeded("count_by_T enumerates 3^m words; m <= 15 required");
  std::map<int, std::uint64_t> counts;
  std::vector<Letter> w(static_cast<std::size_t>(m), 0);
  for (;;) {
    ++counts[block_count(w)];
    std::size_t i = 0;
    while (i < w.size() && w[i] == 2) w[i++] = 0;
    if (i == w.size()) break;
    ++w[i];
  }
  return counts;
}

mpq_class expected_T_exact(int m, const Weights& weights) {
  check_weights(weights);
  if (m < 0) throw InvalidArgument("word length must be nonnegative");
  // States are the letter sets seen since the last completed block.
  std::array<mpq_class, 7> dist;
  dist[0] = 1;
  mpq_class expected = 0;
  for (int step = 0; step < m; ++step) {
    std::array<mpq_class, 7> next;
    for (unsigned mask = 0; mask < 7; ++mask) {
      if (sgn(dist[mask]) == 0) continue;
      for (unsigned l = 0; l < 3; ++l) {
        if (sgn(weights[l]) == 0) continue;
        const mpq_class p = dist[mask] * weights[l];
        const unsigned nm = mask | (1u << l);
        if (nm == 7) {
          expected += p;
          next[0] += p;
        } else {
          next[nm] += p;
        }
      }
    }
    dist = std::move(next);
  }
  return expected;
}

C0Estimate estimate_C0(const Weights& weights, std::size_t n, std::size_t trials,
                       std::uint64_t seed, unsigned threads) {
  check_weights(weights);
  for (const auto& w : weights)
    if (sgn(w) == 0) throw Diverges("estimate_C0 requires all letter weights positive");
  if (n == 0 || trials == 0) throw InvalidArgument("n and trials must be positive");

  C0Estimate est;
  est.trials = trials;
  est.n = n;
  est.seed = seed;
  est.samples.assign(trials, 0.0);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto stream = OmegaSeq::bernoulli(weights, derive_seed(seed, t));
      const auto stats = t_sequence(stream, n);
      est.samples[t] = static_cast<double>(stats.t_values.back()) / static_cast<double>(n);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (threads == 1) {
    run(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (trials + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      const std::size_t b = k * chunk, e = std::min(trials, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
  }

  double sum = 0;
  for (double x : est.samples) sum += x;
  est.mean = sum / static_cast<double>(trials);
  double ss = 0;
  for (double x : est.samples) ss += (x - est.mean) * (x - est.mean);
  est.stddev = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  const double half = 1.96 * est.stddev / std::sqrt(static_cast<double>(trials));
  est.ci95_lo = est.mean - half;
  est.ci95_hi = est.mean + half;
  return est;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "nonmember";
    case Membership::MemberAtHorizon: return "member-at-horizon";
    case Membership::UndecidedAtHorizon: return "undecided-at-horizon";
  }
  return "?";
}

MembershipReport omega_membership(const OmegaSeq& omega, double C, double eps, std::size_t horizon) {
  if (!(C > 0.0)) throw InvalidArgument("C must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
  MembershipReport rep;

  if (omega.is_periodic()) {
    if (classify(omega) != OmegaClass::AllLettersInfinitelyOften)
      throw Diverges("t_n diverges for " + omega.to_string());
    // After a completed block the scanner state is just the position. Past
    // the preperiod that position is determined by its phase in the period,
    // so the completion phases cycle and t_n becomes arithmetic.
    const std::uint64_t pre = omega.preperiod().size();
    const std::uint64_t per = omega.period().size();
    std::unordered_map<std::uint64_t, std::size_t> seen;  // phase -> index into t
    std::vector<std::uint64_t> t;
    unsigned mask = 0;
    std::size_t first = 0;
    for (std::uint64_t i = 0;; ++i) {
      mask |= 1u << omega.letter(i);
      if (mask != 7) continue;
      mask = 0;
      t.push_back(i + 1);
      if (i + 1 < pre) continue;
      const std::uint64_t phase = (i + 1 - pre) % per;
      auto [it, inserted] = seen.emplace(phase, t.size() - 1);
      if (!inserted) {
        first = it->second;
        break;
      }
    }
    const std::size_t last = t.size() - 1;
    rep.exact = true;
    rep.cycle_letters = t[last] - t[first];
    rep.cycle_blocks = last - first;
    const double slope_gap = static_cast<double>(rep.cycle_letters) - C * static_cast<double>(rep.cycle_blocks);
    bool member;
    if (slope_gap < 0) {
      member = true;
    } else if (slope_gap > 0) {
      member = false;
    } else {
      // t_n - Cn is periodic in n on the cycle; it must be <= 0 throughout.
      member = true;
      for (std::size_t k = first; k < last; ++k)
        if (static_cast<double>(t[k]) > C * static_cast<double>(k + 1)) member = false;
    }
    // q_n is bounded on the cycle while t_n grows, so q_{n+1} <= ε t_n
    // eventually holds for every ε > 0.
    rep.verdict = member ? Membership::Member : Membership::NonMember;
    return rep;
  }

  if (horizon < 2) throw InvalidArgument("horizon must be at least 2");
  const auto stats = t_sequence(omega, horizon + 1);
  rep.horizon = horizon;
  bool ok = true;
  for (std::size_t n = std::max<std::size_t>(1, horizon / 2); n <= horizon; ++n) {
    const double tn = static_cast<double>(stats.t_values[n - 1]);
    const double ratio = tn / static_cast<double>(n);
    const double qratio = static_cast<double>(stats.q_values[n]) / tn;
    rep.max_t_over_n = std::max(rep.max_t_over_n, ratio);
    rep.max_q_over_t = std::max(rep.max_q_over_t, qratio);
    if (ratio > C || qratio > eps) ok = false;
  }
  rep.verdict = ok ? Membership::MemberAtHorizon : Membership::UndecidedAtHorizon;
  return rep;
}

}  // namespace grig
