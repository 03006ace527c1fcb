#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grig/errors.hpp"
#include "grig/omega.hpp"
#include "support.hpp"

using namespace grig;

namespace {

std::vector<Letter> word_from_index(std::uint64_t idx, int len) {
  std::vector<Letter> w(len);
  for (int i = len; i-- > 0;) {
    w[i] = static_cast<Letter>(idx % 3);
    idx /= 3;
  }
  return w;
}

std::uint64_t pow3(int m) {
  std::uint64_t p = 1;
  for (int i = 0; i < m; ++i) p *= 3;
  return p;
}

}  // namespace

TEST_CASE("parse and normalize") {
  CHECK(OmegaSeq::parse("(012)").to_string() == "(012)");
  CHECK(OmegaSeq::parse("(012012)").to_string() == "(012)");
  CHECK(OmegaSeq::parse("0(120)").to_string() == "(012)");
  CHECK(OmegaSeq::parse("01(2)").to_string() == "01(2)");
  CHECK(OmegaSeq::parse("2(22)") == OmegaSeq::parse("(2)"));
  CHECK_THROWS_AS(OmegaSeq::parse("013"), ParseError);
  CHECK_THROWS_AS(OmegaSeq::parse("()"), ParseError);
  CHECK_THROWS_AS(OmegaSeq::parse("(3)"), ParseError);
  CHECK_THROWS_AS(OmegaSeq::parse("bernoulli:1/2,1/2,1/2:1"), ParseError);
}

TEST_CASE("shift") {
  CHECK(shift(OmegaSeq::parse("(012)")).to_string() == "(120)");
  CHECK(shift(OmegaSeq::parse("2(01)")).to_string() == "(01)");
  const auto s = OmegaSeq::parse("bernoulli:1/3,1/3,1/3:99");
  const auto t = shift(s);
  for (std::uint64_t i = 0; i <= 100; ++i) CHECK(t.letter(i) == s.letter(i + 1));
  // Re-querying a stream returns the same letters in any order.
  for (std::uint64_t i = 300; i-- > 0;) CHECK(s.letter(i) == s.letter(i));
  CHECK(s.shifted(5).letter(0) == s.letter(5));
}

TEST_CASE("classify") {
  CHECK(classify(OmegaSeq::parse("(0)")) == OmegaClass::EventuallyConstant);
  CHECK(classify(OmegaSeq::parse("012(1)")) == OmegaClass::EventuallyConstant);
  CHECK(classify(OmegaSeq::parse("(012)")) == OmegaClass::AllLettersInfinitelyOften);
  CHECK(classify(OmegaSeq::parse("(01)")) == OmegaClass::Other);
  CHECK_THROWS_AS(classify(OmegaSeq::parse("bernoulli:1/3,1/3,1/3:1")), NotDecidable);
}

TEST_CASE("seeded streams follow their weights") {
  const auto s = OmegaSeq::parse("bernoulli:1/2,1/4,1/4:5");
  std::array<int, 3> count{};
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++count[s.letter(i)];
  CHECK(count[0] / double(n) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(count[1] / double(n) == doctest::Approx(0.25).epsilon(0.03));
  const auto z = OmegaSeq::parse("bernoulli:0,1,0:3");
  for (int i = 0; i < 1000; ++i) CHECK(z.letter(i) == 1);
}

TEST_CASE("block_count examples") {
  CHECK(block_count("012") == 1);
  CHECK(block_count("021201") == 2);
  CHECK(block_count("0000000") == 0);
  CHECK(block_count("") == 0);
  CHECK_THROWS_AS(block_count("0123"), AlphabetViolation);
}

TEST_CASE("greedy block count is optimal for every word up to length 12") {
  for (int len = 0; len <= 12; ++len) {
    const auto total = pow3(len);
    for (std::uint64_t i = 0; i < total; ++i) {
      const auto w = word_from_index(i, len);
      const int t = block_count(w);
      if (t != oracle::max_blocks(w)) {
        FAIL_CHECK("mismatch on " << letters_to_string(w));
        return;
      }
      REQUIRE(3 * t <= len);
    }
  }
}

TEST_CASE("subadditive sandwich") {
  // Exhaustive for short words, random beyond.
  auto check = [](const std::vector<Letter>& a, const std::vector<Letter>& b) {
    std::vector<Letter> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const int ta = block_count(a), tb = block_count(b), tab = block_count(ab);
    return ta + tb <= tab && tab <= ta + tb + 1;
  };
  for (int la = 0; la <= 5; ++la)
    for (int lb = 0; lb <= 5; ++lb)
      for (std::uint64_t i = 0; i < pow3(la); ++i)
        for (std::uint64_t j = 0; j < pow3(lb); ++j) REQUIRE(check(word_from_index(i, la), word_from_index(j, lb)));
  gen::Gen g(11);
  for (int k = 0; k < 200000; ++k) {
    const auto a = g.letters(g.below(9)), b = g.letters(g.below(9));
    REQUIRE(check(a, b));
  }
}

TEST_CASE("t_sequence") {
  auto t = t_sequence(OmegaSeq::parse("(012)"), 3);
  CHECK(t.t_values == std::vector<std::uint64_t>{3, 6, 9});
  CHECK(t.q_values == std::vector<std::uint64_t>{3, 3, 3});
  // The second block of 001122001122... is "20011", completed at position 9.
  t = t_sequence(OmegaSeq::parse("(001122)"), 2);
  CHECK(t.t_values == std::vector<std::uint64_t>{5, 9});
  CHECK(block_count("00112200") == 1);
  CHECK(block_count("001122001") == 2);
  CHECK_THROWS_AS(t_sequence(OmegaSeq::parse("(01)"), 1), Diverges);
  CHECK_THROWS_AS(t_sequence(OmegaSeq::parse("bernoulli:1/2,1/2,0:1"), 1), Diverges);
}

TEST_CASE("duality t_n <= m iff T_m >= n") {
  gen::Gen g(3);
  std::vector<OmegaSeq> omegas{OmegaSeq::parse("(012)"), OmegaSeq::parse("(001122)"), OmegaSeq::parse("01(2110)")};
  for (int i = 0; i < 6; ++i) omegas.push_back(g.omega_all_letters());
  for (const auto& w : omegas) {
    const auto prefix = w.prefix(200);
    const auto t = t_sequence(w, 50);
    std::vector<int> T(201);
    for (int m = 0; m <= 200; ++m) T[m] = oracle::max_blocks(std::vector<Letter>(prefix.begin(), prefix.begin() + m));
    for (int n = 1; n <= 50; ++n)
      for (int m = 0; m <= 200; ++m) REQUIRE((t.t_values[n - 1] <= std::uint64_t(m)) == (T[m] >= n));
    for (std::size_t i = 0; i < t.q_values.size(); ++i) REQUIRE(t.q_values[i] >= 3);
  }
}

TEST_CASE("count_by_T") {
  CHECK(count_by_T(7) == std::map<int, std::uint64_t>{{0, 381}, {1, 1482}, {2, 324}});
  CHECK(count_by_T(3) == std::map<int, std::uint64_t>{{0, 21}, {1, 6}});
  CHECK(count_by_T(2) == std::map<int, std::uint64_t>{{0, 9}});
  CHECK_THROWS_AS(count_by_T(16), BudgetExceeded);
  for (int m = 0; m <= 9; ++m) {
    std::map<int, std::uint64_t> want;
    for (std::uint64_t i = 0; i < pow3(m); ++i) ++want[oracle::max_blocks(word_from_index(i, m))];
    CHECK(count_by_T(m) == want);
  }
}

TEST_CASE("expected_T_exact") {
  const auto u = uniform_weights();
  CHECK(expected_T_exact(7, u) == mpq_class(710, 729));
  CHECK(expected_T_exact(3, u) == mpq_class(2, 9));
  CHECK(expected_T_exact(2, u) == 0);
  for (int m = 0; m <= 10; ++m) {
    mpq_class sum = 0;
    for (auto [k, n] : count_by_T(m)) sum += mpq_class(k) * mpq_class(n);
    sum /= mpq_class(pow3(m));
    CHECK(expected_T_exact(m, u) == sum);
  }
  // Non-uniform weights against a weighted brute-force sum.
  const auto w = parse_weights("1/2,1/3,1/6");
  for (int m = 0; m <= 8; ++m) {
    mpq_class sum = 0;
    for (std::uint64_t i = 0; i < pow3(m); ++i) {
      const auto word = word_from_index(i, m);
      mpq_class p = 1;
      for (auto l : word) p *= w[l];
      sum += p * oracle::max_blocks(word);
    }
    CHECK(expected_T_exact(m, w) == sum);
  }
}

TEST_CASE("superadditivity of I_m") {
  for (const auto& w : {uniform_weights(), parse_weights("1/2,1/4,1/4"), parse_weights("0.6,0.3,0.1")}) {
    std::vector<mpq_class> I;
    for (int m = 0; m <= 20; ++m) I.push_back(expected_T_exact(m, w));
    for (int a = 0; a <= 20; ++a)
      for (int b = 0; a + b <= 20; ++b) REQUIRE(I[a + b] >= I[a] + I[b]);
  }
}

TEST_CASE("weights parsing") {
  CHECK(parse_weights("1/3,1/3,1/3") == uniform_weights());
  CHECK(parse_weights("0.5,0.25,0.25")[0] == mpq_class(1, 2));
  CHECK_THROWS_AS(parse_weights("1/2,1/2,1/2"), ParseError);
  CHECK_THROWS_AS(parse_weights("1,-1,1"), ParseError);
}

TEST_CASE("estimate_C0 against the renewal mean") {
  const auto e = estimate_C0(uniform_weights(), 10000, 100, 42);
  CHECK(std::fabs(e.mean - 5.5) < 0.055);
  CHECK(e.mean < 7.3);
  CHECK(e.ci95_lo <= e.mean);
  CHECK(e.mean <= e.ci95_hi);
  CHECK(e.samples.size() == 100);
  // Independent of the thread count.
  const auto e4 = estimate_C0(uniform_weights(), 10000, 100, 42, 4);
  CHECK(e4.samples == e.samples);
  const auto skew = estimate_C0(parse_weights("1/2,1/4,1/4"), 5000, 40, 7);
  CHECK(skew.mean == doctest::Approx(oracle::renewal_mean({0.5, 0.25, 0.25})).epsilon(0.02));
  CHECK_THROWS_AS(estimate_C0(parse_weights("1,0,0"), 100, 2, 1), Diverges);
}

TEST_CASE("omega_membership") {
  auto r = omega_membership(OmegaSeq::parse("(012)"), 4, 0.5, 1000);
  CHECK(r.verdict == Membership::Member);
  CHECK(r.exact);
  r = omega_membership(OmegaSeq::parse("(012)"), 2, 0.5, 1000);
  CHECK(r.verdict == Membership::NonMember);
  CHECK(omega_membership(OmegaSeq::parse("(012)"), 2.99, 0.5, 1000).verdict == Membership::NonMember);
  CHECK_THROWS_AS(omega_membership(OmegaSeq::parse("(012)"), 0, 0.5, 1000), InvalidArgument);
  CHECK_THROWS_AS(omega_membership(OmegaSeq::parse("(012)"), 4, 0, 1000), InvalidArgument);
  // Slope 3 exactly on the boundary C = 3.
  CHECK(omega_membership(OmegaSeq::parse("(012)"), 3, 0.5, 1000).verdict == Membership::Member);
  // (001122): t_n = 4n + 1, so C = 4 just fails.
  CHECK(t_sequence(OmegaSeq::parse("(001122)"), 5).t_values == std::vector<std::uint64_t>{5, 9, 13, 17, 21});
  CHECK(omega_membership(OmegaSeq::parse("(001122)"), 4, 0.5, 1000).verdict == Membership::NonMember);
  CHECK(omega_membership(OmegaSeq::parse("(001122)"), 4.01, 0.5, 1000).verdict == Membership::Member);
  r = omega_membership(OmegaSeq::parse("bernoulli:1/3,1/3,1/3:1"), 7.3, 0.1, 10000);
  CHECK(r.verdict == Membership::MemberAtHorizon);
  CHECK(r.max_t_over_n < 7.3);
  CHECK_THROWS_AS(omega_membership(OmegaSeq::parse("(01)"), 4, 0.5, 100), Diverges);
}
