#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "grig/bounds.hpp"
#include "grig/errors.hpp"
#include "grig/growth.hpp"
#include "grig/growth_forms.hpp"
#include "support.hpp"

using namespace grig;

namespace {

std::vector<std::uint64_t> oracle_ball(const OmegaSeq& omega, std::string_view gens, unsigned r, unsigned depth) {
  return oracle::perm_ball(omega, gens, r, depth).counts;
}

ContextPtr ctx(const char* omega, GenSet g = GenSet::A, std::uint64_t radius = 40) {
  return GroupContext::make(OmegaSeq::parse(omega), g, radius);
}

}  // namespace

TEST_CASE("ball examples") {
  auto b = enumerate_ball(ctx("(012)"), 2);
  CHECK(b.counts == std::vector<std::uint64_t>{1, 5, 11});
  CHECK(enumerate_ball(ctx("(012)", GenSet::S), 1).counts == std::vector<std::uint64_t>{1, 4});
  CHECK(b.gamma(2) == 11);
  CHECK_THROWS_AS(b.gamma(3), RangeExceeded);
  CHECK(b.words[0].empty());
  CHECK(b.words[1] == "a");
  const auto big = enumerate_ball(ctx("(012)"), 10);
  CHECK(big.counts ==
        std::vector<std::uint64_t>{1, 5, 11, 23, 40, 68, 108, 176, 271, 427, 643});
}

TEST_CASE("ball sizes match the permutation oracle") {
  for (const char* w : {"(012)", "(01)", "01(2)", "2(10)", "(0112)"}) {
    const auto omega = OmegaSeq::parse(w);
    for (GenSet g : {GenSet::A, GenSet::S}) {
      const auto b = enumerate_ball(GroupContext::make(omega, g, 12), 6);
      CHECK_MESSAGE(b.counts == oracle_ball(omega, generator_symbols(g), 6, 12), w);
    }
  }
  const auto s = OmegaSeq::parse("bernoulli:1/3,1/3,1/3:7");
  CHECK(enumerate_ball(GroupContext::exact(s), 6).counts == oracle_ball(s, "abcd", 6, 12));
}

TEST_CASE("stored words are geodesics of their elements") {
  const auto c = ctx("(012)");
  const auto b = enumerate_ball(c, 8);
  for (std::size_t i = 0; i < b.size(); ++i) {
    REQUIRE(b.words[i].size() == b.lengths[i]);
    REQUIRE(element_key(GenWord(c, b.words[i])) == b.keys[i]);
    REQUIRE(b.find(b.keys[i]) == i);
  }
  const auto preds = geodesic_predecessors(b);
  gen::Gen g(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t idx = g.below(b.size());
    const auto all = all_geodesics(b, preds, idx);
    REQUIRE(!all.empty());
    REQUIRE(std::is_sorted(all.begin(), all.end()));
    REQUIRE(all.front() == b.words[idx]);
    for (const auto& w : all) {
      REQUIRE(w.size() == b.lengths[idx]);
      REQUIRE(element_key(GenWord(c, w)) == b.keys[idx]);
    }
  }
  // (ad)^4 = e, so adad = dada.
  const auto idx = *b.find(element_key(GenWord(c, "adad")));
  const auto all = all_geodesics(b, preds, idx);
  CHECK(std::find(all.begin(), all.end(), "dada") != all.end());
  CHECK_THROWS_AS(all_geodesics(b, preds, b.size() - 1, 0), BudgetExceeded);
}

TEST_CASE("growth table properties") {
  gen::Gen g(12);
  std::vector<ContextPtr> ctxs{ctx("(012)"), ctx("(01)"), ctx("01(2)"), ctx("(012)", GenSet::S),
                               GroupContext::exact(OmegaSeq::parse("bernoulli:1/3,1/3,1/3:3"))};
  for (int i = 0; i < 4; ++i) ctxs.push_back(GroupContext::exact(g.omega_nonconstant()));
  for (const auto& c : ctxs) {
    const auto b = enumerate_ball(c, 11);
    const auto& t = b.counts;
    REQUIRE(t[0] == 1);
    for (std::size_t n = 1; n < t.size(); ++n) REQUIRE(t[n] > t[n - 1]);
    for (std::size_t n = 0; n < t.size(); ++n)
      for (std::size_t m = 0; n + m < t.size(); ++m) REQUIRE(t[n + m] <= t[n] * t[m]);
    // Sphere sizes are submultiplicative as well.
    auto sphere = [&](std::size_t n) { return n == 0 ? t[0] : t[n] - t[n - 1]; };
    for (std::size_t n = 0; n < t.size(); ++n)
      for (std::size_t m = 0; n + m < t.size(); ++m) REQUIRE(sphere(n + m) <= sphere(n) * sphere(m));
  }
}

TEST_CASE("tables do not depend on the thread count") {
  const auto c = ctx("(012)");
  const auto one = enumerate_ball(c, 12, {1});
  for (unsigned t : {2u, 8u}) {
    const auto other = enumerate_ball(c, 12, {t});
    CHECK(other.counts == one.counts);
    CHECK(other.words == one.words);
    CHECK(other.keys == one.keys);
    CHECK(other.neighbors == one.neighbors);
  }
}

TEST_CASE("budget and surrogate range") {
  CHECK_THROWS_AS(enumerate_ball(ctx("(012)"), 10, {1, 100}), BudgetExceeded);
  const auto s = GroupContext::surrogate(OmegaSeq::parse("(0)"), 3);
  CHECK_NOTHROW(enumerate_ball(s, 4));
  CHECK_THROWS_AS(enumerate_ball(s, 5), ValidityExceeded);
}

TEST_CASE("shared prefixes give equal counts up to 2^(n-1)") {
  gen::Gen g(13);
  for (int i = 0; i < 6; ++i) {
    const std::size_t n = 1 + g.below(4);
    const auto prefix = g.letters(n);
    auto w1 = prefix, w2 = prefix;
    w1.push_back(0);
    w2.push_back(1);
    const auto x = GroupContext::exact(OmegaSeq::periodic(w1, {0, 1, 2}));
    const auto y = GroupContext::exact(OmegaSeq::periodic(w2, {2, 1, 0}));
    const unsigned r = 1u << (n - 1);
    CHECK(enumerate_ball(x, r).counts == enumerate_ball(y, r).counts);
  }
}

TEST_CASE("L_q examples") {
  for (const char* w : {"(012)", "(01)", "0(12)"}) {
    const auto c = ctx(w);
    CHECK(L_q(GenWord(c, "a"), 1) == 0);
    CHECK(L_q(GenWord(c, "d"), 1) == 1);
    CHECK(L_q(GenWord(c, "b"), 1) == 2);
    CHECK(L_q(GenWord(c, "c"), 1) == 2);
    CHECK(L_q(GenWord(c, ""), 3) == 0);
  }
  CHECK(L_q(GenWord(ctx("(012)"), "b"), 0) == 1);
}

TEST_CASE("sections at a level match the action") {
  gen::Gen g(14);
  for (int k = 0; k < 4; ++k) {
    const auto omega = g.omega_nonconstant();
    const auto verts2 = oracle::vertices(3);
    for (int i = 0; i < 100; ++i) {
      const auto w = g.word("abcd", 0, 12);
      for (unsigned q = 0; q <= 3; ++q) {
        const auto secs = sections_at_level(w, {&omega, 0}, q);
        const auto vs = oracle::vertices(q);
        REQUIRE(secs.size() == vs.size());
        for (std::size_t j = 0; j < vs.size(); ++j) {
          const auto image = oracle::act(w, omega, vs[j]);
          for (const auto& u : verts2) {
            // g(vu) = g(v) g_v(u), with g_v read in τ^q ω.
            REQUIRE(oracle::act(w, omega, vs[j] + u) == image + oracle::act(secs[j], omega.shifted(q), u));
          }
        }
      }
    }
  }
}

TEST_CASE("length inequalities hold on small balls") {
  for (const char* w : {"(012)", "(01)", "01(2)", "bernoulli:1/3,1/3,1/3:7"}) {
    LemmaOptions o;
    o.pairs = 2000;
    const auto r = verify_lemmas(ctx(w), 8, o);
    CHECK_MESSAGE(r.ok(), w);
    CHECK(r.elements == 271);
    CHECK(r.checks.at("l-0") >= r.elements);
    CHECK(r.checks.at("l-2") == 4 * 2000);
  }
  // l-4 only applies where the prefix holds every letter.
  const auto r01 = verify_lemmas(ctx("(01)"), 4);
  CHECK(r01.l4_depths.empty());
  const auto r012 = verify_lemmas(ctx("(012)"), 4);
  CHECK(r012.l4_depths == std::vector<unsigned>{3, 4});
  CHECK_THROWS_AS(verify_lemmas(ctx("(012)", GenSet::S), 4), InvalidArgument);
}

TEST_CASE("length inequalities against a direct recount") {
  // l-1 and l-3 recomputed from ball lengths for (012).
  const auto c = ctx("(012)");
  const auto b = enumerate_ball(c, 8);
  SectionLengths lens(c);
  const auto& omega = c->effective();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& w = b.words[i];
    const double len = double(w.size());
    for (unsigned q = 1; q <= 3; ++q) {
      const auto secs = sections_at_level(w, {&omega, 0}, q);
      std::uint64_t total = 0;
      for (const auto& s : secs) {
        const auto sl = lens.length(q, s);
        total += sl;
        REQUIRE(std::ldexp(double(sl), int(q)) <= len + std::ldexp(1.0, int(q)) - 1);
      }
      REQUIRE(total == level_length(w, q, lens));
      const char h = "dcb"[omega.letter(q - 1)];
      const auto hcount = std::count(w.begin(), w.end(), h);
      REQUIRE(double(total) <= len + 1 - double(hcount));
    }
  }
}

TEST_CASE("alpha and kappa") {
  const auto p3 = alpha_for_C(3);
  CHECK(p3.kappa == doctest::Approx(0.0016986).epsilon(1e-5 / 0.0017));
  CHECK(p3.alpha == doctest::Approx(0.99830).epsilon(1e-5));
  const auto p = alpha_for_C(7.3);
  CHECK(p.kappa > 0.001);
  CHECK(p.kappa < 0.0011);
  CHECK(p.alpha < 0.999);
  CHECK(p.alpha > 0.9989);
  double prev = 0;
  for (double C = 3; C <= 20; C += 0.25) {
    const auto a = alpha_for_C(C);
    CHECK(a.alpha > prev);
    CHECK(a.kappa + a.alpha == doctest::Approx(1.0));
    CHECK(a.kappa == doctest::Approx(std::log(132.0 / 131.0) / std::log(11 * std::pow(2.0, C))));
    prev = a.alpha;
  }
  CHECK_THROWS_AS(alpha_for_C(2.5), InvalidArgument);
  CHECK(rho() == mpq_class(131, 132));
}

TEST_CASE("theta0 against Newton iteration") {
  double x = 1;
  for (int i = 0; i < 60; ++i) x -= (x * x * x + x * x + x - 2) / (3 * x * x + 2 * x + 1);
  const auto t = theta0();
  CHECK(t.x0 == doctest::Approx(x).epsilon(1e-11));
  CHECK(std::abs(t.residual) < 1e-10);
  CHECK(t.theta0 == doctest::Approx(std::log(2.0) / std::log(2 / x)).epsilon(1e-11));
  CHECK(t.theta0 > 0.7674);
  CHECK(t.theta0 < 0.767429);
}

TEST_CASE("block recursion bound internals") {
  const auto d1 = dohuz_bound(OmegaSeq::parse("(012)"), 1);
  CHECK(d1.x_m == 88);
  CHECK(d1.t_m == 3);
  CHECK(d1.log10_bound == doctest::Approx(131.0 / 132.0 * 88).epsilon(1e-12));
  CHECK(std::abs(d1.log10_bound - 131.0 / 132.0 * 88) < 1e-9);
  CHECK(dohuz_bound(OmegaSeq::parse("(012)"), 2).x_m == 7744);
  CHECK_THROWS_AS(dohuz_bound(OmegaSeq::parse("(01)"), 1), Diverges);

  for (const char* w : {"(012)", "bernoulli:1/3,1/3,1/3:7", "(001122)", "2(0112)"}) {
    const auto omega = OmegaSeq::parse(w);
    // t_i from the DP maximum over splittings.
    const auto letters = omega.prefix(400);
    std::vector<std::uint64_t> t;
    for (std::size_t n = 1; n <= letters.size() && t.size() < 10; ++n)
      if (oracle::max_blocks({letters.begin(), letters.begin() + n}) > int(t.size())) t.push_back(n);
    for (unsigned m = 1; m <= 10; ++m) {
      const auto d = dohuz_bound(omega, m);
      REQUIRE(d.t == std::vector<std::uint64_t>(t.begin(), t.begin() + m));
      mpz_class x = 1;
      for (unsigned i = 0; i < m; ++i) x *= 11;
      x <<= static_cast<mp_bitcnt_t>(d.t_m);
      CHECK(d.x_m == x);
      mpq_class rm = 1;
      for (unsigned i = 0; i < m; ++i) rm *= rho();
      CHECK(d.R_m == rm * mpq_class(x));
      mpq_class s = 0, prod = 1;
      std::uint64_t prev = 0;
      for (unsigned i = 0; i < m; ++i) {
        const std::uint64_t q = t[i] - prev;
        prev = t[i];
        mpz_class beta = 1;
        beta <<= static_cast<mp_bitcnt_t>(q + 1);
        s += prod * mpq_class(beta);
        mpz_class a = 11;
        a <<= static_cast<mp_bitcnt_t>(q);
        prod *= rho() * mpq_class(a);
      }
      CHECK(d.S_m == s);
      CHECK(d.s_le_r == (s <= rm * mpq_class(x)));
      CHECK(d.s_le_r);
    }
  }
}

TEST_CASE("growth recursion bound on computed balls") {
  const auto c = ctx("(012)");
  const auto base = enumerate_ball(c, 12);
  for (unsigned q = 1; q <= 3; ++q) {
    const auto shifted = enumerate_ball(c->shifted(q), 2);
    const auto r = recursion_check(base, shifted, q);
    CHECK(r.q == q);
    CHECK(r.violations.empty());
    CHECK(r.checked > 0);
  }
}

TEST_CASE("growth form parsing") {
  CHECK(GrowthForm::parse("2^n").kind() == GrowthForm::Kind::TwoPow);
  CHECK(GrowthForm::parse("poly(2)").log_value(10) == doctest::Approx(std::log(100.0)));
  CHECK(GrowthForm::parse("exp(n^0.5)").log_value(16) == doctest::Approx(4.0));
  CHECK(GrowthForm::parse("exp(n)").log_value(3) == doctest::Approx(3.0));
  CHECK(GrowthForm::parse("exp(n/log(n)^2)").log_value(100) ==
        doctest::Approx(100 / std::pow(std::log(100.0), 2)));
  CHECK_FALSE(GrowthForm::parse("exp(n/log(n)^2)").defined_at(1));
  CHECK(GrowthForm::parse("2^n").log_value(10) == doctest::Approx(10 * std::log(2.0)));
  for (const char* bad : {"3^n", "poly()", "exp(n^x)", "exp(n^-1)", "", "table:/nonexistent/file.csv"})
    CHECK_THROWS(GrowthForm::parse(bad));
  const auto t = GrowthForm::from_counts({1, 5, 11});
  CHECK(t.max_argument() == 2u);
  CHECK(t.log_value(1) == doctest::Approx(std::log(5.0)));
  CHECK_THROWS_AS(t.log_value(3), RangeExceeded);
  CHECK_THROWS_AS(GrowthForm::from_log_table({}), EmptyInput);
}

TEST_CASE("growth form CSV round trip") {
  const auto path = std::filesystem::temp_directory_path() / "grig_test_table.csv";
  {
    std::ofstream f(path);
    f << "# a comment\nn,gamma\n0,1\n1,5\n2,11\n3,23\n";
  }
  const auto t = GrowthForm::parse("table:" + path.string());
  CHECK(t.max_argument() == 3u);
  CHECK(t.log_value(3) == doctest::Approx(std::log(23.0)));
  {
    std::ofstream f(path);
    f << "1,5\n2,11\n";
  }
  const auto u = GrowthForm::from_csv(path.string());
  CHECK(u.max_argument() == 2u);
  CHECK_FALSE(u.defined_at(0));
  {
    std::ofstream f(path);
    f << "0,1\n2,5\n";
  }
  CHECK_THROWS(GrowthForm::from_csv(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("compare_growth") {
  const auto r = compare_growth(GrowthForm::parse("poly(2)"), GrowthForm::parse("poly(3)"), 4, 1, 100);
  CHECK(r.witness == 1u);
  CHECK(r.per_c.size() == 4);
  CHECK(r.per_c[0].status == CompareEntry::Status::Holds);

  const auto gamma = GrowthForm::from_counts(enumerate_ball(ctx("(012)"), 12).counts);
  // γ(1)=5 > e, so C=1 fails at n=1 and the witness is 2.
  const auto ge = compare_growth(gamma, GrowthForm::parse("exp(n)"), 3, 0, 12);
  CHECK(ge.witness == 2u);
  CHECK(ge.per_c[0].status == CompareEntry::Status::Violated);
  CHECK(ge.per_c[0].n == 1);

  // e^{√n} ≼ γ: pointwise scan over a radius-12 table.
  const auto s = compare_growth(GrowthForm::parse("exp(n^0.5)"), gamma, 4, 1, 12);
  CHECK(s.witness == 1u);
  for (const auto& e : s.per_c) {
    if (e.C >= 2) {
      CHECK(e.status == CompareEntry::Status::NotEvaluable);
      CHECK(e.n * e.C > 12);
    }
  }

  // 2^n is not below n² with a fixed C on a long range.
  const auto v = compare_growth(GrowthForm::parse("2^n"), GrowthForm::parse("poly(2)"), 3, 1, 200);
  CHECK_FALSE(v.witness);
  for (const auto& e : v.per_c) {
    CHECK(e.status == CompareEntry::Status::Violated);
    CHECK(e.n * std::log(2.0) > 2 * std::log(double(e.C * e.n)));
  }
}

TEST_CASE("oscillation witnesses") {
  // n² for n <= 300, then 2^n.
  std::vector<double> logs;
  for (int n = 0; n <= 600; ++n) logs.push_back(n <= 300 ? 2 * std::log(std::max(n, 1)) : n * std::log(2.0));
  const auto synth = GrowthForm::from_log_table(logs);
  const auto g1 = GrowthForm::parse("exp(n^0.8)");
  const auto g2 = GrowthForm::parse("exp(n^0.9)");
  const auto r = oscillation_witness(synth, g1, g2, 3, 3);
  CHECK(r.lower_found());
  CHECK(r.upper_found());
  for (const auto& e : r.lower)
    if (e.argument) CHECK(synth.log_value(e.factor * *e.argument) < g1.log_value(*e.argument));
  for (const auto& e : r.upper)
    if (e.argument) CHECK(g2.log_value(e.factor * *e.argument) < synth.log_value(*e.argument));

  std::vector<double> sq, pw;
  for (int n = 0; n <= 400; ++n) {
    sq.push_back(2 * std::log(std::max(n, 1)));
    pw.push_back(n * std::log(2.0));
  }
  const auto lo = oscillation_witness(GrowthForm::from_log_table(sq), GrowthForm::parse("exp(n^0.5)"), g2, 2, 2);
  CHECK(lo.lower_found());
  CHECK_FALSE(lo.upper_found());
  const auto hi = oscillation_witness(GrowthForm::from_log_table(pw), g1, g2, 2, 2);
  CHECK(hi.upper_found());
}
