#include "grig/growth.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <random>

#include "grig/errors.hpp"

namespace grig {

unsigned default_threads() {
  const char* env = std::getenv("GRIG_THREADS");
  if (!env) return 1;
  unsigned n = 0;
  const std::string_view s(env);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || p != s.data() + s.size() || n == 0) return 1;
  return std::min(n, 256u);
}

TreeGroupModel::Element TreeGroupModel::multiply(const Element& g, std::size_t s) const {
  // g is reduced, so only its last letter can interact with the new one.
  const char ch = "abcd"[s];
  Element out = g;
  if (ch == 'a') {
    if (!out.empty() && out.back() == 'a')
      out.pop_back();
    else
      out.push_back('a');
  } else if (!out.empty() && out.back() != 'a') {
    const int prod = (out.back() - 'a') ^ (ch - 'a');
    out.pop_back();
    if (prod != 0) out.push_back(static_cast<char>('a' + prod));
  } else {
    out.push_back(ch);
  }
  return out;
}

std::unique_ptr<GroupEnumerator> make_enumerator(const ContextPtr& ctx, EnumOptions opts) {
  return std::make_unique<GroupEnumerator>(TreeGroupModel{ctx}, opts, ctx->describe());
}

GroupBall enumerate_ball(const ContextPtr& ctx, unsigned radius, EnumOptions opts) {
  ctx->require_radius(radius, "enumerate_ball");
  auto e = make_enumerator(ctx, opts);
  e->grow_to(radius);
  return std::move(*e).take();
}

std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> geodesic_predecessors(const GroupBall& ball) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> preds(ball.size());
  const std::size_t k = ball.generator_count();
  for (std::size_t u = 0; u < ball.size(); ++u) {
    if (ball.lengths[u] >= ball.radius()) break;
    for (std::size_t s = 0; s < k; ++s) {
      const auto v = ball.neighbor(u, s);
      if (v >= 0 && ball.lengths[v] == ball.lengths[u] + 1)
        preds[v].emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint8_t>(s));
    }
  }
  return preds;
}

namespace {

void collect_geodesics(const GroupBall& ball,
                       const std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>>& preds,
                       std::size_t v, std::string& suffix, std::vector<std::string>& out, std::size_t limit) {
  if (v == 0) {
    if (out.size() >= limit) throw BudgetExceeded("more than " + std::to_string(limit) + " geodesics");
    out.emplace_back(suffix.rbegin(), suffix.rend());
    return;
  }
  for (auto [u, s] : preds[v]) {
    suffix.push_back(ball.generators[s]);
    collect_geodesics(ball, preds, u, suffix, out, limit);
    suffix.pop_back();
  }
}

}  // namespace

std::vector<std::string> all_geodesics(const GroupBall& ball,
                                       const std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>>& preds,
                                       std::size_t idx, std::size_t limit) {
  std::vector<std::string> out;
  std::string suffix;
  collect_geodesics(ball, preds, idx, suffix, out, limit);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

SectionLengths::SectionLengths(ContextPtr base, EnumOptions opts, unsigned max_radius)
    : base_(std::move(base)), opts_(opts), max_radius_(max_radius) {}

GroupEnumerator& SectionLengths::enumerator(std::uint64_t depth) {
  auto ctx = base_->shifted(depth);
  auto key = ctx->describe();
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, make_enumerator(ctx, opts_)).first;
  return *it->second;
}

const GroupBall& SectionLengths::ball(std::uint64_t depth, unsigned min_radius) {
  if (min_radius > max_radius_) throw BudgetExceeded("section ball radius " + std::to_string(min_radius));
  auto& e = enumerator(depth);
  e.grow_to(min_radius);
  return e.table();
}

std::uint32_t SectionLengths::length(std::uint64_t depth, const std::string& word) {
  const std::string r = reduce_word(word);
  auto& e = enumerator(depth);
  const TermId key = e.model().key(r);
  e.grow_to(std::min<std::uint64_t>(r.size(), max_radius_));
  for (;;) {
    if (auto idx = e.table().find(key)) return e.table().lengths[*idx];
    if (e.table().radius() >= max_radius_)
      throw BudgetExceeded("section length beyond radius " + std::to_string(max_radius_));
    e.grow_to(e.table().radius() + 1);
  }
}

std::vector<std::string> sections_at_level(const std::string& word, Oracle o, unsigned q) {
  std::vector<std::string> level{reduce_word(word)};
  for (unsigned k = 0; k < q; ++k) {
    std::vector<std::string> next;
    next.reserve(level.size() * 2);
    for (const auto& s : level) {
      bool swap = false;
      auto sec = split_sections(s, o.letter(), swap);
      next.push_back(std::move(sec[0]));
      next.push_back(std::move(sec[1]));
    }
    level = std::move(next);
    o = o.next();
  }
  return level;
}

std::uint64_t level_length(const std::string& word, unsigned q, SectionLengths& lengths) {
  std::uint64_t total = 0;
  for (const auto& s : sections_at_level(word, {&lengths.base()->effective(), 0}, q)) total += lengths.length(q, s);
  return total;
}

std::uint64_t L_q(const GenWord& g, unsigned q, EnumOptions opts) {
  SectionLengths lengths(g.context(), opts);
  return level_length(g.letters(), q, lengths);
}

// ---------------------------------------------------------------------------

namespace {

char h_generator(Letter l) { return l == 2 ? 'b' : l == 1 ? 'c' : 'd'; }

std::size_t count_of(const std::string& w, char ch) { return static_cast<std::size_t>(std::count(w.begin(), w.end(), ch)); }

}  // namespace

LemmaReport verify_lemmas(const ContextPtr& ctx, unsigned max_length, const LemmaOptions& opts) {
  if (ctx->gens() != GenSet::A) throw InvalidArgument("the length inequalities are checked for the generating set A");
  ctx->require_radius(max_length, "verify_lemmas");

  LemmaReport rep;
  rep.context = ctx->describe();
  rep.max_length = max_length;
  rep.max_q = opts.max_q;

  const GroupBall ball = enumerate_ball(ctx, max_length, opts.enum_opts);
  const auto preds = geodesic_predecessors(ball);
  SectionLengths lengths(ctx, opts.enum_opts, 2 * max_length + 2);
  const Oracle root{&ctx->effective(), 0};
  rep.elements = ball.size();

  // l-4 applies at q once the first q letters include all three.
  std::vector<bool> l4(opts.max_q + 1, false);
  {
    std::array<bool, 3> seen{};
    for (unsigned q = 1; q <= opts.max_q; ++q) {
      seen[ctx->letter(q - 1)] = true;
      l4[q] = seen[0] && seen[1] && seen[2];
      if (l4[q]) rep.l4_depths.push_back(q);
    }
  }

  auto violation = [&](const char* lemma, const std::string& g, std::string other, unsigned q, double lhs,
                       double rhs) { rep.violations.push_back({lemma, g, std::move(other), q, lhs, rhs}); };

  std::vector<std::vector<std::uint64_t>> level(ball.size(), std::vector<std::uint64_t>(opts.max_q + 1, 0));

  for (std::size_t i = 0; i < ball.size(); ++i) {
    const std::string& g = ball.words[i];
    const std::uint64_t n = ball.lengths[i];
    level[i][0] = n;

    for (unsigned q = 1; q <= opts.max_q; ++q) {
      const std::uint64_t p = std::uint64_t{1} << q;
      const auto secs = sections_at_level(g, root, q);
      std::uint64_t total = 0;
      for (std::size_t v = 0; v < secs.size(); ++v) {
        const std::uint64_t len = lengths.length(q, secs[v]);
        total += len;
        ++rep.checks["l-1"];
        if (p * len > n + p - 1) {
          std::string vertex;
          for (unsigned b = q; b-- > 0;) vertex.push_back((v >> b) & 1 ? '1' : '0');
          violation("l-1", g, vertex, q, static_cast<double>(len), (double(n) + double(p) - 1) / double(p));
        }
      }
      level[i][q] = total;
      if (l4[q]) {
        ++rep.checks["l-4"];
        if (6 * total > 5 * n + 7 + 3 * p)
          violation("l-4", g, "", q, double(total), (5.0 * double(n) + 7.0) / 6.0 + double(p) / 2);
      }
    }

    std::vector<std::string> reps;
    if (n <= opts.all_geodesics_max)
      reps = all_geodesics(ball, preds, i, opts.geodesic_limit);
    else
      reps = {g};
    rep.representations += reps.size();
    for (const auto& w : reps) {
      const std::uint64_t na = count_of(w, 'a');
      ++rep.checks["l-0"];
      if (2 * na + 1 < n || 2 * na > n + 1) violation("l-0", g, w, 0, double(na), (double(n) + 1) / 2);
      for (unsigned q = 1; q <= opts.max_q; ++q) {
        const std::uint64_t nh = count_of(w, h_generator(ctx->letter(q - 1)));
        ++rep.checks["l-3"];
        if (level[i][q] + nh > n + 1) violation("l-3", g, w, q, double(level[i][q]), double(n + 1 - nh));
      }
    }
  }

  // l-2 on pairs: every pair if that fits the budget, otherwise a seeded sample.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t m = ball.size();
  if (m * m <= opts.pairs) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::size_t t = 0; t < opts.pairs; ++t) {
      const std::size_t i = pick(rng);
      pairs.emplace_back(i, pick(rng));
    }
  }
  rep.pairs = pairs.size();
  for (auto [i, j] : pairs) {
    const std::string gh = ball.words[i] + ball.words[j];
    for (unsigned q = 1; q <= opts.max_q; ++q) {
      const std::uint64_t lhs = level_length(gh, q, lengths);
      const std::uint64_t rhs = level[i][q] + level[j][q];
      ++rep.checks["l-2"];
      if (lhs > rhs) violation("l-2", ball.words[i], ball.words[j], q, double(lhs), double(rhs));
    }
  }
  return rep;
}

}  // namespace grig
