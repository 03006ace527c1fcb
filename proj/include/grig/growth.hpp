#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "grig/ball.hpp"
#include "grig/tree_group.hpp"

namespace grig {

/// Ball model for G_ω: elements are reduced words, keys canonical terms.
struct TreeGroupModel {
  using Element = std::string;
  using Key = TermId;
  using Hash = std::hash<TermId>;

  ContextPtr ctx;

  std::string generator_symbols() const { return std::string(grig::generator_symbols(ctx->gens())); }
  Element identity() const { return {}; }
  Element multiply(const Element& g, std::size_t s) const;
  Key key(const Element& g) const { return canonical_term(g, {&ctx->effective(), 0}); }
};

using GroupBall = BallTable<TermId>;
using GroupEnumerator = BallEnumerator<TreeGroupModel>;

std::unique_ptr<GroupEnumerator> make_enumerator(const ContextPtr& ctx, EnumOptions opts = {});

/// γ_ω(0..radius) with geodesic words. For surrogate contexts the radius
/// must lie within the validity radius.
GroupBall enumerate_ball(const ContextPtr& ctx, unsigned radius, EnumOptions opts = {});

/// Predecessor lists for every element of a ball: pairs (u, s) with
/// |u| = |v| - 1 and u·s = v.
std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> geodesic_predecessors(const GroupBall& ball);

/// Every geodesic of element `idx`, lexicographically sorted. Throws
/// BudgetExceeded past `limit` words.
std::vector<std::string> all_geodesics(const GroupBall& ball,
                                       const std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>>& preds,
                                       std::size_t idx, std::size_t limit = 100000);

/// Geodesic lengths of elements of G_{τ^k ω}, backed by lazily grown balls,
/// one per shifted context.
class SectionLengths {
 public:
  explicit SectionLengths(ContextPtr base, EnumOptions opts = {}, unsigned max_radius = 40);

  /// |g|_{τ^depth ω} for a word in that context.
  std::uint32_t length(std::uint64_t depth, const std::string& word);
  const GroupBall& ball(std::uint64_t depth, unsigned min_radius);
  const ContextPtr& base() const { return base_; }

 private:
  GroupEnumerator& enumerator(std::uint64_t depth);

  ContextPtr base_;
  EnumOptions opts_;
  unsigned max_radius_;
  std::map<std::string, std::unique_ptr<GroupEnumerator>> cache_;
};

/// The 2^q sections of a word at level q, vertices in lexicographic order.
std::vector<std::string> sections_at_level(const std::string& word, Oracle o, unsigned q);

/// L_q(g) = sum of |g_v| over |v| = q, for a word in lengths.base().
std::uint64_t level_length(const std::string& word, unsigned q, SectionLengths& lengths);
std::uint64_t L_q(const GenWord& g, unsigned q, EnumOptions opts = {});

struct LemmaViolation {
  std::string lemma;
  std::string element;
  std::string other;
  unsigned q = 0;
  double lhs = 0;
  double rhs = 0;
};

struct LemmaOptions {
  unsigned max_q = 4;
  std::size_t pairs = 10000;
  std::uint64_t seed = 1;
  unsigned all_geodesics_max = 8;
  std::size_t geodesic_limit = 10000;
  EnumOptions enum_opts;
};

struct LemmaReport {
  std::string context;
  unsigned max_length = 0;
  unsigned max_q = 0;
  std::size_t elements = 0;
  std::size_t representations = 0;
  std::size_t pairs = 0;
  std::vector<unsigned> l4_depths;  // q where every letter occurs in ω_1..ω_q
  std::map<std::string, std::size_t> checks;
  std::vector<LemmaViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks the length inequalities on every element of length <= L:
///   l-0  (|g|-1)/2 <= |g|_a <= (|g|+1)/2
///   l-1  |g_w| <= 2^{-q}|g| + 1 - 2^{-q} for every |w| = q
///   l-2  L_q(gh) <= L_q(g) + L_q(h), on sampled pairs
///   l-3  L_q(g) <= |g| + 1 - |g|_{h_q}
///   l-4  L_q(g) <= (5/6)|g| + 7/6 + 2^{q-1}, when ω_1..ω_q contains 0, 1, 2
/// Letter counts use every geodesic when |g| <= all_geodesics_max and the
/// lexicographically least one otherwise. q runs over 1..max_q. Requires the
/// generating set A.
LemmaReport verify_lemmas(const ContextPtr& ctx, unsigned max_length, const LemmaOptions& opts = {});

}  // namespace grig
