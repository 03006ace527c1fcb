#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "grig/ball.hpp"
#include "grig/tree_group.hpp"

namespace grig {

/// Element of S4 ⋉ G_ω^4: perm[i] is the image of first-level vertex i,
/// sections[i] a reduced word of G_ω. Products follow the tree convention,
/// the right factor acting first: (gh)_i = g_{h(i)} h_i.
struct QuadElement {
  std::array<std::uint8_t, 4> perm{0, 1, 2, 3};
  std::array<std::string, 4> sections;

  friend bool operator==(const QuadElement&, const QuadElement&) = default;  // as words
};

QuadElement operator*(const QuadElement& g, const QuadElement& h);

/// Z4 * Z2 normal form of a word over {x, X, y} (X = x^{-1}); x-powers are
/// written x, xx, X. Throws AlphabetViolation.
std::string reduce_m_word(std::string_view w);

/// x-exponent sum of a word, modulo 4.
unsigned x_exponent(std::string_view w);

struct QuadKey {
  std::uint8_t perm_code = 0;
  std::array<TermId, 4> terms{};
  friend bool operator==(const QuadKey&, const QuadKey&) = default;
};

struct QuadKeyHash {
  std::size_t operator()(const QuadKey& k) const;
};

/// M_ω = <x, y> with x the 4-cycle i -> i-1 (mod 4) and y = (id; b, c, a, e).
class TwoGenerated {
 public:
  explicit TwoGenerated(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  const QuadElement& x() const { return x_; }
  const QuadElement& x_inv() const { return x_inv_; }
  const QuadElement& y() const { return y_; }
  const QuadElement& generator(char symbol) const;

  /// ψ(w), evaluated coordinatewise: section i is the product of the
  /// generator sections met along the orbit of i, read right to left.
  QuadElement psi(std::string_view w) const;

  /// Normal form, x-exponent test, then the branch algorithm per coordinate.
  bool is_identity(std::string_view w) const;

  /// Root permutation trivial and all four sections trivial portraits.
  bool is_trivial(const QuadElement& g) const;
  QuadKey key(const QuadElement& g) const;
  bool equal(const QuadElement& g, const QuadElement& h) const { return key(g) == key(h); }

  /// `[p0,p1,p2,p3];(P0,P1,P2,P3)` with portraits of the sections.
  std::string to_string(const QuadElement& g) const;

 private:
  ContextPtr ctx_;
  QuadElement x_, x_inv_, y_;
};

struct SubdirectReport {
  // conjugates[k] = ψ(x^k y x^{-k}) and the expected section tuple
  std::array<QuadElement, 4> conjugates;
  std::array<std::array<char, 4>, 4> expected{};
  std::array<bool, 4> identities{};
  std::array<bool, 4> coverage{};  // coordinate receives a, b and c

  bool ok() const;
};

SubdirectReport verify_subdirect(const TwoGenerated& m);

struct TwoGenModel {
  using Element = QuadElement;
  using Key = QuadKey;
  using Hash = QuadKeyHash;

  const TwoGenerated* group;

  std::string generator_symbols() const { return "xXy"; }
  Element identity() const { return {}; }
  Element multiply(const Element& g, std::size_t s) const;
  Key key(const Element& g) const { return group->key(g); }
};

using TwoGenBall = BallTable<QuadKey, QuadKeyHash>;

/// Ball of M_ω over {x, X, y}.
TwoGenBall growth_M(const TwoGenerated& m, unsigned radius, EnumOptions opts = {});

}  // namespace grig
