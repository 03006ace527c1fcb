#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace grig {

/// Interned canonical term. Ids 0..4 are the leaves e, a, b, c, d; larger
/// ids are internal nodes (root swap bit plus two child terms).
///
/// A term is read relative to a context τ^k(ω): a leaf b at depth j of a
/// portrait rooted in G_ω denotes b of G_{τ^j(ω)}. Terms are collapsed, so
/// a node whose root and children coincide with those of a generator is
/// stored as that generator's leaf. This makes term equality element
/// equality within one context.
using TermId = std::uint32_t;

namespace term {
inline constexpr TermId e = 0;
inline constexpr TermId a = 1;
inline constexpr TermId b = 2;
inline constexpr TermId c = 3;
inline constexpr TermId d = 4;
inline constexpr TermId first_node = 5;

inline bool is_leaf(TermId t) { return t < first_node; }
char leaf_symbol(TermId t);
TermId leaf_for(char symbol);
}  // namespace term

struct TermNode {
  bool swap = false;
  TermId left = term::e;
  TermId right = term::e;
};

/// Process-wide hash-consing table. Inserts are idempotent and guarded, so
/// concurrent callers always agree on the id of a given node.
class PortraitStore {
 public:
  static PortraitStore& instance();

  TermId intern(TermNode node);
  TermNode node(TermId id) const;
  std::size_t size() const;

 private:
  PortraitStore();
  struct Impl;
  Impl* impl_;
};

/// Portrait of an element: root permutation and the canonical terms of the
/// two level-one sections. The root is always expanded, so the identity is
/// id(e,e) and a is sw(e,e).
struct Portrait {
  bool swap = false;
  TermId left = term::e;
  TermId right = term::e;

  bool is_trivial() const { return !swap && left == term::e && right == term::e; }
  friend bool operator==(const Portrait&, const Portrait&) = default;
};

/// `sw(L,R)` for a swapping root, `id(L,R)` otherwise, leaves `e|a|b|c|d`.
std::string to_string(const Portrait& p);
std::string term_to_string(TermId t);

/// Parses the serialization above back into interned terms.
Portrait parse_portrait(std::string_view text);

}  // namespace grig
