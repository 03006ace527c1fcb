#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "grig/omega.hpp"
#include "grig/portrait.hpp"

namespace grig {

/// Generating set: A = {a,b,c,d} or the reduced set S = {a,b,c}.
enum class GenSet { A, S };

const char* to_string(GenSet g);
GenSet parse_genset(std::string_view text);
/// Generator symbols in tie-break order, "abcd" or "abc".
std::string_view generator_symbols(GenSet g);

class GroupContext;
using ContextPtr = std::shared_ptr<const GroupContext>;

/// A marked group G_ω with its generating set.
///
/// For ω that is not eventually constant the group is used as is. For
/// eventually constant ω the limit group is approximated by the surrogate
/// prefix_n(ω)·(012)^∞, which agrees with it on balls of radius 2^{n-1};
/// queries beyond that radius raise ValidityExceeded.
class GroupContext {
 public:
  static ContextPtr exact(const OmegaSeq& omega, GenSet gens = GenSet::A);
  static ContextPtr surrogate(const OmegaSeq& omega, unsigned depth, GenSet gens = GenSet::A);
  /// Exact when allowed, otherwise the smallest surrogate depth valid up to
  /// `radius`.
  static ContextPtr make(const OmegaSeq& omega, GenSet gens, std::uint64_t radius);

  const OmegaSeq& omega() const { return omega_; }
  const OmegaSeq& effective() const { return effective_; }
  GenSet gens() const { return gens_; }
  bool is_surrogate() const { return surrogate_depth_.has_value(); }
  std::optional<unsigned> surrogate_depth() const { return surrogate_depth_; }
  /// floor(2^{n-1}) for surrogate depth n; empty for exact contexts.
  std::optional<std::uint64_t> validity_radius() const;

  /// First letter of τ^depth of the effective sequence.
  Letter letter(std::uint64_t depth) const { return effective_.letter(depth); }

  /// Context of the sections at level k, G_{τ^k ω}.
  ContextPtr shifted(std::uint64_t k) const;

  /// Throws ValidityExceeded when `radius` is beyond the surrogate range.
  void require_radius(std::uint64_t radius, const char* what) const;

  std::string describe() const;

  friend bool operator==(const GroupContext& x, const GroupContext& y);

 private:
  GroupContext(OmegaSeq omega, OmegaSeq effective, GenSet gens, std::optional<unsigned> depth)
      : omega_(std::move(omega)), effective_(std::move(effective)), gens_(gens), surrogate_depth_(depth) {}

  OmegaSeq omega_;
  OmegaSeq effective_;
  GenSet gens_;
  std::optional<unsigned> surrogate_depth_;
};

/// Word over {a,b,c,d} bound to a context. Composition acts right to left:
/// (gh)(v) = g(h(v)), which is the convention under which sections obey
/// (gh)_v = g_{h(v)} h_v.
class GenWord {
 public:
  GenWord(ContextPtr ctx, std::string_view letters);

  const std::string& letters() const { return letters_; }
  const ContextPtr& context() const { return ctx_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

 private:
  ContextPtr ctx_;
  std::string letters_;
};

// ---------------------------------------------------------------------------
// Word-level kernel. These work on raw words and an explicit oracle position
// and are what the element operations and the ball enumerator build on.

/// Position in an oracle: the context τ^depth(ω).
struct Oracle {
  const OmegaSeq* omega;
  std::uint64_t depth = 0;

  Letter letter() const { return omega->letter(depth); }
  Oracle next() const { return {omega, depth + 1}; }
};

/// Free-product normal form in Z2 * (Z2 x Z2): cancels aa and multiplies
/// adjacent letters of {b,c,d} by the Klein four-group table. Throws
/// AlphabetViolation on letters outside {a,b,c,d}.
std::string reduce_word(std::string_view w);

/// Level-one sections of a reduced word whose context has first letter l.
/// Returns the reduced section words and sets `swap` to the root parity.
std::array<std::string, 2> split_sections(std::string_view reduced, Letter l, bool& swap);

/// Section generator at vertex 0 of b, c or d, given the first letter:
/// β, ζ, δ of the construction ('a' or 'e').
char first_section(char generator, Letter l);

/// Branch algorithm on a raw word.
bool branch_is_identity(std::string_view w, Oracle o);

/// Canonical (collapsed) term of a raw word.
TermId canonical_term(std::string_view w, Oracle o);

/// Portrait of a raw word (root expanded).
Portrait word_portrait(std::string_view w, Oracle o);

// ---------------------------------------------------------------------------
// Element operations.

GenWord reduce(const GenWord& w);

/// Image of a vertex (string over {0,1}) under g.
std::string act(const GenWord& g, std::string_view vertex);

/// g_v, as a reduced word in context τ^{|v|}(ω).
GenWord section(const GenWord& g, std::string_view vertex);

/// Throws ContextMismatch if the contexts differ.
GenWord compose(const GenWord& g, const GenWord& h);
GenWord invert(const GenWord& g);

bool is_identity(const GenWord& g);
Portrait portrait(const GenWord& g);

/// Canonical hash key: equal keys iff equal elements (same context).
TermId element_key(const GenWord& g);

struct OrderResult {
  bool exceeds_cap = false;
  unsigned exponent = 0;  // order is 2^exponent when !exceeds_cap

  std::uint64_t order() const { return std::uint64_t{1} << exponent; }
};

/// Smallest 2^k <= 2^cap with g^{2^k} = e, by repeated squaring.
OrderResult order(const GenWord& g, unsigned cap);

}  // namespace grig
