#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grig/growth.hpp"

namespace grig {

/// Labeled Cayley ball of radius r around the identity. Vertices are named
/// by BFS discovery rank (identity 0, generators tried in index order), and
/// edges (src, gen, dst) mean src · gen = dst with both ends in the ball.
struct MarkedBall {
  std::uint32_t radius = 0;
  std::uint32_t vertex_count = 0;
  std::uint32_t generator_count = 0;
  std::vector<std::array<std::uint32_t, 3>> edges;  // sorted

  /// Header (radius, vertices, generators) then the edges, little-endian u32.
  std::string encoding() const;
  /// FNV-1a 64 over encoding().
  std::uint64_t fingerprint() const;
  /// "radius R vertices V generators K" followed by one "(src, gen, dst)" per line.
  std::string to_text() const;

  friend bool operator==(const MarkedBall&, const MarkedBall&) = default;
};

/// Canonical form of an arbitrary labeled graph rooted at `root`: vertices
/// renamed by BFS rank with generators explored in index order. Only the
/// component of the root within `radius` steps is kept.
MarkedBall canonicalize(std::uint32_t vertex_count, std::uint32_t generator_count,
                        const std::vector<std::array<std::uint32_t, 3>>& edges, std::uint32_t root,
                        std::uint32_t radius);

/// Restriction of a closed table (boundary neighbors filled) to radius r.
MarkedBall ball_from_table(const GroupBall& table, std::uint32_t r);

MarkedBall canonical_ball(const ContextPtr& ctx, std::uint32_t r, EnumOptions opts = {});

struct Distance {
  bool exact = false;
  std::uint32_t m = 0;  // exact: 2^{-m}; otherwise the bound < 2^{-m}
  double value() const;
  std::string to_string() const;
};

/// Largest m <= budget with isomorphic radius-m balls. Throws ContextMismatch
/// when the generating sets differ.
Distance distance(const ContextPtr& x, const ContextPtr& y, std::uint32_t budget, EnumOptions opts = {});

/// Compares the radius-2^{n-1} balls of G_ω and G_η (radius 0 when n = 0).
bool verify_prefix_ball_iso(const OmegaSeq& omega, const OmegaSeq& eta, unsigned n, GenSet gens = GenSet::A,
                            EnumOptions opts = {});

/// Ball of the limit group for eventually constant ω, via the surrogate of
/// depth `depth`, or the least depth n with 2^{n-1} >= r.
MarkedBall limit_ball(const OmegaSeq& omega, std::uint32_t r, GenSet gens = GenSet::A,
                      std::optional<unsigned> depth = {}, EnumOptions opts = {});

}  // namespace grig
