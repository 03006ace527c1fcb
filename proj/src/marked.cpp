#include "grig/marked.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "grig/errors.hpp"

namespace grig {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

std::string MarkedBall::encoding() const {
  std::string out;
  out.reserve(12 + edges.size() * 12);
  put_u32(out, radius);
  put_u32(out, vertex_count);
  put_u32(out, generator_count);
  for (const auto& e : edges)
    for (auto v : e) put_u32(out, v);
  return out;
}

std::uint64_t MarkedBall::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : encoding()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string MarkedBall::to_text() const {
  std::string out = "radius " + std::to_string(radius) + " vertices " + std::to_string(vertex_count) +
                    " generators " + std::to_string(generator_count) + "\n";
  for (const auto& e : edges)
    out += "(" + std::to_string(e[0]) + ", " + std::to_string(e[1]) + ", " + std::to_string(e[2]) + ")\n";
  return out;
}

MarkedBall canonicalize(std::uint32_t vertex_count, std::uint32_t generator_count,
                        const std::vector<std::array<std::uint32_t, 3>>& edges, std::uint32_t root,
                        std::uint32_t radius) {
  if (root >= vertex_count) throw InvalidArgument("canonicalize: root out of range");
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> out(std::size_t{vertex_count} * generator_count, none);
  for (const auto& [src, gen, dst] : edges) {
    if (src >= vertex_count || dst >= vertex_count || gen >= generator_count)
      throw InvalidArgument("canonicalize: edge out of range");
    out[std::size_t{src} * generator_count + gen] = dst;
  }
  std::vector<std::uint32_t> rank(vertex_count, none), dist(vertex_count, 0);
  std::deque<std::uint32_t> queue{root};
  rank[root] = 0;
  std::uint32_t next = 1;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (dist[v] == radius) continue;
    for (std::uint32_t s = 0; s < generator_count; ++s) {
      const auto w = out[std::size_t{v} * generator_count + s];
      if (w == none || rank[w] != none) continue;
      rank[w] = next++;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  MarkedBall ball;
  ball.radius = radius;
  ball.vertex_count = next;
  ball.generator_count = generator_count;
  for (const auto& [src, gen, dst] : edges)
    if (rank[src] != none && rank[dst] != none) ball.edges.push_back({rank[src], gen, rank[dst]});
  std::sort(ball.edges.begin(), ball.edges.end());
  ball.edges.erase(std::unique(ball.edges.begin(), ball.edges.end()), ball.edges.end());
  return ball;
}

MarkedBall ball_from_table(const GroupBall& table, std::uint32_t r) {
  if (r > table.radius()) throw RangeExceeded("ball radius beyond the table");
  const std::size_t k = table.generator_count();
  const std::size_t end = table.counts[r];
  MarkedBall ball;
  ball.radius = r;
  ball.vertex_count = static_cast<std::uint32_t>(end);
  ball.generator_count = static_cast<std::uint32_t>(k);
  for (std::size_t u = 0; u < end; ++u)
    for (std::size_t s = 0; s < k; ++s) {
      const auto v = table.neighbor(u, s);
      if (v == kNeighborUnknown) throw InvalidArgument("ball_from_table needs a closed boundary");
      if (v >= 0 && static_cast<std::size_t>(v) < end)
        ball.edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(v)});
    }
  std::sort(ball.edges.begin(), ball.edges.end());
  return ball;
}

MarkedBall canonical_ball(const ContextPtr& ctx, std::uint32_t r, EnumOptions opts) {
  ctx->require_radius(r, "canonical_ball");
  auto e = make_enumerator(ctx, opts);
  e->grow_to(r);
  e->close_boundary();
  return ball_from_table(e->table(), r);
}

double Distance::value() const { return std::ldexp(1.0, -static_cast<int>(m)); }

std::string Distance::to_string() const {
  return (exact ? "2^-" : "< 2^-") + std::to_string(m);
}

Distance distance(const ContextPtr& x, const ContextPtr& y, std::uint32_t budget, EnumOptions opts) {
  if (x->gens() != y->gens())
    throw ContextMismatch("distance between marked groups with different generating sets");
  x->require_radius(budget, "distance");
  y->require_radius(budget, "distance");
  auto ex = make_enumerator(x, opts);
  auto ey = make_enumerator(y, opts);
  for (std::uint32_t r = 1; r <= budget; ++r) {
    ex->grow_to(r);
    ey->grow_to(r);
    ex->close_boundary();
    ey->close_boundary();
    if (!(ball_from_table(ex->table(), r) == ball_from_table(ey->table(), r))) return {true, r - 1};
  }
  return {false, budget};
}

bool verify_prefix_ball_iso(const OmegaSeq& omega, const OmegaSeq& eta, unsigned n, GenSet gens, EnumOptions opts) {
  if (n > 40) throw BudgetExceeded("prefix length " + std::to_string(n) + " gives an unmanageable radius");
  const std::uint32_t radius = n == 0 ? 0 : std::uint32_t{1} << (n - 1);
  const auto x = GroupContext::make(omega, gens, radius);
  const auto y = GroupContext::make(eta, gens, radius);
  return canonical_ball(x, radius, opts) == canonical_ball(y, radius, opts);
}

MarkedBall limit_ball(const OmegaSeq& omega, std::uint32_t r, GenSet gens, std::optional<unsigned> depth,
                      EnumOptions opts) {
  if (!omega.is_periodic() || classify(omega) != OmegaClass::EventuallyConstant)
    throw InvalidArgument("limit_ball applies to eventually constant ω, got " + omega.to_string());
  const auto ctx = depth ? GroupContext::surrogate(omega, *depth, gens) : GroupContext::make(omega, gens, r);
  return canonical_ball(ctx, r, opts);
}

}  // namespace grig
