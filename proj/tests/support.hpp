#pragma once

// Test-side oracles and generators. Nothing here calls into the code it is
// used to check, apart from parsing inputs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "grig/omega.hpp"

namespace oracle {

// T(w) as the maximum over all splittings, by DP on prefixes.
inline int max_blocks(const std::vector<std::uint8_t>& w) {
  const std::size_t n = w.size();
  std::vector<int> best(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    best[i] = best[i - 1];
    std::array<bool, 3> seen{};
    for (std::size_t j = i; j-- > 0;) {
      seen[w[j]] = true;
      if (seen[0] && seen[1] && seen[2]) {
        best[i] = std::max(best[i], best[j] + 1);
        break;  // shorter blocks ending at i only help; the first j found is the largest
      }
    }
  }
  return best[n];
}

// Generator action straight from the recursive definition:
// a flips the first letter; x in {b,c,d} at depth k acts on 0v by f_x(ω_k)
// and on 1v by x at depth k+1.
inline char f_table(char x, std::uint8_t l) {
  static const char* beta = "aae";
  static const char* zeta = "aea";
  static const char* delta = "eaa";
  return x == 'b' ? beta[l] : x == 'c' ? zeta[l] : delta[l];
}

inline void apply_generator(char x, const grig::OmegaSeq& omega, std::uint64_t depth, std::string& v, std::size_t pos) {
  if (pos >= v.size()) return;
  if (x == 'a') {
    v[pos] = v[pos] == '0' ? '1' : '0';
    return;
  }
  if (v[pos] == '0') {
    if (f_table(x, omega.letter(depth)) == 'a') apply_generator('a', omega, depth + 1, v, pos + 1);
    return;
  }
  apply_generator(x, omega, depth + 1, v, pos + 1);
}

// Right-to-left: the last letter acts first.
inline std::string act(const std::string& word, const grig::OmegaSeq& omega, std::string v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) apply_generator(*it, omega, 0, v, 0);
  return v;
}

inline std::vector<std::string> vertices(unsigned depth) {
  std::vector<std::string> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << depth); ++i) {
    std::string v;
    for (unsigned b = depth; b-- > 0;) v.push_back((i >> b) & 1 ? '1' : '0');
    out.push_back(v);
  }
  return out;
}

// Element equality by action on every vertex of the given level.
inline bool acts_trivially(const std::string& word, const grig::OmegaSeq& omega, unsigned depth) {
  for (const auto& v : vertices(depth))
    if (act(word, omega, v) != v) return false;
  return true;
}

// Expected coupon-collector time for the weights: the mean length of a
// renewal block, hence lim t_n/n.
inline double renewal_mean(const std::array<double, 3>& p) {
  double e = 0;
  for (int mask = 1; mask < 8; ++mask) {
    double s = 0;
    int bits = 0;
    for (int i = 0; i < 3; ++i)
      if (mask >> i & 1) s += p[i], ++bits;
    e += (bits % 2 ? 1.0 : -1.0) / s;
  }
  return e;
}

using Perm = std::vector<std::uint16_t>;

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Cayley ball by BFS over permutations of level `depth`, generator actions
// from the recursive definition above. Elements are numbered in discovery
// order (generators tried in the given order); edges (u, s, v) mean u·s = v.
// Elements of length <= r are told apart once depth >= 2r.
struct PermBall {
  std::vector<std::uint64_t> counts;
  std::vector<std::array<std::uint32_t, 3>> edges;
};

inline PermBall perm_ball(const grig::OmegaSeq& omega, std::string_view gens, unsigned r, unsigned depth) {
  const auto verts = vertices(depth);
  std::vector<Perm> gp;
  for (char s : gens) {
    Perm p(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
      p[i] = static_cast<std::uint16_t>(std::stoul(act(std::string(1, s), omega, verts[i]), nullptr, 2));
    gp.push_back(p);
  }
  Perm id(verts.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::uint16_t>(i);
  std::unordered_map<Perm, std::uint32_t, PermHash> seen{{id, 0}};
  std::vector<Perm> elems{id};
  PermBall out;
  out.counts.push_back(1);
  auto times = [](const Perm& f, const Perm& g) {
    Perm h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];  // f·g acts as f(g(v))
    return h;
  };
  std::size_t begin = 0;
  for (unsigned n = 1; n <= r; ++n) {
    const std::size_t end = elems.size();
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& g : gp) {
        auto h = times(elems[i], g);
        if (seen.emplace(h, static_cast<std::uint32_t>(elems.size())).second) elems.push_back(std::move(h));
      }
    out.counts.push_back(elems.size());
    begin = end;
  }
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    for (std::uint32_t s = 0; s < gp.size(); ++s) {
      auto it = seen.find(times(elems[i], gp[s]));
      if (it != seen.end()) out.edges.push_back({i, s, it->second});
    }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace oracle

namespace gen {

// Hand-rolled input generators over a fixed-seed engine.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  std::string word(std::string_view alphabet, std::size_t min_len, std::size_t max_len) {
    const std::size_t len = min_len + below(max_len - min_len + 1);
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(alphabet[below(alphabet.size())]);
    return w;
  }

  std::vector<std::uint8_t> letters(std::size_t len) {
    std::vector<std::uint8_t> w(len);
    for (auto& x : w) x = static_cast<std::uint8_t>(below(3));
    return w;
  }

  // Eventually periodic ω whose period contains every letter.
  grig::OmegaSeq omega_all_letters() {
    std::vector<std::uint8_t> pre = letters(below(4));
    std::vector<std::uint8_t> period{0, 1, 2};
    const std::size_t extra = below(4);
    for (std::size_t i = 0; i < extra; ++i) period.push_back(static_cast<std::uint8_t>(below(3)));
    std::shuffle(period.begin(), period.end(), rng);
    return grig::OmegaSeq::periodic(pre, period);
  }

  // Eventually periodic ω that is not eventually constant.
  grig::OmegaSeq omega_nonconstant() {
    for (;;) {
      auto period = letters(1 + below(4));
      if (std::adjacent_find(period.begin(), period.end(), std::not_equal_to<>()) == period.end()) continue;
      return grig::OmegaSeq::periodic(letters(below(4)), period);
    }
  }
};

}  // namespace gen
