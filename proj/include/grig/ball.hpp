#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grig/errors.hpp"

namespace grig {

/// Thread count from GRIG_THREADS, falling back to 1.
unsigned default_threads();

struct EnumOptions {
  unsigned threads = 0;  // 0: default_threads()
  std::size_t max_elements = 10'000'000;
};

inline constexpr std::int64_t kNeighborUnknown = -1;
inline constexpr std::int64_t kNeighborOutside = -2;

/// Growth data for one marked group: γ(0..radius) and an index of every
/// element of the ball with its canonical geodesic.
///
/// Elements are stored in breadth-first discovery order. Within a sphere
/// that order is lexicographic in the geodesic words (generators ranked in
/// the order of `generators`), and each stored word is the lexicographically
/// least geodesic of its element.
template <class Key, class Hash = std::hash<Key>>
struct BallTable {
  std::string generators;
  std::string context;
  std::vector<std::uint64_t> counts;  // counts[n] = γ(n)
  std::vector<std::string> words;
  std::vector<std::uint32_t> lengths;
  std::vector<Key> keys;
  // neighbors[i * k + s] is the index of element_i · generator_s, or one of
  // kNeighborUnknown / kNeighborOutside on the boundary sphere.
  std::vector<std::int64_t> neighbors;
  std::unordered_map<Key, std::size_t, Hash> index;

  std::uint64_t radius() const { return counts.empty() ? 0 : counts.size() - 1; }
  std::size_t size() const { return words.size(); }
  std::size_t generator_count() const { return generators.size(); }

  std::uint64_t gamma(std::uint64_t n) const {
    if (n >= counts.size()) throw RangeExceeded("γ(" + std::to_string(n) + ") beyond computed radius");
    return counts[n];
  }

  std::optional<std::size_t> find(const Key& key) const {
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::int64_t neighbor(std::size_t element, std::size_t gen) const {
    return neighbors[element * generators.size() + gen];
  }
};

/// Breadth-first ball enumeration over a group model.
///
/// A model supplies `Element`, `Key`, `Hash`, `generator_symbols()`,
/// `identity()`, `multiply(element, generator_index)` and `key(element)`.
/// `multiply` and `key` must be safe to call concurrently. Products of the
/// frontier are computed in parallel; insertion runs sequentially in frontier
/// order, so the table does not depend on the thread count.
template <class Model>
class BallEnumerator {
 public:
  using Element = typename Model::Element;
  using Key = typename Model::Key;
  using Hash = typename Model::Hash;
  using Table = BallTable<Key, Hash>;

  BallEnumerator(Model model, EnumOptions opts, std::string context = {})
      : model_(std::move(model)), opts_(opts) {
    if (opts_.threads == 0) opts_.threads = default_threads();
    table_.generators = model_.generator_symbols();
    table_.context = std::move(context);
    const Element id = model_.identity();
    const Key key = model_.key(id);
    table_.index.emplace(key, 0);
    table_.words.emplace_back();
    table_.lengths.push_back(0);
    table_.keys.push_back(key);
    table_.neighbors.assign(k(), kNeighborUnknown);
    table_.counts.push_back(1);
    frontier_.push_back(id);
  }

  const Model& model() const { return model_; }
  const Table& table() const { return table_; }
  Table take() && { return std::move(table_); }

  void grow_to(std::uint64_t radius) {
    while (table_.radius() < radius) step();
  }

  /// Fills the neighbor slots of the outermost sphere, marking products
  /// that leave the ball as kNeighborOutside.
  void close_boundary() {
    const std::size_t begin = sphere_begin(table_.radius());
    auto products = expand();
    for (std::size_t i = 0; i < frontier_.size(); ++i)
      for (std::size_t s = 0; s < k(); ++s) {
        auto it = table_.index.find(products[i * k() + s].second);
        table_.neighbors[(begin + i) * k() + s] =
            it == table_.index.end() ? kNeighborOutside : static_cast<std::int64_t>(it->second);
      }
  }

  std::size_t sphere_begin(std::uint64_t n) const { return n == 0 ? 0 : table_.counts[n - 1]; }

 private:
  std::size_t k() const { return table_.generators.size(); }

  std::vector<std::pair<Element, Key>> expand() const {
    std::vector<std::pair<Element, Key>> out(frontier_.size() * k());
    auto work = [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        for (std::size_t s = 0; s < k(); ++s) {
          Element next = model_.multiply(frontier_[i], s);
          Key key = model_.key(next);
          out[i * k() + s] = {std::move(next), std::move(key)};
        }
    };
    const std::size_t n = frontier_.size();
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(opts_.threads, std::max<std::size_t>(n / 64, 1)));
    if (threads <= 1) {
      work(0, n);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (n + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk, e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
      }
    }
    return out;
  }

  void step() {
    const std::uint64_t r = table_.radius();
    const std::size_t begin = sphere_begin(r);
    auto products = expand();
    std::vector<Element> next_frontier;
    for (std::size_t i = 0; i < frontier_.size(); ++i) {
      for (std::size_t s = 0; s < k(); ++s) {
        auto& [element, key] = products[i * k() + s];
        auto [it, inserted] = table_.index.try_emplace(key, table_.words.size());
        if (inserted) {
          if (table_.words.size() >= opts_.max_elements)
            throw BudgetExceeded("ball enumeration exceeded " + std::to_string(opts_.max_elements) +
                                 " elements at radius " + std::to_string(r + 1));
          table_.words.push_back(table_.words[begin + i] + table_.generators[s]);
          table_.lengths.push_back(static_cast<std::uint32_t>(r + 1));
          table_.keys.push_back(key);
          table_.neighbors.insert(table_.neighbors.end(), k(), kNeighborUnknown);
          next_frontier.push_back(std::move(element));
        }
        table_.neighbors[(begin + i) * k() + s] = static_cast<std::int64_t>(it->second);
      }
    }
    table_.counts.push_back(table_.words.size());
    frontier_ = std::move(next_frontier);
  }

  Model model_;
  EnumOptions opts_;
  Table table_;
  std::vector<Element> frontier_;
};

}  // namespace grig
