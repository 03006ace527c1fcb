#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "grig/errors.hpp"
#include "grig/portrait.hpp"

namespace grig {

namespace term {

char leaf_symbol(TermId t) {
  static constexpr char kSymbols[] = {'e', 'a', 'b', 'c', 'd'};
  return kSymbols[t];
}

TermId leaf_for(char symbol) {
  switch (symbol) {
    case 'e': return e;
    case 'a': return a;
    case 'b': return b;
    case 'c': return c;
    case 'd': return d;
  }
  throw ParseError(std::string("not a leaf symbol: '") + symbol + "'");
}

}  // namespace term

struct PortraitStore::Impl {
  mutable std::shared_mutex mutex;
  std::vector<TermNode> nodes;
  std::unordered_map<std::uint64_t, TermId> index;

  static std::uint64_t pack(const TermNode& n) {
    // 31 bits per child id is ample: the store would run out of memory first.
    return (static_cast<std::uint64_t>(n.left) << 32) | (static_cast<std::uint64_t>(n.right) << 1) |
           static_cast<std::uint64_t>(n.swap);
  }
};

PortraitStore::PortraitStore() : impl_(new Impl) {}

PortraitStore& PortraitStore::instance() {
  static PortraitStore store;
  return store;
}

TermId PortraitStore::intern(TermNode node) {
  const auto key = Impl::pack(node);
  {
    std::shared_lock lock(impl_->mutex);
    if (auto it = impl_->index.find(key); it != impl_->index.end()) return it->second;
  }
  std::unique_lock lock(impl_->mutex);
  auto [it, inserted] = impl_->index.try_emplace(key, 0);
  if (inserted) {
    if (impl_->nodes.size() >= (std::size_t{1} << 31) - term::first_node)
      throw BudgetExceeded("portrait store exhausted");
    it->second = static_cast<TermId>(impl_->nodes.size() + term::first_node);
    impl_->nodes.push_back(node);
  }
  return it->second;
}

TermNode PortraitStore::node(TermId id) const {
  std::shared_lock lock(impl_->mutex);
  return impl_->nodes.at(id - term::first_node);
}

std::size_t PortraitStore::size() const {
  std::shared_lock lock(impl_->mutex);
  return impl_->nodes.size();
}

namespace {

void append_term(std::string& out, TermId t) {
  if (term::is_leaf(t)) {
    out.push_back(term::leaf_symbol(t));
    return;
  }
  const auto n = PortraitStore::instance().node(t);
  out += n.swap ? "sw(" : "id(";
  append_term(out, n.left);
  out.push_back(',');
  append_term(out, n.right);
  out.push_back(')');
}

class PortraitParser {
 public:
  explicit PortraitParser(std::string_view text) : text_(text) {}

  Portrait top() {
    auto [swap, left, right] = node();
    if (pos_ != text_.size()) fail("trailing characters");
    return {swap, left, right};
  }

 private:
  std::tuple<bool, TermId, TermId> node() {
    bool swap;
    if (text_.substr(pos_, 3) == "sw(") {
      swap = true;
    } else if (text_.substr(pos_, 3) == "id(") {
      swap = false;
    } else {
      fail("expected sw( or id(");
    }
    pos_ += 3;
    TermId left = any();
    expect(',');
    TermId right = any();
    expect(')');
    return {swap, left, right};
  }

  TermId any() {
    if (pos_ < text_.size() && text_.substr(pos_, 3) != "sw(" && text_.substr(pos_, 3) != "id(")
      return term::leaf_for(text_[pos_++]);
    auto [swap, left, right] = node();
    return PortraitStore::instance().intern({swap, left, right});
  }

  void expect(char ch) {
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("portrait: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string term_to_string(TermId t) {
  std::string out;
  append_term(out, t);
  return out;
}

std::string to_string(const Portrait& p) {
  std::string out = p.swap ? "sw(" : "id(";
  append_term(out, p.left);
  out.push_back(',');
  append_term(out, p.right);
  out.push_back(')');
  return out;
}

Portrait parse_portrait(std::string_view text) { return PortraitParser(text).top(); }

}  // namespace grig
