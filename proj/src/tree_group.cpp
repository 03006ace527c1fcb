#include "grig/tree_group.hpp"

#include <algorithm>

#include "grig/errors.hpp"

namespace grig {

const char* to_string(GenSet g) { return g == GenSet::A ? "A" : "S"; }

GenSet parse_genset(std::string_view text) {
  if (text == "A" || text == "a") return GenSet::A;
  if (text == "S" || text == "s") return GenSet::S;
  throw ParseError("generating set must be A or S, got '" + std::string(text) + "'");
}

std::string_view generator_symbols(GenSet g) { return g == GenSet::A ? "abcd" : "abc"; }

// ---------------------------------------------------------------------------
// GroupContext

namespace {
constexpr std::array<Letter, 3> kSurrogateTail{0, 1, 2};
}

ContextPtr GroupContext::exact(const OmegaSeq& omega, GenSet gens) {
  if (omega.is_periodic()) {
    if (classify(omega) == OmegaClass::EventuallyConstant)
      throw InvalidArgument("exact policy requires ω not eventually constant; " + omega.to_string() +
                            " needs the surrogate policy");
  } else {
    int positive = 0;
    for (const auto& w : omega.weights()) positive += sgn(w) > 0;
    if (positive < 2)
      throw InvalidArgument("a stream with fewer than two letters is eventually constant: " + omega.to_string());
  }
  return ContextPtr(new GroupContext(omega, omega, gens, std::nullopt));
}

ContextPtr GroupContext::surrogate(const OmegaSeq& omega, unsigned depth, GenSet gens) {
  if (!omega.is_periodic() || classify(omega) != OmegaClass::EventuallyConstant)
    throw InvalidArgument("surrogate policy applies to eventually constant ω only, got " + omega.to_string());
  if (depth > 62) throw BudgetExceeded("surrogate depth too large");
  const auto head = omega.prefix(depth);
  return ContextPtr(new GroupContext(omega, splice(head, kSurrogateTail), gens, depth));
}

ContextPtr GroupContext::make(const OmegaSeq& omega, GenSet gens, std::uint64_t radius) {
  if (omega.is_periodic() && classify(omega) == OmegaClass::EventuallyConstant) {
    unsigned n = 1;
    while ((std::uint64_t{1} << (n - 1)) < radius) ++n;
    return surrogate(omega, n, gens);
  }
  return exact(omega, gens);
}

std::optional<std::uint64_t> GroupContext::validity_radius() const {
  if (!surrogate_depth_) return std::nullopt;
  if (*surrogate_depth_ == 0) return 0;
  return std::uint64_t{1} << (*surrogate_depth_ - 1);
}

ContextPtr GroupContext::shifted(std::uint64_t k) const {
  if (k == 0) return ContextPtr(new GroupContext(*this));
  std::optional<unsigned> depth;
  if (surrogate_depth_) depth = *surrogate_depth_ > k ? static_cast<unsigned>(*surrogate_depth_ - k) : 0u;
  return ContextPtr(new GroupContext(omega_.shifted(k), effective_.shifted(k), gens_, depth));
}

void GroupContext::require_radius(std::uint64_t radius, const char* what) const {
  if (auto limit = validity_radius(); limit && radius > *limit)
    throw ValidityExceeded(std::string(what) + ": length " + std::to_string(radius) +
                           " exceeds the surrogate validity radius " + std::to_string(*limit) + " of " +
                           describe());
}

std::string GroupContext::describe() const {
  std::string out = "omega=" + omega_.to_string() + " gens=" + to_string(gens_);
  if (surrogate_depth_)
    out += " policy=surrogate(" + std::to_string(*surrogate_depth_) + ") effective=" + effective_.to_string();
  else
    out += " policy=exact";
  return out;
}

bool operator==(const GroupContext& x, const GroupContext& y) {
  return x.gens_ == y.gens_ && x.surrogate_depth_ == y.surrogate_depth_ && x.effective_ == y.effective_ &&
         x.omega_ == y.omega_;
}

GenWord::GenWord(ContextPtr ctx, std::string_view letters) : ctx_(std::move(ctx)), letters_(letters) {
  if (!ctx_) throw InvalidArgument("GenWord needs a context");
  for (char ch : letters_)
    if (ch < 'a' || ch > 'd') throw AlphabetViolation(std::string("letter '") + ch + "' outside {a,b,c,d}");
}

// ---------------------------------------------------------------------------
// Kernel

std::string reduce_word(std::string_view w) {
  std::string out;
  out.reserve(w.size());
  for (char ch : w) {
    if (ch == 'a') {
      if (!out.empty() && out.back() == 'a')
        out.pop_back();
      else
        out.push_back('a');
    } else if (ch >= 'b' && ch <= 'd') {
      if (!out.empty() && out.back() != 'a') {
        // b, c, d are 1, 2, 3 and multiply as bitwise xor.
        const int prod = (out.back() - 'a') ^ (ch - 'a');
        out.pop_back();
        if (prod != 0) out.push_back(static_cast<char>('a' + prod));
      } else {
        out.push_back(ch);
      }
    } else {
      throw AlphabetViolation(std::string("letter '") + ch + "' outside {a,b,c,d}");
    }
  }
  return out;
}

char first_section(char generator, Letter l) {
  switch (generator) {
    case 'b': return l == 2 ? 'e' : 'a';
    case 'c': return l == 1 ? 'e' : 'a';
    case 'd': return l == 0 ? 'e' : 'a';
  }
  return 'e';
}

std::array<std::string, 2> split_sections(std::string_view reduced, Letter l, bool& swap) {
  std::array<std::string, 2> sec;
  sec[0].reserve(reduced.size() / 2 + 1);
  sec[1].reserve(reduced.size() / 2 + 1);
  // cur[x] is the level-one vertex that the suffix processed so far maps x to.
  std::array<int, 2> cur{0, 1};
  int a_count = 0;
  for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
    const char ch = *it;
    if (ch == 'a') {
      cur[0] ^= 1;
      cur[1] ^= 1;
      ++a_count;
      continue;
    }
    const char low = first_section(ch, l);
    for (int x = 0; x < 2; ++x) {
      const char s = cur[x] == 0 ? low : ch;
      if (s != 'e') sec[x].push_back(s);
    }
  }
  swap = (a_count & 1) != 0;
  for (auto& s : sec) {
    std::reverse(s.begin(), s.end());
    s = reduce_word(s);
  }
  return sec;
}

namespace {

bool branch_reduced(const std::string& r, Oracle o) {
  if (r.empty()) return true;
  if (r.size() == 1) return false;
  bool swap = false;
  auto sec = split_sections(r, o.letter(), swap);
  if (swap) return false;
  return branch_reduced(sec[0], o.next()) && branch_reduced(sec[1], o.next());
}

TermId collapse(bool swap, TermId left, TermId right, Letter l) {
  if (left == term::e && right == term::e) return swap ? term::a : term::e;
  if (!swap && right >= term::b && right <= term::d &&
      left == term::leaf_for(first_section(term::leaf_symbol(right), l)))
    return right;
  return PortraitStore::instance().intern({swap, left, right});
}

TermId term_of_reduced(const std::string& r, Oracle o) {
  if (r.empty()) return term::e;
  if (r.size() == 1) return term::leaf_for(r[0]);
  bool swap = false;
  auto sec = split_sections(r, o.letter(), swap);
  const TermId left = term_of_reduced(sec[0], o.next());
  const TermId right = term_of_reduced(sec[1], o.next());
  return collapse(swap, left, right, o.letter());
}

}  // namespace

bool branch_is_identity(std::string_view w, Oracle o) { return branch_reduced(reduce_word(w), o); }

TermId canonical_term(std::string_view w, Oracle o) { return term_of_reduced(reduce_word(w), o); }

Portrait word_portrait(std::string_view w, Oracle o) {
  bool swap = false;
  auto sec = split_sections(reduce_word(w), o.letter(), swap);
  return {swap, term_of_reduced(sec[0], o.next()), term_of_reduced(sec[1], o.next())};
}

// ---------------------------------------------------------------------------
// Element operations

GenWord reduce(const GenWord& w) { return GenWord(w.context(), reduce_word(w.letters())); }

std::string act(const GenWord& g, std::string_view vertex) {
  std::string v(vertex);
  for (char ch : v)
    if (ch != '0' && ch != '1') throw InvalidArgument("vertex must be a word over {0,1}");
  const auto& ctx = *g.context();
  const auto& w = g.letters();
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (v.empty()) break;
    if (*it == 'a') {
      v[0] = v[0] == '0' ? '1' : '0';
      continue;
    }
    // b, c, d descend along the rightmost spine until the first 0.
    const auto j = v.find('0');
    if (j == std::string::npos) continue;
    if (first_section(*it, ctx.letter(j)) == 'a' && j + 1 < v.size()) v[j + 1] = v[j + 1] == '0' ? '1' : '0';
  }
  return v;
}

GenWord section(const GenWord& g, std::string_view vertex) {
  std::string r = reduce_word(g.letters());
  const auto& ctx = *g.context();
  std::uint64_t depth = 0;
  for (char x : vertex) {
    if (x != '0' && x != '1') throw InvalidArgument("vertex must be a word over {0,1}");
    bool swap = false;
    auto sec = split_sections(r, ctx.letter(depth), swap);
    r = std::move(sec[x - '0']);
    ++depth;
  }
  return GenWord(ctx.shifted(vertex.size()), r);
}

GenWord compose(const GenWord& g, const GenWord& h) {
  if (!(*g.context() == *h.context()))
    throw ContextMismatch("compose: " + g.context()->describe() + " vs " + h.context()->describe());
  return GenWord(g.context(), reduce_word(g.letters() + h.letters()));
}

GenWord invert(const GenWord& g) {
  std::string r(g.letters().rbegin(), g.letters().rend());
  return GenWord(g.context(), r);
}

bool is_identity(const GenWord& g) {
  const std::string r = reduce_word(g.letters());
  g.context()->require_radius(r.size(), "is_identity");
  return branch_reduced(r, {&g.context()->effective(), 0});
}

Portrait portrait(const GenWord& g) {
  const std::string r = reduce_word(g.letters());
  g.context()->require_radius(r.size(), "portrait");
  return word_portrait(r, {&g.context()->effective(), 0});
}

TermId element_key(const GenWord& g) {
  const std::string r = reduce_word(g.letters());
  g.context()->require_radius(r.size(), "element_key");
  return term_of_reduced(r, {&g.context()->effective(), 0});
}

OrderResult order(const GenWord& g, unsigned cap) {
  const auto& ctx = *g.context();
  std::string h = reduce_word(g.letters());
  for (unsigned k = 0; k <= cap; ++k) {
    ctx.require_radius(h.size(), "order");
    if (branch_reduced(h, {&ctx.effective(), 0})) return {false, k};
    h = reduce_word(h + h);
  }
  return {true, cap};
}

}  // namespace grig
