#include "grig/two_generated.hpp"

#include <algorithm>
#include <vector>

#include "grig/errors.hpp"

namespace grig {

QuadElement operator*(const QuadElement& g, const QuadElement& h) {
  QuadElement out;
  for (int i = 0; i < 4; ++i) {
    out.perm[i] = g.perm[h.perm[i]];
    out.sections[i] = reduce_word(g.sections[h.perm[i]] + h.sections[i]);
  }
  return out;
}

std::string reduce_m_word(std::string_view w) {
  // Tokens: x-power 1..3, or 0 for y.
  std::vector<int> tok;
  for (char ch : w) {
    if (ch == 'y') {
      if (!tok.empty() && tok.back() == 0)
        tok.pop_back();
      else
        tok.push_back(0);
    } else if (ch == 'x' || ch == 'X') {
      const int k = ch == 'x' ? 1 : 3;
      if (!tok.empty() && tok.back() != 0) {
        const int sum = (tok.back() + k) % 4;
        tok.pop_back();
        if (sum != 0) tok.push_back(sum);
      } else {
        tok.push_back(k);
      }
    } else {
      throw AlphabetViolation(std::string("letter '") + ch + "' outside {x,X,y}");
    }
  }
  std::string out;
  for (int t : tok) out += t == 0 ? "y" : t == 1 ? "x" : t == 2 ? "xx" : "X";
  return out;
}

unsigned x_exponent(std::string_view w) {
  unsigned e = 0;
  for (char ch : w) {
    if (ch == 'x') e += 1;
    else if (ch == 'X') e += 3;
    else if (ch != 'y') throw AlphabetViolation(std::string("letter '") + ch + "' outside {x,X,y}");
  }
  return e % 4;
}

std::size_t QuadKeyHash::operator()(const QuadKey& k) const {
  std::uint64_t h = k.perm_code;
  for (auto t : k.terms) h = mix64(h * 0x9e3779b97f4a7c15ULL + t);
  return static_cast<std::size_t>(h);
}

namespace {
constexpr std::array<char, 4> kYSections{'b', 'c', 'a', 'e'};
}

TwoGenerated::TwoGenerated(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw InvalidArgument("TwoGenerated needs a context");
  x_.perm = {3, 0, 1, 2};
  x_inv_.perm = {1, 2, 3, 0};
  for (int i = 0; i < 4; ++i)
    if (kYSections[i] != 'e') y_.sections[i] = std::string(1, kYSections[i]);
}

const QuadElement& TwoGenerated::generator(char symbol) const {
  switch (symbol) {
    case 'x': return x_;
    case 'X': return x_inv_;
    case 'y': return y_;
  }
  throw AlphabetViolation(std::string("letter '") + symbol + "' outside {x,X,y}");
}

QuadElement TwoGenerated::psi(std::string_view w) const {
  for (char ch : w)
    if (ch != 'x' && ch != 'X' && ch != 'y') throw AlphabetViolation(std::string("letter '") + ch + "' outside {x,X,y}");
  QuadElement out;
  for (int i = 0; i < 4; ++i) {
    int cur = i;
    std::string sec;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (*it == 'x') cur = (cur + 3) % 4;
      else if (*it == 'X') cur = (cur + 1) % 4;
      else if (kYSections[cur] != 'e') sec.push_back(kYSections[cur]);
    }
    std::reverse(sec.begin(), sec.end());
    out.perm[i] = static_cast<std::uint8_t>(cur);
    out.sections[i] = reduce_word(sec);
  }
  return out;
}

bool TwoGenerated::is_identity(std::string_view w) const {
  const std::string nf = reduce_m_word(w);
  if (x_exponent(nf) != 0) return false;
  const QuadElement g = psi(nf);
  for (const auto& s : g.sections)
    if (!grig::is_identity(GenWord(ctx_, s))) return false;
  return true;
}

bool TwoGenerated::is_trivial(const QuadElement& g) const {
  if (g.perm != std::array<std::uint8_t, 4>{0, 1, 2, 3}) return false;
  for (const auto& s : g.sections)
    if (!portrait(GenWord(ctx_, s)).is_trivial()) return false;
  return true;
}

QuadKey TwoGenerated::key(const QuadElement& g) const {
  QuadKey k;
  for (int i = 0; i < 4; ++i) {
    k.perm_code = static_cast<std::uint8_t>(k.perm_code * 4 + g.perm[i]);
    k.terms[i] = canonical_term(g.sections[i], {&ctx_->effective(), 0});
  }
  return k;
}

std::string TwoGenerated::to_string(const QuadElement& g) const {
  std::string out = "[";
  for (int i = 0; i < 4; ++i) {
    if (i) out.push_back(',');
    out.push_back(static_cast<char>('0' + g.perm[i]));
  }
  out += "];(";
  for (int i = 0; i < 4; ++i) {
    if (i) out.push_back(',');
    out += grig::to_string(portrait(GenWord(ctx_, g.sections[i])));
  }
  out.push_back(')');
  return out;
}

bool SubdirectReport::ok() const {
  for (int i = 0; i < 4; ++i)
    if (!identities[i] || !coverage[i]) return false;
  return true;
}

SubdirectReport verify_subdirect(const TwoGenerated& m) {
  SubdirectReport rep;
  const auto& ctx = m.context();
  const Oracle root{&ctx->effective(), 0};
  std::array<std::array<bool, 3>, 4> seen{};  // coordinate × {a, b, c}
  for (int k = 0; k < 4; ++k) {
    const std::string w = std::string(k, 'x') + "y" + std::string(k, 'X');
    rep.conjugates[k] = m.psi(w);
    for (int i = 0; i < 4; ++i) rep.expected[k][i] = kYSections[(i + k) % 4];
    bool ok = rep.conjugates[k].perm == std::array<std::uint8_t, 4>{0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) {
      const char want = rep.expected[k][i];
      const TermId got = canonical_term(rep.conjugates[k].sections[i], root);
      ok = ok && got == term::leaf_for(want);
      if (got == term::a) seen[i][0] = true;
      if (got == term::b) seen[i][1] = true;
      if (got == term::c) seen[i][2] = true;
    }
    rep.identities[k] = ok;
  }
  for (int i = 0; i < 4; ++i) rep.coverage[i] = seen[i][0] && seen[i][1] && seen[i][2];
  return rep;
}

TwoGenModel::Element TwoGenModel::multiply(const Element& g, std::size_t s) const {
  return g * group->generator("xXy"[s]);
}

TwoGenBall growth_M(const TwoGenerated& m, unsigned radius, EnumOptions opts) {
  m.context()->require_radius(radius, "growth_M");
  BallEnumerator<TwoGenModel> e(TwoGenModel{&m}, opts, "M " + m.context()->describe());
  e.grow_to(radius);
  return std::move(e).take();
}

}  // namespace grig
