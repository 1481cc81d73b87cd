#include "cubical/crossed.hpp"

#include <algorithm>
#include <tuple>

#include "cubical/errors.hpp"

namespace cubical {

ActionWord action_word(const std::string& base, int n, int i) {
  if (i < 1 || i > n) {
    throw IndexOutOfRange("u_" + std::to_string(i) + " on a " + std::to_string(n) + "-cube");
  }
  std::vector<Operator> ops;
  for (int k = 1; k <= n; ++k) {
    if (k != i) ops.push_back(Operator::face(k, Sign::Plus));
  }
  return {base, i, OperatorWord(std::move(ops), n)};
}

std::string CrossedTerm::symbol() const {
  std::string s = cell;
  if (face) s += std::to_string(face->first) + sign_char(face->second);
  if (action) s = "(" + s + ")^{u" + std::to_string(action->omitted) + "}";
  return s;
}

bool CrossedWord::operator==(const CrossedWord& o) const {
  if (dim != o.dim || terms.size() != o.terms.size()) return false;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k].sign != o.terms[k].sign || !terms[k].same_symbol(o.terms[k])) return false;
  }
  return true;
}

namespace {

auto order_key(const CrossedTerm& t) {
  const int has_face = t.face ? 0 : 1;
  const int index = t.face ? t.face->first : 0;
  const int sign_rank = t.face && t.face->second == Sign::Minus ? 1 : 0;
  const int acted = t.action ? t.action->omitted : 0;
  return std::make_tuple(has_face, index, sign_rank, acted, t.cell);
}

}  // namespace

CrossedWord normalize(const CrossedWord& w) {
  CrossedWord out{w.dim, {}};
  if (!w.abelian()) {
    for (const CrossedTerm& t : w.terms) {
      if (!out.terms.empty() && out.terms.back().same_symbol(t) &&
          out.terms.back().sign == -t.sign) {
        out.terms.pop_back();
      } else {
        out.terms.push_back(t);
      }
    }
    return out;
  }
  std::vector<std::pair<CrossedTerm, int>> totals;
  for (const CrossedTerm& t : w.terms) {
    auto it = std::find_if(totals.begin(), totals.end(),
                           [&](const auto& e) { return e.first.same_symbol(t); });
    if (it == totals.end()) totals.emplace_back(t, t.sign);
    else it->second += t.sign;
  }
  std::stable_sort(totals.begin(), totals.end(), [](const auto& a, const auto& b) {
    return order_key(a.first) < order_key(b.first);
  });
  for (auto& [t, count] : totals) {
    for (int k = 0; k < std::abs(count); ++k) {
      CrossedTerm c = t;
      c.sign = count > 0 ? 1 : -1;
      out.terms.push_back(c);
    }
  }
  return out;
}

CrossedWord negate(const CrossedWord& w) {
  CrossedWord out = w;
  for (CrossedTerm& t : out.terms) t.sign = -t.sign;
  if (!w.abelian()) std::reverse(out.terms.begin(), out.terms.end());
  return out;
}

CrossedWord concat(const CrossedWord& a, const CrossedWord& b) {
  if (a.dim != b.dim) {
    throw DimensionMismatch("crossed words of dimension " + std::to_string(a.dim) + " and " +
                            std::to_string(b.dim));
  }
  CrossedWord out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

std::string to_string(const CrossedWord& w) {
  if (w.terms.empty()) return "0";
  std::string s;
  for (const CrossedTerm& t : w.terms) {
    if (!s.empty()) s += ' ';
    s += t.sign > 0 ? "+ " : "- ";
    s += t.symbol();
  }
  return s;
}

CrossedWord hal_boundary(int n, const std::string& x) {
  if (n < 2) throw DimensionTooLow("the boundary formula needs n >= 2, got " + std::to_string(n));
  auto face = [&](int sign, int i, Sign a) { return CrossedTerm{sign, x, FaceKey{i, a}, {}}; };
  auto acted = [&](int sign, int i, Sign a) {
    return CrossedTerm{sign, x, FaceKey{i, a}, action_word(x, n, i)};
  };
  CrossedWord w{n - 1, {}};
  if (n == 2) {
    w.terms = {face(-1, 1, Sign::Plus), face(-1, 2, Sign::Minus), face(+1, 1, Sign::Minus),
               face(+1, 2, Sign::Plus)};
    return w;
  }
  if (n == 3) {
    w.terms = {face(-1, 3, Sign::Plus),  acted(-1, 2, Sign::Minus), face(-1, 1, Sign::Plus),
               acted(+1, 3, Sign::Minus), face(+1, 2, Sign::Plus),  acted(+1, 1, Sign::Minus)};
    return w;
  }
  for (int i = 1; i <= n; ++i) {
    const int s = i % 2 == 0 ? 1 : -1;
    w.terms.push_back(face(s, i, Sign::Plus));
    w.terms.push_back(acted(-s, i, Sign::Minus));
  }
  return normalize(w);
}

namespace {

// Whether the edge u_i x is degenerate given the flagged + faces of x. Any
// + face d_j^+ (j != i) can be taken first; if it is e_1^{j-1} of something,
// the remaining faces may leave a degeneracy standing.
bool degenerate_action(const ActionWord& u, const std::map<FaceKey, bool>& flags) {
  const int n = u.word.domain_dim();
  for (int j = 2; j <= n; ++j) {
    if (j == u.omitted) continue;
    auto it = flags.find({j, Sign::Plus});
    if (it == flags.end() || !it->second) continue;
    std::vector<Operator> rest;
    for (int k = 1; k <= n; ++k) {
      if (k == j || k == u.omitted) continue;
      rest.push_back(Operator::face(k < j ? k : k - 1, Sign::Plus));
    }
    std::vector<Operator> ops = rest;
    for (int d = 0; d < j - 1; ++d) ops.push_back(Operator::degen(1));
    const OperatorWord w(std::move(ops), n - j);
    if (!normalize_word(w).raiser_part().empty()) return true;
  }
  return false;
}

}  // namespace

CrossedWord reduce_globular(const CrossedWord& w, const std::map<FaceKey, bool>& flags) {
  CrossedWord out{w.dim, {}};
  for (const CrossedTerm& t : w.terms) {
    if (t.face) {
      auto it = flags.find(*t.face);
      if (it != flags.end() && it->second) continue;  // neutral; actions on it vanish
    }
    CrossedTerm c = t;
    if (c.action && degenerate_action(*c.action, flags)) c.action.reset();
    out.terms.push_back(std::move(c));
  }
  return normalize(out);
}

std::map<FaceKey, bool> globular_flags(int n) {
  std::map<FaceKey, bool> flags;
  for (int i = 1; i <= n; ++i) {
    for (Sign s : kSigns) flags[{i, s}] = i >= 2;
  }
  return flags;
}

const CrossedGenerator* CrossedPresentation::find(const std::string& n) const {
  for (const auto& g : generators) {
    if (g.name == n) return &g;
  }
  return nullptr;
}

std::vector<int> CrossedPresentation::counts_by_dim() const {
  std::vector<int> counts;
  for (const auto& g : generators) {
    if (static_cast<int>(counts.size()) <= g.dim) counts.resize(g.dim + 1, 0);
    ++counts[g.dim];
  }
  return counts;
}

CrossedPresentation globe_crossed_complex(int n) {
  if (n < 1) throw DimensionTooLow("the globe complex needs n >= 1, got " + std::to_string(n));
  CrossedPresentation p{"globe" + std::to_string(n), {}};
  auto cell = [](int r, const char* suffix) { return "e" + std::to_string(r) + suffix; };
  auto boundary = [&](int r) {
    if (r == 0) return CrossedWord{0, {}};
    return CrossedWord{r - 1,
                       {CrossedTerm{-1, cell(r - 1, "+"), {}, {}},
                        CrossedTerm{+1, cell(r - 1, "-"), {}, {}}}};
  };
  for (int r = 0; r < n; ++r) {
    p.generators.push_back({cell(r, "+"), r, boundary(r)});
    p.generators.push_back({cell(r, "-"), r, boundary(r)});
  }
  p.generators.push_back({cell(n, ""), n, boundary(n)});
  return p;
}

CrossedWord apply_boundary(const CrossedPresentation& p, const CrossedWord& w) {
  if (w.dim < 2) {
    throw IllFormed("boundaries of dimension-" + std::to_string(w.dim) +
                    " words are endpoints, not words");
  }
  CrossedWord out{w.dim - 1, {}};
  for (const CrossedTerm& t : w.terms) {
    if (t.action || t.face) {
      throw IllFormed("cannot substitute into " + t.symbol() + ": only generator terms");
    }
    const CrossedGenerator* g = p.find(t.cell);
    if (!g) throw UnknownGenerator(t.cell);
    if (g->dim != w.dim) {
      throw DimensionMismatch(g->name + " has dimension " + std::to_string(g->dim) +
                              " in a word of dimension " + std::to_string(w.dim));
    }
    out = concat(out, t.sign > 0 ? g->boundary : negate(g->boundary));
  }
  return normalize(out);
}

CrossedWord boundary_of_boundary(const CrossedPresentation& p, const std::string& gen) {
  const CrossedGenerator* g = p.find(gen);
  if (!g) throw UnknownGenerator(gen);
  if (g->dim < 3) {
    throw DimensionTooLow(gen + " has dimension " + std::to_string(g->dim) +
                          "; the double boundary needs dimension >= 3");
  }
  return apply_boundary(p, g->boundary);
}

}  // namespace cubical
