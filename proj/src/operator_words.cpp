#include "cubical/operator_words.hpp"

#include <algorithm>

#include "cubical/errors.hpp"

namespace cubical {

bool Operator::valid_on(int dim) const {
  if (dim < 0 || index < 1) return false;
  switch (kind) {
    case OpKind::Face:
      return index <= dim;
    case OpKind::Degen:
      return index <= dim + 1;
    case OpKind::Conn:
      return index <= dim;
  }
  return false;
}

std::string to_string(const Operator& op) {
  std::string s;
  switch (op.kind) {
    case OpKind::Face:
      s = "d";
      break;
    case OpKind::Degen:
      s = "e";
      break;
    case OpKind::Conn:
      s = "g";
      break;
  }
  s += std::to_string(op.index);
  if (op.kind != OpKind::Degen) s += sign_char(op.sign);
  return s;
}

const char* rule_tag(WordRule r) {
  switch (r) {
    case WordRule::FaceFace:
      return "face-face";
    case WordRule::DegenDegen:
      return "degen-degen";
    case WordRule::FaceDegen:
      return "face-degen";
    case WordRule::ConnConn:
      return "conn-conn";
    case WordRule::ConnConnAssoc:
      return "conn-conn-same";
    case WordRule::ConnDegen:
      return "conn-degen";
    case WordRule::ConnDegenEqual:
      return "conn-degen-same";
    case WordRule::FaceConn:
      return "face-conn";
    case WordRule::FaceConnCancel:
      return "face-conn-cancel";
    case WordRule::FaceConnDegen:
      return "face-conn-degen";
  }
  return "?";
}

const std::vector<std::string>& word_rule_tags() {
  static const std::vector<std::string> tags = {
      "face-face", "degen-degen", "face-degen", "conn-conn", "conn-conn-same",
      "conn-degen", "conn-degen-same", "face-conn", "face-conn-cancel", "face-conn-degen"};
  return tags;
}

OperatorWord::OperatorWord(std::vector<Operator> ops, int domain_dim)
    : ops_(std::move(ops)), domain_dim_(domain_dim) {
  if (domain_dim < 0) {
    throw IndexOutOfRange("negative domain dimension");
  }
  int dim = domain_dim;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    if (it->kind == OpKind::Degen) it->sign = Sign::Plus;
    if (!it->valid_on(dim)) {
      throw IndexOutOfRange("operator " + to_string(*it) +
                            " is not defined on dimension " +
                            std::to_string(dim));
    }
    dim += it->delta();
  }
}

int OperatorWord::codomain_dim() const {
  int dim = domain_dim_;
  for (const auto& op : ops_) dim += op.delta();
  return dim;
}

OperatorWord OperatorWord::raiser_part() const {
  auto first_face = std::find_if(ops_.begin(), ops_.end(),
                                 [](const Operator& o) { return o.is_face(); });
  OperatorWord faces = face_part();
  return OperatorWord(std::vector<Operator>(ops_.begin(), first_face),
                      faces.codomain_dim());
}

OperatorWord OperatorWord::face_part() const {
  auto first_face = std::find_if(ops_.begin(), ops_.end(),
                                 [](const Operator& o) { return o.is_face(); });
  return OperatorWord(std::vector<Operator>(first_face, ops_.end()),
                      domain_dim_);
}

std::string to_string(const OperatorWord& w) {
  std::string s = "@dim=" + std::to_string(w.domain_dim());
  for (std::size_t k = 0; k < w.ops().size(); ++k) {
    s += k == 0 ? " " : ".";
    s += to_string(w.ops()[k]);
  }
  return s;
}

OperatorWord compose_words(const OperatorWord& w1, const OperatorWord& w2) {
  if (w2.codomain_dim() != w1.domain_dim()) {
    throw DimensionMismatch("cannot compose: codomain " +
                            std::to_string(w2.codomain_dim()) +
                            " vs domain " + std::to_string(w1.domain_dim()));
  }
  std::vector<Operator> ops = w1.ops();
  ops.insert(ops.end(), w2.ops().begin(), w2.ops().end());
  return OperatorWord(std::move(ops), w2.domain_dim());
}

std::optional<PairRewrite> rewrite_pair(const Operator& left,
                                        const Operator& right) {
  using O = Operator;
  const int i = left.index;
  const int j = right.index;
  const Sign a = left.sign;
  const Sign b = right.sign;

  if (left.is_face()) {
    switch (right.kind) {
      case OpKind::Face:
        if (i < j) return PairRewrite{WordRule::FaceFace, {O::face(j - 1, b), O::face(i, a)}};
        return std::nullopt;
      case OpKind::Degen:
        if (i < j) return PairRewrite{WordRule::FaceDegen, {O::degen(j - 1), O::face(i, a)}};
        if (i > j) return PairRewrite{WordRule::FaceDegen, {O::degen(j), O::face(i - 1, a)}};
        return PairRewrite{WordRule::FaceDegen, {}};
      case OpKind::Conn:
        if (i < j) return PairRewrite{WordRule::FaceConn, {O::conn(j - 1, b), O::face(i, a)}};
        if (i > j + 1) return PairRewrite{WordRule::FaceConn, {O::conn(j, b), O::face(i - 1, a)}};
        if (a == b) return PairRewrite{WordRule::FaceConnCancel, {}};
        return PairRewrite{WordRule::FaceConnDegen, {O::degen(j), O::face(j, a)}};
    }
  }

  if (left.kind == OpKind::Degen && right.kind == OpKind::Degen) {
    // e_{j+1} e_i -> e_i e_j for i <= j: degeneracy indices end up ascending.
    if (i > j) return PairRewrite{WordRule::DegenDegen, {O::degen(j), O::degen(i - 1)}};
    return std::nullopt;
  }

  if (left.kind == OpKind::Conn && right.kind == OpKind::Degen) {
    if (i < j) return PairRewrite{WordRule::ConnDegen, {O::degen(j + 1), O::conn(i, a)}};
    if (i > j) return PairRewrite{WordRule::ConnDegen, {O::degen(j), O::conn(i - 1, a)}};
    return PairRewrite{WordRule::ConnDegenEqual, {O::degen(j), O::degen(j)}};
  }

  if (left.kind == OpKind::Conn && right.kind == OpKind::Conn) {
    // g_{j+1}^b g_i^a -> g_i^a g_j^b for i < j.
    if (i > j + 1) return PairRewrite{WordRule::ConnConn, {O::conn(j, b), O::conn(i - 1, a)}};
    // g_{i+1}^a g_i^a -> g_i^a g_i^a.
    if (i == j + 1 && a == b) return PairRewrite{WordRule::ConnConnAssoc, {O::conn(j, b), O::conn(j, b)}};
    return std::nullopt;
  }

  // Degeneracy over connection, raisers over faces: already ordered.
  return std::nullopt;
}

namespace {

void record(WordTrace* trace, WordRule rule) {
  if (!trace) return;
  ++trace->counts[rule_tag(rule)];
  ++trace->steps;
}

// A generous cap; the fuzz tests assert the much tighter 10 L^2 bound.
long step_cap(std::size_t length) {
  const long l = static_cast<long>(length) + 1;
  return 1000 + 100 * l * l;
}

std::vector<Operator> splice(const std::vector<Operator>& ops, std::size_t pos,
                             const std::vector<Operator>& replacement) {
  std::vector<Operator> out;
  out.reserve(ops.size() + 1);
  out.insert(out.end(), ops.begin(), ops.begin() + static_cast<long>(pos));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), ops.begin() + static_cast<long>(pos) + 2, ops.end());
  return out;
}

}  // namespace

OperatorWord normalize_word(const OperatorWord& w, WordTrace* trace) {
  std::vector<Operator> ops = w.ops();
  const long cap = step_cap(ops.size());
  long steps = 0;
  std::size_t pos = 0;
  while (pos + 1 < ops.size()) {
    auto rw = rewrite_pair(ops[pos], ops[pos + 1]);
    if (!rw) {
      ++pos;
      continue;
    }
    record(trace, rw->rule);
    ops = splice(ops, pos, rw->replacement);
    if (++steps > cap) throw IllFormed("operator rewriting did not terminate");
    // Only the pair ending at pos can have become a new redex to the left.
    pos = pos == 0 ? 0 : pos - 1;
  }
  return OperatorWord(std::move(ops), w.domain_dim());
}

OperatorWord normalize_word_random(const OperatorWord& w, std::mt19937_64& rng,
                                   WordTrace* trace) {
  std::vector<Operator> ops = w.ops();
  const long cap = step_cap(ops.size());
  long steps = 0;
  std::vector<std::size_t> redexes;
  for (;;) {
    redexes.clear();
    for (std::size_t p = 0; p + 1 < ops.size(); ++p) {
      if (rewrite_pair(ops[p], ops[p + 1])) redexes.push_back(p);
    }
    if (redexes.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
    const std::size_t p = redexes[pick(rng)];
    auto rw = rewrite_pair(ops[p], ops[p + 1]);
    record(trace, rw->rule);
    ops = splice(ops, p, rw->replacement);
    if (++steps > cap) throw IllFormed("operator rewriting did not terminate");
  }
  return OperatorWord(std::move(ops), w.domain_dim());
}

bool is_normal(const OperatorWord& w) {
  const auto& ops = w.ops();
  for (std::size_t p = 0; p + 1 < ops.size(); ++p) {
    if (rewrite_pair(ops[p], ops[p + 1])) return false;
  }
  return true;
}

bool words_equal(const OperatorWord& w1, const OperatorWord& w2) {
  if (w1.domain_dim() != w2.domain_dim()) {
    throw DimensionMismatch("words have domains " +
                            std::to_string(w1.domain_dim()) + " and " +
                            std::to_string(w2.domain_dim()));
  }
  return normalize_word(w1) == normalize_word(w2);
}

Operator random_operator(int dim, std::mt19937_64& rng) {
  std::vector<Operator> choices;
  for (int i = 1; i <= dim; ++i) {
    for (Sign s : kSigns) {
      choices.push_back(Operator::face(i, s));
      choices.push_back(Operator::conn(i, s));
    }
  }
  for (int i = 1; i <= dim + 1; ++i) choices.push_back(Operator::degen(i));
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  return choices[pick(rng)];
}

OperatorWord random_word(int max_dim, int max_length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_dist(0, max_dim);
  std::uniform_int_distribution<int> len_dist(0, max_length);
  const int domain = dim_dist(rng);
  const int length = max_dim == 0 ? 0 : len_dist(rng);
  std::vector<Operator> applied;  // in application order
  int dim = domain;
  for (int k = 0; k < length; ++k) {
    Operator op;
    do {
      op = random_operator(dim, rng);
    } while (dim + op.delta() > max_dim || dim + op.delta() < 0);
    applied.push_back(op);
    dim += op.delta();
  }
  std::reverse(applied.begin(), applied.end());
  return OperatorWord(std::move(applied), domain);
}

}  // namespace cubical
