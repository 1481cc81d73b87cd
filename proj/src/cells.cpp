#include "cubical/cells.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <unordered_set>

#include "cubical/errors.hpp"

namespace cubical {

// --- interning ---------------------------------------------------------------

namespace {

struct InternTable {
  std::mutex mu;
  std::unordered_multimap<std::size_t, std::weak_ptr<const CellNode>> nodes;
  std::size_t purge_at = 1u << 16;
};

InternTable& intern_table() {
  static InternTable t;
  return t;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t shallow_hash(const CellNode& n) {
  std::size_t h = static_cast<std::size_t>(n.kind);
  h = mix(h, static_cast<std::size_t>(n.dim));
  h = mix(h, std::hash<std::string>()(n.name));
  h = mix(h, static_cast<std::size_t>(n.word.domain_dim()));
  for (const Operator& op : n.word.ops()) {
    h = mix(h, static_cast<std::size_t>(op.kind) * 1000003u + static_cast<std::size_t>(op.index) * 2 +
                   (op.sign == Sign::Plus ? 1 : 0));
  }
  h = mix(h, static_cast<std::size_t>(n.direction));
  h = mix(h, std::hash<const void*>()(n.a.id()));
  h = mix(h, std::hash<const void*>()(n.b.id()));
  return h;
}

bool shallow_equal(const CellNode& x, const CellNode& y) {
  return x.kind == y.kind && x.dim == y.dim && x.direction == y.direction && x.a == y.a &&
         x.b == y.b && x.name == y.name && x.word == y.word;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

}  // namespace

Cell intern(CellNode&& node) {
  node.tree_size = 1;
  if (node.a.valid()) node.tree_size = saturating_add(node.tree_size, node.a.tree_size());
  if (node.b.valid()) node.tree_size = saturating_add(node.tree_size, node.b.tree_size());
  node.shallow_hash = shallow_hash(node);

  InternTable& t = intern_table();
  std::lock_guard lock(t.mu);
  auto [lo, hi] = t.nodes.equal_range(node.shallow_hash);
  for (auto it = lo; it != hi; ++it) {
    if (auto sp = it->second.lock(); sp && shallow_equal(*sp, node)) return Cell(sp);
  }
  const std::size_t h = node.shallow_hash;
  auto sp = std::make_shared<const CellNode>(std::move(node));
  t.nodes.emplace(h, sp);
  if (t.nodes.size() >= t.purge_at) {
    std::erase_if(t.nodes, [](const auto& kv) { return kv.second.expired(); });
    t.purge_at = std::max<std::size_t>(1u << 16, 2 * t.nodes.size());
  }
  return Cell(sp);
}

Cell Cell::gen(const std::string& name, int dim) {
  if (dim < 0) throw IndexOutOfRange("negative generator dimension");
  CellNode n;
  n.kind = CellKind::Gen;
  n.dim = dim;
  n.name = name;
  return intern(std::move(n));
}

Cell Cell::apply(const OperatorWord& w, const Cell& arg) {
  if (w.domain_dim() != arg.dim()) {
    throw DimensionMismatch("word " + to_string(w) + " applied to a term of dimension " +
                            std::to_string(arg.dim()));
  }
  if (w.empty()) return arg;
  CellNode n;
  n.kind = CellKind::Apply;
  n.dim = w.codomain_dim();
  n.word = w;
  n.a = arg;
  return intern(std::move(n));
}

Cell Cell::comp(int j, const Cell& a, const Cell& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("composite of dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  if (j < 1 || j > a.dim()) {
    throw IndexOutOfRange("composition direction " + std::to_string(j) + " on dimension " +
                          std::to_string(a.dim()));
  }
  CellNode n;
  n.kind = CellKind::Comp;
  n.dim = a.dim();
  n.direction = j;
  n.a = a;
  n.b = b;
  return intern(std::move(n));
}

Cell Cell::inv(int j, const Cell& a) {
  if (j < 1 || j > a.dim()) {
    throw IndexOutOfRange("inverse direction " + std::to_string(j) + " on dimension " +
                          std::to_string(a.dim()));
  }
  CellNode n;
  n.kind = CellKind::Inv;
  n.dim = a.dim();
  n.direction = j;
  n.a = a;
  return intern(std::move(n));
}

CellKind Cell::kind() const { return node_->kind; }
int Cell::dim() const { return node_->dim; }
const std::string& Cell::name() const { return node_->name; }
const OperatorWord& Cell::word() const { return node_->word; }
int Cell::direction() const { return node_->direction; }
Cell Cell::arg() const { return node_->a; }
Cell Cell::left() const { return node_->a; }
Cell Cell::right() const { return node_->b; }
std::uint64_t Cell::tree_size() const { return node_->tree_size; }

namespace {

void print(const Cell& t, std::string& out) {
  switch (t.kind()) {
    case CellKind::Gen:
      out += "gen(" + t.name() + ")";
      return;
    case CellKind::Apply: {
      out += "apply(";
      const auto& ops = t.word().ops();
      for (std::size_t k = 0; k < ops.size(); ++k) {
        if (k) out += '.';
        out += to_string(ops[k]);
      }
      out += ", ";
      print(t.arg(), out);
      out += ')';
      return;
    }
    case CellKind::Comp:
      out += "comp" + std::to_string(t.direction()) + "(";
      print(t.left(), out);
      out += ", ";
      print(t.right(), out);
      out += ')';
      return;
    case CellKind::Inv:
      out += "inv" + std::to_string(t.direction()) + "(";
      print(t.arg(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Cell& t) {
  std::string out;
  print(t, out);
  return out;
}

// --- presentations -------------------------------------------------------------

void Presentation::add(GeneratorDecl g) {
  if (index_.count(g.name)) throw NameClash("generator '" + g.name + "' declared twice");
  if (g.dim < 0) throw IndexOutOfRange("generator '" + g.name + "' has negative dimension");
  index_.emplace(g.name, gens_.size());
  gens_.push_back(std::move(g));
}

const GeneratorDecl* Presentation::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &gens_[it->second];
}

Cell Presentation::gen(const std::string& name) const {
  const GeneratorDecl* g = find(name);
  if (!g) throw UnknownGenerator("'" + name + "' is not a generator of " + name_);
  return Cell::gen(g->name, g->dim);
}

std::optional<Cell> Presentation::declared_face(const std::string& name, int i, Sign s) const {
  const GeneratorDecl* g = find(name);
  if (!g) return std::nullopt;
  auto it = g->boundary.find({i, s});
  if (it == g->boundary.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Presentation::counts_by_dim() const {
  std::vector<int> counts;
  for (const auto& g : gens_) {
    if (static_cast<int>(counts.size()) <= g.dim) counts.resize(g.dim + 1, 0);
    ++counts[g.dim];
  }
  return counts;
}

// --- verdicts and traces ---------------------------------------------------------

const char* to_string(EqVerdict v) {
  switch (v) {
    case EqVerdict::Equal:
      return "Equal";
    case EqVerdict::Distinct:
      return "Distinct";
    case EqVerdict::Unknown:
      return "Unknown";
  }
  return "?";
}

const char* to_string(Tri v) {
  switch (v) {
    case Tri::Yes:
      return "Yes";
    case Tri::No:
      return "No";
    case Tri::Unknown:
      return "Unknown";
  }
  return "?";
}

void CellTrace::merge(const WordTrace& w) {
  for (const auto& [tag, n] : w.counts) counts[tag] += n;
}

bool CellTrace::only(const std::vector<std::string>& allowed) const {
  for (const auto& [tag, n] : counts) {
    if (n == 0) continue;
    const bool ok = std::find(allowed.begin(), allowed.end(), tag) != allowed.end();
    if (!ok) return false;
  }
  return true;
}

bool CellTrace::strict_only() const {
  std::vector<std::string> allowed = word_rule_tags();
  allowed.insert(allowed.end(),
                 {"face-comp", "degen-comp", "conn-comp", "transport+", "transport-",
                  "interchange", "boundary", "inv-face", "inv-raise", "inv-comp", "inv-conn",
                  "inv-degen", "inv-inv", "degenerate-comp"});
  return only(allowed);
}

// --- free functions --------------------------------------------------------------

Cell eps1_power(const Cell& t, int k) {
  if (k == 0) return t;
  return Cell::apply(OperatorWord(std::vector<Operator>(k, Operator::degen(1)), t.dim()), t);
}

Cell face1_power(const Cell& t, int k, Sign s) {
  if (k == 0) return t;
  if (k > t.dim()) throw IndexOutOfRange("cannot take " + std::to_string(k) + " faces of a " +
                                         std::to_string(t.dim()) + "-cell");
  return Cell::apply(OperatorWord(std::vector<Operator>(k, Operator::face(1, s)), t.dim()), t);
}

std::vector<std::string> referenced_generators(const Cell& t) {
  std::set<std::string> names;
  std::unordered_set<const CellNode*> seen;
  std::function<void(const Cell&)> walk = [&](const Cell& c) {
    if (!seen.insert(c.id()).second) return;
    switch (c.kind()) {
      case CellKind::Gen:
        names.insert(c.name());
        return;
      case CellKind::Apply:
      case CellKind::Inv:
        walk(c.arg());
        return;
      case CellKind::Comp:
        walk(c.left());
        walk(c.right());
        return;
    }
  };
  walk(t);
  return {names.begin(), names.end()};
}

Cell substitute(const Cell& t, const std::map<std::string, Cell>& images) {
  std::unordered_map<Cell, Cell, CellHash> memo;
  std::function<Cell(const Cell&)> go = [&](const Cell& c) -> Cell {
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    Cell r;
    switch (c.kind()) {
      case CellKind::Gen: {
        auto it = images.find(c.name());
        if (it == images.end()) {
          r = c;
        } else {
          if (it->second.dim() != c.dim()) {
            throw DimensionMismatch("image of '" + c.name() + "' has dimension " +
                                    std::to_string(it->second.dim()));
          }
          r = it->second;
        }
        break;
      }
      case CellKind::Apply:
        r = Cell::apply(c.word(), go(c.arg()));
        break;
      case CellKind::Comp:
        r = Cell::comp(c.direction(), go(c.left()), go(c.right()));
        break;
      case CellKind::Inv:
        r = Cell::inv(c.direction(), go(c.arg()));
        break;
    }
    memo.emplace(c, r);
    return r;
  };
  return go(t);
}

std::vector<std::string> validate_presentation(const Presentation& p) {
  std::vector<std::string> problems;
  for (const auto& g : p.generators()) {
    bool entries_ok = true;
    for (const auto& [key, term] : g.boundary) {
      const auto [i, s] = key;
      const std::string where = g.name + " d" + std::to_string(i) + sign_char(s);
      if (i < 1 || i > g.dim) {
        problems.push_back(where + ": index out of range");
        entries_ok = false;
        continue;
      }
      if (term.dim() != g.dim - 1) {
        problems.push_back(where + ": boundary has dimension " + std::to_string(term.dim()));
        entries_ok = false;
      }
      for (const auto& name : referenced_generators(term)) {
        const GeneratorDecl* ref = p.find(name);
        if (!ref) {
          problems.push_back(where + ": unknown generator '" + name + "'");
          entries_ok = false;
        } else if (ref->dim >= g.dim) {
          problems.push_back(where + ": refers to '" + name + "' of dimension " +
                             std::to_string(ref->dim));
          entries_ok = false;
        }
      }
    }
    // Declared directions must be a prefix 1..k with both signs given.
    int prefix = 0;
    while (prefix < g.dim && g.boundary.count({prefix + 1, Sign::Minus}) &&
           g.boundary.count({prefix + 1, Sign::Plus})) {
      ++prefix;
    }
    if (static_cast<int>(g.boundary.size()) != 2 * prefix) {
      problems.push_back(g.name + ": declared faces must cover directions 1..k with both signs");
      entries_ok = false;
    }
    if (!entries_ok) continue;

    Normalizer norm(p, NormalizeOptions{true, false});
    const Cell x = Cell::gen(g.name, g.dim);
    for (int j = 2; j <= prefix; ++j) {
      for (int i = 1; i < j; ++i) {
        for (Sign a : kSigns) {
          for (Sign b : kSigns) {
            try {
              const Cell lhs = norm.normalize(norm.face(norm.face(x, j, b), i, a));
              const Cell rhs = norm.normalize(norm.face(norm.face(x, i, a), j - 1, b));
              if (norm.equal(lhs, rhs) == EqVerdict::Distinct) {
                problems.push_back(g.name + ": d" + std::to_string(i) + sign_char(a) + " d" +
                                   std::to_string(j) + sign_char(b) + " = " + to_string(lhs) +
                                   " but d" + std::to_string(j - 1) + sign_char(b) + " d" +
                                   std::to_string(i) + sign_char(a) + " = " + to_string(rhs));
              }
            } catch (const Error& e) {
              problems.push_back(g.name + ": " + e.what());
            }
          }
        }
      }
    }
  }
  return problems;
}

}  // namespace cubical
