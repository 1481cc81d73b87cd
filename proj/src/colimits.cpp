#include "cubical/colimits.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "cubical/errors.hpp"

namespace cubical {

// --- morphisms -------------------------------------------------------------------

MorphismCheck validate_morphism(const PresMorphism& m) {
  MorphismCheck check;
  bool total = true;
  for (const auto& g : m.source.generators()) {
    auto it = m.images.find(g.name);
    if (it == m.images.end()) {
      check.problems.push_back(g.name + ": no image");
      total = false;
      continue;
    }
    if (it->second.dim() != g.dim) {
      check.problems.push_back(g.name + ": image of dimension " +
                               std::to_string(it->second.dim()));
      total = false;
    }
    for (const auto& name : referenced_generators(it->second)) {
      if (!m.target.contains(name)) {
        check.problems.push_back(g.name + ": image uses unknown generator '" + name + "'");
        total = false;
      }
    }
  }
  for (const auto& [name, image] : m.images) {
    if (!m.source.contains(name)) check.problems.push_back(name + ": not a source generator");
  }
  if (!total) return check;

  Normalizer norm(m.target, NormalizeOptions{true, false});
  for (const auto& g : m.source.generators()) {
    const Cell image = m.images.at(g.name);
    for (const auto& [key, face] : g.boundary) {
      const std::string where =
          g.name + " d" + std::to_string(key.first) + sign_char(key.second);
      try {
        const EqVerdict v = norm.equal(norm.face(image, key.first, key.second), m(face));
        if (v == EqVerdict::Distinct) check.problems.push_back(where + ": face not preserved");
        if (v == EqVerdict::Unknown) check.unknown_faces.push_back(where);
      } catch (const Error& e) {
        check.problems.push_back(where + ": " + e.what());
      }
    }
  }
  return check;
}

PresMorphism identity_morphism(const Presentation& p) {
  PresMorphism m{p, p, {}};
  for (const auto& g : p.generators()) m.images.emplace(g.name, Cell::gen(g.name, g.dim));
  return m;
}

bool same_shape(const Presentation& a, const Presentation& b) {
  const auto& x = a.generators();
  const auto& y = b.generators();
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].name != y[k].name || x[k].dim != y[k].dim) return false;
  }
  return true;
}

PresMorphism compose(const PresMorphism& second, const PresMorphism& first) {
  if (!same_shape(first.target, second.source)) {
    throw NotComposable("morphisms into " + first.target.name() + " and out of " +
                        second.source.name());
  }
  PresMorphism m{first.source, second.target, {}};
  for (const auto& [name, image] : first.images) m.images.emplace(name, second(image));
  return m;
}

// --- coproducts and coequalisers -------------------------------------------------

Coproduct coproduct(const std::vector<Presentation>& ps, const std::string& name,
                    const std::vector<std::string>& prefixes) {
  Coproduct c;
  c.sum = Presentation(name);
  std::map<std::string, int> uses;
  for (const auto& p : ps) ++uses[p.name()];
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (k < prefixes.size()) {
      c.prefixes.push_back(prefixes[k]);
    } else if (ps[k].name().empty() || uses[ps[k].name()] > 1) {
      c.prefixes.push_back("p" + std::to_string(k) + ".");
    } else {
      c.prefixes.push_back(ps[k].name() + ".");
    }
  }
  for (std::size_t k = 0; k < ps.size(); ++k) {
    PresMorphism inc{ps[k], {}, {}};
    for (const auto& g : ps[k].generators()) {
      inc.images.emplace(g.name, Cell::gen(c.prefixes[k] + g.name, g.dim));
    }
    for (const auto& g : ps[k].generators()) {
      GeneratorDecl decl{c.prefixes[k] + g.name, g.dim, {}};
      for (const auto& [key, face] : g.boundary) decl.boundary[key] = inc(face);
      c.sum.add(std::move(decl));
    }
    c.inclusions.push_back(std::move(inc));
  }
  for (auto& inc : c.inclusions) inc.target = c.sum;
  return c;
}

Coequalizer coequalizer(const PresMorphism& a, const PresMorphism& b) {
  if (!same_shape(a.source, b.source) || !same_shape(a.target, b.target)) {
    throw NotParallel("coequaliser of morphisms " + a.source.name() + " -> " +
                      a.target.name() + " and " + b.source.name() + " -> " + b.target.name());
  }
  Coequalizer c;
  c.quotient.presentation = a.target;
  c.quotient.presentation.set_name(a.target.name() + "/~");
  for (const auto& g : a.source.generators()) {
    c.quotient.relations.push_back({a.images.at(g.name), b.images.at(g.name), g.name});
  }
  c.projection = identity_morphism(a.target);
  c.projection.target = c.quotient.presentation;
  return c;
}

EqVerdict equal_modulo(const QuotientPresentation& q, const Cell& x, const Cell& y) {
  Normalizer norm(q.presentation);
  if (norm.equal(x, y) == EqVerdict::Equal) return EqVerdict::Equal;

  // Related generators: identified ones go to the least name, the others
  // are replaced by what they are related to.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> root = [&](const std::string& n) {
    auto it = parent.find(n);
    if (it == parent.end() || it->second == n) return n;
    return it->second = root(it->second);
  };
  std::map<std::string, Cell> images;
  std::vector<std::pair<Cell, Cell>> terms;
  for (const auto& r : q.relations) {
    const Cell l = norm.normalize(r.lhs);
    const Cell s = norm.normalize(r.rhs);
    if (l == s) continue;
    if (l.kind() == CellKind::Gen && s.kind() == CellKind::Gen) {
      const std::string u = root(l.name()), v = root(s.name());
      if (u != v) parent[std::max(u, v)] = std::min(u, v);
    } else {
      terms.emplace_back(l, s);
    }
  }
  for (const auto& g : q.presentation.generators()) {
    const std::string r = root(g.name);
    if (r != g.name) images.emplace(g.name, Cell::gen(r, g.dim));
  }
  for (const auto& [l, s] : terms) {
    for (const auto& [gen, other] : {std::pair{l, s}, std::pair{s, l}}) {
      if (gen.kind() != CellKind::Gen) continue;
      const std::string r = root(gen.name());
      const auto refs = referenced_generators(other);
      if (images.count(r) || std::find(refs.begin(), refs.end(), r) != refs.end()) continue;
      images.emplace(r, other);
      break;
    }
  }
  constexpr int kRounds = 8;
  Cell u = x, v = y;
  for (int round = 0; round < kRounds; ++round) {
    const Cell nu = norm.normalize(substitute(u, images));
    const Cell nv = norm.normalize(substitute(v, images));
    if (norm.equal(nu, nv) == EqVerdict::Equal) return EqVerdict::Equal;
    if (nu == u && nv == v) break;
    u = nu;
    v = nv;
  }
  return EqVerdict::Unknown;
}

std::vector<int> class_counts_by_dim(const QuotientPresentation& q) {
  Normalizer norm(q.presentation, NormalizeOptions{true, false});
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> root = [&](const std::string& n) {
    auto it = parent.find(n);
    if (it == parent.end() || it->second == n) return n;
    return it->second = root(it->second);
  };
  for (const auto& r : q.relations) {
    const Cell l = norm.normalize(r.lhs);
    const Cell s = norm.normalize(r.rhs);
    if (l.kind() != CellKind::Gen || s.kind() != CellKind::Gen) continue;
    const std::string u = root(l.name()), v = root(s.name());
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  std::vector<int> counts;
  for (const auto& g : q.presentation.generators()) {
    if (root(g.name) != g.name) continue;
    if (static_cast<int>(counts.size()) <= g.dim) counts.resize(g.dim + 1, 0);
    ++counts[g.dim];
  }
  return counts;
}

// --- covers ----------------------------------------------------------------------

void add_diagonal_overlaps(CoverDiagram& cover) {
  for (int l = 0; l < static_cast<int>(cover.pieces.size()); ++l) {
    if (cover.overlaps.count({l, l})) continue;
    cover.overlaps.emplace(std::pair{l, l}, cover.pieces[l]);
    cover.a.emplace(std::pair{l, l}, identity_morphism(cover.pieces[l]));
    cover.b.emplace(std::pair{l, l}, identity_morphism(cover.pieces[l]));
  }
}

RhoDiagram build_rho_diagram(const CoverDiagram& cover) {
  const int n = static_cast<int>(cover.pieces.size());
  RhoDiagram d;
  std::vector<Presentation> overlaps;
  std::vector<std::string> prefixes;
  for (const auto& [pair, u] : cover.overlaps) {
    const auto [l, m] = pair;
    if (l < 0 || m < 0 || l >= n || m >= n) {
      throw IndexOutOfRange("overlap (" + std::to_string(l) + ", " + std::to_string(m) +
                            ") of a cover with " + std::to_string(n) + " pieces");
    }
    for (const auto* side : {&cover.a, &cover.b}) {
      auto it = side->find(pair);
      const Presentation& piece = cover.pieces[side == &cover.a ? l : m];
      const std::string which = side == &cover.a ? "a" : "b";
      const std::string where = which + "(" + std::to_string(l) + "," + std::to_string(m) + ")";
      if (it == side->end()) throw IllFormed(where + " is missing");
      if (!same_shape(it->second.source, u) || !same_shape(it->second.target, piece)) {
        throw IllFormed(where + " does not go from the overlap to its piece");
      }
      const MorphismCheck check = validate_morphism(it->second);
      if (!check.ok()) throw IllFormed(where + ": " + check.problems.front());
    }
    d.pairs.push_back(pair);
    overlaps.push_back(u);
    prefixes.push_back("U" + std::to_string(l) + "_" + std::to_string(m) + ".");
  }
  d.overlaps = coproduct(overlaps, "overlaps", prefixes);
  d.pieces = coproduct(cover.pieces, "pieces");
  d.a = PresMorphism{d.overlaps.sum, d.pieces.sum, {}};
  d.b = d.a;
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    const auto [l, m] = d.pairs[k];
    const PresMorphism& a = cover.a.at(d.pairs[k]);
    const PresMorphism& b = cover.b.at(d.pairs[k]);
    for (const auto& g : overlaps[k].generators()) {
      const std::string name = prefixes[k] + g.name;
      d.a.images.emplace(name, d.pieces.inclusions[l](a.images.at(g.name)));
      d.b.images.emplace(name, d.pieces.inclusions[m](b.images.at(g.name)));
    }
  }
  return d;
}

// --- the fragment of dimension <= 1 --------------------------------------------------

namespace {

class UnionFind {
 public:
  int add() {
    parent_.push_back(static_cast<int>(parent_.size()));
    parity_.push_back(1);
    return parent_.back();
  }
  /// Root and the orientation of x relative to it.
  std::pair<int, int> find(int x) {
    if (parent_[x] == x) return {x, 1};
    auto [r, p] = find(parent_[x]);
    parent_[x] = r;
    parity_[x] *= p;
    return {r, parity_[x]};
  }
  /// Records x = y^rel; false on a conflicting orientation.
  bool unite(int x, int y, int rel = 1) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return px == py * rel;
    parent_[rx] = ry;
    parity_[rx] = px * py * rel;
    return true;
  }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

struct Dim1Solution {
  std::vector<std::string> vertex_keys;  // normalised 0-cells
  std::vector<std::string> vertex_names;
  std::map<std::string, int> vertex_index;
  std::vector<std::string> edges;  // 1-dimensional generators
  std::vector<std::pair<int, int>> endpoints;
  UnionFind vertices;
  UnionFind edge_classes;
  std::vector<bool> contracted;  // by edge root
  int unresolved = 0;
  std::vector<Relation> residual;  // relations the classes do not absorb
};

std::string display(const Cell& t) {
  return t.kind() == CellKind::Gen ? t.name() : to_string(t);
}

Dim1Solution solve(const QuotientPresentation& q) {
  Dim1Solution s;
  const Presentation& p = q.presentation;
  Normalizer norm(p, NormalizeOptions{true, false});
  auto vertex = [&](const Cell& t) {
    const Cell nf = norm.normalize(t);
    const std::string key = to_string(nf);
    auto [it, fresh] = s.vertex_index.emplace(key, static_cast<int>(s.vertex_keys.size()));
    if (fresh) {
      s.vertex_keys.push_back(key);
      s.vertex_names.push_back(display(nf));
      s.vertices.add();
    }
    return it->second;
  };
  std::map<std::string, int> edge_index;
  for (const auto& g : p.generators()) {
    if (g.dim == 0) vertex(Cell::gen(g.name, 0));
  }
  for (const auto& g : p.generators()) {
    if (g.dim != 1) continue;
    const Cell e = Cell::gen(g.name, 1);
    edge_index.emplace(g.name, static_cast<int>(s.edges.size()));
    s.edges.push_back(g.name);
    s.endpoints.emplace_back(vertex(norm.face(e, 1, Sign::Minus)),
                             vertex(norm.face(e, 1, Sign::Plus)));
    s.edge_classes.add();
  }

  struct Side {
    enum Kind { Edge, Identity, Other } kind = Other;
    int index = 0;  // edge or vertex
    int sign = 1;
  };
  auto classify = [&](const Cell& t) {
    const Cell nf = norm.normalize(t);
    Side side;
    if (nf.kind() == CellKind::Gen) {
      side = {Side::Edge, edge_index.at(nf.name()), 1};
    } else if (nf.kind() == CellKind::Inv && nf.arg().kind() == CellKind::Gen) {
      side = {Side::Edge, edge_index.at(nf.arg().name()), -1};
    } else if (nf.kind() == CellKind::Apply && nf.word().size() == 1 &&
               nf.word().ops()[0] == Operator::degen(1)) {
      side = {Side::Identity, vertex(nf.arg()), 1};
    }
    return side;
  };

  std::vector<int> contracted_edges;
  for (const auto& r : q.relations) {
    if (r.lhs.dim() == 0) {
      s.vertices.unite(vertex(r.lhs), vertex(r.rhs));
      continue;
    }
    if (r.lhs.dim() != 1) continue;
    Side x = classify(r.lhs), y = classify(r.rhs);
    if (x.kind == Side::Identity && y.kind == Side::Edge) std::swap(x, y);
    if (x.kind == Side::Edge && y.kind == Side::Edge) {
      const int rel = x.sign * y.sign;
      if (!s.edge_classes.unite(x.index, y.index, rel)) {
        ++s.unresolved;
        s.residual.push_back(r);
        continue;
      }
      const auto [xs, xt] = s.endpoints[x.index];
      const auto [ys, yt] = s.endpoints[y.index];
      s.vertices.unite(xs, rel > 0 ? ys : yt);
      s.vertices.unite(xt, rel > 0 ? yt : ys);
    } else if (x.kind == Side::Edge && y.kind == Side::Identity) {
      contracted_edges.push_back(x.index);
      s.vertices.unite(s.endpoints[x.index].first, y.index);
      s.vertices.unite(s.endpoints[x.index].second, y.index);
    } else if (x.kind == Side::Identity && y.kind == Side::Identity) {
      s.vertices.unite(x.index, y.index);
    } else {
      ++s.unresolved;
      s.residual.push_back(r);
    }
  }
  s.contracted.assign(s.edges.size(), false);
  for (int e : contracted_edges) s.contracted[s.edge_classes.find(e).first] = true;
  return s;
}

}  // namespace

Dim1Quotient solve_dim1(const QuotientPresentation& q) {
  Dim1Solution s = solve(q);
  Dim1Quotient out;
  out.unresolved = s.unresolved;
  std::map<int, std::size_t> vclass;
  for (int v = 0; v < s.vertices.size(); ++v) {
    const int r = s.vertices.find(v).first;
    auto [it, fresh] = vclass.emplace(r, out.vertex_classes.size());
    if (fresh) out.vertex_classes.emplace_back();
    out.vertex_classes[it->second].push_back(s.vertex_names[v]);
  }
  std::map<int, std::size_t> eclass;
  UnionFind components;
  for (std::size_t k = 0; k < out.vertex_classes.size(); ++k) components.add();
  for (int e = 0; e < static_cast<int>(s.edges.size()); ++e) {
    const int r = s.edge_classes.find(e).first;
    if (s.contracted[r]) continue;
    auto [it, fresh] = eclass.emplace(r, out.edge_classes.size());
    if (fresh) {
      out.edge_classes.emplace_back();
      const auto [src, tgt] = s.endpoints[r];
      components.unite(static_cast<int>(vclass.at(s.vertices.find(src).first)),
                       static_cast<int>(vclass.at(s.vertices.find(tgt).first)));
    }
    out.edge_classes[it->second].push_back(s.edges[e]);
  }
  std::set<int> roots;
  for (int k = 0; k < components.size(); ++k) roots.insert(components.find(k).first);
  out.components = static_cast<int>(roots.size());
  out.loop_rank = static_cast<int>(out.edge_classes.size()) -
                  static_cast<int>(out.vertex_classes.size()) + out.components;
  return out;
}

namespace {

struct Arrow {
  int source = 0;
  int target = 0;
  int label = 0;
  bool operator==(const Arrow&) const = default;
};

// A value of the groupoid: an object (dimension 0) or an arrow.
struct GValue {
  int dim = 0;
  Arrow arrow;  // for objects only `source` is used
  bool operator==(const GValue& o) const {
    return dim == o.dim && (dim == 0 ? arrow.source == o.arrow.source : arrow == o.arrow);
  }
};

class GroupoidEval {
 public:
  GroupoidEval(const FiniteGroupoid& g, const std::map<std::string, int>& vertex_of,
               const std::map<std::string, std::size_t>& edge_of,
               const std::vector<int>& objects, const std::vector<Arrow>& arrows)
      : g_(g), vertex_of_(vertex_of), edge_of_(edge_of), objects_(objects), arrows_(arrows) {}

  GValue operator()(const Cell& t) const {
    switch (t.kind()) {
      case CellKind::Gen:
        if (t.dim() == 0) return object(objects_[vertex_of_.at(to_string(t))]);
        if (t.dim() == 1) return {1, arrows_[edge_of_.at(t.name())]};
        break;
      case CellKind::Apply: {
        GValue v = (*this)(t.arg());
        const auto& ops = t.word().ops();
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) v = apply(*it, v);
        return v;
      }
      case CellKind::Comp: {
        if (t.dim() != 1) break;
        const GValue a = (*this)(t.left()), b = (*this)(t.right());
        if (a.arrow.target != b.arrow.source) throw IllFormed("composite not composable");
        return {1, {a.arrow.source, b.arrow.target, (a.arrow.label + b.arrow.label) % g_.modulus}};
      }
      case CellKind::Inv: {
        if (t.dim() != 1) break;
        const GValue a = (*this)(t.arg());
        return {1, {a.arrow.target, a.arrow.source, (g_.modulus - a.arrow.label) % g_.modulus}};
      }
    }
    throw IllFormed("term " + to_string(t) + " is outside the fragment of dimension <= 1");
  }

 private:
  static GValue object(int o) { return {0, {o, o, 0}}; }

  GValue apply(const Operator& op, const GValue& v) const {
    if (v.dim == 0 && op == Operator::degen(1)) return {1, {v.arrow.source, v.arrow.source, 0}};
    if (v.dim == 1 && op.is_face() && op.index == 1) {
      return object(op.sign == Sign::Minus ? v.arrow.source : v.arrow.target);
    }
    throw IllFormed("operator " + to_string(op) + " leaves the fragment of dimension <= 1");
  }

  const FiniteGroupoid& g_;
  const std::map<std::string, int>& vertex_of_;
  const std::map<std::string, std::size_t>& edge_of_;
  const std::vector<int>& objects_;
  const std::vector<Arrow>& arrows_;
};

}  // namespace

FactorizationCheck check_universal_dim1(const PresMorphism& a, const PresMorphism& b,
                                        const FiniteGroupoid& g, long max_maps) {
  if (g.objects < 1 || g.modulus < 1) throw IndexOutOfRange("empty finite groupoid");
  const Coequalizer co = coequalizer(a, b);
  Dim1Solution s = solve(co.quotient);
  const int nv = static_cast<int>(s.vertex_keys.size());
  const int ne = static_cast<int>(s.edges.size());

  FactorizationCheck check;
  double total = 1;
  for (int k = 0; k < nv; ++k) total *= g.objects;
  for (int k = 0; k < ne; ++k) total *= g.modulus;
  if (total > static_cast<double>(max_maps)) {
    throw IllFormed("brute force over " + std::to_string(total) + " maps exceeds the limit");
  }

  std::map<std::string, std::size_t> edge_of;
  for (int e = 0; e < ne; ++e) edge_of.emplace(s.edges[e], e);
  std::vector<const GeneratorDecl*> low;
  for (const auto& gen : a.source.generators()) {
    if (gen.dim <= 1) low.push_back(&gen);
  }

  std::vector<int> objects(nv, 0);
  std::vector<int> labels(ne, 0);
  std::vector<Arrow> arrows(ne);
  const GroupoidEval eval(g, s.vertex_index, edge_of, objects, arrows);
  auto advance = [](std::vector<int>& digits, int base) {
    for (int& d : digits) {
      if (++d < base) return true;
      d = 0;
    }
    return false;
  };
  do {
    do {
      ++check.candidates;
      for (int e = 0; e < ne; ++e) {
        arrows[e] = {objects[s.endpoints[e].first], objects[s.endpoints[e].second], labels[e]};
      }
      bool equalizes = true;
      for (const auto* gen : low) {
        if (!(eval(a.images.at(gen->name)) == eval(b.images.at(gen->name)))) {
          equalizes = false;
          break;
        }
      }
      if (!equalizes) continue;
      ++check.equalizing;
      // The induced map on the quotient must be well defined.
      bool factors = true;
      std::map<int, int> on_vertex_class;
      for (int v = 0; v < nv && factors; ++v) {
        auto [it, fresh] = on_vertex_class.emplace(s.vertices.find(v).first, objects[v]);
        factors = fresh || it->second == objects[v];
      }
      std::map<int, Arrow> on_edge_class;
      for (int e = 0; e < ne && factors; ++e) {
        auto [r, parity] = s.edge_classes.find(e);
        Arrow x = arrows[e];
        if (parity < 0) x = {x.target, x.source, (g.modulus - x.label) % g.modulus};
        if (s.contracted[r] && !(x.source == x.target && x.label == 0)) factors = false;
        auto [it, fresh] = on_edge_class.emplace(r, x);
        factors = factors && (fresh || it->second == x);
      }
      if (factors) ++check.factored;
    } while (advance(labels, g.modulus));
  } while (advance(objects, g.objects));

  // Maps out of the quotient: objects for the vertex classes, labels for
  // the surviving edge classes, subject to the residual relations.
  std::vector<int> vroots, eroots;
  for (int v = 0; v < nv; ++v) {
    if (s.vertices.find(v).first == v) vroots.push_back(v);
  }
  for (int e = 0; e < ne; ++e) {
    if (s.edge_classes.find(e).first == e && !s.contracted[e]) eroots.push_back(e);
  }
  std::vector<int> class_objects(vroots.size(), 0), class_labels(eroots.size(), 0);
  std::map<int, std::size_t> vslot, eslot;
  for (std::size_t k = 0; k < vroots.size(); ++k) vslot.emplace(vroots[k], k);
  for (std::size_t k = 0; k < eroots.size(); ++k) eslot.emplace(eroots[k], k);
  do {
    do {
      for (int v = 0; v < nv; ++v) objects[v] = class_objects[vslot.at(s.vertices.find(v).first)];
      for (int e = 0; e < ne; ++e) {
        auto [r, parity] = s.edge_classes.find(e);
        const int label = s.contracted[r] ? 0 : class_labels[eslot.at(r)];
        arrows[e] = {objects[s.endpoints[e].first], objects[s.endpoints[e].second],
                     parity > 0 ? label : (g.modulus - label) % g.modulus};
      }
      const bool respects = std::all_of(s.residual.begin(), s.residual.end(), [&](const Relation& r) {
        return eval(r.lhs) == eval(r.rhs);
      });
      if (respects) ++check.quotient_morphisms;
    } while (advance(class_labels, g.modulus));
  } while (advance(class_objects, g.objects));
  return check;
}

}  // namespace cubical
