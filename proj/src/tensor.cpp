#include "cubical/tensor.hpp"

#include <functional>
#include <random>
#include <set>

#include "cubical/errors.hpp"

namespace cubical {

namespace {

OperatorWord single(const Operator& op, int dim) { return OperatorWord({op}, dim); }

// The same operators acting on the first factor of a product whose second
// factor has dimension `extra`.
OperatorWord on_left(const OperatorWord& w, int extra) {
  return OperatorWord(w.ops(), w.domain_dim() + extra);
}

// The operators acting on the second factor, after `lead` directions.
OperatorWord on_right(const OperatorWord& w, int lead) {
  std::vector<Operator> ops = w.ops();
  for (Operator& op : ops) op.index += lead;
  return OperatorWord(std::move(ops), w.domain_dim() + lead);
}

bool is_free_leaf(const Cell& t, const std::string& base) {
  if (t.kind() != CellKind::Apply || t.arg().kind() != CellKind::Gen) return false;
  if (t.arg().name() != base) return false;
  for (const Operator& op : t.word().ops()) {
    if (!op.is_face()) return false;
  }
  return true;
}

// Normal form over the original presentation with free faces renamed.
Cell rename_free_faces(Normalizer& norm, const Cell& t) {
  std::function<Cell(const Cell&)> go = [&](const Cell& c) -> Cell {
    switch (c.kind()) {
      case CellKind::Gen:
        return c;
      case CellKind::Apply: {
        if (c.arg().kind() != CellKind::Gen) return Cell::apply(c.word(), go(c.arg()));
        const OperatorWord w = normalize_word(c.word());
        const OperatorWord faces = w.face_part();
        if (faces.empty()) return c;
        const Cell base = Cell::gen(free_face_name(c.arg().name(), faces), faces.codomain_dim());
        const OperatorWord raisers = w.raiser_part();
        return raisers.empty() ? base : Cell::apply(raisers, base);
      }
      case CellKind::Comp:
        return Cell::comp(c.direction(), go(c.left()), go(c.right()));
      case CellKind::Inv:
        return Cell::inv(c.direction(), go(c.arg()));
    }
    throw IllFormed("unknown term kind");
  };
  return go(norm.normalize(t));
}

}  // namespace

std::string free_face_name(const std::string& gen, const OperatorWord& faces) {
  std::string s = gen;
  for (std::size_t k = 0; k < faces.ops().size(); ++k) {
    s += k == 0 ? "/" : ".";
    s += to_string(faces.ops()[k]);
  }
  return s;
}

std::string tensor_name(const std::string& g, const std::string& h) { return g + "*" + h; }

// --- completion ------------------------------------------------------------------

CompletedPresentation::CompletedPresentation(const Presentation& p)
    : original_(p), completed_(p.name()) {
  Normalizer norm(original_, NormalizeOptions{true, false});
  for (const GeneratorDecl& g : original_.generators()) {
    const Cell top = Cell::gen(g.name, g.dim);
    // Free faces of g, found by taking faces until only declared ones remain.
    std::vector<Cell> cells{top};
    std::set<std::string> seen{g.name};
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const Cell c = cells[k];
      for (int i = 1; i <= c.dim(); ++i) {
        for (Sign s : kSigns) {
          const Cell f = norm.normalize(norm.face(c, i, s));
          if (!is_free_leaf(f, g.name)) continue;
          const std::string name = free_face_name(g.name, normalize_word(f.word()));
          if (seen.insert(name).second) cells.push_back(f);
        }
      }
    }
    for (const Cell& c : cells) {
      const std::string name =
          c == top ? g.name : free_face_name(g.name, normalize_word(c.word()));
      GeneratorDecl decl{name, c.dim(), {}};
      for (int i = 1; i <= c.dim(); ++i) {
        for (Sign s : kSigns) {
          const auto declared = c == top ? original_.declared_face(g.name, i, s) : std::nullopt;
          decl.boundary[{i, s}] = rename_free_faces(norm, declared ? *declared : norm.face(c, i, s));
        }
      }
      completed_.add(std::move(decl));
      origins_.emplace(name, c);
    }
  }
}

Cell CompletedPresentation::lift(const Cell& t) const {
  Normalizer norm(original_, NormalizeOptions{true, false});
  const Cell r = rename_free_faces(norm, t);
  for (const auto& name : referenced_generators(r)) {
    if (!completed_.contains(name)) throw UnknownGenerator("'" + name + "' after completion");
  }
  return r;
}

Cell CompletedPresentation::origin(const std::string& name) const {
  auto it = origins_.find(name);
  if (it == origins_.end()) throw UnknownGenerator("'" + name + "' is not a completed generator");
  return it->second;
}

// --- bimorphisms -----------------------------------------------------------------

Bimorphism::Bimorphism(Presentation left, Presentation right, Presentation target)
    : left_(std::move(left)), right_(std::move(right)), target_(std::move(target)) {}

void Bimorphism::set(const std::string& g, const std::string& h, Cell value) {
  table_[{g, h}] = std::move(value);
}

Cell Bimorphism::operator()(const Cell& x, const Cell& y) const { return expand(x, y, false); }

Cell Bimorphism::right_first(const Cell& x, const Cell& y) const { return expand(x, y, true); }

Cell Bimorphism::value(const Cell& g, const Cell& h) const {
  auto it = table_.find({g.name(), h.name()});
  if (it == table_.end()) {
    throw UnknownGenerator("no value for the pair (" + g.name() + ", " + h.name() + ")");
  }
  return it->second;
}

Cell Bimorphism::expand(const Cell& x, const Cell& y, bool right_first) const {
  const bool peel_right = y.kind() != CellKind::Gen && (right_first || x.kind() == CellKind::Gen);
  if (peel_right) {
    const int p = x.dim();
    switch (y.kind()) {
      case CellKind::Apply:
        return Cell::apply(on_right(y.word(), p), expand(x, y.arg(), right_first));
      case CellKind::Comp:
        return Cell::comp(p + y.direction(), expand(x, y.left(), right_first),
                          expand(x, y.right(), right_first));
      case CellKind::Inv:
        return Cell::inv(p + y.direction(), expand(x, y.arg(), right_first));
      case CellKind::Gen:
        break;
    }
  }
  const int q = y.dim();
  switch (x.kind()) {
    case CellKind::Gen:
      return value(x, y);
    case CellKind::Apply:
      return Cell::apply(on_left(x.word(), q), expand(x.arg(), y, right_first));
    case CellKind::Comp:
      return Cell::comp(x.direction(), expand(x.left(), y, right_first),
                        expand(x.right(), y, right_first));
    case CellKind::Inv:
      return Cell::inv(x.direction(), expand(x.arg(), y, right_first));
  }
  throw IllFormed("unknown term kind");
}

Bimorphism universal_bimorphism(const Presentation& p, const Presentation& q) {
  const Presentation left = CompletedPresentation(p).completed();
  const Presentation right = CompletedPresentation(q).completed();
  Bimorphism cells(left, right, Presentation{});
  for (const auto& g : left.generators()) {
    for (const auto& h : right.generators()) {
      cells.set(g.name, h.name, Cell::gen(tensor_name(g.name, h.name), g.dim + h.dim));
    }
  }
  Presentation target(p.name() + "*" + q.name());
  for (const auto& g : left.generators()) {
    const Cell gc = Cell::gen(g.name, g.dim);
    for (const auto& h : right.generators()) {
      const Cell hc = Cell::gen(h.name, h.dim);
      GeneratorDecl decl{tensor_name(g.name, h.name), g.dim + h.dim, {}};
      for (const auto& [key, face] : g.boundary) decl.boundary[key] = cells(face, hc);
      for (const auto& [key, face] : h.boundary) {
        decl.boundary[{key.first + g.dim, key.second}] = cells(gc, face);
      }
      target.add(std::move(decl));
    }
  }
  Bimorphism b(left, right, std::move(target));
  for (const auto& [key, value] : cells.table()) b.set(key.first, key.second, value);
  return b;
}

Presentation tensor_presentation(const Presentation& p, const Presentation& q) {
  return universal_bimorphism(p, q).target();
}

// --- checking --------------------------------------------------------------------

bool BimorphismReport::ok() const {
  for (const auto& a : axioms) {
    if (a.failed > 0) return false;
  }
  return true;
}

const AxiomResult* BimorphismReport::find(const std::string& axiom) const {
  for (const auto& a : axioms) {
    if (a.axiom == axiom) return &a;
  }
  return nullptr;
}

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr int kMaxSampleDim = 3;

AxiomResult named(std::string axiom) {
  AxiomResult r;
  r.axiom = std::move(axiom);
  return r;
}

void record_failure(AxiomResult& r, const std::string& what) {
  ++r.failed;
  if (r.witnesses.size() < kMaxWitnesses) r.witnesses.push_back(what);
}

// A generator under a short random operator word, in normal form.
Cell random_leaf(const Presentation& p, Normalizer& norm, std::mt19937_64& rng) {
  const auto& gens = p.generators();
  const auto& g = gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)];
  const int length = std::uniform_int_distribution<int>(0, 2)(rng);
  std::vector<Operator> applied;
  int dim = g.dim;
  for (int k = 0; k < length; ++k) {
    Operator op = random_operator(dim, rng);
    if (dim + op.delta() > kMaxSampleDim) op = Operator::face(1, Sign::Minus);
    if (!op.valid_on(dim)) break;
    applied.push_back(op);
    dim += op.delta();
  }
  const Cell gen = Cell::gen(g.name, g.dim);
  if (applied.empty()) return gen;
  return norm.normalize(
      Cell::apply(OperatorWord({applied.rbegin(), applied.rend()}, g.dim), gen));
}

class Checker {
 public:
  Checker(const Bimorphism& b, std::uint64_t seed)
      : b_(b),
        left_(b.left(), NormalizeOptions{true, false}),
        right_(b.right(), NormalizeOptions{true, false}),
        target_(b.target()),
        rng_(seed) {}

  BimorphismReport run(int rounds) {
    BimorphismReport report;
    AxiomResult table = named("table");
    check_table(table);
    report.axioms.push_back(table);
    if (table.failed > 0) return report;

    AxiomResult order = named("evaluation order"), faces = named("(i) faces"),
                degens = named("(ii) degeneracies"), conns = named("(iii) connections"),
                left_comp = named("(iv) left compositions"),
                right_comp = named("(v) right compositions");
    std::vector<std::pair<Cell, Cell>> samples;
    for (const auto& g : b_.left().generators()) {
      for (const auto& h : b_.right().generators()) {
        samples.emplace_back(Cell::gen(g.name, g.dim), Cell::gen(h.name, h.dim));
      }
    }
    if (!b_.left().generators().empty() && !b_.right().generators().empty()) {
      for (int k = 0; k < rounds; ++k) {
        samples.emplace_back(random_leaf(b_.left(), left_, rng_),
                             random_leaf(b_.right(), right_, rng_));
      }
    }
    for (const auto& [x, y] : samples) {
      compare(order, b_(x, y), b_.right_first(x, y), "b" + pair(x, y));
      check_faces(faces, x, y);
      check_raisers(degens, conns, x, y);
      check_compositions(left_comp, right_comp, x, y);
    }
    for (auto* r : {&order, &faces, &degens, &conns, &left_comp, &right_comp}) {
      report.axioms.push_back(*r);
    }
    return report;
  }

 private:
  static std::string pair(const Cell& x, const Cell& y) {
    return "(" + to_string(x) + ", " + to_string(y) + ")";
  }

  void check_table(AxiomResult& r) {
    for (const auto& g : b_.left().generators()) {
      for (const auto& h : b_.right().generators()) {
        auto it = b_.table().find({g.name, h.name});
        if (it == b_.table().end()) {
          record_failure(r, "no value for (" + g.name + ", " + h.name + ")");
        } else if (it->second.dim() != g.dim + h.dim) {
          record_failure(r, "b(" + g.name + ", " + h.name + ") has dimension " +
                                std::to_string(it->second.dim()));
        } else {
          ++r.passed;
        }
      }
    }
  }

  void compare(AxiomResult& r, const Cell& lhs, const Cell& rhs, const std::string& what) {
    try {
      switch (target_.equal(lhs, rhs)) {
        case EqVerdict::Equal:
          ++r.passed;
          return;
        case EqVerdict::Unknown:
          ++r.unknown;
          return;
        case EqVerdict::Distinct:
          record_failure(r, what + ": " + to_string(target_.normalize(lhs)) + " vs " +
                                to_string(target_.normalize(rhs)));
          return;
      }
    } catch (const Error& e) {
      record_failure(r, what + ": " + e.what());
    }
  }

  void check_faces(AxiomResult& r, const Cell& x, const Cell& y) {
    const int p = x.dim();
    const Cell bxy = b_(x, y);
    for (int i = 1; i <= p + y.dim(); ++i) {
      for (Sign s : kSigns) {
        const std::string what = "d" + std::to_string(i) + sign_char(s) + " b" + pair(x, y);
        Cell rhs;
        try {
          rhs = i <= p ? b_(left_.normalize(left_.face(x, i, s)), y)
                       : b_(x, right_.normalize(right_.face(y, i - p, s)));
        } catch (const Error& e) {
          record_failure(r, what + ": " + e.what());
          continue;
        }
        compare(r, target_.face(bxy, i, s), rhs, what);
      }
    }
  }

  void check_raisers(AxiomResult& degens, AxiomResult& conns, const Cell& x, const Cell& y) {
    const int p = x.dim();
    const int n = p + y.dim();
    if (n >= kMaxSampleDim + 2) return;
    const Cell bxy = b_(x, y);
    for (int i = 1; i <= n + 1; ++i) {
      const Cell lhs = Cell::apply(single(Operator::degen(i), n), bxy);
      const std::string what = "e" + std::to_string(i) + " b" + pair(x, y);
      if (i <= p + 1) {
        compare(degens, lhs, b_(Cell::apply(single(Operator::degen(i), p), x), y), what);
      }
      if (i >= p + 1) {
        const Cell ey = Cell::apply(single(Operator::degen(i - p), y.dim()), y);
        compare(degens, lhs, b_.right_first(x, ey), what);
      }
    }
    for (int i = 1; i <= n; ++i) {
      for (Sign s : kSigns) {
        const Operator g = Operator::conn(i, s);
        const Cell lhs = Cell::apply(single(g, n), bxy);
        const std::string what = "g" + std::to_string(i) + sign_char(s) + " b" + pair(x, y);
        if (i <= p) {
          compare(conns, lhs, b_(Cell::apply(single(g, p), x), y), what);
        } else {
          const Cell gy = Cell::apply(single(Operator::conn(i - p, s), y.dim()), y);
          compare(conns, lhs, b_.right_first(x, gy), what);
        }
      }
    }
  }

  // Composable partners of x in direction i: a unit, the inverse, and
  // generators glued along a matching face.
  std::vector<Cell> partners(Normalizer& norm, const Presentation& p, const Cell& x, int i) {
    const Cell target = norm.normalize(norm.face(x, i, Sign::Plus));
    std::vector<Cell> out{Cell::apply(single(Operator::degen(i), x.dim() - 1), target),
                          Cell::inv(i, x)};
    for (const auto& g : p.generators()) {
      if (g.dim != x.dim()) continue;
      const Cell gc = Cell::gen(g.name, g.dim);
      if (norm.equal(norm.face(gc, i, Sign::Minus), target) == EqVerdict::Equal) {
        out.push_back(gc);
      }
    }
    return out;
  }

  void check_compositions(AxiomResult& lr, AxiomResult& rr, const Cell& x, const Cell& y) {
    const int p = x.dim();
    for (int i = 1; i <= p; ++i) {
      for (const Cell& x2 : partners(left_, b_.left(), x, i)) {
        const std::string what = "b(" + to_string(x) + " o" + std::to_string(i) + " " +
                                 to_string(x2) + ", " + to_string(y) + ")";
        compare(lr, b_(left_.normalize(Cell::comp(i, x, x2)), y),
                Cell::comp(i, b_(x, y), b_(x2, y)), what);
      }
    }
    for (int j = 1; j <= y.dim(); ++j) {
      for (const Cell& y2 : partners(right_, b_.right(), y, j)) {
        const std::string what = "b(" + to_string(x) + ", " + to_string(y) + " o" +
                                 std::to_string(j) + " " + to_string(y2) + ")";
        compare(rr, b_.right_first(x, right_.normalize(Cell::comp(j, y, y2))),
                Cell::comp(p + j, b_(x, y), b_(x, y2)), what);
      }
    }
  }

  const Bimorphism& b_;
  Normalizer left_;
  Normalizer right_;
  Normalizer target_;
  std::mt19937_64 rng_;
};

}  // namespace

BimorphismReport check_bimorphism(const Bimorphism& b, std::uint64_t seed, int rounds) {
  return Checker(b, seed).run(rounds);
}

// --- cubes -----------------------------------------------------------------------

Presentation cube_presentation(int n, const std::string& name) {
  if (n < 0) throw IndexOutOfRange("cube of dimension " + std::to_string(n));
  Presentation free(name);
  free.add_generator(name, n);
  Presentation cube = CompletedPresentation(free).completed();
  cube.set_name("I" + std::to_string(n));
  return cube;
}

CubeIsoReport cube_tensor_iso(int p, int q) {
  CubeIsoReport report;
  report.p = p;
  report.q = q;
  Presentation free_a("a"), free_b("b"), free_c("c");
  free_a.add_generator("a", p);
  free_b.add_generator("b", q);
  free_c.add_generator("c", p + q);
  const CompletedPresentation cube_a(free_a), cube_b(free_b), cube_c(free_c);
  const Bimorphism tensor = universal_bimorphism(cube_a.completed(), cube_b.completed());
  const Presentation& pq = tensor.target();
  const Presentation& c = cube_c.completed();
  report.tensor_generators = pq.generators().size();
  report.cube_generators = c.generators().size();

  // d_w a (x) d_v b goes to the same faces of c, read on the free cube.
  Bimorphism product(free_a, free_b, free_c);
  product.set("a", "b", Cell::gen("c", p + q));
  std::map<std::string, Cell> images;
  std::set<std::string> hit;
  bool injective = true;
  for (const auto& g : cube_a.completed().generators()) {
    for (const auto& h : cube_b.completed().generators()) {
      const std::string name = tensor_name(g.name, h.name);
      const Cell image = cube_c.lift(product(cube_a.origin(g.name), cube_b.origin(h.name)));
      if (image.kind() != CellKind::Gen || image.dim() != g.dim + h.dim) {
        report.failures.push_back(name + " maps to " + to_string(image));
        continue;
      }
      injective = hit.insert(image.name()).second && injective;
      images.emplace(name, image);
      report.correspondence.emplace(name, image.name());
    }
  }
  report.bijective = injective && images.size() == report.tensor_generators &&
                     hit.size() == report.cube_generators;

  Normalizer norm(c);
  for (const auto& g : pq.generators()) {
    auto it = images.find(g.name);
    if (it == images.end()) continue;
    for (const auto& [key, face] : g.boundary) {
      ++report.faces_checked;
      const Cell lhs = substitute(face, images);
      const Cell rhs = norm.face(it->second, key.first, key.second);
      if (norm.equal(lhs, rhs) == EqVerdict::Equal) {
        ++report.faces_matched;
      } else {
        report.failures.push_back("d" + std::to_string(key.first) + sign_char(key.second) + " " +
                                  g.name + ": " + to_string(lhs) + " vs " + to_string(rhs));
      }
    }
  }
  return report;
}

}  // namespace cubical
