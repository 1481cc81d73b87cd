#include "cubical/globular.hpp"

#include <algorithm>

#include "cubical/errors.hpp"
#include "cubical/folding.hpp"

namespace cubical {

// --- terms ----------------------------------------------------------------------

GlobTerm GlobTerm::gen(const std::string& name, int dim) {
  if (dim < 0) throw IndexOutOfRange("negative dimension for " + name);
  GlobNode n;
  n.kind = GlobKind::Gen;
  n.dim = dim;
  n.name = name;
  return GlobTerm(std::make_shared<const GlobNode>(std::move(n)));
}

GlobTerm GlobTerm::id(const GlobTerm& x) {
  GlobNode n;
  n.kind = GlobKind::Id;
  n.dim = x.dim() + 1;
  n.a = x;
  return GlobTerm(std::make_shared<const GlobNode>(std::move(n)));
}

GlobTerm GlobTerm::compose(int k, const GlobTerm& a, const GlobTerm& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("o" + std::to_string(k) + " of cells of dimension " +
                            std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  if (k < 0 || k >= a.dim()) {
    throw IndexOutOfRange("o" + std::to_string(k) + " on " + std::to_string(a.dim()) + "-cells");
  }
  GlobNode n;
  n.kind = GlobKind::Compose;
  n.dim = a.dim();
  n.index = k;
  n.a = a;
  n.b = b;
  return GlobTerm(std::make_shared<const GlobNode>(std::move(n)));
}

GlobKind GlobTerm::kind() const { return node_->kind; }
int GlobTerm::dim() const { return node_->dim; }
const std::string& GlobTerm::name() const { return node_->name; }
int GlobTerm::index() const { return node_->index; }
GlobTerm GlobTerm::arg() const { return node_->a; }
GlobTerm GlobTerm::left() const { return node_->a; }
GlobTerm GlobTerm::right() const { return node_->b; }

bool operator==(const GlobTerm& a, const GlobTerm& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind() || a.dim() != b.dim()) return false;
  switch (a.kind()) {
    case GlobKind::Gen:
      return a.name() == b.name();
    case GlobKind::Id:
      return a.arg() == b.arg();
    case GlobKind::Compose:
      return a.index() == b.index() && a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::string to_string(const GlobTerm& t) {
  if (!t.valid()) return "<none>";
  switch (t.kind()) {
    case GlobKind::Gen:
      return t.name();
    case GlobKind::Id:
      return "id(" + to_string(t.arg()) + ")";
    case GlobKind::Compose:
      return "(" + to_string(t.left()) + " o" + std::to_string(t.index()) + " " +
             to_string(t.right()) + ")";
  }
  return "?";
}

GlobTerm glob_identity(const GlobTerm& x, int n) {
  if (n < x.dim()) {
    throw IndexOutOfRange("identity of a " + std::to_string(x.dim()) + "-cell in dimension " +
                          std::to_string(n));
  }
  GlobTerm r = x;
  while (r.dim() < n) r = GlobTerm::id(r);
  return r;
}

// --- presentations ------------------------------------------------------------------

void GlobularPresentation::add(GlobGenerator g) {
  if (find(g.name)) throw NameClash("generator " + g.name + " declared twice");
  gens_.push_back(std::move(g));
}

const GlobGenerator* GlobularPresentation::find(const std::string& name) const {
  for (const auto& g : gens_) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

GlobTerm GlobularPresentation::gen(const std::string& name) const {
  const GlobGenerator* g = find(name);
  if (!g) throw UnknownGenerator(name);
  return GlobTerm::gen(g->name, g->dim);
}

GlobTerm glob_boundary(const GlobularPresentation& p, const GlobTerm& t, int k, Sign a) {
  if (k < 0 || k >= t.dim()) {
    throw IndexOutOfRange("d_" + std::to_string(k) + " of a " + std::to_string(t.dim()) +
                          "-cell");
  }
  switch (t.kind()) {
    case GlobKind::Gen: {
      const GlobGenerator* g = p.find(t.name());
      if (!g) throw UnknownGenerator(t.name());
      if (!g->source.valid() || !g->target.valid()) {
        throw IllFormed("generator " + g->name + " has no source or target");
      }
      if (k == t.dim() - 1) return a == Sign::Minus ? g->source : g->target;
      // d_k d_{n-1}^- = d_k
      return glob_boundary(p, g->source, k, a);
    }
    case GlobKind::Id: {
      const GlobTerm x = t.arg();
      if (k == x.dim()) return x;
      return glob_boundary(p, x, k, a);
    }
    case GlobKind::Compose: {
      const int j = t.index();
      if (k == j) {
        return a == Sign::Minus ? glob_boundary(p, t.left(), j, a)
                                : glob_boundary(p, t.right(), j, a);
      }
      if (k < j) return glob_boundary(p, t.left(), k, a);
      return GlobTerm::compose(j, glob_boundary(p, t.left(), k, a),
                               glob_boundary(p, t.right(), k, a));
    }
  }
  throw IllFormed("unknown globular term kind");
}

// --- embedding ----------------------------------------------------------------------

Cell embed_term(const GlobTerm& t) {
  switch (t.kind()) {
    case GlobKind::Gen:
      return Cell::gen(t.name(), t.dim());
    case GlobKind::Id:
      return eps1_power(embed_term(t.arg()), 1);
    case GlobKind::Compose:
      return Cell::comp(t.dim() - t.index(), embed_term(t.left()), embed_term(t.right()));
  }
  throw IllFormed("unknown globular term kind");
}

Presentation embed_presentation(const GlobularPresentation& p) {
  Presentation out(p.name());
  for (const auto& g : p.generators()) {
    GeneratorDecl decl{g.name, g.dim, {}};
    if (g.dim > 0 && g.source.valid() && g.target.valid()) {
      decl.boundary[{1, Sign::Minus}] = embed_term(g.source);
      decl.boundary[{1, Sign::Plus}] = embed_term(g.target);
      const GlobTerm self = GlobTerm::gen(g.name, g.dim);
      for (int i = 2; i <= g.dim; ++i) {
        for (Sign s : kSigns) {
          decl.boundary[{i, s}] = eps1_power(embed_term(glob_boundary(p, self, g.dim - i, s)), i - 1);
        }
      }
    }
    out.add(std::move(decl));
  }
  return out;
}

// --- validation ---------------------------------------------------------------------

namespace {

void collect_generators(const GlobTerm& t, std::vector<GlobTerm>& out) {
  switch (t.kind()) {
    case GlobKind::Gen:
      out.push_back(t);
      return;
    case GlobKind::Id:
      collect_generators(t.arg(), out);
      return;
    case GlobKind::Compose:
      collect_generators(t.left(), out);
      collect_generators(t.right(), out);
      return;
  }
}

// Problems with a declaration that make its boundary unusable.
std::optional<std::string> declaration_problem(const GlobularPresentation& sound,
                                               const GlobGenerator& g) {
  if (g.dim < 0) return "negative dimension";
  if (g.dim == 0) {
    if (g.source.valid() || g.target.valid()) return "a 0-cell has no source or target";
    return std::nullopt;
  }
  if (!g.source.valid() || !g.target.valid()) return "source and target are required";
  if (g.source.dim() != g.dim - 1 || g.target.dim() != g.dim - 1) {
    return "source and target must have dimension " + std::to_string(g.dim - 1);
  }
  std::vector<GlobTerm> used;
  collect_generators(g.source, used);
  collect_generators(g.target, used);
  for (const GlobTerm& u : used) {
    const GlobGenerator* d = sound.find(u.name());
    if (!d) return "boundary refers to " + u.name() + ", which is unknown, invalid or not lower-dimensional";
    if (d->dim != u.dim()) {
      return "generator " + u.name() + " used with dimension " + std::to_string(u.dim()) +
             " but declared with " + std::to_string(d->dim);
    }
  }
  return std::nullopt;
}

class Checker {
 public:
  explicit Checker(const GlobularPresentation& p)
      : p_(p), cubical_(embed_presentation(p)), norm_(cubical_, NormalizeOptions{true, false}) {}

  bool equal(const GlobTerm& a, const GlobTerm& b) {
    if (a == b) return true;
    return norm_.equal(embed_term(a), embed_term(b)) == EqVerdict::Equal;
  }

  void check_composable(const GlobTerm& t, const std::string& subject,
                        std::vector<GlobViolation>& out) {
    if (t.kind() == GlobKind::Id) check_composable(t.arg(), subject, out);
    if (t.kind() != GlobKind::Compose) return;
    check_composable(t.left(), subject, out);
    check_composable(t.right(), subject, out);
    const GlobTerm x = glob_boundary(p_, t.left(), t.index(), Sign::Plus);
    const GlobTerm y = glob_boundary(p_, t.right(), t.index(), Sign::Minus);
    if (!equal(x, y)) {
      out.push_back({"composable", subject,
                     "o" + std::to_string(t.index()) + " composite " + to_string(t) +
                         " is not composable",
                     to_string(x), to_string(y)});
    }
  }

 private:
  const GlobularPresentation& p_;
  Presentation cubical_;
  Normalizer norm_;
};

}  // namespace

GlobValidationReport validate_globular_presentation(const GlobularPresentation& p) {
  GlobValidationReport report;
  auto& out = report.violations;

  // Declarations are taken in order of dimension; a boundary may only use
  // lower-dimensional generators that are themselves well declared.
  std::vector<const GlobGenerator*> order;
  for (const auto& g : p.generators()) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(),
                   [](const GlobGenerator* a, const GlobGenerator* b) { return a->dim < b->dim; });
  GlobularPresentation sound(p.name());
  for (const GlobGenerator* g : order) {
    if (auto problem = declaration_problem(sound, *g)) {
      out.push_back({"declaration", g->name, *problem, "", ""});
      continue;
    }
    sound.add(*g);
  }

  Checker check(sound);
  for (const auto& g : sound.generators()) {
    if (g.dim == 0) continue;
    check.check_composable(g.source, g.name, out);
    check.check_composable(g.target, g.name, out);
  }

  for (const auto& g : sound.generators()) {
    const GlobTerm self = GlobTerm::gen(g.name, g.dim);

    // (i) d_k^a d_j^b = d_k^a for k < j, with j = n - 1 and both b.
    for (int k = 0; k + 1 < g.dim; ++k) {
      for (Sign a : kSigns) {
        const GlobTerm via_source = glob_boundary(sound, g.source, k, a);
        const GlobTerm via_target = glob_boundary(sound, g.target, k, a);
        if (!check.equal(via_source, via_target)) {
          out.push_back({"law (i)", g.name,
                         "d_" + std::to_string(k) + sign_char(a) + " of source and target differ",
                         to_string(via_source), to_string(via_target)});
        }
      }
    }

    // (ii) s_j s_i = s_i for i < j.
    const int top = g.dim + 2;
    for (int j = g.dim + 1; j < top; ++j) {
      const GlobTerm twice = glob_identity(glob_identity(self, j), top);
      const GlobTerm once = glob_identity(self, top);
      if (!check.equal(twice, once)) {
        out.push_back({"law (ii)", g.name, "iterated identities differ", to_string(twice),
                       to_string(once)});
      }
    }

    // (iii) d_j^b s_i: d_j^b below i, the identity at i, s_i into dimension j above i.
    const GlobTerm lifted = glob_identity(self, top);
    for (int j = 0; j < top; ++j) {
      for (Sign b : kSigns) {
        const GlobTerm lhs = glob_boundary(sound, lifted, j, b);
        GlobTerm rhs;
        if (j < g.dim) rhs = glob_boundary(sound, self, j, b);
        else if (j == g.dim) rhs = self;
        else rhs = glob_identity(self, j);
        if (!check.equal(lhs, rhs)) {
          out.push_back({"law (iii)", g.name,
                         "d_" + std::to_string(j) + sign_char(b) + " of an identity",
                         to_string(lhs), to_string(rhs)});
        }
      }
    }
  }

  if (out.empty()) {
    for (const auto& problem : validate_presentation(embed_presentation(p))) {
      out.push_back({"cubical", "", problem, "", ""});
    }
  }
  return report;
}

// --- context ------------------------------------------------------------------------

namespace {

// Composability is decided on globular faces by the context itself.
constexpr NormalizeOptions kContextOptions{true, false};

}  // namespace

GlobularContext::GlobularContext(Presentation cubical)
    : cubical_(std::move(cubical)),
      norm_(std::make_unique<Normalizer>(cubical_, kContextOptions)) {}

GlobularContext::GlobularContext(GlobularPresentation globular)
    : globular_(std::move(globular)),
      cubical_(embed_presentation(*globular_)),
      norm_(std::make_unique<Normalizer>(cubical_, kContextOptions)) {}

GlobularCell GlobularContext::wrap(const Cell& t) {
  const Tri v = is_globular(*norm_, t);
  if (v != Tri::Yes) {
    throw NotGlobular(to_string(t) + " is not certified globular (" + to_string(v) + ")");
  }
  return {t, std::nullopt};
}

void GlobularContext::check_formal(const GlobTerm& t) {
  switch (t.kind()) {
    case GlobKind::Gen: {
      const GlobGenerator* g = globular_->find(t.name());
      if (!g) throw UnknownGenerator(t.name());
      if (g->dim != t.dim()) {
        throw DimensionMismatch(t.name() + " has dimension " + std::to_string(g->dim));
      }
      return;
    }
    case GlobKind::Id:
      check_formal(t.arg());
      return;
    case GlobKind::Compose: {
      check_formal(t.left());
      check_formal(t.right());
      const GlobTerm x = glob_boundary(*globular_, t.left(), t.index(), Sign::Plus);
      const GlobTerm y = glob_boundary(*globular_, t.right(), t.index(), Sign::Minus);
      if (x == y) return;
      const EqVerdict v = norm_->equal(embed_term(x), embed_term(y));
      if (v != EqVerdict::Equal) {
        throw IllFormed("o" + std::to_string(t.index()) + " composite " + to_string(t) +
                        " is not composable: " + to_string(x) + " vs " + to_string(y) + " (" +
                        to_string(v) + ")");
      }
      return;
    }
  }
}

GlobularCell GlobularContext::formal(const GlobTerm& t) {
  if (!globular_) throw IllFormed("formal globular terms need a globular presentation");
  check_formal(t);
  return {embed_term(t), t};
}

GlobularCell GlobularContext::face(const GlobularCell& x, int k, Sign a) {
  const int n = x.dim();
  if (k < 0 || k >= n) {
    throw IndexOutOfRange("d_" + std::to_string(k) + " of a " + std::to_string(n) + "-cell");
  }
  GlobularCell r{norm_->normalize(face1_power(x.cell, n - k, a)), std::nullopt};
  if (x.formal) r.formal = glob_boundary(*globular_, *x.formal, k, a);
  return r;
}

GlobularCell GlobularContext::identity(const GlobularCell& x) {
  GlobularCell r{eps1_power(x.cell, 1), std::nullopt};
  if (x.formal) r.formal = GlobTerm::id(*x.formal);
  return r;
}

GlobularCell GlobularContext::compose(int k, const GlobularCell& x, const GlobularCell& y) {
  const int n = x.dim();
  if (y.dim() != n) {
    throw DimensionMismatch("o" + std::to_string(k) + " of cells of dimension " +
                            std::to_string(n) + " and " + std::to_string(y.dim()));
  }
  if (k < 0 || k >= n) {
    throw IndexOutOfRange("o" + std::to_string(k) + " on " + std::to_string(n) + "-cells");
  }
  const EqVerdict v = equal(face(x, k, Sign::Plus), face(y, k, Sign::Minus));
  if (v != EqVerdict::Equal) {
    throw NotComposable("d_" + std::to_string(k) + "+ of " + to_string(x.cell) +
                        " and d_" + std::to_string(k) + "- of " + to_string(y.cell) + " (" +
                        to_string(v) + ")");
  }
  GlobularCell r{norm_->normalize(Cell::comp(n - k, x.cell, y.cell)), std::nullopt};
  if (x.formal && y.formal) {
    r.formal = GlobTerm::compose(k, *x.formal, *y.formal);
    return r;
  }
  const Tri g = is_globular(*norm_, r.cell);
  if (g != Tri::Yes) {
    throw NotGlobular("o" + std::to_string(k) + " composite is not certified globular (" +
                      to_string(g) + ")");
  }
  return r;
}

EqVerdict GlobularContext::equal(const GlobularCell& x, const GlobularCell& y) {
  if (x.formal && y.formal && *x.formal == *y.formal) return EqVerdict::Equal;
  return norm_->equal(x.cell, y.cell);
}

}  // namespace cubical
