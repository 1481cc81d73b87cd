#include <algorithm>

#include "cubical/cells.hpp"
#include "cubical/errors.hpp"

namespace cubical {

namespace {

OperatorWord single(const Operator& op, int dim) { return OperatorWord({op}, dim); }

bool is_leaf(const Cell& t) {
  return t.kind() == CellKind::Gen ||
         (t.kind() == CellKind::Apply && t.arg().kind() == CellKind::Gen);
}

OperatorWord leaf_word(const Cell& t) {
  return t.kind() == CellKind::Gen ? OperatorWord::identity(t.dim()) : t.word();
}

Cell leaf_gen(const Cell& t) { return t.kind() == CellKind::Gen ? t : t.arg(); }

// The free cell under a leaf's raisers: a generator or an undeclared face of it.
std::pair<Cell, OperatorWord> leaf_base(const Cell& t) {
  return {leaf_gen(t), leaf_word(t).face_part()};
}

}  // namespace

Normalizer::Normalizer(const Presentation& p, NormalizeOptions opts, CellTrace* trace)
    : pres_(p), opts_(opts), trace_(trace) {}

void Normalizer::note(const char* tag) {
  if (trace_) trace_->add(tag);
}

void Normalizer::note_word(const WordTrace& w) {
  if (trace_) trace_->merge(w);
}

// --- faces ---------------------------------------------------------------------

Cell Normalizer::face(const Cell& t, int i, Sign s) {
  if (i < 1 || i > t.dim()) {
    throw IndexOutOfRange("face " + std::to_string(i) + sign_char(s) + " of a " +
                          std::to_string(t.dim()) + "-cell");
  }
  FaceCacheKey key{t, i, s};
  Cell r;
  if (auto it = face_cache_.find(key); it != face_cache_.end()) {
    r = it->second;
  } else {
    r = face_impl(t, i, s);
    face_cache_.emplace(std::move(key), r);
  }
  // Faces of a composable composite are composable.
  if (r.kind() == CellKind::Comp && t.kind() == CellKind::Comp && verified_.contains(t)) {
    verified_.insert(r);
  }
  return r;
}

Cell Normalizer::face_impl(const Cell& t, int i, Sign s) {
  switch (t.kind()) {
    case CellKind::Gen: {
      if (auto d = pres_.declared_face(t.name(), i, s)) {
        note("boundary");
        return *d;
      }
      return Cell::apply(single(Operator::face(i, s), t.dim()), t);
    }
    case CellKind::Apply: {
      WordTrace wt;
      const OperatorWord w =
          normalize_word(compose_words(single(Operator::face(i, s), t.dim()), t.word()), &wt);
      note_word(wt);
      const Cell inner = apply_faces(t.arg(), w.face_part());
      const OperatorWord raisers = w.raiser_part();
      if (raisers.empty()) return inner;
      if (inner.kind() == CellKind::Apply) {
        WordTrace wt2;
        const OperatorWord merged = normalize_word(compose_words(raisers, inner.word()), &wt2);
        note_word(wt2);
        return Cell::apply(merged, inner.arg());
      }
      return Cell::apply(raisers, inner);
    }
    case CellKind::Comp: {
      note("face-comp");
      const int j = t.direction();
      if (i == j) return s == Sign::Minus ? face(t.left(), j, s) : face(t.right(), j, s);
      const int k = i < j ? j - 1 : j;
      return Cell::comp(k, face(t.left(), i, s), face(t.right(), i, s));
    }
    case CellKind::Inv: {
      note("inv-face");
      const int j = t.direction();
      if (i == j) return face(t.arg(), j, -s);
      return Cell::inv(i < j ? j - 1 : j, face(t.arg(), i, s));
    }
  }
  throw IllFormed("unknown term kind");
}

Cell Normalizer::apply_faces(const Cell& t, const OperatorWord& faces) {
  if (faces.empty()) return t;
  if (t.kind() == CellKind::Gen) return faces_on_generator(t, faces);
  Cell cur = t;
  for (auto it = faces.ops().rbegin(); it != faces.ops().rend(); ++it) {
    cur = face(cur, it->index, it->sign);
  }
  return cur;
}

// Faces in normal order have non-increasing indices, so the rightmost one
// (applied first) has the smallest index. Once it is undeclared, all later
// ones are too, because declarations cover a prefix of the directions.
Cell Normalizer::faces_on_generator(const Cell& gen, const OperatorWord& faces) {
  const Operator first = faces.ops().back();
  auto declared = pres_.declared_face(gen.name(), first.index, first.sign);
  if (!declared) return Cell::apply(faces, gen);
  note("boundary");
  std::vector<Operator> rest(faces.ops().begin(), faces.ops().end() - 1);
  return apply_faces(*declared, OperatorWord(std::move(rest), gen.dim() - 1));
}

// --- normal forms ----------------------------------------------------------------

Cell Normalizer::normalize(const Cell& t) { return nf(t); }

Cell Normalizer::nf(const Cell& t) {
  if (auto it = nf_cache_.find(t); it != nf_cache_.end()) return it->second;
  // The local rewrites are not confluent, so one pass can leave redexes
  // behind; iterate until the result is stable.
  constexpr int kMaxPasses = 8;
  Cell r = nf_pass(t, true);
  for (int pass = 1; pass < kMaxPasses; ++pass) {
    nf_cache_.emplace(t, r);
    if (auto it = nf_cache_.find(r); it != nf_cache_.end() && it->second == r) break;
    const Cell next = nf_pass(r, false);
    if (next == r) break;
    nf_cache_[t] = next;
    r = next;
  }
  nf_cache_[t] = r;
  nf_cache_[r] = r;
  // Normal forms are built from checked composites by sound rewrites.
  mark_verified(r);
  return r;
}

void Normalizer::ensure_composable(const Cell& t) {
  if (verified_.contains(t)) return;
  const int j = t.direction();
  // Faces of the unnormalised factors are compared first: they are usually
  // syntactically closer than faces of the normal forms.
  if (!composable_nf(j, t.left(), t.right()) &&
      !composable_nf(j, nf(t.left()), nf(t.right()))) {
    const Cell x = nf(face(t.left(), j, Sign::Plus));
    const Cell y = nf(face(t.right(), j, Sign::Minus));
    const EqVerdict v = distinct_check(x, y, 0);
    throw IllFormed("o" + std::to_string(j) + " composite is not composable: d" +
                    std::to_string(j) + "+ of the left factor is " + to_string(x) + ", d" +
                    std::to_string(j) + "- of the right factor is " + to_string(y) + " (" +
                    to_string(v) + ")");
  }
  verified_.insert(t);
}

void Normalizer::mark_verified(const Cell& t) {
  switch (t.kind()) {
    case CellKind::Gen:
      return;
    case CellKind::Apply:
    case CellKind::Inv:
      mark_verified(t.arg());
      return;
    case CellKind::Comp:
      if (!verified_.insert(t).second) return;
      mark_verified(t.left());
      mark_verified(t.right());
      return;
  }
}

Cell Normalizer::nf_pass(const Cell& t, bool check_composable) {
  Cell r;
  switch (t.kind()) {
    case CellKind::Gen:
      r = t;
      break;
    case CellKind::Apply: {
      WordTrace wt;
      const OperatorWord w = normalize_word(t.word(), &wt);
      note_word(wt);
      r = push_word(w, nf(t.arg()));
      break;
    }
    case CellKind::Comp: {
      const Cell a = nf(t.left());
      const Cell b = nf(t.right());
      if (check_composable && opts_.check_composable) ensure_composable(t);
      r = make_comp(t.direction(), a, b);
      break;
    }
    case CellKind::Inv:
      r = make_inv(t.direction(), nf(t.arg()));
      break;
  }
  return r;
}

Cell Normalizer::push_word(const OperatorWord& w, const Cell& s) {
  if (w.empty()) return s;
  if (is_leaf(s)) return make_leaf(compose_words(w, leaf_word(s)), leaf_gen(s));
  Cell cur = s;
  for (auto it = w.ops().rbegin(); it != w.ops().rend(); ++it) cur = push_op(*it, cur);
  return cur;
}

Cell Normalizer::push_op(const Operator& op, const Cell& s) {
  if (is_leaf(s)) {
    return make_leaf(compose_words(single(op, s.dim()), leaf_word(s)), leaf_gen(s));
  }
  const int i = op.index;
  if (s.kind() == CellKind::Comp) {
    const int j = s.direction();
    const Cell a = s.left();
    const Cell b = s.right();
    switch (op.kind) {
      case OpKind::Face:
        note("face-comp");
        if (i == j) return op.sign == Sign::Minus ? push_op(op, a) : push_op(op, b);
        return make_comp(i < j ? j - 1 : j, push_op(op, a), push_op(op, b));
      case OpKind::Degen:
        note("degen-comp");
        return make_comp(i <= j ? j + 1 : j, push_op(op, a), push_op(op, b));
      case OpKind::Conn:
        if (i == j) return transport(op.sign, j, a, b);
        note("conn-comp");
        return make_comp(i < j ? j + 1 : j, push_op(op, a), push_op(op, b));
    }
  }
  if (s.kind() == CellKind::Inv) {
    const int j = s.direction();
    const Cell a = s.arg();
    switch (op.kind) {
      case OpKind::Face:
        note("inv-face");
        if (i == j) return push_op(Operator::face(j, -op.sign), a);
        return make_inv(i < j ? j - 1 : j, push_op(op, a));
      case OpKind::Degen:
        note("inv-raise");
        return make_inv(i <= j ? j + 1 : j, push_op(op, a));
      case OpKind::Conn:
        if (i == j) {
          note("inv-conn");
          return make_inv(j, make_inv(j + 1, push_op(Operator::conn(j, -op.sign), a)));
        }
        note("inv-raise");
        return make_inv(i < j ? j + 1 : j, push_op(op, a));
    }
  }
  throw IllFormed("push_op on a term that is not in normal form: " + to_string(s));
}

Cell Normalizer::make_leaf(const OperatorWord& w, const Cell& gen) {
  WordTrace wt;
  const OperatorWord n = normalize_word(w, &wt);
  note_word(wt);
  const OperatorWord faces = n.face_part();
  if (faces.empty()) return Cell::apply(n, gen);
  const Cell r = faces_on_generator(gen, faces);
  if (r.kind() == CellKind::Apply && r.arg() == gen) return Cell::apply(n, gen);
  return push_word(n.raiser_part(), nf(r));
}

// The 2x2 matrix of the transport laws, rows in direction j, columns in j+1.
Cell Normalizer::transport(Sign s, int j, const Cell& a, const Cell& b) {
  const Cell ga = push_op(Operator::conn(j, s), a);
  const Cell gb = push_op(Operator::conn(j, s), b);
  Cell top_right;
  Cell bottom_left;
  if (s == Sign::Plus) {
    note("transport+");
    top_right = push_op(Operator::degen(j + 1), a);
    bottom_left = push_op(Operator::degen(j), a);
  } else {
    note("transport-");
    top_right = push_op(Operator::degen(j), b);
    bottom_left = push_op(Operator::degen(j + 1), b);
  }
  return make_comp(j, make_comp(j + 1, ga, top_right), make_comp(j + 1, bottom_left, gb));
}

bool Normalizer::composable_nf(int j, const Cell& a, const Cell& b) {
  return nf(face(a, j, Sign::Plus)) == nf(face(b, j, Sign::Minus));
}

Cell Normalizer::make_comp(int j, const Cell& a, const Cell& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("composite of dimensions " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  if (!opts_.groupoid_laws) {
    // A cube constant in direction j composed with itself is itself, on the nose.
    if (a == b && is_identity_nf(j, a)) {
      note("degenerate-comp");
      return a;
    }
    if (a.kind() == CellKind::Comp && b.kind() == CellKind::Comp &&
        a.direction() == b.direction() && a.direction() < j &&
        composable_nf(j, a.left(), b.left()) && composable_nf(j, a.right(), b.right())) {
      note("interchange");
      const int i = a.direction();
      return make_comp(i, make_comp(j, a.left(), b.left()), make_comp(j, a.right(), b.right()));
    }
    return trusted_comp(j, a, b);
  }
  std::vector<Cell> factors;
  flatten(j, a, factors);
  if (b.kind() == CellKind::Comp && b.direction() == j) note("assoc");
  flatten(j, b, factors);
  return make_comp_list(j, std::move(factors));
}

void Normalizer::flatten(int j, const Cell& t, std::vector<Cell>& out) {
  if (t.kind() == CellKind::Comp && t.direction() == j) {
    flatten(j, t.left(), out);
    flatten(j, t.right(), out);
  } else {
    out.push_back(t);
  }
}

bool Normalizer::is_identity_nf(int j, const Cell& x) {
  FaceCacheKey key{x, j, Sign::Minus};
  if (auto it = identity_cache_.find(key); it != identity_cache_.end()) return it->second;
  const bool r = push_op(Operator::degen(j), nf(face(x, j, Sign::Minus))) == x;
  identity_cache_.emplace(std::move(key), r);
  return r;
}

Cell Normalizer::make_comp_list(int j, std::vector<Cell> pieces) {
  std::vector<Cell> factors;
  for (const Cell& x : pieces) flatten(j, x, factors);
  std::vector<Cell> out;
  for (const Cell& x : factors) {
    if (is_identity_nf(j, x)) {
      note("unit");
      continue;
    }
    if (!out.empty() && make_inv(j, x) == out.back()) {
      note("inverse");
      out.pop_back();
      continue;
    }
    out.push_back(x);
  }
  if (out.empty()) return push_op(Operator::degen(j), nf(face(factors.front(), j, Sign::Minus)));
  if (out.size() == 1) return out.front();
  if (auto r = try_interchange(j, out)) return *r;
  return left_assoc(j, out);
}

Cell Normalizer::left_assoc(int j, const std::vector<Cell>& factors) {
  Cell acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = trusted_comp(j, acc, factors[k]);
  return acc;
}

Cell Normalizer::trusted_comp(int j, const Cell& a, const Cell& b) {
  const Cell r = Cell::comp(j, a, b);
  verified_.insert(r);
  return r;
}

Cell Normalizer::comp_range(int i, const std::vector<Cell>& row, std::size_t from, std::size_t to) {
  return left_assoc(i, std::vector<Cell>(row.begin() + static_cast<std::ptrdiff_t>(from),
                                         row.begin() + static_cast<std::ptrdiff_t>(to)));
}

// A row of o_j factors that are all composites in one smaller direction i is
// cut into bands along direction i. A band boundary is a choice of one cut in
// every factor such that the pieces below it are o_j composable; the
// lowest such boundary is taken each time. The transposed result has
// direction i outermost.
std::optional<Cell> Normalizer::try_interchange(int j, const std::vector<Cell>& factors) {
  int i = 0;
  for (const Cell& x : factors) {
    if (x.kind() != CellKind::Comp || x.direction() >= j) return std::nullopt;
    if (i == 0) i = x.direction();
    if (x.direction() != i) return std::nullopt;
  }
  const std::size_t k = factors.size();
  std::vector<std::vector<Cell>> rows(k);
  for (std::size_t m = 0; m < k; ++m) flatten(i, factors[m], rows[m]);

  std::vector<std::size_t> start(k, 0);
  std::vector<std::vector<Cell>> bands;
  for (;;) {
    std::optional<std::vector<std::size_t>> cut;
    for (std::size_t p = start[0] + 1; p < rows[0].size() && !cut; ++p) {
      std::vector<std::size_t> ends{p};
      Cell top = nf(face(comp_range(i, rows[0], start[0], p), j, Sign::Plus));
      for (std::size_t m = 1; m < k; ++m) {
        std::size_t found = 0;
        for (std::size_t q = start[m] + 1; q < rows[m].size(); ++q) {
          const Cell piece = comp_range(i, rows[m], start[m], q);
          if (nf(face(piece, j, Sign::Minus)) == top) {
            found = q;
            top = nf(face(piece, j, Sign::Plus));
            break;
          }
        }
        if (found == 0) break;
        ends.push_back(found);
      }
      if (ends.size() == k) cut = std::move(ends);
    }
    if (!cut) break;
    std::vector<Cell> band;
    for (std::size_t m = 0; m < k; ++m) {
      band.push_back(comp_range(i, rows[m], start[m], (*cut)[m]));
      start[m] = (*cut)[m];
    }
    bands.push_back(std::move(band));
  }
  if (bands.empty()) return std::nullopt;
  std::vector<Cell> rest;
  for (std::size_t m = 0; m < k; ++m) rest.push_back(comp_range(i, rows[m], start[m], rows[m].size()));
  for (std::size_t m = 0; m + 1 < k; ++m) {
    if (!composable_nf(j, rest[m], rest[m + 1])) return std::nullopt;
  }
  bands.push_back(std::move(rest));

  note("interchange");
  std::vector<Cell> columns;
  for (auto& band : bands) flatten(i, make_comp_list(j, std::move(band)), columns);
  return make_comp_list(i, std::move(columns));
}

Cell Normalizer::make_inv(int j, const Cell& a) {
  switch (a.kind()) {
    case CellKind::Comp: {
      note("inv-comp");
      const int k = a.direction();
      if (k != j) return make_comp(k, make_inv(j, a.left()), make_inv(j, a.right()));
      if (!opts_.groupoid_laws) return make_comp(j, make_inv(j, a.right()), make_inv(j, a.left()));
      std::vector<Cell> factors;
      flatten(j, a, factors);
      std::reverse(factors.begin(), factors.end());
      for (Cell& f : factors) f = make_inv(j, f);
      return make_comp_list(j, std::move(factors));
    }
    case CellKind::Inv: {
      const int k = a.direction();
      if (k == j) {
        note("inv-inv");
        return a.arg();
      }
      if (k < j) return Cell::inv(k, make_inv(j, a.arg()));
      break;
    }
    default:
      break;
  }
  if (is_identity_nf(j, a)) {
    note("inv-degen");
    return a;
  }
  return Cell::inv(j, a);
}

// --- equality --------------------------------------------------------------------

EqVerdict Normalizer::distinct_check(const Cell& a, const Cell& b, int depth) {
  if (a == b) return EqVerdict::Equal;
  // Raisers have left inverses and free cells are not degenerate, so leaves
  // over different free cells differ.
  if (is_leaf(a) && is_leaf(b) && leaf_base(a) != leaf_base(b)) return EqVerdict::Distinct;
  if (a.dim() == 0) {
    // Normal 0-cells are vertices of generators with all declared faces resolved.
    return is_leaf(a) && is_leaf(b) ? EqVerdict::Distinct : EqVerdict::Unknown;
  }
  for (int i = 1; i <= a.dim(); ++i) {
    for (Sign s : kSigns) {
      const Cell fa = nf(face(a, i, s));
      const Cell fb = nf(face(b, i, s));
      if (fa != fb && distinct_check(fa, fb, depth + 1) == EqVerdict::Distinct) {
        return EqVerdict::Distinct;
      }
    }
  }
  return EqVerdict::Unknown;
}

EqVerdict Normalizer::equal(const Cell& a, const Cell& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("comparing cells of dimension " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
  const Cell x = nf(a);
  const Cell y = nf(b);
  if (x == y) return EqVerdict::Equal;
  return distinct_check(x, y, 0);
}

Tri Normalizer::in_image_eps(const Cell& t, int k) {
  if (k < 0 || k > t.dim()) {
    throw IndexOutOfRange("e_1^" + std::to_string(k) + " on a " + std::to_string(t.dim()) +
                          "-cell");
  }
  if (k == 0) return Tri::Yes;
  switch (equal(eps1_power(face1_power(t, k, Sign::Minus), k), t)) {
    case EqVerdict::Equal:
      return Tri::Yes;
    case EqVerdict::Distinct:
      return Tri::No;
    case EqVerdict::Unknown:
      return Tri::Unknown;
  }
  return Tri::Unknown;
}

void Normalizer::check_well_formed(const Cell& t) {
  Normalizer checker(pres_, NormalizeOptions{opts_.groupoid_laws, true});
  checker.normalize(t);
}

// --- free functions ----------------------------------------------------------------

Cell face(const Presentation& p, const Cell& t, int i, Sign s, CellTrace* trace) {
  return Normalizer(p, {}, trace).face(t, i, s);
}

Cell normalize_cell(const Presentation& p, const Cell& t, CellTrace* trace,
                    NormalizeOptions opts) {
  return Normalizer(p, opts, trace).normalize(t);
}

EqVerdict eq_cells(const Presentation& p, const Cell& a, const Cell& b) {
  return Normalizer(p).equal(a, b);
}

Tri in_image_eps(const Presentation& p, const Cell& t, int k) {
  return Normalizer(p).in_image_eps(t, k);
}

}  // namespace cubical
