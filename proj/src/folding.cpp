#include "cubical/folding.hpp"

#include "cubical/errors.hpp"

namespace cubical {

Cell psi(int i, const Cell& t) {
  const int n = t.dim();
  if (i < 1 || i > n - 1) {
    throw IndexOutOfRange("psi_" + std::to_string(i) + " on a " + std::to_string(n) + "-cell");
  }
  const Cell lower = Cell::apply(
      OperatorWord({Operator::conn(i, Sign::Plus), Operator::face(i + 1, Sign::Minus)}, n), t);
  const Cell upper = Cell::apply(
      OperatorWord({Operator::conn(i, Sign::Minus), Operator::face(i + 1, Sign::Plus)}, n), t);
  return Cell::comp(i + 1, Cell::comp(i + 1, lower, t), upper);
}

std::pair<Cell, Cell> psi_connection_factors(int i, const Cell& t) {
  const Cell c = psi(i, t);
  return {c.left().left(), c.right()};
}

Tri in_image_double_degen(Normalizer& norm, const Cell& x, int i) {
  const int n = x.dim();
  if (i < 1 || i + 1 > n) {
    throw IndexOutOfRange("e_" + std::to_string(i + 1) + " e_" + std::to_string(i) +
                          " does not land in dimension " + std::to_string(n));
  }
  const OperatorWord w({Operator::degen(i + 1), Operator::degen(i), Operator::face(i, Sign::Minus),
                        Operator::face(i, Sign::Minus)},
                       n);
  switch (norm.equal(Cell::apply(w, x), x)) {
    case EqVerdict::Equal:
      return Tri::Yes;
    case EqVerdict::Distinct:
      return Tri::No;
    case EqVerdict::Unknown:
      return Tri::Unknown;
  }
  return Tri::Unknown;
}

Cell psi_block(int r, const Cell& t) {
  Cell x = t;
  for (int i = 1; i <= r - 1; ++i) x = psi(i, x);
  return x;
}

Cell phi_fold(int m, const Cell& t) {
  if (m < 0 || m > t.dim()) {
    throw IndexOutOfRange("Phi_" + std::to_string(m) + " on a " + std::to_string(t.dim()) +
                          "-cell");
  }
  Cell x = t;
  for (int r = m; r >= 1; --r) x = psi_block(r, x);
  return x;
}

std::map<FaceKey, Tri> globularity_by_face(Normalizer& norm, const Cell& t) {
  std::map<FaceKey, Tri> out;
  for (int i = 1; i <= t.dim(); ++i) {
    for (Sign s : kSigns) out[{i, s}] = norm.in_image_eps(norm.face(t, i, s), i - 1);
  }
  return out;
}

Tri combine(const std::map<FaceKey, Tri>& verdicts) {
  Tri r = Tri::Yes;
  for (const auto& [key, v] : verdicts) {
    if (v == Tri::No) return Tri::No;
    if (v == Tri::Unknown) r = Tri::Unknown;
  }
  return r;
}

FoldReport fold_phi(Normalizer& norm, int m, const Cell& t) {
  FoldReport report;
  report.input = t;
  report.output = phi_fold(m, t);
  report.per_face_globularity = globularity_by_face(norm, report.output);
  report.globular = combine(report.per_face_globularity);
  return report;
}

FoldReport fold_phi(const Presentation& p, int m, const Cell& t) {
  Normalizer norm(p);
  return fold_phi(norm, m, t);
}

Tri is_globular(Normalizer& norm, const Cell& t) {
  return combine(globularity_by_face(norm, t));
}

Tri is_globular(const Presentation& p, const Cell& t) {
  Normalizer norm(p);
  return is_globular(norm, t);
}

Tri is_diskal(Normalizer& norm, const Cell& t) {
  const int n = t.dim();
  std::map<FaceKey, Tri> verdicts;
  for (int i = 1; i <= n; ++i) {
    for (Sign s : kSigns) {
      if (i == 1 && s == Sign::Minus) continue;
      verdicts[{i, s}] = norm.in_image_eps(norm.face(t, i, s), n - 1);
    }
  }
  return combine(verdicts);
}

Tri is_diskal(const Presentation& p, const Cell& t) {
  Normalizer norm(p);
  return is_diskal(norm, t);
}

Cell globular_face(Normalizer& norm, const Cell& t, int i, Sign a) {
  if (i < 0 || i > t.dim()) {
    throw IndexOutOfRange("globular face of depth " + std::to_string(i) + " on a " +
                          std::to_string(t.dim()) + "-cell");
  }
  if (i == 0) return t;
  const Tri g = is_globular(norm, t);
  if (g != Tri::Yes) {
    throw NotGlobular(to_string(t) + " is not certified globular (" + to_string(g) + ")");
  }
  Cell x = t;
  for (int k = 0; k < i; ++k) x = norm.face(x, 1, a);
  return norm.normalize(x);
}

Cell globular_face(const Presentation& p, const Cell& t, int i, Sign a) {
  Normalizer norm(p);
  return globular_face(norm, t, i, a);
}

}  // namespace cubical
