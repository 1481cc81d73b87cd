#include "cubical/errors.hpp"
#include "cubical/folding.hpp"
#include "doctest.h"

using namespace cubical;
using O = Operator;

namespace {

Presentation free_on(int dim) {
  Presentation p("free");
  p.add_generator("g", dim);
  return p;
}

OperatorWord word(std::vector<Operator> ops, int dim) { return OperatorWord(std::move(ops), dim); }

}  // namespace

TEST_CASE("small folds") {
  const Presentation p = free_on(3);
  const Cell g = p.gen("g");
  CHECK(phi_fold(0, g) == g);
  CHECK(phi_fold(1, g) == g);
  CHECK(phi_fold(2, g) == psi(1, g));
  CHECK(phi_fold(3, g) == psi(1, psi(2, psi(1, g))));
  CHECK_THROWS_AS(psi(3, g), IndexOutOfRange);
  CHECK_THROWS_AS(phi_fold(4, g), IndexOutOfRange);
}

TEST_CASE("faces of psi") {
  const Presentation p = free_on(2);
  const Cell g = p.gen("g");
  Normalizer norm(p);
  const Cell lower = norm.normalize(norm.face(psi(1, g), 2, Sign::Minus));
  CHECK(lower == norm.normalize(Cell::apply(
                     word({O::degen(1), O::face(1, Sign::Minus), O::face(1, Sign::Minus)}, 2), g)));
  // d_1^- of the fold: the degenerate first factor drops out.
  const Cell edge = globular_face(norm, phi_fold(2, g), 1, Sign::Minus);
  const Cell expected = Cell::comp(
      1,
      Cell::comp(1,
                 Cell::apply(word({O::degen(1), O::face(1, Sign::Minus), O::face(1, Sign::Minus)}, 2),
                             g),
                 Cell::apply(word({O::face(1, Sign::Minus)}, 2), g)),
      Cell::apply(word({O::face(2, Sign::Plus)}, 2), g));
  CHECK(norm.equal(edge, expected) == EqVerdict::Equal);
  CHECK(globular_face(norm, g, 0, Sign::Plus) == g);
  CHECK_THROWS_AS(globular_face(norm, g, 1, Sign::Plus), NotGlobular);
}

TEST_CASE("folded generators are globular") {
  for (int n = 2; n <= 4; ++n) {
    const Presentation p = free_on(n);
    const Cell g = p.gen("g");
    Normalizer norm(p);
    const FoldReport r = fold_phi(norm, n, g);
    CHECK(r.globular == Tri::Yes);
    CHECK(r.per_face_globularity.size() == static_cast<std::size_t>(2 * n));
    for (const auto& [key, v] : r.per_face_globularity) CHECK(v == Tri::Yes);

    std::vector<std::string> allowed = word_rule_tags();
    allowed.push_back("face-comp");
    for (int i = 1; i <= n; ++i) {
      for (Sign s : kSigns) {
        CellTrace trace;
        Normalizer fresh(p, {}, &trace);
        fresh.face(r.output, i, s);
        CHECK(trace.only(allowed));
      }
    }
    CHECK(is_globular(norm, g) == Tri::No);
  }
}

TEST_CASE("low dimensions and the diskal subset") {
  Presentation p("mixed");
  p.add_generator("v", 0);
  p.add_generator("x", 1);
  p.add_generator("g", 2);
  CHECK(is_globular(p, p.gen("x")) == Tri::Yes);
  CHECK(is_globular(p, p.gen("v")) == Tri::Yes);
  const Cell flat = Cell::apply(word({O::degen(1), O::degen(1), O::degen(1)}, 0), p.gen("v"));
  CHECK(is_diskal(p, flat) == Tri::Yes);
  CHECK(is_globular(p, flat) == Tri::Yes);
  CHECK(is_diskal(p, p.gen("g")) == Tri::No);
  CHECK(is_globular(p, p.gen("g")) == Tri::No);
}

TEST_CASE("connection factors of psi on globular cells are doubly degenerate") {
  for (int n = 2; n <= 4; ++n) {
    const Presentation p = free_on(n);
    Normalizer norm(p);
    // A globular n-cell: the fold of a free generator.
    const Cell t = phi_fold(n, p.gen("g"));
    REQUIRE(is_globular(norm, t) == Tri::Yes);
    for (int i = 1; i < n; ++i) {
      const auto [lower, upper] = psi_connection_factors(i, t);
      CHECK(in_image_double_degen(norm, lower, i) == Tri::Yes);
      CHECK(in_image_double_degen(norm, upper, i) == Tri::Yes);
    }
  }
}

TEST_CASE("composites of globular cells stay globular") {
  const Presentation p = free_on(2);
  Normalizer norm(p);
  const Cell t = phi_fold(2, p.gen("g"));
  const Cell unit = Cell::apply(word({O::degen(1), O::face(1, Sign::Plus)}, 2), t);
  const Cell back = Cell::inv(1, t);
  CHECK(is_globular(norm, Cell::comp(1, t, unit)) == Tri::Yes);
  CHECK(is_globular(norm, Cell::comp(1, t, back)) == Tri::Yes);
}
