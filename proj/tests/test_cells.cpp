#include <random>

#include "cubical/cells.hpp"
#include "cubical/errors.hpp"
#include "cubical/fixtures.hpp"
#include "doctest.h"

using namespace cubical;
using O = Operator;

namespace {

OperatorWord word(std::vector<Operator> ops, int dim) { return OperatorWord(std::move(ops), dim); }

// x --a--> y --b--> z
Presentation path_presentation() {
  Presentation p("path");
  p.add_generator("x", 0);
  p.add_generator("y", 0);
  p.add_generator("z", 0);
  p.add({"a", 1, {{{1, Sign::Minus}, Cell::gen("x", 0)}, {{1, Sign::Plus}, Cell::gen("y", 0)}}});
  p.add({"b", 1, {{{1, Sign::Minus}, Cell::gen("y", 0)}, {{1, Sign::Plus}, Cell::gen("z", 0)}}});
  return p;
}

SubdividedCube grid(int dim, int parts, unsigned seed) {
  return SubdividedCube(dim, parts, library_cube("trig", dim, 2, seed));
}

}  // namespace

TEST_CASE("faces of composites and applications") {
  Presentation p("free");
  p.add_generator("a", 2);
  p.add_generator("b", 2);
  p.add_generator("g", 1);
  const Cell a = p.gen("a");
  const Cell b = p.gen("b");
  const Cell ab = Cell::comp(2, a, b);
  CHECK(face(p, ab, 2, Sign::Minus) == face(p, a, 2, Sign::Minus));
  CHECK(face(p, ab, 2, Sign::Plus) == face(p, b, 2, Sign::Plus));
  CHECK(face(p, ab, 1, Sign::Plus) ==
        Cell::comp(1, face(p, a, 1, Sign::Plus), face(p, b, 1, Sign::Plus)));
  const Cell g = p.gen("g");
  CHECK(face(p, Cell::apply(word({O::degen(1)}, 1), g), 1, Sign::Plus) == g);
  CHECK_THROWS_AS(face(p, a, 3, Sign::Plus), IndexOutOfRange);

  CellTrace trace;
  face(p, ab, 1, Sign::Minus, &trace);
  CHECK(trace.counts["face-comp"] == 1);
}

TEST_CASE("unit, inverse and degeneracy laws") {
  const Presentation p = path_presentation();
  const Cell a = p.gen("a");
  const Cell b = p.gen("b");
  const Cell unit_right = Cell::apply(word({O::degen(1), O::face(1, Sign::Plus)}, 1), a);
  const Cell unit_left = Cell::apply(word({O::degen(1), O::face(1, Sign::Minus)}, 1), a);
  CHECK(normalize_cell(p, Cell::comp(1, a, unit_right)) == a);
  CHECK(normalize_cell(p, Cell::comp(1, unit_left, a)) == a);
  CHECK(normalize_cell(p, Cell::comp(1, a, Cell::inv(1, a))) == normalize_cell(p, unit_left));
  CHECK(normalize_cell(p, Cell::comp(1, Cell::inv(1, a), a)) == normalize_cell(p, unit_right));

  const Cell e1 = Cell::apply(word({O::degen(1)}, 1), Cell::comp(1, a, b));
  CellTrace trace;
  CHECK(normalize_cell(p, e1, &trace) ==
        Cell::comp(2, Cell::apply(word({O::degen(1)}, 1), a),
                   Cell::apply(word({O::degen(1)}, 1), b)));
  CHECK(trace.counts["degen-comp"] >= 1);

  CHECK_THROWS_AS(normalize_cell(p, Cell::comp(1, b, a)), IllFormed);
  CHECK_THROWS_AS(normalize_cell(p, Cell::comp(1, a, a)), IllFormed);
}

TEST_CASE("three-valued equality") {
  Presentation p("free");
  p.add_generator("g", 2);
  p.add_generator("x", 1);
  const Cell g = p.gen("g");
  const Cell x = p.gen("x");
  CHECK(eq_cells(p, g, g) == EqVerdict::Equal);
  CHECK(eq_cells(p, Cell::apply(word({O::degen(1)}, 1), x),
                 Cell::apply(word({O::degen(2)}, 1), x)) == EqVerdict::Distinct);
  CHECK_THROWS_AS(eq_cells(p, g, x), DimensionMismatch);

  const SubdividedCube sq = grid(2, 2, 4);
  const Cell a = sq.block({0, 0});
  const Cell b = sq.block({0, 1});
  const Cell c = sq.block({1, 0});
  const Cell d = sq.block({1, 1});
  const Cell lhs = Cell::comp(2, Cell::comp(1, a, c), Cell::comp(1, b, d));
  const Cell rhs = Cell::comp(1, Cell::comp(2, a, b), Cell::comp(2, c, d));
  CHECK(eq_cells(sq.presentation(), lhs, rhs) == EqVerdict::Equal);
  CHECK(eq_cells(sq.presentation(), a, d) == EqVerdict::Distinct);
}

TEST_CASE("membership in the image of e_1^k") {
  Presentation p("free");
  p.add_generator("s", 1);
  p.add_generator("v", 0);
  p.add_generator("g", 2);
  CHECK(in_image_eps(p, Cell::apply(word({O::degen(1)}, 1), p.gen("s")), 1) == Tri::Yes);
  CHECK(in_image_eps(p, p.gen("g"), 1) == Tri::No);
  CHECK(in_image_eps(p, Cell::apply(word({O::degen(1), O::degen(1)}, 1), p.gen("s")), 2) ==
        Tri::Yes);
  CHECK(in_image_eps(p, p.gen("g"), 0) == Tri::Yes);
  CHECK_THROWS_AS(in_image_eps(p, p.gen("s"), 2), IndexOutOfRange);
}

TEST_CASE("strict normalisation agrees with the cube oracle") {
  std::mt19937_64 rng(21);
  for (int dim = 1; dim <= 3; ++dim) {
    const SubdividedCube sq = grid(dim, dim == 3 ? 2 : 3, 30 + dim);
    const GridSpec spec{5, 1e-9};
    check_env(sq.presentation(), sq.env(), spec);
    for (int n = 0; n < 60; ++n) {
      const Cell t = random_grid_term(sq, 4, rng, true);
      CellTrace trace;
      const Cell r = normalize_cell(sq.presentation(), t, &trace, NormalizeOptions{false, true});
      CHECK(trace.strict_only());
      const double dev = max_deviation(oracle_eval(sq.presentation(), t, sq.env(), spec),
                                       oracle_eval(sq.presentation(), r, sq.env(), spec), 5);
      CHECK_MESSAGE(dev <= 1e-9, to_string(t));
    }
  }
}

TEST_CASE("face compatibility and congruence on random terms") {
  std::mt19937_64 rng(22);
  const SubdividedCube sq = grid(3, 2, 41);
  const Presentation& p = sq.presentation();
  for (int n = 0; n < 40; ++n) {
    const Cell t = random_grid_term(sq, 4, rng, true);
    Normalizer norm(p);
    for (int j = 2; j <= t.dim(); ++j) {
      for (int i = 1; i < j; ++i) {
        for (Sign a : kSigns) {
          for (Sign b : kSigns) {
            const Cell lhs = norm.face(norm.face(t, j, b), i, a);
            const Cell rhs = norm.face(norm.face(t, i, a), j - 1, b);
            CHECK(norm.equal(lhs, rhs) == EqVerdict::Equal);
          }
        }
      }
    }
    if (t.dim() == 0) continue;
    // t o_1 (unit) is Equal to t, and so are their faces.
    const Cell padded =
        Cell::comp(1, t, Cell::apply(word({O::degen(1), O::face(1, Sign::Plus)}, t.dim()), t));
    REQUIRE(norm.equal(padded, t) == EqVerdict::Equal);
    for (int i = 1; i <= t.dim(); ++i) {
      for (Sign s : kSigns) {
        CHECK(norm.equal(norm.face(padded, i, s), norm.face(t, i, s)) == EqVerdict::Equal);
      }
    }
    const Cell cancelled = Cell::comp(1, t, Cell::inv(1, t));
    CHECK(norm.normalize(cancelled) ==
          norm.normalize(Cell::apply(word({O::degen(1), O::face(1, Sign::Minus)}, t.dim()), t)));
  }
}

TEST_CASE("distinct verdicts are separated by the oracle") {
  std::mt19937_64 rng(23);
  const SubdividedCube sq = grid(2, 3, 51);
  const Presentation& p = sq.presentation();
  const GridSpec spec{5, 1e-9};
  int distinct = 0;
  for (int n = 0; n < 200; ++n) {
    const Cell s = random_grid_term(sq, 3, rng, false);
    const Cell t = random_grid_term(sq, 3, rng, false);
    if (s.dim() != t.dim()) continue;
    if (eq_cells(p, s, t) != EqVerdict::Distinct) continue;
    ++distinct;
    const double dev = max_deviation(oracle_eval(p, s, sq.env(), spec),
                                     oracle_eval(p, t, sq.env(), spec), 5);
    CHECK(dev > 1e-9);
  }
  CHECK(distinct > 10);
}

TEST_CASE("presentation validation") {
  CHECK(validate_presentation(path_presentation()).empty());
  CHECK(validate_presentation(grid(2, 2, 1).presentation()).empty());

  Presentation bad("bad");
  bad.add_generator("x", 0);
  bad.add_generator("y", 0);
  bad.add({"a", 1, {{{1, Sign::Minus}, Cell::gen("x", 0)}, {{1, Sign::Plus}, Cell::gen("y", 0)}}});
  bad.add({"b", 1, {{{1, Sign::Minus}, Cell::gen("y", 0)}, {{1, Sign::Plus}, Cell::gen("x", 0)}}});
  // A square whose boundary does not close up.
  bad.add({"sq",
           2,
           {{{1, Sign::Minus}, Cell::gen("a", 1)},
            {{1, Sign::Plus}, Cell::gen("a", 1)},
            {{2, Sign::Minus}, Cell::gen("b", 1)},
            {{2, Sign::Plus}, Cell::gen("b", 1)}}});
  CHECK_FALSE(validate_presentation(bad).empty());
  CHECK_THROWS_AS(bad.add_generator("x", 1), NameClash);
  CHECK_THROWS_AS(bad.gen("nope"), UnknownGenerator);
}
