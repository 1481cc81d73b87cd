#include <random>

#include "cubical/errors.hpp"
#include "cubical/folding.hpp"
#include "cubical/globular.hpp"
#include "doctest.h"

using namespace cubical;

namespace {

GlobTerm g0(const std::string& n) { return GlobTerm::gen(n, 0); }
GlobTerm g1(const std::string& n) { return GlobTerm::gen(n, 1); }
GlobTerm g2(const std::string& n) { return GlobTerm::gen(n, 2); }

// Vertices x, y, z; parallel edges f1..f3 : x -> y and g1..g3 : y -> z; every
// 2-cell a_ij : f_i => f_j and b_ij : g_i => g_j with i != j.
GlobularPresentation two_columns() {
  GlobularPresentation p("columns");
  for (const char* v : {"x", "y", "z"}) p.add_vertex(v);
  for (int i = 1; i <= 3; ++i) {
    p.add({"f" + std::to_string(i), 1, g0("x"), g0("y")});
    p.add({"g" + std::to_string(i), 1, g0("y"), g0("z")});
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const std::string ij = std::to_string(i) + std::to_string(j);
      p.add({"a" + ij, 2, g1("f" + std::to_string(i)), g1("f" + std::to_string(j))});
      p.add({"b" + ij, 2, g1("g" + std::to_string(i)), g1("g" + std::to_string(j))});
    }
  }
  return p;
}

bool has_law(const GlobValidationReport& r, const std::string& law) {
  for (const auto& v : r.violations) {
    if (v.law == law) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validation of globular presentations") {
  GlobularPresentation ok("cell");
  ok.add_vertex("x");
  ok.add_vertex("y");
  ok.add({"f", 1, g0("x"), g0("y")});
  ok.add({"g", 1, g0("x"), g0("y")});
  ok.add({"alpha", 2, g1("f"), g1("g")});
  CHECK(validate_globular_presentation(ok).ok());

  GlobularPresentation bad = ok;
  bad.add_vertex("z");
  bad.add({"h", 1, g0("x"), g0("z")});
  bad.add({"beta", 2, g1("f"), g1("h")});
  const auto report = validate_globular_presentation(bad);
  REQUIRE_FALSE(report.ok());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].law == "law (i)");
  CHECK(report.violations[0].subject == "beta");
  CHECK(report.violations[0].lhs == "y");
  CHECK(report.violations[0].rhs == "z");

  GlobularPresentation broken("broken");
  broken.add_vertex("x");
  broken.add({"f", 1, g0("x"), g0("nowhere")});
  broken.add({"g", 1, g0("x"), GlobTerm::gen("x", 1)});
  broken.add({"k", 1, g1("f"), g1("f")});
  const auto r2 = validate_globular_presentation(broken);
  CHECK(r2.violations.size() == 3);
  CHECK(has_law(r2, "declaration"));
}

TEST_CASE("non-composable boundary composites are reported") {
  GlobularPresentation p("pair");
  for (const char* v : {"x", "y", "z"}) p.add_vertex(v);
  p.add({"f", 1, g0("x"), g0("y")});
  p.add({"g", 1, g0("x"), g0("z")});
  p.add({"h", 1, g0("x"), g0("z")});
  p.add({"gamma", 2, GlobTerm::compose(0, g1("f"), g1("g")), g1("h")});
  const auto report = validate_globular_presentation(p);
  CHECK(has_law(report, "composable"));
}

TEST_CASE("iterated identities and their boundaries") {
  const GlobTerm x = g0("x");
  CHECK(glob_identity(glob_identity(x, 1), 3) == glob_identity(x, 3));
  GlobularPresentation p("point");
  p.add_vertex("x");
  const GlobTerm s3 = glob_identity(x, 3);
  CHECK(glob_boundary(p, s3, 0, Sign::Plus) == x);
  CHECK(glob_boundary(p, s3, 1, Sign::Minus) == glob_identity(x, 1));
  CHECK(glob_boundary(p, s3, 2, Sign::Plus) == glob_identity(x, 2));
  CHECK_THROWS_AS(glob_boundary(p, s3, 3, Sign::Plus), IndexOutOfRange);
  CHECK(validate_globular_presentation(p).ok());
}

TEST_CASE("three-dimensional presentations embed consistently") {
  GlobularPresentation p("modification");
  p.add_vertex("x");
  p.add_vertex("y");
  p.add({"f", 1, g0("x"), g0("y")});
  p.add({"g", 1, g0("x"), g0("y")});
  p.add({"h", 1, g0("x"), g0("y")});
  p.add({"a", 2, g1("f"), g1("g")});
  p.add({"b", 2, g1("g"), g1("h")});
  p.add({"c", 2, g1("f"), g1("h")});
  p.add({"m", 3, GlobTerm::compose(1, g2("a"), g2("b")), g2("c")});
  CHECK(validate_globular_presentation(p).ok());
  CHECK(validate_presentation(embed_presentation(p)).empty());

  GlobularContext ctx(p);
  const auto m = ctx.formal(GlobTerm::gen("m", 3));
  CHECK(is_globular(ctx.normalizer(), m.cell) == Tri::Yes);
  for (int k = 0; k < 3; ++k) {
    for (Sign s : kSigns) {
      const auto d = ctx.face(m, k, s);
      REQUIRE(d.formal);
      CHECK(ctx.normalizer().equal(embed_term(*d.formal), d.cell) == EqVerdict::Equal);
    }
  }
}

TEST_CASE("wrapping cubical cells") {
  Presentation p("free");
  p.add_generator("g", 2);
  p.add_generator("e", 1);
  p.add_generator("v", 0);
  GlobularContext ctx(p);
  const auto w = ctx.wrap(phi_fold(2, p.gen("g")));
  CHECK(w.dim() == 2);
  CHECK(ctx.face(w, 1, Sign::Minus).cell ==
        globular_face(ctx.normalizer(), w.cell, 1, Sign::Minus));
  CHECK_NOTHROW(ctx.wrap(p.gen("e")));
  CHECK_NOTHROW(ctx.wrap(p.gen("v")));
  CHECK_THROWS_AS(ctx.wrap(p.gen("g")), NotGlobular);
  CHECK_THROWS_AS(ctx.formal(GlobTerm::gen("g", 2)), IllFormed);
}

TEST_CASE("compositions, identities and compatibilities") {
  GlobularContext ctx(two_columns());
  auto cell = [&](const std::string& n) { return ctx.formal(g2(n)); };
  const auto a12 = cell("a12");
  const auto a23 = cell("a23");
  const auto b12 = cell("b12");
  const auto b23 = cell("b23");

  const auto vertical = ctx.compose(1, a12, a23);
  CHECK(ctx.equal(ctx.face(vertical, 1, Sign::Minus), ctx.formal(g1("f1"))) == EqVerdict::Equal);
  CHECK(ctx.equal(ctx.face(vertical, 1, Sign::Plus), ctx.formal(g1("f3"))) == EqVerdict::Equal);
  CHECK_THROWS_AS(ctx.compose(1, a12, a12), NotComposable);
  CHECK_THROWS_AS(ctx.compose(0, a12, a23), NotComposable);

  // Units on either side.
  const auto src = ctx.face(a12, 1, Sign::Minus);
  const auto tgt = ctx.face(a12, 1, Sign::Plus);
  CHECK(ctx.equal(ctx.compose(1, ctx.identity(src), a12), a12) == EqVerdict::Equal);
  CHECK(ctx.equal(ctx.compose(1, a12, ctx.identity(tgt)), a12) == EqVerdict::Equal);
  const auto y = ctx.face(a12, 0, Sign::Plus);
  CHECK(ctx.equal(ctx.compose(0, a12, ctx.identity(ctx.identity(y))), a12) == EqVerdict::Equal);

  // E(x o_j y) = Ex o_j Ey.
  const auto horizontal = ctx.compose(0, a12, b12);
  CHECK(ctx.equal(ctx.identity(horizontal),
                  ctx.compose(0, ctx.identity(a12), ctx.identity(b12))) == EqVerdict::Equal);

  // D_i(x o_j y) = D_i x o_j D_i y for i > j.
  for (Sign s : kSigns) {
    CHECK(ctx.equal(ctx.face(horizontal, 1, s),
                    ctx.compose(0, ctx.face(a12, 1, s), ctx.face(b12, 1, s))) == EqVerdict::Equal);
  }

  // Interchange.
  const auto left = ctx.compose(0, ctx.compose(1, a12, a23), ctx.compose(1, b12, b23));
  const auto right = ctx.compose(1, ctx.compose(0, a12, b12), ctx.compose(0, a23, b23));
  CHECK(ctx.equal(left, right) == EqVerdict::Equal);
  const auto other = ctx.compose(1, ctx.compose(0, a12, b12), ctx.compose(0, a23, cell("b21")));
  CHECK(ctx.equal(left, other) != EqVerdict::Equal);
  CHECK(ctx.equal(a12, cell("a13")) == EqVerdict::Distinct);
}

TEST_CASE("interchange on fuzzed grids of wrapped cells") {
  const GlobularPresentation gp = two_columns();
  GlobularContext ctx(embed_presentation(gp));
  std::mt19937_64 rng(17);
  auto pick = [&](int avoid) {
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    while (k == avoid) k = std::uniform_int_distribution<int>(1, 3)(rng);
    return k;
  };
  auto two_cell = [&](char col, int i, int j) {
    const std::string name = std::string(1, col) + std::to_string(i) + std::to_string(j);
    return ctx.wrap(ctx.cubical().gen(name));
  };
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    const int i = pick(0), j = pick(i), k = pick(j);
    const int p = pick(0), q = pick(p), r = pick(q);
    const auto x = two_cell('a', i, j);
    const auto y = two_cell('a', j, k);
    const auto z = two_cell('b', p, q);
    const auto w = two_cell('b', q, r);
    const auto left = ctx.compose(0, ctx.compose(1, x, y), ctx.compose(1, z, w));
    const auto right = ctx.compose(1, ctx.compose(0, x, z), ctx.compose(0, y, w));
    CHECK(ctx.equal(left, right) == EqVerdict::Equal);
    // Globular-set laws on the derived operators.
    for (Sign s : kSigns) {
      CHECK(ctx.equal(ctx.face(ctx.face(left, 1, s), 0, Sign::Minus),
                      ctx.face(left, 0, Sign::Minus)) == EqVerdict::Equal);
      CHECK(ctx.equal(ctx.face(ctx.identity(left), 2, s), left) == EqVerdict::Equal);
      CHECK(ctx.equal(ctx.face(ctx.identity(left), 0, s), ctx.face(left, 0, s)) ==
            EqVerdict::Equal);
    }
    ++checked;
  }
  CHECK(checked == 40);
}
