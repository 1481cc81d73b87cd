#include "cubical/colimits.hpp"
#include "cubical/crossed.hpp"
#include "cubical/errors.hpp"
#include "doctest.h"

using namespace cubical;

namespace {

Cell v(const std::string& n) { return Cell::gen(n, 0); }
Cell e(const std::string& n) { return Cell::gen(n, 1); }

GeneratorDecl edge(const std::string& n, const std::string& from, const std::string& to) {
  return {n, 1, {{{1, Sign::Minus}, v(from)}, {{1, Sign::Plus}, v(to)}}};
}

Presentation points(const std::string& name, const std::vector<std::string>& ps) {
  Presentation p(name);
  for (const auto& x : ps) p.add_generator(x, 0);
  return p;
}

// An arc with endpoints p and q, its edge going p -> q or q -> p.
Presentation arc(const std::string& name, const std::string& edge_name, bool forward) {
  Presentation p = points(name, {"p", "q"});
  p.add(forward ? edge(edge_name, "p", "q") : edge(edge_name, "q", "p"));
  return p;
}

PresMorphism map_points(const Presentation& from, const Presentation& to,
                        std::map<std::string, std::string> images) {
  PresMorphism m{from, to, {}};
  for (const auto& [x, y] : images) m.images.emplace(x, v(y));
  return m;
}

// The circle covered by two arcs meeting in two points.
CoverDiagram circle_cover() {
  CoverDiagram c;
  c.pieces = {arc("U0", "a", true), arc("U1", "b", false)};
  const Presentation ends = points("ends", {"x", "y"});
  for (auto [l, m] : {std::pair{0, 1}, std::pair{1, 0}}) {
    c.overlaps.emplace(std::pair{l, m}, ends);
    c.a.emplace(std::pair{l, m}, map_points(ends, c.pieces[l], {{"x", "p"}, {"y", "q"}}));
    c.b.emplace(std::pair{l, m}, map_points(ends, c.pieces[m], {{"x", "p"}, {"y", "q"}}));
  }
  c.unchecked_hypotheses = {"the pieces and their overlap are connected"};
  return c;
}

}  // namespace

TEST_CASE("morphisms are validated against declared faces") {
  const Presentation target = arc("T", "a", true);
  Presentation source("S");
  source.add_generator("u", 0);
  source.add_generator("w", 0);
  source.add(edge("f", "u", "w"));
  PresMorphism good{source, target, {{"u", v("p")}, {"w", v("q")}, {"f", e("a")}}};
  CHECK(validate_morphism(good).ok());
  PresMorphism flipped = good;
  flipped.images["u"] = v("q");
  flipped.images["w"] = v("p");
  CHECK_FALSE(validate_morphism(flipped).ok());
  PresMorphism partial = good;
  partial.images.erase("f");
  CHECK_FALSE(validate_morphism(partial).ok());

  CHECK(validate_morphism(compose(identity_morphism(target), good)).ok());
  CHECK_THROWS_AS(compose(good, good), NotComposable);
}

TEST_CASE("coproducts") {
  CHECK(coproduct({}).sum.generators().empty());
  const Coproduct two = coproduct({points("A", {"x"}), points("B", {"x"})});
  CHECK(two.sum.generators().size() == 2);
  CHECK(two.sum.contains("A.x"));
  CHECK(two.sum.contains("B.x"));
  const Coproduct same = coproduct({points("A", {"x"}), points("A", {"x"})});
  CHECK(same.sum.contains("p1.x"));

  // Inclusions are morphisms and compose with a map out of the sum.
  const Coproduct arcs = coproduct({arc("U0", "a", true), arc("U1", "b", true)});
  for (const auto& inc : arcs.inclusions) CHECK(validate_morphism(inc).ok());
  CHECK(arcs.sum.declared_face("U1.b", 1, Sign::Plus) == v("U1.q"));
  const Presentation line = arc("L", "a", true);
  PresMorphism fold{arcs.sum, line, {}};
  for (const char* prefix : {"U0.", "U1."}) {
    fold.images[std::string(prefix) + "p"] = v("p");
    fold.images[std::string(prefix) + "q"] = v("q");
  }
  fold.images["U0.a"] = e("a");
  fold.images["U1.b"] = e("a");
  CHECK(validate_morphism(fold).ok());
  const PresMorphism second = compose(fold, arcs.inclusions[1]);
  CHECK(second.images.at("b") == e("a"));
}

TEST_CASE("coequalisers") {
  const Presentation target = arc("T", "a", true);
  const Presentation point = points("pt", {"o"});
  const PresMorphism to_p = map_points(point, target, {{"o", "p"}});
  const PresMorphism to_q = map_points(point, target, {{"o", "q"}});

  const Coequalizer trivial = coequalizer(to_p, to_p);
  CHECK(class_counts_by_dim(trivial.quotient) == target.counts_by_dim());
  CHECK(solve_dim1(trivial.quotient).loop_rank == 0);

  const Coequalizer loop = coequalizer(to_p, to_q);
  REQUIRE(loop.quotient.relations.size() == 1);
  CHECK(equal_modulo(loop.quotient, loop.projection(to_p.images.at("o")),
                     loop.projection(to_q.images.at("o"))) == EqVerdict::Equal);
  CHECK(equal_modulo(loop.quotient, v("p"), v("q")) == EqVerdict::Equal);
  const Cell unit = Cell::apply(OperatorWord({Operator::degen(1)}, 0), v("p"));
  CHECK(equal_modulo(loop.quotient, e("a"), unit) == EqVerdict::Unknown);
  const Dim1Quotient d = solve_dim1(loop.quotient);
  CHECK(d.vertex_classes.size() == 1);
  CHECK(d.loop_rank == 1);
  CHECK(d.unresolved == 0);

  CHECK_THROWS_AS(coequalizer(to_p, map_points(points("pt2", {"o", "o2"}), target,
                                               {{"o", "p"}, {"o2", "q"}})),
                  NotParallel);
}

TEST_CASE("edges identified with identities are contracted") {
  Presentation target = points("T", {"x", "y"});
  target.add(edge("f", "x", "y"));
  target.add(edge("g", "x", "y"));
  Presentation source("S");
  source.add_generator("u", 0);
  source.add_generator("w", 0);
  source.add(edge("h", "u", "w"));
  PresMorphism to_f{source, target, {{"u", v("x")}, {"w", v("y")}, {"h", e("f")}}};
  PresMorphism to_g{source, target, {{"u", v("x")}, {"w", v("y")}, {"h", e("g")}}};
  const Dim1Quotient same = solve_dim1(coequalizer(to_f, to_g).quotient);
  CHECK(same.edge_classes.size() == 1);
  CHECK(same.loop_rank == 0);

  Presentation point = points("P", {"o"});
  point.add(edge("l", "o", "o"));
  Presentation loopless = points("T2", {"x", "y"});
  loopless.add(edge("f", "x", "y"));
  PresMorphism to_edge{point, loopless, {{"o", v("x")}, {"l", e("f")}}};
  PresMorphism to_unit{point, loopless,
                       {{"o", v("x")}, {"l", Cell::apply(OperatorWord({Operator::degen(1)}, 0),
                                                         v("x"))}}};
  const Dim1Quotient contracted = solve_dim1(coequalizer(to_edge, to_unit).quotient);
  CHECK(contracted.vertex_classes.size() == 1);
  CHECK(contracted.edge_classes.empty());
  CHECK(contracted.loop_rank == 0);
}

TEST_CASE("the circle from two arcs has one loop") {
  CoverDiagram cover = circle_cover();
  const RhoDiagram rho = build_rho_diagram(cover);
  CHECK(rho.pairs.size() == 2);
  CHECK(rho.overlaps.sum.generators().size() == 4);
  CHECK(rho.pieces.sum.generators().size() == 6);
  CHECK(validate_morphism(rho.a).ok());
  CHECK(validate_morphism(rho.b).ok());
  const Coequalizer co = coequalizer(rho.a, rho.b);
  const Dim1Quotient d = solve_dim1(co.quotient);
  CHECK(d.vertex_classes.size() == 2);
  CHECK(d.edge_classes.size() == 2);
  CHECK(d.components == 1);
  CHECK(d.loop_rank == 1);
  CHECK(d.unresolved == 0);
  for (const auto& g : rho.overlaps.sum.generators()) {
    const Cell x = Cell::gen(g.name, g.dim);
    CHECK(equal_modulo(co.quotient, co.projection(rho.a(x)), co.projection(rho.b(x))) ==
          EqVerdict::Equal);
  }

  add_diagonal_overlaps(cover);
  const RhoDiagram full = build_rho_diagram(cover);
  CHECK(full.pairs == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(solve_dim1(coequalizer(full.a, full.b).quotient).loop_rank == 1);

  const FactorizationCheck u = check_universal_dim1(rho.a, rho.b, {2, 2});
  CHECK(u.candidates == 64);
  CHECK(u.equalizing == 16);
  CHECK(u.ok());
}

TEST_CASE("covers with one piece or empty overlaps") {
  CoverDiagram single;
  single.pieces = {arc("U0", "a", true)};
  add_diagonal_overlaps(single);
  const RhoDiagram r = build_rho_diagram(single);
  CHECK(r.pairs.size() == 1);
  for (const auto& [name, image] : r.a.images) CHECK(r.b.images.at(name) == image);

  CoverDiagram apart;
  apart.pieces = {arc("U0", "a", true), arc("U1", "b", true)};
  const RhoDiagram disjoint = build_rho_diagram(apart);
  CHECK(disjoint.overlaps.sum.generators().empty());
  const Coequalizer co = coequalizer(disjoint.a, disjoint.b);
  CHECK(co.quotient.relations.empty());
  CHECK(class_counts_by_dim(co.quotient) == disjoint.pieces.sum.counts_by_dim());
  CHECK(solve_dim1(co.quotient).components == 2);

  CoverDiagram broken = circle_cover();
  broken.a.at({0, 1}).images["x"] = e("a");
  CHECK_THROWS_AS(build_rho_diagram(broken), IllFormed);
  CoverDiagram outside = circle_cover();
  outside.overlaps.emplace(std::pair{0, 5}, points("e", {}));
  CHECK_THROWS_AS(build_rho_diagram(outside), IndexOutOfRange);
}

TEST_CASE("the 2-globe from its cell and its boundary") {
  // U0: the closed 2-cell alpha: f => g; U1: the boundary circle.
  Presentation disk = points("U0", {"x", "y"});
  disk.add(edge("f", "x", "y"));
  disk.add(edge("g", "x", "y"));
  const Cell ex = Cell::apply(OperatorWord({Operator::degen(1)}, 0), v("x"));
  const Cell ey = Cell::apply(OperatorWord({Operator::degen(1)}, 0), v("y"));
  disk.add({"alpha", 2,
            {{{1, Sign::Minus}, e("f")},
             {{1, Sign::Plus}, e("g")},
             {{2, Sign::Minus}, ex},
             {{2, Sign::Plus}, ey}}});
  REQUIRE(validate_presentation(disk).empty());
  Presentation circle = points("U1", {"x", "y"});
  circle.add(edge("f", "x", "y"));
  circle.add(edge("g", "x", "y"));

  CoverDiagram cover;
  cover.pieces = {disk, circle};
  PresMorphism into_disk{circle, disk, {}}, into_circle = identity_morphism(circle);
  for (const auto& g : circle.generators()) {
    into_disk.images.emplace(g.name, Cell::gen(g.name, g.dim));
  }
  cover.overlaps.emplace(std::pair{0, 1}, circle);
  cover.a.emplace(std::pair{0, 1}, into_disk);
  cover.b.emplace(std::pair{0, 1}, into_circle);
  const RhoDiagram rho = build_rho_diagram(cover);
  const Coequalizer co = coequalizer(rho.a, rho.b);
  CHECK(class_counts_by_dim(co.quotient) == globe_crossed_complex(2).counts_by_dim());
  CHECK(solve_dim1(co.quotient).loop_rank == 1);
}

TEST_CASE("universal property on small presentations") {
  const Presentation target = arc("T", "a", true);
  const Presentation point = points("pt", {"o"});
  const PresMorphism to_p = map_points(point, target, {{"o", "p"}});
  const PresMorphism to_q = map_points(point, target, {{"o", "q"}});
  for (const FiniteGroupoid g : {FiniteGroupoid{1, 3}, FiniteGroupoid{2, 2}, FiniteGroupoid{3, 1}}) {
    CAPTURE(g.objects);
    CAPTURE(g.modulus);
    const FactorizationCheck same = check_universal_dim1(to_p, to_p, g);
    CHECK(same.ok());
    CHECK(same.equalizing == same.candidates);
    const FactorizationCheck glued = check_universal_dim1(to_p, to_q, g);
    CHECK(glued.ok());
    CHECK(glued.equalizing == g.objects * g.modulus);
  }

  Presentation pair = points("T2", {"x", "y"});
  pair.add(edge("f", "x", "y"));
  const Cell hx = Cell::apply(OperatorWord({Operator::degen(1)}, 0), v("x"));
  PresMorphism first{points("S1", {"u"}), pair, {{"u", v("x")}}};
  PresMorphism second{points("S1", {"u"}), pair, {{"u", v("y")}}};
  CHECK(check_universal_dim1(first, second, {2, 3}).ok());

  Presentation one_edge("E");
  one_edge.add_generator("o", 0);
  one_edge.add(edge("l", "o", "o"));
  PresMorphism to_f{one_edge, pair, {{"o", v("x")}, {"l", Cell::comp(1, e("f"), Cell::inv(1, e("f")))}}};
  PresMorphism to_unit{one_edge, pair, {{"o", v("x")}, {"l", hx}}};
  const FactorizationCheck trivial = check_universal_dim1(to_f, to_unit, {2, 3});
  CHECK(trivial.ok());
}
