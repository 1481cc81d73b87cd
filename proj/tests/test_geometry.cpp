#include <cmath>
#include <random>

#include "cubical/errors.hpp"
#include "cubical/fixtures.hpp"
#include "cubical/geometry.hpp"
#include "cubical/suites.hpp"
#include "doctest.h"

using namespace cubical;

namespace {

Point pt(std::initializer_list<double> xs) { return Point(xs); }

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("phi on known points") {
  CHECK(dist(phi(2, pt({0.6, 0.8})), pt({0.36, 0.8})) < 1e-15);
  for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    CHECK(dist(phi(2, pt({t, 1.0})), pt({0.0, 1.0})) == 0.0);
    CHECK(dist(phi(2, pt({t, -1.0})), pt({0.0, -1.0})) == 0.0);
  }
  CHECK(phi(1, pt({0.25})) == pt({0.25}));
  CHECK(euclidean_norm(phi(3, pt({1.0, 0.2, -0.4}))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(phi(2, pt({1.5, 0.0})), DomainViolation);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < 200; ++k) {
      Point x(n);
      for (double& v : x) v = u(rng);
      CHECK(dist(phi_inverse(n, phi(n, x)), x) < 1e-9);
    }
  }
}

TEST_CASE("globe structure maps") {
  const GlobeMap d = globe_face(3, 1, Sign::Plus);
  CHECK(d.from == 1);
  CHECK(d.to == 3);
  const Point y = d(pt({0.6}));
  CHECK(dist(y, pt({0.0, 0.8, 0.6})) < 1e-15);
  CHECK(globe_degen(3, 1)(y) == pt({0.6}));
  CHECK(globe_face(2, 0, Sign::Minus)(Point{}) == pt({0.0, -1.0}));

  std::mt19937_64 rng(9);
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k < 100; ++k) CHECK(euclidean_norm(sample_ball(n, rng)) <= 1.0);
  }
}

TEST_CASE("singular cube operators") {
  const SingularCube a = library_cube("poly", 2, 2, 3);
  CHECK(a.dim == 2);
  CHECK(a.target_dim == 2);
  const SingularCube f = face_cube(a, 1, Sign::Minus);
  CHECK(f.dim == 1);
  CHECK(dist(f(pt({0.3})), a(pt({-1.0, 0.3}))) == 0.0);
  const SingularCube e = degen_cube(a, 2);
  CHECK(dist(e(pt({0.1, 0.9, -0.2})), a(pt({0.1, -0.2}))) == 0.0);
  const SingularCube g = gamma(1, Sign::Plus, a);
  CHECK(g.dim == 3);
  CHECK(dist(g(pt({0.5, -0.2, 0.4})), a(pt({-0.2, 0.4}))) == 0.0);
  CHECK(dist(gamma(1, Sign::Minus, a)(pt({0.5, -0.2, 0.4})), a(pt({0.5, 0.4}))) == 0.0);
  CHECK(max_deviation(face_cube(degen_cube(a, 1), 1, Sign::Plus), a, 8) == 0.0);

  // Composition reparametrises each half over [-1, 0] and [0, 1].
  const SubdividedCube grid(1, 2, library_cube("affine", 1, 2, 1));
  std::mt19937_64 split_rng(1);
  const Cell whole = grid.region({0}, {2}, split_rng);
  const SingularCube c = oracle_eval(grid.presentation(), whole, grid.env());
  CHECK(max_deviation(c, grid.map(), 9) < 1e-12);
  CHECK_THROWS_AS(compose_cubes(1, a, library_cube("trig", 2, 2, 4)), FaceMismatch);
  for (const std::string& name : cube_library_names()) CHECK(library_cube(name, 3).dim == 3);
}

TEST_CASE("phi image of a smooth cube is globular") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 3; ++n) {
    const SingularCube a = random_smooth_cube(n, 2, rng);
    CHECK(check_phi_image_globular(n, a.eval).passed);
  }
}

TEST_CASE("suite reports are deterministic") {
  SuiteOptions o;
  o.seed = 7;
  const std::string first = format_text(run_suite("words", o));
  CHECK(first == format_text(run_suite("words", o)));
  CHECK(first.find("summary: 3 checks, 3 passed, 0 failed") != std::string::npos);
  CHECK_THROWS_AS(run_suite("nonsense", o), IllFormed);
}
