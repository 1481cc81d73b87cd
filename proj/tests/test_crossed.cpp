#include <algorithm>
#include <random>

#include "cubical/crossed.hpp"
#include "cubical/errors.hpp"
#include "doctest.h"

using namespace cubical;

namespace {

CrossedWord vertex_word() {
  return CrossedWord{0, {}};
}

CrossedTerm gen_term(int sign, const std::string& name) { return CrossedTerm{sign, name, {}, {}}; }

}  // namespace

TEST_CASE("boundary words for squares and 3-cubes") {
  CHECK(to_string(hal_boundary(2)) == "- x1+ - x2- + x1- + x2+");
  CHECK(to_string(hal_boundary(3)) ==
        "- x3+ - (x2-)^{u2} - x1+ + (x3-)^{u3} + x2+ + (x1-)^{u1}");
  CHECK(hal_boundary(3).dim == 2);
  CHECK_THROWS_AS(hal_boundary(1), DimensionTooLow);
  CHECK_THROWS_AS(action_word("x", 3, 4), IndexOutOfRange);

  // u_i is the composite of the + faces other than i, down to dimension 1.
  const ActionWord u2 = action_word("x", 3, 2);
  CHECK(u2.word.domain_dim() == 3);
  CHECK(u2.word.size() == 2);
}

TEST_CASE("boundary words from dimension 4 on are sorted sums") {
  const CrossedWord w = hal_boundary(4);
  CHECK(w.abelian());
  CHECK(to_string(w) ==
        "- x1+ + (x1-)^{u1} + x2+ - (x2-)^{u2} - x3+ + (x3-)^{u3} + x4+ - (x4-)^{u4}");
  CHECK(normalize(w) == w);
  for (int n = 4; n <= 7; ++n) CHECK(hal_boundary(n).terms.size() == 2u * n);
}

TEST_CASE("globular reduction leaves the first faces") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const CrossedWord r = reduce_globular(hal_boundary(n), globular_flags(n));
    CHECK(to_string(r) == "- x1+ + x1-");
    CHECK(r.dim == n - 1);
  }
  for (int n = 2; n <= 6; ++n) {
    CHECK(reduce_globular(hal_boundary(n), {}) == hal_boundary(n));
  }
}

TEST_CASE("actions survive unless the edge is degenerate") {
  // Only x2+ degenerate on a 3-cube: u1 passes through it, u3 does not.
  std::map<FaceKey, bool> flags{{{2, Sign::Plus}, true}};
  const CrossedWord r = reduce_globular(hal_boundary(3), flags);
  CHECK(to_string(r) == "- x3+ - (x2-)^{u2} - x1+ + (x3-)^{u3} + x1-");
}

TEST_CASE("abelian cancellation is order independent") {
  std::mt19937_64 rng(5);
  const CrossedWord base = hal_boundary(5);
  for (int round = 0; round < 200; ++round) {
    CrossedWord w = concat(base, negate(hal_boundary(5)));
    w = concat(w, base);
    std::shuffle(w.terms.begin(), w.terms.end(), rng);
    CHECK(normalize(w) == base);
    CHECK(normalize(concat(w, negate(base))).empty());
  }
}

TEST_CASE("nonabelian words cancel only adjacent inverses") {
  CrossedWord w{2, {gen_term(1, "a"), gen_term(1, "b"), gen_term(-1, "a")}};
  CHECK(normalize(w).terms.size() == 3);
  CrossedWord v{2, {gen_term(1, "a"), gen_term(1, "b"), gen_term(-1, "b"), gen_term(-1, "a")}};
  CHECK(normalize(v).empty());
  CHECK(to_string(normalize(v)) == "0");
  CHECK(to_string(negate(w)) == "+ a - b - a");
  CHECK_THROWS_AS(concat(w, vertex_word()), DimensionMismatch);
}

TEST_CASE("the crossed complex of the globe") {
  for (int n = 1; n <= 6; ++n) {
    const auto p = globe_crossed_complex(n);
    CHECK(p.generators.size() == static_cast<std::size_t>(2 * n + 1));
  }
  CHECK(globe_crossed_complex(2).counts_by_dim() == std::vector<int>{2, 2, 1});
  CHECK_THROWS_AS(globe_crossed_complex(0), DimensionTooLow);

  for (int n = 3; n <= 6; ++n) {
    const auto p = globe_crossed_complex(n);
    for (const auto& g : p.generators) {
      if (g.dim >= 3) {
        CAPTURE(g.name);
        CHECK(boundary_of_boundary(p, g.name).empty());
      }
    }
  }
  const auto p = globe_crossed_complex(3);
  CHECK(to_string(p.find("e3")->boundary) == "- e2+ + e2-");
  CHECK_THROWS_AS(boundary_of_boundary(p, "e2+"), DimensionTooLow);
  CHECK_THROWS_AS(boundary_of_boundary(p, "nope"), UnknownGenerator);
  CHECK_THROWS_AS(apply_boundary(p, p.find("e2+")->boundary), IllFormed);
  CHECK_THROWS_AS(apply_boundary(p, hal_boundary(3)), IllFormed);
}
