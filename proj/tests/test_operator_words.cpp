#include <random>

#include "cubical/errors.hpp"
#include "cubical/geometry.hpp"
#include "cubical/operator_words.hpp"
#include "doctest.h"

using namespace cubical;
using O = Operator;

namespace {

OperatorWord word(std::vector<Operator> ops, int dim) { return OperatorWord(std::move(ops), dim); }

}  // namespace

TEST_CASE("composition bookkeeping") {
  const auto w = compose_words(word({O::face(1, Sign::Plus)}, 2), word({O::degen(1)}, 1));
  CHECK(w.size() == 2);
  CHECK(w.domain_dim() == 1);
  CHECK(w.codomain_dim() == 1);

  const auto v = word({O::conn(1, Sign::Plus)}, 1);
  CHECK(compose_words(v, OperatorWord::identity(1)) == v);

  const auto u = compose_words(word({O::conn(1, Sign::Plus)}, 1), word({O::face(2, Sign::Minus)}, 2));
  CHECK(u.domain_dim() == 2);
  CHECK(u.codomain_dim() == 2);

  CHECK_THROWS_AS(compose_words(word({O::face(1, Sign::Plus)}, 3), v), DimensionMismatch);
  CHECK_THROWS_AS(word({O::face(3, Sign::Plus)}, 2), IndexOutOfRange);
  CHECK_THROWS_AS(word({O::conn(2, Sign::Plus)}, 1), IndexOutOfRange);
}

TEST_CASE("normal forms of the basic relations") {
  CHECK(normalize_word(word({O::face(1, Sign::Plus), O::degen(1)}, 0)).empty());
  CHECK(normalize_word(word({O::face(1, Sign::Plus), O::conn(1, Sign::Plus)}, 1)).empty());
  CHECK(normalize_word(word({O::face(1, Sign::Plus), O::face(2, Sign::Minus)}, 2)) ==
        word({O::face(1, Sign::Minus), O::face(1, Sign::Plus)}, 2));
  CHECK(normalize_word(word({O::face(2, Sign::Minus), O::conn(1, Sign::Plus)}, 1)) ==
        word({O::degen(1), O::face(1, Sign::Minus)}, 1));
}

TEST_CASE("word equality") {
  CHECK(words_equal(word({O::conn(1, Sign::Plus), O::conn(1, Sign::Plus)}, 1),
                    word({O::conn(2, Sign::Plus), O::conn(1, Sign::Plus)}, 1)));
  CHECK(words_equal(word({O::degen(1), O::degen(1)}, 0), word({O::degen(2), O::degen(1)}, 0)));
  CHECK_FALSE(words_equal(word({O::face(1, Sign::Plus)}, 1), word({O::face(1, Sign::Minus)}, 1)));
  CHECK_THROWS_AS(words_equal(OperatorWord::identity(1), OperatorWord::identity(2)),
                  DimensionMismatch);
}

TEST_CASE("rule tags are recorded") {
  WordTrace trace;
  normalize_word(word({O::face(2, Sign::Minus), O::conn(1, Sign::Plus)}, 1), &trace);
  CHECK(trace.counts["face-conn-degen"] == 1);
  CHECK(trace.steps == 1);
}

TEST_CASE("normal forms have raisers left of faces and are stable") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    const auto w = random_word(6, 8, rng);
    WordTrace trace;
    const auto nf = normalize_word(w, &trace);
    const long l = static_cast<long>(w.size());
    CHECK(trace.steps <= 10 * l * l);
    CHECK(is_normal(nf));
    CHECK(normalize_word(nf) == nf);
    CHECK(nf.codomain_dim() == w.codomain_dim());
    bool seen_face = false;
    for (const auto& op : nf.ops()) {
      if (op.is_face()) seen_face = true;
      else CHECK_FALSE(seen_face);
    }
  }
}

TEST_CASE("random strategies reach the same normal form") {
  std::mt19937_64 rng(11);
  std::mt19937_64 strategy(12);
  for (int n = 0; n < 2000; ++n) {
    const auto w = random_word(6, 8, rng);
    const auto nf = normalize_word(w);
    REQUIRE(normalize_word_random(w, strategy) == nf);
  }
}

TEST_CASE("each rewrite step is sound on sampled cubes") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 300; ++n) {
    const auto w = random_word(4, 6, rng);
    const auto nf = normalize_word(w);
    const auto cube = random_smooth_cube(w.domain_dim(), 2, rng);
    const double dev = max_deviation(apply_word(w, cube), apply_word(nf, cube), 5);
    CHECK(dev <= 1e-9);
  }
}

TEST_CASE("distinct normal forms act differently") {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int n = 0; n < 600; ++n) {
    const auto w1 = random_word(3, 5, rng);
    const auto w2 = random_word(3, 5, rng);
    if (w1.domain_dim() != w2.domain_dim() || w1.codomain_dim() != w2.codomain_dim()) continue;
    const auto cube = random_smooth_cube(w1.domain_dim(), 3, rng);
    const double dev = max_deviation(apply_word(w1, cube), apply_word(w2, cube), 5);
    CHECK((normalize_word(w1) == normalize_word(w2)) == (dev <= 1e-9));
    ++compared;
  }
  CHECK(compared > 20);
}
