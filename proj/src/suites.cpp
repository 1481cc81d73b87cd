#include "cubical/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "cubical/cells.hpp"
#include "cubical/colimits.hpp"
#include "cubical/crossed.hpp"
#include "cubical/errors.hpp"
#include "cubical/fixtures.hpp"
#include "cubical/folding.hpp"
#include "cubical/geometry.hpp"
#include "cubical/operator_words.hpp"
#include "cubical/tensor.hpp"

namespace cubical {

namespace {

constexpr std::size_t kMaxWitnesses = 5;
constexpr double kExactTol = 1e-12;

std::mt19937_64 rng_for(const SuiteOptions& o, const std::string& id) {
  std::vector<std::uint32_t> key{static_cast<std::uint32_t>(o.seed),
                                 static_cast<std::uint32_t>(o.seed >> 32)};
  // FNV-1a keeps the stream independent of the standard library's hash.
  std::uint32_t h = 2166136261u;
  for (unsigned char c : id) h = (h ^ c) * 16777619u;
  key.push_back(h);
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

int resolution(const SuiteOptions& o, int dim) {
  if (o.grid > 0) return o.grid;
  return dim <= 4 ? 8 : 4;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Accumulates cases, failures, the worst error and a few witnesses, and
// times the check from construction to finish().
class Recorder {
 public:
  Recorder(std::string id, std::string summary)
      : start_(std::chrono::steady_clock::now()) {
    r_.id = std::move(id);
    r_.summary = std::move(summary);
  }

  void pass() { ++r_.cases; }

  void fail(const std::string& witness) {
    ++r_.cases;
    ++r_.failures;
    if (r_.witnesses.size() < kMaxWitnesses) r_.witnesses.push_back(witness);
  }

  void expect(bool ok, const std::function<std::string()>& witness) {
    ok ? pass() : fail(witness());
  }

  // Records an error measurement against the tolerance.
  void measure(double err, double tol, const std::function<std::string()>& witness) {
    r_.max_error = std::max(r_.max_error.value_or(0.0), err);
    expect(err <= tol, [&] { return witness() + " (error " + fmt(err) + ")"; });
  }

  void tolerance(double t) { r_.tolerance = t; }
  void time_limit(double t) { r_.time_limit = t; }
  void append_summary(const std::string& s) { r_.summary += s; }

  CheckResult finish() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    r_.passed = r_.failures == 0 && r_.cases > 0;
    if (r_.time_limit && r_.seconds > *r_.time_limit) {
      r_.passed = false;
      r_.witnesses.push_back("time limit of " + fmt(*r_.time_limit) + " s exceeded");
    }
    return r_;
  }

 private:
  CheckResult r_;
  std::chrono::steady_clock::time_point start_;
};

// Runs body and turns an escaping library error into a failed case.
void guarded(Recorder& rec, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    rec.fail(what + ": " + e.what());
  }
}

Presentation free_on(const std::string& name, int dim) {
  Presentation p(name);
  p.add_generator(name, dim);
  return p;
}

Cell raise(const Operator& op, const Cell& x) {
  return Cell::apply(OperatorWord({op}, x.dim()), x);
}

std::vector<Operator> operators_on(int dim) {
  std::vector<Operator> out;
  for (int i = 1; i <= dim + 1; ++i) {
    for (const Operator& op : {Operator::face(i, Sign::Minus), Operator::face(i, Sign::Plus),
                               Operator::degen(i), Operator::conn(i, Sign::Minus),
                               Operator::conn(i, Sign::Plus)}) {
      if (op.valid_on(dim)) out.push_back(op);
    }
  }
  return out;
}

double point_distance(const Point& a, const Point& b) {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(sq);
}

std::string point_string(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k) s += ", ";
    s += fmt(x[k]);
  }
  return s + ")";
}

}  // namespace

// --- words -------------------------------------------------------------------

CheckResult check_word_confluence(const SuiteOptions& o, int words, int max_dim, int max_length,
                                  double time_limit) {
  const std::string id = "words.confluence";
  Recorder rec(id, std::to_string(words) + " random words, dimension <= " +
                       std::to_string(max_dim) + ", length <= " + std::to_string(max_length) +
                       "; leftmost strategy against two random-redex strategies");
  rec.time_limit(time_limit);
  std::mt19937_64 gen = rng_for(o, id);
  std::mt19937_64 first = rng_for(o, id + ".first");
  std::mt19937_64 second = rng_for(o, id + ".second");
  long steps = 0;
  for (int k = 0; k < words; ++k) {
    const OperatorWord w = random_word(max_dim, max_length, gen);
    WordTrace trace;
    const OperatorWord nf = normalize_word(w, &trace);
    steps += trace.steps;
    const OperatorWord a = normalize_word_random(w, first);
    const OperatorWord b = normalize_word_random(w, second);
    rec.expect(a == nf && b == nf && is_normal(nf), [&] {
      return to_string(w) + " -> " + to_string(nf) + " / " + to_string(a) + " / " + to_string(b);
    });
  }
  rec.append_summary("; " + std::to_string(steps) + " leftmost rewrite steps");
  return rec.finish();
}

CheckResult check_word_relations_oracle(const SuiteOptions& o, int max_ambient) {
  const std::string id = "words.relations_oracle";
  Recorder rec(id, "every rule instance with ambient dimension <= " + std::to_string(max_ambient) +
                       " applied to the library cubes");
  rec.tolerance(o.tol);
  std::map<std::string, long> per_rule;
  for (int d = 0; d <= max_ambient; ++d) {
    std::vector<SingularCube> cubes;
    for (const auto& name : cube_library_names()) {
      cubes.push_back(library_cube(name, d, 3, static_cast<unsigned>(o.seed)));
    }
    for (const Operator& right : operators_on(d)) {
      const int d1 = d + right.delta();
      for (const Operator& left : operators_on(d1)) {
        const int d2 = d1 + left.delta();
        const int ambient = std::max({d, d1, d2});
        if (ambient > max_ambient) continue;
        const auto rw = rewrite_pair(left, right);
        if (!rw) continue;
        const OperatorWord lhs({left, right}, d);
        const OperatorWord rhs(rw->replacement, d);
        ++per_rule[rule_tag(rw->rule)];
        const int m = resolution(o, ambient);
        for (const SingularCube& c : cubes) {
          const double dev = max_deviation(apply_word(lhs, c), apply_word(rhs, c), m);
          rec.measure(dev, o.tol, [&] {
            return to_string(lhs) + " = " + to_string(rhs) + " on " + c.label;
          });
        }
      }
    }
  }
  std::string tags;
  for (const auto& [tag, n] : per_rule) tags += " " + tag + "=" + std::to_string(n);
  rec.append_summary("; instances:" + tags);
  return rec.finish();
}

CheckResult check_cell_oracle(const SuiteOptions& o) {
  const std::string id = "words.cell_oracle";
  Recorder rec(id, "strict normal forms of random composite terms against the cube oracle");
  rec.tolerance(o.tol);
  std::mt19937_64 rng = rng_for(o, id);
  for (int dim = 1; dim <= 3; ++dim) {
    const SubdividedCube grid(dim, dim == 3 ? 2 : 3,
                              library_cube("trig", dim, 2, static_cast<unsigned>(o.seed) + dim));
    const Presentation& p = grid.presentation();
    for (int n = 0; n < 40; ++n) {
      const Cell t = random_grid_term(grid, 4, rng, true);
      guarded(rec, to_string(t), [&] {
        CellTrace trace;
        const Cell r = normalize_cell(p, t, &trace, NormalizeOptions{false, true});
        const int m = std::min(resolution(o, t.dim()), 6);
        const GridSpec spec{m, o.tol};
        const double dev = max_deviation(oracle_eval(p, t, grid.env(), spec),
                                         oracle_eval(p, r, grid.env(), spec), m);
        rec.expect(trace.strict_only(), [&] { return "non-strict step in " + to_string(t); });
        rec.measure(dev, o.tol, [&] { return to_string(t) + " -> " + to_string(r); });
      });
    }
  }
  return rec.finish();
}

// --- folding -----------------------------------------------------------------

CheckResult check_foldtoglob(const SuiteOptions&, int min_dim, int max_dim, double time_limit) {
  const std::string id = "folding.foldtoglob";
  Recorder rec(id, "Phi_n of a free n-cell, n = " + std::to_string(min_dim) + ".." +
                       std::to_string(max_dim) +
                       ": globular, every face verdict Yes, face traces use only word rules "
                       "and faces of composites");
  rec.time_limit(time_limit);
  std::vector<std::string> allowed = word_rule_tags();
  allowed.push_back("face-comp");
  for (int n = min_dim; n <= max_dim; ++n) {
    const Presentation p = free_on("g", n);
    guarded(rec, "n=" + std::to_string(n), [&] {
      Normalizer norm(p);
      const FoldReport r = fold_phi(norm, n, p.gen("g"));
      rec.expect(r.globular == Tri::Yes, [&] { return "n=" + std::to_string(n) + " not globular"; });
      for (const auto& [key, v] : r.per_face_globularity) {
        rec.expect(v == Tri::Yes, [&, key = key, v = v] {
          return "n=" + std::to_string(n) + " face d" + std::to_string(key.first) +
                 sign_char(key.second) + " " + to_string(v);
        });
      }
      for (int i = 1; i <= n; ++i) {
        for (Sign s : kSigns) {
          CellTrace trace;
          Normalizer fresh(p, {}, &trace);
          fresh.face(r.output, i, s);
          rec.expect(trace.only(allowed), [&] {
            std::string tags;
            for (const auto& [tag, c] : trace.counts) tags += " " + tag;
            return "n=" + std::to_string(n) + " trace of d" + std::to_string(i) + sign_char(s) +
                   ":" + tags;
          });
        }
      }
    });
  }
  return rec.finish();
}

CheckResult check_psi_degeneracies(const SuiteOptions&, int max_dim) {
  const std::string id = "folding.psi_degeneracies";
  Recorder rec(id, "connection factors of psi_i on globular terms lie in Im e_{i+1} e_i");
  for (int n = 2; n <= max_dim; ++n) {
    const Presentation p = free_on("g", n);
    Normalizer norm(p);
    std::vector<Cell> terms{phi_fold(n, p.gen("g"))};
    if (n <= 3) {
      const Cell t = terms.front();
      terms.push_back(
          Cell::comp(1, t, Cell::apply(OperatorWord({Operator::degen(1), Operator::face(1, Sign::Plus)}, n), t)));
      terms.push_back(Cell::comp(1, t, Cell::inv(1, t)));
    }
    for (const Cell& t : terms) {
      guarded(rec, to_string(t), [&] {
        rec.expect(is_globular(norm, t) == Tri::Yes, [&] { return "not globular: " + to_string(t); });
        for (int i = 1; i < n; ++i) {
          const auto [lower, upper] = psi_connection_factors(i, t);
          for (const Cell& f : {lower, upper}) {
            const Tri v = in_image_double_degen(norm, f, i);
            rec.expect(v == Tri::Yes, [&] {
              return "n=" + std::to_string(n) + " i=" + std::to_string(i) + " " + to_string(v);
            });
          }
        }
      });
    }
  }
  return rec.finish();
}

// --- hal -----------------------------------------------------------------------

CheckResult check_hal_displays(const SuiteOptions&) {
  const std::string id = "hal.displays";
  Recorder rec(id, "boundary words of the square and the 3-cube, symbol for symbol");
  const std::pair<int, const char*> displays[] = {
      {2, "- x1+ - x2- + x1- + x2+"},
      {3, "- x3+ - (x2-)^{u2} - x1+ + (x3-)^{u3} + x2+ + (x1-)^{u1}"},
  };
  for (const auto& [n, expected] : displays) {
    const std::string got = to_string(hal_boundary(n));
    rec.expect(got == expected, [&] { return "n=" + std::to_string(n) + ": " + got; });
  }
  return rec.finish();
}

CheckResult check_hal_reduction(const SuiteOptions&, int min_dim, int max_dim) {
  const std::string id = "hal.reduction";
  Recorder rec(id, "globular reduction of the boundary word is - x1+ + x1-, n = " +
                       std::to_string(min_dim) + ".." + std::to_string(max_dim));
  for (int n = min_dim; n <= max_dim; ++n) {
    guarded(rec, "n=" + std::to_string(n), [&] {
      const CrossedWord r = reduce_globular(hal_boundary(n), globular_flags(n));
      rec.expect(to_string(r) == "- x1+ + x1-" && r.dim == n - 1, [&] {
        return "n=" + std::to_string(n) + ": " + to_string(r);
      });
    });
  }
  return rec.finish();
}

CheckResult check_globe_delta_delta(const SuiteOptions&, int min_dim, int max_dim) {
  const std::string id = "hal.globe_delta_delta";
  Recorder rec(id, "boundary of boundary vanishes in the globe crossed complex, n = " +
                       std::to_string(min_dim) + ".." + std::to_string(max_dim));
  for (int n = min_dim; n <= max_dim; ++n) {
    const CrossedPresentation g = globe_crossed_complex(n);
    for (const auto& gen : g.generators) {
      if (gen.dim < 3) continue;
      guarded(rec, gen.name, [&] {
        const CrossedWord dd = boundary_of_boundary(g, gen.name);
        rec.expect(dd.terms.empty(), [&] {
          return "n=" + std::to_string(n) + " " + gen.name + ": " + to_string(dd);
        });
      });
    }
  }
  return rec.finish();
}

// --- geometry ------------------------------------------------------------------

CheckResult check_phi_properties(const SuiteOptions& o, int max_dim, int samples,
                                 double time_limit) {
  const std::string id = "geometry.phi_properties";
  Recorder rec(id, "phi_n, n <= " + std::to_string(max_dim) + ", " + std::to_string(samples) +
                       " samples per property: (i) base case and recursion exact, (ii) sphere "
                       "iff boundary within 1e-09, (iii) leading zeros within 1e-12");
  rec.time_limit(time_limit);
  std::mt19937_64 rng = rng_for(o, id);
  std::uniform_real_distribution<double> open(-1.0, 1.0);
  const double sphere_tol = 1e-9;
  double worst_sphere = 0.0, worst_zero = 0.0;

  for (int n = 1; n <= max_dim; ++n) {
    std::uniform_int_distribution<int> slot(0, n - 1);
    for (int k = 0; k < samples; ++k) {
      Point x(n);
      for (double& v : x) v = open(rng);
      const Point y = phi(n, x);

      // (i): phi_1 is the identity and phi_n(t, x') ends with phi_{n-1}(x').
      if (n == 1) {
        rec.expect(y[0] == x[0], [&] { return "phi_1" + point_string(x); });
      } else {
        const Point tail = phi(n - 1, std::span<const double>(x).subspan(1));
        double sq = 0.0;
        for (double v : tail) sq += v * v;
        const double head = x[0] * std::sqrt(std::max(0.0, 1.0 - sq));
        const bool same_tail = std::equal(tail.begin(), tail.end(), y.begin() + 1);
        rec.expect(same_tail && std::abs(head - y[0]) <= kExactTol,
                   [&] { return "recursion at " + point_string(x); });
      }

      // (ii), converse direction: interior points stay inside the open ball.
      double prod = 1.0;
      for (double v : x) prod *= (1.0 - v) * (1.0 + v);
      const double r2 = [&] {
        double s = 0.0;
        for (double v : y) s += v * v;
        return s;
      }();
      const double gap_err = std::abs((1.0 - r2) - prod);
      worst_sphere = std::max(worst_sphere, gap_err);
      rec.expect(r2 < 1.0 && gap_err <= sphere_tol,
                 [&] { return "interior point " + point_string(x) + " reaches the sphere"; });

      // (ii) forward and (iii): a coordinate at +-1.
      Point b = x;
      const int i = slot(rng);
      b[i] = (rng() & 1) ? 1.0 : -1.0;
      const Point z = phi(n, b);
      const double norm_err = std::abs(euclidean_norm(z) - 1.0);
      worst_sphere = std::max(worst_sphere, norm_err);
      rec.expect(norm_err <= sphere_tol, [&] { return "boundary point " + point_string(b); });
      double lead = 0.0;
      for (int j = 0; j < i; ++j) lead = std::max(lead, std::abs(z[j]));
      worst_zero = std::max(worst_zero, lead);
      rec.expect(lead <= kExactTol, [&] { return "leading coordinates at " + point_string(b); });
    }
  }
  rec.append_summary("; worst (ii) error " + fmt(worst_sphere) + ", worst (iii) coordinate " +
                     fmt(worst_zero));
  return rec.finish();
}

CheckResult check_phi_fibres(const SuiteOptions& o, int max_dim, int samples) {
  const std::string id = "geometry.phi_fibres";
  Recorder rec(id, "phi_n is injective on the open cube: phi_inverse recovers the point");
  rec.tolerance(o.tol);
  std::mt19937_64 rng = rng_for(o, id);
  std::uniform_real_distribution<double> inner(-0.99, 0.99);
  for (int n = 1; n <= max_dim; ++n) {
    for (int k = 0; k < samples; ++k) {
      Point x(n);
      for (double& v : x) v = inner(rng);
      const Point back = phi_inverse(n, phi(n, x));
      rec.measure(point_distance(back, x), o.tol, [&] { return point_string(x); });
    }
  }
  return rec.finish();
}

CheckResult check_phi_image(const SuiteOptions& o, int max_dim, int targets) {
  const std::string id = "geometry.phi_image_globular";
  Recorder rec(id, "a o phi_n has faces (i+1, +-) independent of the first i coordinates, "
                   "random smooth a, n <= " + std::to_string(max_dim));
  rec.tolerance(o.tol);
  std::mt19937_64 rng = rng_for(o, id);
  for (int n = 1; n <= max_dim; ++n) {
    for (int k = 0; k < targets; ++k) {
      const SingularCube a = random_smooth_cube(n, 3, rng);
      const PhiGlobularReport r = check_phi_image_globular(n, a.eval, GridSpec{resolution(o, n), o.tol});
      rec.measure(r.max_dependence, o.tol, [&] {
        return "n=" + std::to_string(n) + " target " + std::to_string(k);
      });
    }
  }
  return rec.finish();
}

CheckResult check_globe_maps(const SuiteOptions& o, int max_dim, int samples) {
  const std::string id = "geometry.globe_maps";
  Recorder rec(id, "globe faces land on the sphere inside their closed cell and s_i d_i^b = id, "
                   "n <= " + std::to_string(max_dim) + ", " + std::to_string(samples) +
                   " samples per (n, i)");
  rec.tolerance(kExactTol);
  std::mt19937_64 rng = rng_for(o, id);
  for (int n = 1; n <= max_dim; ++n) {
    for (int i = 0; i < n; ++i) {
      const GlobeMap s = globe_degen(n, i);
      for (Sign b : kSigns) {
        const GlobeMap d = globe_face(n, i, b);
        for (int k = 0; k < samples; ++k) {
          const Point x = sample_ball(i, rng);
          const Point y = d(x);
          const auto where = [&] {
            return "n=" + std::to_string(n) + " i=" + std::to_string(i) + sign_char(b) + " at " +
                   point_string(x);
          };
          rec.measure(std::abs(euclidean_norm(y) - 1.0), kExactTol, where);
          rec.measure(point_distance(s(y), x), kExactTol, where);
          bool in_cell = (b == Sign::Plus ? y[n - i - 1] >= 0.0 : y[n - i - 1] <= 0.0);
          for (int j = 0; j < n - i - 1; ++j) in_cell = in_cell && y[j] == 0.0;
          rec.expect(in_cell, where);
        }
      }
    }
  }
  return rec.finish();
}

CheckResult check_globular_site_laws(const SuiteOptions& o, int max_dim, int samples) {
  const std::string id = "geometry.globular_site_laws";
  // Law (i) composes two face maps; the inner point lies on the sphere only
  // up to rounding, and the square root of that rounding is about 1e-8.
  const double face_tol = 1e-7;
  Recorder rec(id, "the globular-set laws realised by precomposition on random maps out of "
                   "globes, n <= " + std::to_string(max_dim) + "; d d = d within " +
                   fmt(face_tol) + ", the others within " + fmt(kExactTol));
  std::mt19937_64 rng = rng_for(o, id);
  // A random smooth map out of each globe (the globe sits inside the cube).
  std::map<int, SingularCube> maps;
  for (int k = 1; k <= max_dim; ++k) maps.emplace(k, random_smooth_cube(k, 3, rng));
  // Maps out of the point G^0 are constants.
  auto on = [&](int k, const Point& x) { return k == 0 ? Point{} : maps.at(k)(x); };
  auto compare = [&](const Point& a, const Point& b, double tol, const std::string& what) {
    rec.measure(point_distance(a, b), tol, [&] { return what; });
  };

  for (int n = 1; n <= max_dim; ++n) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const std::string tag = "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                                " j=" + std::to_string(j);
        for (int k = 0; k < samples; ++k) {
          for (Sign b : kSigns) {
            // (i): d_i^a d_j^b = d_i^a for i < j.
            if (i < j) {
              for (Sign a : kSigns) {
                const Point x = sample_ball(i, rng);
                compare(on(n, globe_face(n, j, b)(globe_face(j, i, a)(x))),
                        on(n, globe_face(n, i, a)(x)), face_tol, "law (i) " + tag);
              }
            }
            // (iii): d_j^b s_i is d_j^b, the identity or s_i.
            const Point x = sample_ball(j, rng);
            const Point lhs = globe_degen(n, i)(globe_face(n, j, b)(x));
            Point rhs;
            if (j < i) {
              rhs = globe_face(i, j, b)(x);
            } else if (j == i) {
              rhs = x;
            } else {
              rhs = globe_degen(j, i)(x);
            }
            compare(on(i, lhs), on(i, rhs), kExactTol, "law (iii) " + tag);
          }
          // (ii): s_j s_i = s_i for i < j.
          if (i < j) {
            const Point x = sample_ball(n, rng);
            compare(on(i, globe_degen(j, i)(globe_degen(n, j)(x))), on(i, globe_degen(n, i)(x)),
                    kExactTol, "law (ii) " + tag);
          }
        }
      }
    }
  }
  return rec.finish();
}

namespace {

// Blocks lo[k] <= b_k < hi[k] of a subdivided cube.
struct Box {
  std::vector<int> lo, hi;
};

Box random_box(const SubdividedCube& g, std::mt19937_64& rng) {
  Box b{std::vector<int>(g.dim()), std::vector<int>(g.dim())};
  for (int k = 0; k < g.dim(); ++k) {
    std::uniform_int_distribution<int> pick(0, g.parts());
    int x = pick(rng), y = pick(rng);
    while (x == y) y = pick(rng);
    b.lo[k] = std::min(x, y);
    b.hi[k] = std::max(x, y);
  }
  return b;
}

// Splits the box in direction `axis` (0-based) at a random interior cut;
// needs a box at least two blocks wide there.
std::pair<Box, Box> split(Box b, int axis, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(b.lo[axis] + 1, b.hi[axis] - 1);
  const int cut = pick(rng);
  Box first = b, second = b;
  first.hi[axis] = cut;
  second.lo[axis] = cut;
  return {first, second};
}

// Random box at least two blocks wide along every axis in `axes`.
Box wide_box(const SubdividedCube& g, const std::vector<int>& axes, std::mt19937_64& rng) {
  for (;;) {
    Box b = random_box(g, rng);
    if (std::all_of(axes.begin(), axes.end(), [&](int k) { return b.hi[k] - b.lo[k] >= 2; })) {
      return b;
    }
  }
}

}  // namespace

CheckResult check_interchange_transport(const SuiteOptions& o, int max_dim, int rounds) {
  const std::string id = "geometry.interchange_transport";
  Recorder rec(id, "interchange, degeneracies and connections of composites, and both "
                   "transport laws through the cube oracle, composites of dimension <= " +
                   std::to_string(max_dim));
  rec.tolerance(o.tol);
  std::mt19937_64 rng = rng_for(o, id);
  using O = Operator;
  for (int n = 1; n <= max_dim; ++n) {
    const SubdividedCube g(n, n == 3 ? 3 : 4, random_smooth_cube(n, 2, rng));
    const Presentation& p = g.presentation();
    // One bracketing per round, so adjacent regions agree on their common face.
    std::vector<int> order(n);
    std::uint64_t salt = 0;
    auto region = [&](const Box& b) { return g.split_region(b.lo, b.hi, order, salt); };
    auto compare = [&](const Cell& lhs, const Cell& rhs, const std::string& law) {
      guarded(rec, law, [&] {
        const int m = resolution(o, lhs.dim());
        const GridSpec spec{m, o.tol};
        const double dev = max_deviation(oracle_eval(p, lhs, g.env(), spec),
                                         oracle_eval(p, rhs, g.env(), spec), m);
        rec.measure(dev, o.tol, [&] { return law + ": " + to_string(lhs); });
      });
    };
    for (int round = 0; round < rounds; ++round) {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      salt = rng();
      for (int j = 1; j <= n; ++j) {
        const auto [ba, bb] = split(wide_box(g, {j - 1}, rng), j - 1, rng);
        const Cell a = region(ba), b = region(bb);
        const Cell ab = Cell::comp(j, a, b);
        const std::string at = " n=" + std::to_string(n) + " j=" + std::to_string(j);

        // Degeneracies of a composite.
        for (int i = 1; i <= n + 1; ++i) {
          const Cell ea = raise(O::degen(i), a), eb = raise(O::degen(i), b);
          compare(raise(O::degen(i), ab), Cell::comp(i <= j ? j + 1 : j, ea, eb),
                  "e_i(a o_j b), i=" + std::to_string(i) + at);
        }
        // Connections of a composite in another direction.
        for (int i = 1; i <= n; ++i) {
          if (i == j) continue;
          for (Sign s : kSigns) {
            const Cell ga = raise(O::conn(i, s), a), gb = raise(O::conn(i, s), b);
            compare(raise(O::conn(i, s), ab), Cell::comp(i < j ? j + 1 : j, ga, gb),
                    "g_i(a o_j b), i=" + std::to_string(i) + at);
          }
        }
        // Transport laws.
        const Cell plus = Cell::comp(
            j + 1, Cell::comp(j, raise(O::conn(j, Sign::Plus), a), raise(O::degen(j), a)),
            Cell::comp(j, raise(O::degen(j + 1), a), raise(O::conn(j, Sign::Plus), b)));
        compare(raise(O::conn(j, Sign::Plus), ab), plus, "transport +" + at);
        const Cell minus = Cell::comp(
            j + 1, Cell::comp(j, raise(O::conn(j, Sign::Minus), a), raise(O::degen(j + 1), b)),
            Cell::comp(j, raise(O::degen(j), b), raise(O::conn(j, Sign::Minus), b)));
        compare(raise(O::conn(j, Sign::Minus), ab), minus, "transport -" + at);

        // Interchange with every other direction.
        for (int i = 1; i <= n; ++i) {
          if (i == j) continue;
          const Box wide = wide_box(g, {i - 1, j - 1}, rng);
          const auto [left, right] = split(wide, i - 1, rng);
          // Split both halves at the same cut in direction j.
          const auto [a0, c0] = split(left, j - 1, rng);
          Box b0 = right, d0 = right;
          b0.hi[j - 1] = a0.hi[j - 1];
          d0.lo[j - 1] = c0.lo[j - 1];
          const Cell qa = region(a0), qb = region(b0), qc = region(c0), qd = region(d0);
          compare(Cell::comp(j, Cell::comp(i, qa, qb), Cell::comp(i, qc, qd)),
                  Cell::comp(i, Cell::comp(j, qa, qc), Cell::comp(j, qb, qd)),
                  "interchange i=" + std::to_string(i) + at);
        }
      }
    }
  }
  return rec.finish();
}

// --- tensor --------------------------------------------------------------------

CheckResult check_tensor_bimorphisms(const SuiteOptions& o, int max_dim) {
  const std::string id = "tensor.bimorphisms";
  Recorder rec(id, "the canonical table into the tensor product satisfies the bimorphism laws "
                   "for single generators of dimensions p, q <= " + std::to_string(max_dim));
  long instances = 0;
  for (int p = 0; p <= max_dim; ++p) {
    for (int q = 0; q <= max_dim; ++q) {
      const std::string at = "p=" + std::to_string(p) + " q=" + std::to_string(q);
      guarded(rec, at, [&] {
        const Bimorphism b = universal_bimorphism(free_on("a", p), free_on("b", q));
        const BimorphismReport r = check_bimorphism(b, o.seed + 97 * p + q, 20);
        for (const AxiomResult& a : r.axioms) {
          instances += a.passed + a.failed + a.unknown;
          rec.expect(a.failed == 0 && a.unknown == 0, [&] {
            std::string w = at + " " + a.axiom + ": " + std::to_string(a.failed) + " failed, " +
                            std::to_string(a.unknown) + " unknown";
            if (!a.witnesses.empty()) w += "; " + a.witnesses.front();
            return w;
          });
        }
      });
    }
  }
  rec.append_summary("; " + std::to_string(instances) + " law instances");
  return rec.finish();
}

CheckResult check_cube_tensor_iso(const SuiteOptions&, int max_total) {
  const std::string id = "tensor.cube_iso";
  Recorder rec(id, "I^p (x) I^q matches I^(p+q) cell for cell and face for face, p + q <= " +
                       std::to_string(max_total));
  long faces = 0;
  for (int p = 0; p <= max_total; ++p) {
    for (int q = 0; p + q <= max_total; ++q) {
      const std::string at = "p=" + std::to_string(p) + " q=" + std::to_string(q);
      guarded(rec, at, [&] {
        const CubeIsoReport r = cube_tensor_iso(p, q);
        faces += r.faces_checked;
        rec.expect(r.ok(), [&] {
          std::string w = at + ": " + std::to_string(r.tensor_generators) + " vs " +
                          std::to_string(r.cube_generators) + " generators, " +
                          std::to_string(r.faces_matched) + "/" + std::to_string(r.faces_checked) +
                          " faces";
          if (!r.failures.empty()) w += "; " + r.failures.front();
          return w;
        });
      });
    }
  }
  rec.append_summary("; " + std::to_string(faces) + " faces compared");
  return rec.finish();
}

// --- colimits ------------------------------------------------------------------

namespace {

Cell vertex(const std::string& n) { return Cell::gen(n, 0); }

GeneratorDecl edge_decl(const std::string& n, const std::string& from, const std::string& to) {
  return {n, 1, {{{1, Sign::Minus}, vertex(from)}, {{1, Sign::Plus}, vertex(to)}}};
}

Presentation points(const std::string& name, const std::vector<std::string>& ps) {
  Presentation p(name);
  for (const auto& x : ps) p.add_generator(x, 0);
  return p;
}

CoverDiagram circle_from_arcs() {
  CoverDiagram c;
  Presentation upper = points("U0", {"p", "q"});
  upper.add(edge_decl("a", "p", "q"));
  Presentation lower = points("U1", {"p", "q"});
  lower.add(edge_decl("b", "q", "p"));
  c.pieces = {upper, lower};
  const Presentation ends = points("ends", {"x", "y"});
  for (auto [l, m] : {std::pair{0, 1}, std::pair{1, 0}}) {
    c.overlaps.emplace(std::pair{l, m}, ends);
    PresMorphism a{ends, c.pieces[l], {{"x", vertex("p")}, {"y", vertex("q")}}};
    PresMorphism b{ends, c.pieces[m], {{"x", vertex("p")}, {"y", vertex("q")}}};
    c.a.emplace(std::pair{l, m}, a);
    c.b.emplace(std::pair{l, m}, b);
  }
  c.unchecked_hypotheses = {"the pieces and their overlaps are connected"};
  return c;
}

// Graph presentations: vertices v0.., edges f0.. with the given endpoints.
Presentation graph(const std::string& name, int vertices,
                   const std::vector<std::pair<int, int>>& edges) {
  Presentation p(name);
  for (int k = 0; k < vertices; ++k) p.add_generator("v" + std::to_string(k), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    p.add(edge_decl("f" + std::to_string(k), "v" + std::to_string(edges[k].first),
                    "v" + std::to_string(edges[k].second)));
  }
  return p;
}

// Every graph with at most `max_generators` generators, up to the order of
// its edges.
std::vector<Presentation> small_graphs(int max_generators) {
  std::vector<Presentation> out;
  for (int v = 1; v <= max_generators; ++v) {
    std::vector<std::pair<int, int>> ends;
    for (int s = 0; s < v; ++s) {
      for (int t = 0; t < v; ++t) ends.emplace_back(s, t);
    }
    const int max_edges = max_generators - v;
    std::function<void(std::vector<std::pair<int, int>>&, std::size_t)> grow =
        [&](std::vector<std::pair<int, int>>& edges, std::size_t from) {
          out.push_back(graph("G" + std::to_string(out.size()), v, edges));
          if (static_cast<int>(edges.size()) == max_edges) return;
          for (std::size_t k = from; k < ends.size(); ++k) {
            edges.push_back(ends[k]);
            grow(edges, k);
            edges.pop_back();
          }
        };
    std::vector<std::pair<int, int>> edges;
    grow(edges, 0);
  }
  return out;
}

// Every morphism of graph presentations: vertices to vertices, edges to
// edges, reversed edges or identities, preserving endpoints.
std::vector<PresMorphism> graph_morphisms(const Presentation& s, const Presentation& t) {
  std::vector<Cell> vertex_images, edge_images;
  for (const auto& g : t.generators()) {
    const Cell x = Cell::gen(g.name, g.dim);
    if (g.dim == 0) {
      vertex_images.push_back(x);
      edge_images.push_back(raise(Operator::degen(1), x));
    } else {
      edge_images.push_back(x);
      edge_images.push_back(Cell::inv(1, x));
    }
  }
  std::vector<PresMorphism> out;
  const auto& gens = s.generators();
  PresMorphism m{s, t, {}};
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == gens.size()) {
      if (validate_morphism(m).ok()) out.push_back(m);
      return;
    }
    for (const Cell& image : gens[k].dim == 0 ? vertex_images : edge_images) {
      m.images[gens[k].name] = image;
      assign(k + 1);
    }
    m.images.erase(gens[k].name);
  };
  assign(0);
  return out;
}

}  // namespace

CheckResult check_circle_cover(const SuiteOptions&) {
  const std::string id = "colimits.circle";
  Recorder rec(id, "two arcs glued along both endpoints: one component and exactly one "
                   "independent loop; the coequaliser is universal for small groupoids");
  guarded(rec, "circle", [&] {
    CoverDiagram cover = circle_from_arcs();
    for (bool diagonal : {false, true}) {
      if (diagonal) add_diagonal_overlaps(cover);
      const RhoDiagram rho = build_rho_diagram(cover);
      const Coequalizer co = coequalizer(rho.a, rho.b);
      const Dim1Quotient d = solve_dim1(co.quotient);
      const std::string at = diagonal ? "with diagonal overlaps" : "off-diagonal overlaps";
      rec.expect(d.loop_rank == 1 && d.components == 1 && d.unresolved == 0, [&] {
        return at + ": rank " + std::to_string(d.loop_rank) + ", components " +
               std::to_string(d.components);
      });
      for (const FiniteGroupoid grp : {FiniteGroupoid{1, 3}, FiniteGroupoid{2, 2}}) {
        const FactorizationCheck u = check_universal_dim1(rho.a, rho.b, grp);
        rec.expect(u.ok(), [&] { return at + ": factorisation fails"; });
      }
    }
  });
  return rec.finish();
}

CheckResult check_universal_small(const SuiteOptions&, int max_generators) {
  const std::string id = "colimits.universal_small";
  Recorder rec(id, "every parallel pair of morphisms between graph presentations with <= " +
                       std::to_string(max_generators) +
                       " generators: equalising maps into small groupoids factor uniquely");
  const std::vector<Presentation> graphs = small_graphs(max_generators);
  const FiniteGroupoid groupoids[] = {{1, 2}, {2, 1}, {2, 2}};
  long pairs = 0;
  for (const Presentation& s : graphs) {
    for (const Presentation& t : graphs) {
      const std::vector<PresMorphism> ms = graph_morphisms(s, t);
      for (std::size_t x = 0; x < ms.size(); ++x) {
        for (std::size_t y = x; y < ms.size(); ++y) {
          ++pairs;
          for (const FiniteGroupoid& g : groupoids) {
            guarded(rec, s.name() + " => " + t.name(), [&] {
              const FactorizationCheck u = check_universal_dim1(ms[x], ms[y], g);
              rec.expect(u.ok(), [&] {
                return s.name() + " => " + t.name() + " into " + std::to_string(g.objects) +
                       " objects x Z/" + std::to_string(g.modulus) + ": " +
                       std::to_string(u.equalizing) + " equalising, " +
                       std::to_string(u.factored) + " factored, " +
                       std::to_string(u.quotient_morphisms) + " out of the quotient";
              });
            });
          }
        }
      }
    }
  }
  rec.append_summary("; " + std::to_string(graphs.size()) + " graphs, " + std::to_string(pairs) +
                     " parallel pairs");
  return rec.finish();
}

CheckResult check_globe_cover(const SuiteOptions&) {
  const std::string id = "colimits.globe_cover";
  Recorder rec(id, "the 2-cell and its boundary circle glue to the 2-globe: generator counts "
                   "match the globe crossed complex");
  guarded(rec, "globe", [&] {
    Presentation disk = points("U0", {"x", "y"});
    disk.add(edge_decl("f", "x", "y"));
    disk.add(edge_decl("g", "x", "y"));
    disk.add({"alpha", 2,
              {{{1, Sign::Minus}, Cell::gen("f", 1)},
               {{1, Sign::Plus}, Cell::gen("g", 1)},
               {{2, Sign::Minus}, raise(Operator::degen(1), vertex("x"))},
               {{2, Sign::Plus}, raise(Operator::degen(1), vertex("y"))}}});
    Presentation circle = points("U1", {"x", "y"});
    circle.add(edge_decl("f", "x", "y"));
    circle.add(edge_decl("g", "x", "y"));
    CoverDiagram cover;
    cover.pieces = {disk, circle};
    PresMorphism into_disk{circle, disk, {}};
    for (const auto& g : circle.generators()) into_disk.images.emplace(g.name, Cell::gen(g.name, g.dim));
    cover.overlaps.emplace(std::pair{0, 1}, circle);
    cover.a.emplace(std::pair{0, 1}, into_disk);
    cover.b.emplace(std::pair{0, 1}, identity_morphism(circle));
    const RhoDiagram rho = build_rho_diagram(cover);
    const Coequalizer co = coequalizer(rho.a, rho.b);
    const std::vector<int> got = class_counts_by_dim(co.quotient);
    const std::vector<int> want = globe_crossed_complex(2).counts_by_dim();
    rec.expect(got == want, [&] { return "class counts differ from the globe"; });
    rec.expect(solve_dim1(co.quotient).loop_rank == 1, [&] { return "boundary loop rank"; });
  });
  return rec.finish();
}

// --- suites --------------------------------------------------------------------

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"words",  "folding", "hal",     "geometry",
                                                 "tensor", "colimits", "all"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  using Check = std::function<CheckResult()>;
  const std::map<std::string, std::vector<Check>> suites = {
      {"words",
       {[&] { return check_word_confluence(o); }, [&] { return check_word_relations_oracle(o); },
        [&] { return check_cell_oracle(o); }}},
      {"folding", {[&] { return check_foldtoglob(o); }, [&] { return check_psi_degeneracies(o); }}},
      {"hal",
       {[&] { return check_hal_displays(o); }, [&] { return check_hal_reduction(o); },
        [&] { return check_globe_delta_delta(o); }}},
      {"geometry",
       {[&] { return check_phi_properties(o); }, [&] { return check_phi_fibres(o); },
        [&] { return check_phi_image(o); }, [&] { return check_globe_maps(o); },
        [&] { return check_globular_site_laws(o); },
        [&] { return check_interchange_transport(o); }}},
      {"tensor", {[&] { return check_tensor_bimorphisms(o); }, [&] { return check_cube_tensor_iso(o); }}},
      {"colimits",
       {[&] { return check_circle_cover(o); }, [&] { return check_universal_small(o); },
        [&] { return check_globe_cover(o); }}},
  };
  SuiteReport report{name, o, {}};
  if (name == "all") {
    for (const auto& [suite, checks] : suites) {
      for (const auto& c : checks) report.checks.push_back(c());
    }
  } else {
    const auto it = suites.find(name);
    if (it == suites.end()) throw IllFormed("unknown suite '" + name + "'");
    for (const auto& c : it->second) report.checks.push_back(c());
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return report;
}

std::string format_text(const SuiteReport& r, bool timings) {
  std::ostringstream out;
  out << "suite " << r.name << "  seed " << r.options.seed << "  grid "
      << (r.options.grid > 0 ? std::to_string(r.options.grid) : std::string("default"))
      << "  tol " << fmt(r.options.tol) << "\n";
  int passed = 0;
  for (const auto& c : r.checks) {
    passed += c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.id << "  cases " << c.cases << "  failures "
        << c.failures;
    if (c.tolerance) out << "  tol " << fmt(*c.tolerance);
    if (c.max_error) out << "  max error " << fmt(*c.max_error);
    if (c.time_limit) out << "  limit " << fmt(*c.time_limit) << " s";
    if (timings) out << "  time " << fmt(c.seconds) << " s";
    out << "\n    " << c.summary << "\n";
    for (const auto& w : c.witnesses) out << "    witness: " << w << "\n";
  }
  out << "summary: " << r.checks.size() << " checks, " << passed << " passed, "
      << r.checks.size() - passed << " failed\n";
  return out.str();
}

}  // namespace cubical
