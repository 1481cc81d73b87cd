#include "cubical/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_map>

#include "cubical/cells.hpp"
#include "cubical/errors.hpp"

namespace cubical {

GridSpec GridSpec::for_dim(int dim, double tolerance) {
  return GridSpec{dim <= 4 ? 8 : 4, tolerance};
}

std::vector<Point> grid_points(int dim, int m) {
  if (m < 2) throw IndexOutOfRange("grid resolution must be at least 2");
  std::vector<double> axis(m);
  for (int k = 0; k < m; ++k) axis[k] = -1.0 + 2.0 * k / (m - 1);
  std::vector<Point> out;
  std::vector<int> idx(dim, 0);
  for (;;) {
    Point p(dim);
    for (int k = 0; k < dim; ++k) p[k] = axis[idx[k]];
    out.push_back(std::move(p));
    int k = 0;
    while (k < dim && ++idx[k] == m) idx[k++] = 0;
    if (k == dim) break;
  }
  return out;
}

double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

namespace {

// 1 - t^2, written to stay exact at t = +-1.
double one_minus_sq(double t) { return (1.0 - t) * (1.0 + t); }

}  // namespace

// Unrolling the recursion, 1 - |phi_k(y)|^2 is the product of (1 - y_m^2),
// so coordinate k of phi_n(x) is x_k times the root of the product over m > k.
Point phi(int n, std::span<const double> x) {
  if (static_cast<int>(x.size()) != n) {
    throw DimensionMismatch("phi_" + std::to_string(n) + " applied to a point of dimension " +
                            std::to_string(x.size()));
  }
  for (double v : x) {
    if (!(std::abs(v) <= 1.0)) {
      throw DomainViolation("phi expects a point of [-1,1]^n, got coordinate " +
                            std::to_string(v));
    }
  }
  Point y(n);
  double residual = 1.0;
  for (int k = n - 1; k >= 0; --k) {
    y[k] = x[k] * std::sqrt(residual);
    residual *= one_minus_sq(x[k]);
  }
  return y;
}

Point phi_inverse(int n, std::span<const double> y) {
  if (static_cast<int>(y.size()) != n) {
    throw DimensionMismatch("phi_inverse dimension mismatch");
  }
  Point x(n);
  double residual = 1.0;
  for (int k = n - 1; k >= 0; --k) {
    const double r = std::sqrt(residual);
    x[k] = r > 0.0 ? std::clamp(y[k] / r, -1.0, 1.0) : 0.0;
    residual *= one_minus_sq(x[k]);
  }
  return x;
}

GlobeMap globe_face(int n, int i, Sign a) {
  if (i < 0 || i >= n) {
    throw IndexOutOfRange("globe face needs 0 <= i < n, got i=" + std::to_string(i) +
                          ", n=" + std::to_string(n));
  }
  const double sign = a == Sign::Plus ? 1.0 : -1.0;
  return GlobeMap{i, n, [n, i, sign](std::span<const double> x) {
                    Point y(n, 0.0);
                    double sq = 0.0;
                    for (double v : x) sq += v * v;
                    y[n - i - 1] = sign * std::sqrt(std::max(0.0, 1.0 - sq));
                    std::copy(x.begin(), x.end(), y.begin() + (n - i));
                    return y;
                  }};
}

GlobeMap globe_degen(int n, int i) {
  if (i < 0 || i >= n) {
    throw IndexOutOfRange("globe degeneracy needs 0 <= i < n");
  }
  return GlobeMap{n, i, [n, i](std::span<const double> x) {
                    return Point(x.begin() + (n - i), x.end());
                  }};
}

Point sample_ball(int n, std::mt19937_64& rng) {
  if (n == 0) return {};
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point p(n);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (double& v : p) v = normal(rng);
    norm = euclidean_norm(p);
  }
  const double radius = std::pow(unit(rng), 1.0 / n);
  for (double& v : p) v *= radius / norm;
  return p;
}

// --- cube operators -----------------------------------------------------------

SingularCube constant_cube(int dim, Point value) {
  const int k = static_cast<int>(value.size());
  return SingularCube{dim, k, [value = std::move(value)](std::span<const double>) { return value; },
                      "const"};
}

SingularCube face_cube(const SingularCube& a, int i, Sign s) {
  if (i < 1 || i > a.dim) throw IndexOutOfRange("face index " + std::to_string(i));
  const double c = s == Sign::Plus ? 1.0 : -1.0;
  auto f = a.eval;
  return SingularCube{a.dim - 1, a.target_dim,
                      [f, i, c](std::span<const double> t) {
                        Point u(t.begin(), t.end());
                        u.insert(u.begin() + (i - 1), c);
                        return f(u);
                      },
                      "d" + std::to_string(i) + sign_char(s) + "(" + a.label + ")"};
}

SingularCube degen_cube(const SingularCube& a, int i) {
  if (i < 1 || i > a.dim + 1) throw IndexOutOfRange("degeneracy index " + std::to_string(i));
  auto f = a.eval;
  return SingularCube{a.dim + 1, a.target_dim,
                      [f, i](std::span<const double> t) {
                        Point u(t.begin(), t.end());
                        u.erase(u.begin() + (i - 1));
                        return f(u);
                      },
                      "e" + std::to_string(i) + "(" + a.label + ")"};
}

SingularCube gamma(int i, Sign s, const SingularCube& a) {
  if (i < 1 || i > a.dim) throw IndexOutOfRange("connection index " + std::to_string(i));
  auto f = a.eval;
  const bool use_min = s == Sign::Plus;
  return SingularCube{a.dim + 1, a.target_dim,
                      [f, i, use_min](std::span<const double> t) {
                        Point u(t.begin(), t.end());
                        const double x = u[i - 1];
                        const double y = u[i];
                        u[i - 1] = use_min ? std::min(x, y) : std::max(x, y);
                        u.erase(u.begin() + i);
                        return f(u);
                      },
                      "g" + std::to_string(i) + sign_char(s) + "(" + a.label + ")"};
}

SingularCube reverse_cube(int j, const SingularCube& a) {
  if (j < 1 || j > a.dim) throw IndexOutOfRange("reversal index " + std::to_string(j));
  auto f = a.eval;
  return SingularCube{a.dim, a.target_dim,
                      [f, j](std::span<const double> t) {
                        Point u(t.begin(), t.end());
                        u[j - 1] = -u[j - 1];
                        return f(u);
                      },
                      "inv" + std::to_string(j) + "(" + a.label + ")"};
}

SingularCube apply_word(const OperatorWord& w, const SingularCube& a) {
  if (w.domain_dim() != a.dim) {
    throw DimensionMismatch("word domain " + std::to_string(w.domain_dim()) +
                            " vs cube dimension " + std::to_string(a.dim));
  }
  SingularCube c = a;
  for (auto it = w.ops().rbegin(); it != w.ops().rend(); ++it) {
    switch (it->kind) {
      case OpKind::Face:
        c = face_cube(c, it->index, it->sign);
        break;
      case OpKind::Degen:
        c = degen_cube(c, it->index);
        break;
      case OpKind::Conn:
        c = gamma(it->index, it->sign, c);
        break;
    }
  }
  return c;
}

double max_deviation(const SingularCube& a, const SingularCube& b, int m) {
  if (a.dim != b.dim) {
    throw DimensionMismatch("cubes of dimension " + std::to_string(a.dim) + " and " +
                            std::to_string(b.dim));
  }
  double worst = 0.0;
  for (const Point& p : grid_points(a.dim, m)) {
    const Point x = a(p);
    const Point y = b(p);
    if (x.size() != y.size()) throw DimensionMismatch("cube targets differ");
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

SingularCube compose_cubes_unchecked(int j, const SingularCube& a, const SingularCube& b) {
  if (a.dim != b.dim) throw DimensionMismatch("composed cubes differ in dimension");
  if (j < 1 || j > a.dim) throw IndexOutOfRange("composition direction " + std::to_string(j));
  auto f = a.eval;
  auto g = b.eval;
  return SingularCube{a.dim, a.target_dim,
                      [f, g, j](std::span<const double> t) {
                        Point u(t.begin(), t.end());
                        double& x = u[j - 1];
                        if (x <= 0.0) {
                          x = 2.0 * x + 1.0;
                          return f(u);
                        }
                        x = 2.0 * x - 1.0;
                        return g(u);
                      },
                      "(" + a.label + " o" + std::to_string(j) + " " + b.label + ")"};
}

SingularCube compose_cubes(int j, const SingularCube& a, const SingularCube& b,
                           const GridSpec& grid) {
  if (a.dim != b.dim) throw DimensionMismatch("composed cubes differ in dimension");
  if (j < 1 || j > a.dim) throw IndexOutOfRange("composition direction " + std::to_string(j));
  const double dev = max_deviation(face_cube(a, j, Sign::Plus), face_cube(b, j, Sign::Minus),
                                   grid.resolution);
  if (dev > grid.tolerance) {
    throw FaceMismatch("o" + std::to_string(j) + " faces differ by " + std::to_string(dev));
  }
  return compose_cubes_unchecked(j, a, b);
}

SingularCube restrict_cube(const SingularCube& a, const std::vector<double>& lo,
                           const std::vector<double>& hi) {
  if (static_cast<int>(lo.size()) != a.dim || static_cast<int>(hi.size()) != a.dim) {
    throw DimensionMismatch("restriction box has the wrong dimension");
  }
  auto f = a.eval;
  return SingularCube{a.dim, a.target_dim,
                      [f, lo, hi](std::span<const double> t) {
                        Point u(t.size());
                        for (std::size_t k = 0; k < t.size(); ++k) {
                          u[k] = lo[k] + 0.5 * (t[k] + 1.0) * (hi[k] - lo[k]);
                        }
                        return f(u);
                      },
                      a.label + "|box"};
}

// --- cube library ---------------------------------------------------------------

namespace {

struct SmoothCoefficients {
  int dim = 0;
  int target = 0;
  std::vector<double> constant;               // [target]
  std::vector<double> linear;                 // [target][dim]
  std::vector<double> quadratic;              // [target][dim][dim]
  std::vector<double> freq;                   // [target][dim]
  std::vector<double> phase;                  // [target]
  std::vector<double> amp;                    // [target]

  Point eval(std::span<const double> t) const {
    Point y(target);
    for (int r = 0; r < target; ++r) {
      double v = constant[r];
      double arg = phase[r];
      for (int k = 0; k < dim; ++k) {
        v += linear[r * dim + k] * t[k];
        arg += freq[r * dim + k] * t[k];
        for (int l = k; l < dim; ++l) v += quadratic[(r * dim + k) * dim + l] * t[k] * t[l];
      }
      y[r] = v + amp[r] * std::sin(arg);
    }
    return y;
  }
};

SingularCube smooth_cube(int dim, int target, std::mt19937_64& rng, bool quadratic, bool trig,
                         std::string label) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  auto c = std::make_shared<SmoothCoefficients>();
  c->dim = dim;
  c->target = target;
  c->constant.resize(target);
  c->linear.resize(static_cast<std::size_t>(target) * dim);
  c->quadratic.assign(static_cast<std::size_t>(target) * dim * dim, 0.0);
  c->freq.assign(static_cast<std::size_t>(target) * dim, 0.0);
  c->phase.assign(target, 0.0);
  c->amp.assign(target, 0.0);
  for (double& v : c->constant) v = coef(rng);
  for (double& v : c->linear) v = coef(rng);
  if (quadratic) {
    for (double& v : c->quadratic) v = 0.5 * coef(rng);
  }
  if (trig) {
    for (double& v : c->freq) v = 2.0 * coef(rng);
    for (double& v : c->phase) v = 3.0 * coef(rng);
    for (double& v : c->amp) v = 0.5 * coef(rng);
  }
  return SingularCube{dim, target, [c](std::span<const double> t) { return c->eval(t); },
                      std::move(label)};
}

}  // namespace

SingularCube random_smooth_cube(int dim, int target, std::mt19937_64& rng) {
  return smooth_cube(dim, target, rng, true, true, "smooth");
}

const std::vector<std::string>& cube_library_names() {
  static const std::vector<std::string> names = {"affine", "poly", "trig"};
  return names;
}

SingularCube library_cube(const std::string& name, int dim, int target, unsigned seed) {
  std::seed_seq seq{seed, static_cast<unsigned>(dim), static_cast<unsigned>(target),
                    static_cast<unsigned>(std::hash<std::string>()(name) & 0xffffffffu)};
  std::mt19937_64 rng(seq);
  if (name == "affine") return smooth_cube(dim, target, rng, false, false, name);
  if (name == "poly") return smooth_cube(dim, target, rng, true, false, name);
  if (name == "trig") return smooth_cube(dim, target, rng, false, true, name);
  throw UnknownGenerator("no library cube named '" + name + "'");
}

// --- oracle -------------------------------------------------------------------------

namespace {

class OracleEvaluator {
 public:
  OracleEvaluator(const CubeEnv& env, const GridSpec& grid) : env_(env), grid_(grid) {}

  SingularCube eval(const Cell& t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    SingularCube c = compute(t);
    memo_.emplace(t, c);
    return c;
  }

 private:
  SingularCube compute(const Cell& t) {
    switch (t.kind()) {
      case CellKind::Gen: {
        auto it = env_.find(t.name());
        if (it == env_.end()) throw EnvIncomplete("no cube for generator '" + t.name() + "'");
        if (it->second.dim != t.dim()) {
          throw EnvIncomplete("cube for '" + t.name() + "' has dimension " +
                              std::to_string(it->second.dim));
        }
        return it->second;
      }
      case CellKind::Apply:
        return apply_word(t.word(), eval(t.arg()));
      case CellKind::Comp:
        return compose_cubes(t.direction(), eval(t.left()), eval(t.right()),
                             GridSpec{grid_.resolution, grid_.tolerance});
      case CellKind::Inv:
        return reverse_cube(t.direction(), eval(t.arg()));
    }
    throw IllFormed("unknown term kind");
  }

  const CubeEnv& env_;
  GridSpec grid_;
  std::unordered_map<Cell, SingularCube, CellHash> memo_;
};

}  // namespace

SingularCube oracle_eval(const Presentation&, const Cell& t, const CubeEnv& env,
                         const GridSpec& grid) {
  OracleEvaluator ev(env, grid);
  return ev.eval(t);
}

void check_env(const Presentation& p, const CubeEnv& env, const GridSpec& grid) {
  OracleEvaluator ev(env, grid);
  for (const auto& g : p.generators()) {
    auto it = env.find(g.name);
    if (it == env.end()) throw EnvIncomplete("no cube for generator '" + g.name + "'");
    if (it->second.dim != g.dim) {
      throw EnvIncomplete("cube for '" + g.name + "' has dimension " +
                          std::to_string(it->second.dim) + ", expected " +
                          std::to_string(g.dim));
    }
    for (const auto& [key, term] : g.boundary) {
      const SingularCube declared = ev.eval(term);
      const SingularCube actual = face_cube(it->second, key.first, key.second);
      const double dev = max_deviation(actual, declared, grid.resolution);
      if (dev > grid.tolerance) {
        throw FaceMismatch("face " + std::to_string(key.first) + sign_char(key.second) +
                           " of '" + g.name + "' deviates by " + std::to_string(dev));
      }
    }
  }
}

PhiGlobularReport check_phi_image_globular(
    int n, const std::function<Point(std::span<const double>)>& a, const GridSpec& grid) {
  PhiGlobularReport report;
  report.n = n;
  const int m = grid.resolution;
  for (int i = 1; i + 1 <= n; ++i) {
    for (Sign s : kSigns) {
      // Face (i+1, s): the free coordinates are t_1..t_i and t_{i+2}..t_n.
      const double fixed = s == Sign::Plus ? 1.0 : -1.0;
      const auto rest = grid_points(n - 1 - i, m);
      const auto head = grid_points(i, m);
      for (const Point& r : rest) {
        Point reference;
        for (const Point& h : head) {
          Point t(h);
          t.push_back(fixed);
          t.insert(t.end(), r.begin(), r.end());
          const Point v = a(phi(n, t));
          if (reference.empty()) {
            reference = v;
            continue;
          }
          double sq = 0.0;
          for (std::size_t k = 0; k < v.size(); ++k) {
            sq += (v[k] - reference[k]) * (v[k] - reference[k]);
          }
          report.max_dependence = std::max(report.max_dependence, std::sqrt(sq));
        }
      }
      ++report.faces_checked;
    }
  }
  report.passed = report.max_dependence <= grid.tolerance;
  return report;
}

}  // namespace cubical
