#pragma once

// Numeric layer: globes, cubes, the maps phi_n, the globe structure maps,
// singular cubes with the structure of S(X), and the oracle evaluator.
//
// Cube convention: I = [-1, 1]. A singular n-cube is a map [-1,1]^n -> R^k.

#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cubical/operator_words.hpp"

namespace cubical {

class Cell;
class Presentation;

using Point = std::vector<double>;

struct GridSpec {
  int resolution = 8;
  double tolerance = 1e-9;

  /// Default resolution per axis: 8 up to dimension 4, 4 for dimensions 5-6.
  static GridSpec for_dim(int dim, double tolerance = 1e-9);
};

/// Sample points of [-1,1]^dim, `m` evenly spaced per axis including ends.
std::vector<Point> grid_points(int dim, int m);

struct SingularCube {
  int dim = 0;
  int target_dim = 0;
  std::function<Point(std::span<const double>)> eval;
  std::string label;

  Point operator()(std::span<const double> t) const { return eval(t); }
};

double euclidean_norm(std::span<const double> x);

// --- globes ---------------------------------------------------------------

/// phi_n : I^n -> G^n. Throws DomainViolation outside the cube.
Point phi(int n, std::span<const double> x);

/// Inverse of phi_n on the open cube; only meaningful when no coordinate of
/// the preimage is +-1.
Point phi_inverse(int n, std::span<const double> y);

/// A map between globes, G^from -> G^to.
struct GlobeMap {
  int from = 0;
  int to = 0;
  std::function<Point(std::span<const double>)> eval;
  Point operator()(std::span<const double> x) const { return eval(x); }
};

/// d-bar_i^a : G^i -> G^n, x -> (0_{n-i-1}, a sqrt(1 - |x|^2), x).
GlobeMap globe_face(int n, int i, Sign a);

/// s-bar_i : G^n -> G^i, projection to the last i coordinates.
GlobeMap globe_degen(int n, int i);

/// Uniform-ish sample of the closed unit ball in R^n (n = 0 gives the
/// single point of R^0).
Point sample_ball(int n, std::mt19937_64& rng);

// --- singular cubes --------------------------------------------------------

SingularCube constant_cube(int dim, Point value);

/// d_i^a a: insert the constant a*1 at slot i.
SingularCube face_cube(const SingularCube& a, int i, Sign s);

/// e_i a: precompose with the projection dropping coordinate i.
SingularCube degen_cube(const SingularCube& a, int i);

/// g_i^a a: precompose with gamma_i^a, which replaces (t_i, t_{i+1}) by
/// max (a = -) or min (a = +).
SingularCube gamma(int i, Sign s, const SingularCube& a);

/// Reversal in direction j, t_j -> -t_j.
SingularCube reverse_cube(int j, const SingularCube& a);

SingularCube apply_word(const OperatorWord& w, const SingularCube& a);

/// Largest Euclidean distance between the two cubes over the grid.
double max_deviation(const SingularCube& a, const SingularCube& b, int m);

/// a o_j b. Throws FaceMismatch when d_j^+ a and d_j^- b differ by more than
/// the grid tolerance.
SingularCube compose_cubes(int j, const SingularCube& a, const SingularCube& b,
                           const GridSpec& grid = {});

/// Same map without the face check; used where matching holds by
/// construction.
SingularCube compose_cubes_unchecked(int j, const SingularCube& a,
                                     const SingularCube& b);

/// Restriction of a to the sub-box [lo_k, hi_k] in every direction,
/// reparametrised over [-1,1]^n.
SingularCube restrict_cube(const SingularCube& a, const std::vector<double>& lo,
                           const std::vector<double>& hi);

// --- cube library -----------------------------------------------------------

/// Smooth random cube [-1,1]^dim -> R^target built from affine, quadratic
/// and trigonometric terms.
SingularCube random_smooth_cube(int dim, int target, std::mt19937_64& rng);

/// Names accepted by library_cube: "affine", "poly", "trig".
const std::vector<std::string>& cube_library_names();

/// Deterministic library cube addressable by name.
SingularCube library_cube(const std::string& name, int dim, int target = 3,
                          unsigned seed = 1);

// --- oracle -----------------------------------------------------------------

using CubeEnv = std::map<std::string, SingularCube>;

/// Interprets a term as a singular cube. Inverses are read as reversal,
/// which is only meaningful for comparisons along strict laws.
SingularCube oracle_eval(const Presentation& p, const Cell& t,
                         const CubeEnv& env, const GridSpec& grid = {});

/// Checks that the declared boundaries of the generators agree with the
/// environment within the grid tolerance. Throws FaceMismatch/EnvIncomplete.
void check_env(const Presentation& p, const CubeEnv& env,
               const GridSpec& grid = {});

struct PhiGlobularReport {
  int n = 0;
  bool passed = true;
  double max_dependence = 0.0;  // worst variation along a coordinate that must be inert
  int faces_checked = 0;
};

/// For c = a o phi_n checks that the face (i+1, +-) of c does not depend on
/// its first i coordinates, for every i >= 1, by sampling.
PhiGlobularReport check_phi_image_globular(
    int n, const std::function<Point(std::span<const double>)>& a,
    const GridSpec& grid = {});

}  // namespace cubical
