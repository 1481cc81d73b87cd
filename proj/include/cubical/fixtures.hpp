#pragma once

// Test instances shared by the unit tests, the suites and the CLI: the
// subdivision of a smooth cube into a presentation with a matching cube
// environment, and random composable terms over it.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubical/cells.hpp"
#include "cubical/geometry.hpp"

namespace cubical {

/// [-1,1]^dim cut into `parts` slabs per axis. Every cell of the subdivision
/// is a generator with all faces declared; its cube is the restriction of
/// one smooth map.
class SubdividedCube {
 public:
  SubdividedCube(int dim, int parts, const SingularCube& map);

  int dim() const { return dim_; }
  int parts() const { return parts_; }
  const Presentation& presentation() const { return pres_; }
  const CubeEnv& env() const { return env_; }
  const SingularCube& map() const { return map_; }

  /// Cell with, per axis, either a slab index (`open[k]` true, 0..parts-1) or a
  /// cut position (0..parts).
  Cell cell(const std::vector<int>& pos, const std::vector<bool>& open) const;

  /// Top-dimensional block with lower corner `box`.
  Cell block(const std::vector<int>& box) const;

  /// Composite covering the blocks lo[k] <= b_k < hi[k], split recursively
  /// in a random but face-consistent way.
  Cell region(const std::vector<int>& lo, const std::vector<int>& hi,
              std::mt19937_64& rng) const;

  /// Region split along the axes in `order`, cuts chosen by `salt`. Regions
  /// sharing order and salt agree on common faces, so they compose.
  Cell split_region(const std::vector<int>& lo, const std::vector<int>& hi,
                    const std::vector<int>& order, std::uint64_t salt) const;

 private:
  std::string name_of(const std::vector<int>& pos, const std::vector<bool>& open) const;

  int dim_;
  int parts_;
  SingularCube map_;
  Presentation pres_;
  CubeEnv env_;
};

/// A term over `grid` of dimension at most max_dim built from a random region
/// and random operator words; composable by construction.
Cell random_grid_term(const SubdividedCube& grid, int max_dim, std::mt19937_64& rng,
                      bool with_inverses);

}  // namespace cubical
