#include "cubical/fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "cubical/errors.hpp"
#include "cubical/folding.hpp"

namespace cubical {

SubdividedCube::SubdividedCube(int dim, int parts, const SingularCube& map)
    : dim_(dim), parts_(parts), map_(map), pres_("grid" + std::to_string(dim)) {
  if (parts < 1) throw IndexOutOfRange("a subdivision needs at least one part per axis");
  if (map.dim != dim) throw DimensionMismatch("subdivided map has the wrong dimension");

  // Codes 0..2*parts per axis: even codes are cuts, odd codes are slabs.
  std::vector<std::vector<int>> codes;
  std::vector<int> code(dim, 0);
  for (;;) {
    codes.push_back(code);
    int k = 0;
    while (k < dim && ++code[k] == 2 * parts + 1) code[k++] = 0;
    if (k == dim) break;
  }
  auto open_count = [](const std::vector<int>& c) {
    int d = 0;
    for (int v : c) d += v % 2;
    return d;
  };
  std::stable_sort(codes.begin(), codes.end(), [&](const auto& a, const auto& b) {
    return open_count(a) < open_count(b);
  });

  for (const auto& c : codes) {
    std::vector<int> pos(dim);
    std::vector<bool> open(dim);
    std::vector<int> axes;
    for (int k = 0; k < dim; ++k) {
      open[k] = c[k] % 2 == 1;
      pos[k] = c[k] / 2;
      if (open[k]) axes.push_back(k);
    }
    GeneratorDecl g;
    g.name = name_of(pos, open);
    g.dim = static_cast<int>(axes.size());
    for (int i = 1; i <= g.dim; ++i) {
      const int axis = axes[i - 1];
      for (Sign s : kSigns) {
        std::vector<int> fpos = pos;
        std::vector<bool> fopen = open;
        fopen[axis] = false;
        fpos[axis] = pos[axis] + (s == Sign::Plus ? 1 : 0);
        g.boundary[{i, s}] = cell(fpos, fopen);
      }
    }
    const double step = 2.0 / parts;
    auto f = map.eval;
    const int n = dim;
    env_[g.name] = SingularCube{
        g.dim, map.target_dim,
        [f, pos, open, step, n](std::span<const double> u) {
          Point x(n);
          std::size_t next = 0;
          for (int k = 0; k < n; ++k) {
            if (open[k]) {
              x[k] = -1.0 + step * (pos[k] + 0.5 * (u[next++] + 1.0));
            } else {
              x[k] = -1.0 + step * pos[k];
            }
          }
          return f(x);
        },
        g.name};
    pres_.add(std::move(g));
  }
}

std::string SubdividedCube::name_of(const std::vector<int>& pos,
                                    const std::vector<bool>& open) const {
  std::string s = "q";
  for (int k = 0; k < dim_; ++k) {
    s += '_';
    s += open[k] ? 'e' : 'v';
    s += std::to_string(pos[k]);
  }
  return s;
}

Cell SubdividedCube::cell(const std::vector<int>& pos, const std::vector<bool>& open) const {
  int d = 0;
  for (bool o : open) d += o ? 1 : 0;
  return Cell::gen(name_of(pos, open), d);
}

Cell SubdividedCube::block(const std::vector<int>& box) const {
  return cell(box, std::vector<bool>(dim_, true));
}

Cell SubdividedCube::region(const std::vector<int>& lo, const std::vector<int>& hi,
                            std::mt19937_64& rng) const {
  std::vector<int> order(dim_);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::uint64_t salt = rng();
  return split_region(lo, hi, order, salt);
}

// Cuts depend only on the axis and its own range, so the two halves of any
// split are bracketed identically along their common face and the composite
// is composable on the nose, not just up to associativity.
Cell SubdividedCube::split_region(const std::vector<int>& lo, const std::vector<int>& hi,
                                  const std::vector<int>& order, std::uint64_t salt) const {
  for (int axis : order) {
    const int width = hi[axis] - lo[axis];
    if (width < 2) continue;
    std::uint64_t h = salt ^ (static_cast<std::uint64_t>(axis) * 0x9e3779b97f4a7c15ULL);
    h ^= static_cast<std::uint64_t>(lo[axis]) * 0xbf58476d1ce4e5b9ULL;
    h ^= static_cast<std::uint64_t>(hi[axis]) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
    const int mid = lo[axis] + 1 + static_cast<int>(h % static_cast<std::uint64_t>(width - 1));
    std::vector<int> left_hi = hi;
    std::vector<int> right_lo = lo;
    left_hi[axis] = mid;
    right_lo[axis] = mid;
    return Cell::comp(axis + 1, split_region(lo, left_hi, order, salt),
                      split_region(right_lo, hi, order, salt));
  }
  return block(lo);
}

Cell random_grid_term(const SubdividedCube& grid, int max_dim, std::mt19937_64& rng,
                      bool with_inverses) {
  const int n = grid.dim();
  std::vector<int> lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    std::uniform_int_distribution<int> a(0, grid.parts() - 1);
    lo[k] = a(rng);
    std::uniform_int_distribution<int> b(lo[k] + 1, grid.parts());
    hi[k] = b(rng);
  }
  Cell t = grid.region(lo, hi, rng);
  std::uniform_int_distribution<int> coin(0, 3);
  if (with_inverses && n >= 1 && coin(rng) == 0) {
    std::uniform_int_distribution<int> dir(1, n);
    t = Cell::inv(dir(rng), t);
  }
  if (n >= 2 && coin(rng) == 0) {
    std::uniform_int_distribution<int> idx(1, n - 1);
    t = psi(idx(rng), t);
  }
  std::uniform_int_distribution<int> len(0, 4);
  const int length = len(rng);
  std::vector<Operator> applied;
  int d = n;
  for (int k = 0; k < length; ++k) {
    Operator op = random_operator(d, rng);
    if (d + op.delta() > max_dim || d + op.delta() < 0) continue;
    applied.push_back(op);
    d += op.delta();
  }
  std::reverse(applied.begin(), applied.end());
  return Cell::apply(OperatorWord(std::move(applied), n), t);
}

}  // namespace cubical
