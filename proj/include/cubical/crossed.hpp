#pragma once

// Words in free crossed complexes: the cubical homotopy addition boundary of
// an n-cube, its reduction for globular cubes, and the crossed complex of
// the n-globe.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubical/cells.hpp"
#include "cubical/operator_words.hpp"

namespace cubical {

/// The action of the edge u_i x = d_1^+ ... (d_i^+ omitted) ... d_n^+ x.
struct ActionWord {
  std::string base;  // the cube x
  int omitted = 0;   // i
  OperatorWord word; // faces from dimension n down to 1
  bool operator==(const ActionWord&) const = default;
};

/// u_i for an n-cube. Throws IndexOutOfRange unless 1 <= i <= n.
ActionWord action_word(const std::string& base, int n, int i);

struct CrossedTerm {
  int sign = 1;                 // +1 or -1
  std::string cell;             // a cube x, or a generator name
  std::optional<FaceKey> face;  // x_i^a when set
  std::optional<ActionWord> action;

  /// "x1+", "(x3-)^{u3}", "e2-".
  std::string symbol() const;
  bool same_symbol(const CrossedTerm& o) const {
    return cell == o.cell && face == o.face && action == o.action;
  }
};

/// A word in dimension `dim` of a crossed complex. Dimensions 1 and 2 are
/// nonabelian and keep their order; from dimension 3 on words are abelian and
/// normalise to a sorted list.
struct CrossedWord {
  int dim = 1;
  std::vector<CrossedTerm> terms;

  bool abelian() const { return dim >= 3; }
  bool empty() const { return terms.empty(); }
  bool operator==(const CrossedWord& o) const;
};

/// Cancels adjacent inverse pairs; abelian words are also sorted by face
/// index, + before -, plain before acted, then name.
CrossedWord normalize(const CrossedWord& w);
CrossedWord negate(const CrossedWord& w);
CrossedWord concat(const CrossedWord& a, const CrossedWord& b);

/// "- x1+ + (x3-)^{u3}", or "0" for the empty word.
std::string to_string(const CrossedWord& w);

/// Boundary of an n-cube x in the crossed complex: the explicit words for
/// n = 2 and n = 3, the signed sum for n >= 4 (normalised). Throws
/// DimensionTooLow for n < 2.
CrossedWord hal_boundary(int n, const std::string& x = "x");

/// Faces flagged true are degenerate: x_i^a lies in the image of
/// e_1^{i-1}. Flagged faces become neutral; an action u_i x is dropped when
/// the edge u_i x passes through a flagged face that makes it degenerate.
CrossedWord reduce_globular(const CrossedWord& w, const std::map<FaceKey, bool>& flags);

/// Flags for a globular n-cube: every face x_i^a with i >= 2.
std::map<FaceKey, bool> globular_flags(int n);

struct CrossedGenerator {
  std::string name;
  int dim = 0;
  CrossedWord boundary;  // in dimension dim - 1; for dim 1 the endpoints
};

struct CrossedPresentation {
  std::string name;
  std::vector<CrossedGenerator> generators;

  const CrossedGenerator* find(const std::string& name) const;
  std::vector<int> counts_by_dim() const;
};

/// Cells e^r_+, e^r_- for r < n and e^n, with d(e^r_a) = -e^{r-1}_+ + e^{r-1}_-.
CrossedPresentation globe_crossed_complex(int n);

/// Substitutes generator boundaries into an unacted word of dimension >= 2.
/// Throws UnknownGenerator, IllFormed for acted terms or dimension-1 words.
CrossedWord apply_boundary(const CrossedPresentation& p, const CrossedWord& w);

/// d(d g), normalised. Throws as apply_boundary, DimensionTooLow below 3.
CrossedWord boundary_of_boundary(const CrossedPresentation& p, const std::string& gen);

}  // namespace cubical
