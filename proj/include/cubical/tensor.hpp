#pragma once

// Tensor products of free presentations, bimorphisms into a target
// presentation, and the comparison of I^p (x) I^q with I^{p+q}.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubical/cells.hpp"

namespace cubical {

/// A presentation in which every free face of a generator is a generator of
/// its own, so that every generator of positive dimension declares all of
/// its faces. The free face d_w g is named "g/" followed by the face word,
/// e.g. "g/d2-.d1+".
class CompletedPresentation {
 public:
  explicit CompletedPresentation(const Presentation& p);

  const Presentation& original() const { return original_; }
  const Presentation& completed() const { return completed_; }

  /// The term over the completed presentation naming the same cell.
  Cell lift(const Cell& t) const;

  /// The cell a completed generator stands for, as a term over the original
  /// presentation. Throws UnknownGenerator.
  Cell origin(const std::string& name) const;

 private:
  Presentation original_;
  Presentation completed_;
  std::map<std::string, Cell> origins_;
};

/// "g/d2-.d1+" for the free face word w of g; "g" for the empty word.
std::string free_face_name(const std::string& gen, const OperatorWord& faces);

/// Name of the tensor generator g (x) h.
std::string tensor_name(const std::string& g, const std::string& h);

/// Values b(g, h) on generator pairs, extended to all terms by the
/// bimorphism laws: operators on the left factor keep their index, those on
/// the right factor are shifted by the dimension of the left factor, and
/// composites are taken factor by factor.
class Bimorphism {
 public:
  Bimorphism(Presentation left, Presentation right, Presentation target);

  const Presentation& left() const { return left_; }
  const Presentation& right() const { return right_; }
  const Presentation& target() const { return target_; }

  void set(const std::string& g, const std::string& h, Cell value);
  const std::map<std::pair<std::string, std::string>, Cell>& table() const { return table_; }

  /// b(x, y), expanding x first. Throws UnknownGenerator for a pair missing
  /// from the table.
  Cell operator()(const Cell& x, const Cell& y) const;
  /// b(x, y), expanding y first.
  Cell right_first(const Cell& x, const Cell& y) const;

 private:
  Cell value(const Cell& g, const Cell& h) const;
  Cell expand(const Cell& x, const Cell& y, bool right_first) const;

  Presentation left_;
  Presentation right_;
  Presentation target_;
  std::map<std::pair<std::string, std::string>, Cell> table_;
};

/// The universal bimorphism (g, h) -> g (x) h on the completed factors. Its
/// target is the tensor presentation. Throws NameClash when two pairs give
/// the same generator name.
Bimorphism universal_bimorphism(const Presentation& p, const Presentation& q);

/// Generators g (x) h of dimension dim g + dim h with
/// d_i(g (x) h) = (d_i g) (x) h for i <= dim g and g (x) (d_{i - dim g} h)
/// beyond, over the completed factors.
Presentation tensor_presentation(const Presentation& p, const Presentation& q);

struct AxiomResult {
  std::string axiom;
  long passed = 0;
  long failed = 0;
  long unknown = 0;
  std::vector<std::string> witnesses;  // first few failures
};

struct BimorphismReport {
  std::vector<AxiomResult> axioms;
  bool ok() const;
  const AxiomResult* find(const std::string& axiom) const;
};

/// Checks the table (totality and dimensions), then the face, degeneracy,
/// connection and composition laws on every generator pair and on fuzzed
/// operator words and composable pairs. Each law is compared in the target
/// after normalising both sides; when two index windows overlap both
/// readings are checked.
BimorphismReport check_bimorphism(const Bimorphism& b, std::uint64_t seed = 1, int rounds = 40);

/// The free presentation of the standard n-cube: one n-generator "c" and all
/// of its faces.
Presentation cube_presentation(int n, const std::string& name = "c");

struct CubeIsoReport {
  int p = 0;
  int q = 0;
  std::size_t tensor_generators = 0;
  std::size_t cube_generators = 0;
  bool bijective = false;
  long faces_checked = 0;
  long faces_matched = 0;
  std::vector<std::string> failures;
  std::map<std::string, std::string> correspondence;  // tensor name -> cube name
  bool ok() const { return bijective && faces_checked == faces_matched && failures.empty(); }
};

/// Compares I^p (x) I^q with I^{p+q} through the map sending
/// d_w a (x) d_v b to the normal form of d_w' d_v' c, where w and v act on
/// the first p and last q directions.
CubeIsoReport cube_tensor_iso(int p, int q);

}  // namespace cubical
