#pragma once

// Globular sets and globular omega-groupoids: formal terms over a finite
// globular presentation, and the globular subset of a cubical presentation
// with its inherited compositions.
//
// Globular indices name target dimensions: d_k^a maps an n-cell to a k-cell
// (k < n), and x o_k y glues two n-cells along a common k-cell.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubical/cells.hpp"

namespace cubical {

enum class GlobKind { Gen, Id, Compose };

struct GlobNode;

class GlobTerm {
 public:
  GlobTerm() = default;

  static GlobTerm gen(const std::string& name, int dim);
  /// The identity (k+1)-cell on a k-cell.
  static GlobTerm id(const GlobTerm& x);
  /// Throws DimensionMismatch or IndexOutOfRange; composability is checked
  /// by GlobularContext.
  static GlobTerm compose(int k, const GlobTerm& a, const GlobTerm& b);

  bool valid() const { return node_ != nullptr; }
  GlobKind kind() const;
  int dim() const;
  const std::string& name() const;  // Gen
  int index() const;                // Compose
  GlobTerm arg() const;             // Id
  GlobTerm left() const;            // Compose
  GlobTerm right() const;           // Compose

  friend bool operator==(const GlobTerm& a, const GlobTerm& b);

 private:
  explicit GlobTerm(std::shared_ptr<const GlobNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const GlobNode> node_;
};

struct GlobNode {
  GlobKind kind = GlobKind::Gen;
  int dim = 0;
  std::string name;
  int index = 0;
  GlobTerm a;
  GlobTerm b;
};

std::string to_string(const GlobTerm& t);

/// n-fold identity: s from dim(x) up to dimension n.
GlobTerm glob_identity(const GlobTerm& x, int n);

struct GlobGenerator {
  std::string name;
  int dim = 0;
  GlobTerm source;  // unset for dim 0
  GlobTerm target;
};

class GlobularPresentation {
 public:
  GlobularPresentation() = default;
  explicit GlobularPresentation(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  /// Throws NameClash.
  void add(GlobGenerator g);
  void add_vertex(const std::string& name) { add({name, 0, {}, {}}); }

  const std::vector<GlobGenerator>& generators() const { return gens_; }
  const GlobGenerator* find(const std::string& name) const;
  /// Throws UnknownGenerator.
  GlobTerm gen(const std::string& name) const;

 private:
  std::string name_;
  std::vector<GlobGenerator> gens_;
};

/// d_k^a of a formal term, computed from the declared sources and targets and
/// the globular laws. Throws IndexOutOfRange unless k < dim(t).
GlobTerm glob_boundary(const GlobularPresentation& p, const GlobTerm& t, int k, Sign a);

struct GlobViolation {
  std::string law;      // "declaration", "law (i)", "law (ii)", "law (iii)", "composable", "cubical"
  std::string subject;  // generator name
  std::string detail;
  std::string lhs;      // witness terms, when the violation is an inequality
  std::string rhs;
};

struct GlobValidationReport {
  std::vector<GlobViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Cubical presentation with one generator per globular generator: d_1^-/d_1^+
/// are the embedded source and target, and d_i^a (i >= 2) is e_1^{i-1} of the
/// embedded globular face of dimension n - i.
Presentation embed_presentation(const GlobularPresentation& p);

/// Id becomes e_1 and o_k on n-cells becomes the cubical o_{n-k}.
Cell embed_term(const GlobTerm& t);

/// Checks declarations, laws (i)-(iii) on every generator, composability of
/// the boundary terms, and face compatibility of the cubical embedding.
GlobValidationReport validate_globular_presentation(const GlobularPresentation& p);

/// A cell of the globular subset: always a cubical cell, and a formal
/// globular term when it was built over a globular presentation.
struct GlobularCell {
  Cell cell;
  std::optional<GlobTerm> formal;
  int dim() const { return cell.dim(); }
};

/// Globular structure on the globular subset of a cubical presentation,
/// or on the embedding of a globular presentation:
///   d_k^a x = (d_1^a)^{n-k} x,   s x = e_1 x,   x o_k y = x o_{n-k} y.
/// Composability of o_k is decided on the globular faces d_k; the cubical
/// faces d_{n-k} agree with them only up to the globularity of the factors.
class GlobularContext {
 public:
  explicit GlobularContext(Presentation cubical);
  explicit GlobularContext(GlobularPresentation globular);
  GlobularContext(const GlobularContext&) = delete;
  GlobularContext& operator=(const GlobularContext&) = delete;

  const Presentation& cubical() const { return cubical_; }
  const GlobularPresentation* globular() const {
    return globular_ ? &*globular_ : nullptr;
  }
  Normalizer& normalizer() { return *norm_; }

  /// Throws NotGlobular unless is_globular(t) is Yes.
  GlobularCell wrap(const Cell& t);
  /// Formal cell over the globular presentation. Throws IllFormed when a
  /// composite in t is not composable.
  GlobularCell formal(const GlobTerm& t);

  GlobularCell face(const GlobularCell& x, int k, Sign a);
  GlobularCell identity(const GlobularCell& x);
  /// Throws NotComposable unless d_k^+ x = d_k^- y is Equal, NotGlobular when
  /// the composite cannot be certified globular.
  GlobularCell compose(int k, const GlobularCell& x, const GlobularCell& y);

  EqVerdict equal(const GlobularCell& x, const GlobularCell& y);

 private:
  void check_formal(const GlobTerm& t);

  std::optional<GlobularPresentation> globular_;
  Presentation cubical_;
  std::unique_ptr<Normalizer> norm_;
};

}  // namespace cubical
