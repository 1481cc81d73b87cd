#pragma once

// Morphisms, coproducts and coequalisers of presentations, the diagram of a
// cover, and a brute-force solver for the fragment of dimension at most 1.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubical/cells.hpp"

namespace cubical {

/// Generator images of equal dimension. Unmapped generators are an error
/// for validate_morphism.
struct PresMorphism {
  Presentation source;
  Presentation target;
  std::map<std::string, Cell> images;

  /// Image of a term over the source.
  Cell operator()(const Cell& t) const { return substitute(t, images); }
};

struct MorphismCheck {
  std::vector<std::string> problems;
  /// Declared faces whose preservation could not be decided.
  std::vector<std::string> unknown_faces;
  bool ok() const { return problems.empty(); }
};

/// Totality, dimensions, generators of the target, and face preservation:
/// d_i^a f(g) against f(d_i^a g) for every declared face.
MorphismCheck validate_morphism(const PresMorphism& m);

PresMorphism identity_morphism(const Presentation& p);

/// second after first. Throws NotComposable when the middle presentations
/// differ.
PresMorphism compose(const PresMorphism& second, const PresMorphism& first);

/// The same generators with the same dimensions, in the same order.
bool same_shape(const Presentation& a, const Presentation& b);

struct Coproduct {
  Presentation sum;
  std::vector<PresMorphism> inclusions;
  std::vector<std::string> prefixes;  // "U1." etc.
};

/// Disjoint union; generator names are prefixed by `prefixes[k]` when given,
/// else by the summand's name and a dot, or by "p<k>." when names are empty
/// or repeated.
Coproduct coproduct(const std::vector<Presentation>& ps, const std::string& name = "sum",
                    const std::vector<std::string>& prefixes = {});

struct Relation {
  Cell lhs;
  Cell rhs;
  std::string origin;  // the source generator it comes from
};

struct QuotientPresentation {
  Presentation presentation;
  std::vector<Relation> relations;
};

struct Coequalizer {
  QuotientPresentation quotient;
  PresMorphism projection;
};

/// The target of a and b with the relations a(g) ~ b(g). Throws NotParallel
/// unless a and b have the same source and target.
Coequalizer coequalizer(const PresMorphism& a, const PresMorphism& b);

/// Equality modulo the relations, decided by a bounded closure: normal
/// forms are compared after repeatedly replacing related generators. Never
/// answers Distinct.
EqVerdict equal_modulo(const QuotientPresentation& q, const Cell& x, const Cell& y);

/// Generators per dimension after identifying generators related to one
/// another, indexed by dimension.
std::vector<int> class_counts_by_dim(const QuotientPresentation& q);

/// Pieces U^l (indexed from 0), overlaps U^(l,m) with a: U^(l,m) -> U^l and
/// b: U^(l,m) -> U^m. Missing overlaps are empty. Connectivity hypotheses
/// are carried as unchecked notes.
struct CoverDiagram {
  std::vector<Presentation> pieces;
  std::map<std::pair<int, int>, Presentation> overlaps;
  std::map<std::pair<int, int>, PresMorphism> a;
  std::map<std::pair<int, int>, PresMorphism> b;
  std::vector<std::string> unchecked_hypotheses;
};

/// Sets U^(l,l) = U^l with identity maps where no overlap is given.
void add_diagonal_overlaps(CoverDiagram& cover);

struct RhoDiagram {
  Coproduct overlaps;  // over all pairs (l, m), in lexicographic order
  Coproduct pieces;
  std::vector<std::pair<int, int>> pairs;
  PresMorphism a;
  PresMorphism b;
};

/// Assembles the parallel pair between the coproducts. Throws IllFormed
/// when a morphism of the cover fails validate_morphism, IndexOutOfRange
/// for a pair outside the index set.
RhoDiagram build_rho_diagram(const CoverDiagram& cover);

/// The quotient of the free groupoid on the dimension <= 1 generators by
/// the dimension <= 1 relations that identify vertices, edges, or an edge
/// with an identity.
struct Dim1Quotient {
  std::vector<std::vector<std::string>> vertex_classes;
  std::vector<std::vector<std::string>> edge_classes;  // surviving edges
  int components = 0;
  /// Rank of the fundamental group of each component, summed:
  /// edges - vertices + components.
  int loop_rank = 0;
  /// Relations involving longer paths; loop_rank is then an upper bound.
  int unresolved = 0;
};

Dim1Quotient solve_dim1(const QuotientPresentation& q);

/// The groupoid (indiscrete on `objects`) x Z/modulus: arrows (s, t, k).
struct FiniteGroupoid {
  int objects = 1;
  int modulus = 1;
};

struct FactorizationCheck {
  long candidates = 0;          // graph maps of the target into the groupoid
  long equalizing = 0;          // those with h a = h b
  long factored = 0;            // of those, constant on the quotient classes
  long quotient_morphisms = 0;  // maps out of the quotient, enumerated on its classes
  bool ok() const { return equalizing == factored && factored == quotient_morphisms; }
};

/// Brute force over all maps of the dimension <= 1 generators of the target
/// of a, b into g. Every map with h a = h b must factor through the
/// projection, and the factorisations must be exactly the maps out of the
/// quotient. Throws IllFormed when the target has more than `max_maps`
/// candidate maps.
FactorizationCheck check_universal_dim1(const PresMorphism& a, const PresMorphism& b,
                                        const FiniteGroupoid& g, long max_maps = 2000000);

}  // namespace cubical
