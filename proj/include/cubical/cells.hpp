#pragma once

// Terms of the free cubical omega-groupoid with connections on a finite
// presentation, and a sound (incomplete) normaliser for them.
//
// Terms are hash-consed: structurally equal terms share one node, so Cell
// equality and hashing are pointer operations.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cubical/operator_words.hpp"

namespace cubical {

enum class CellKind : std::uint8_t { Gen, Apply, Comp, Inv };

struct CellNode;

class Cell {
 public:
  Cell() = default;

  static Cell gen(const std::string& name, int dim);
  /// Throws DimensionMismatch when the word's domain is not dim(arg).
  static Cell apply(const OperatorWord& w, const Cell& arg);
  /// Composability is not checked here; see Normalizer.
  static Cell comp(int j, const Cell& a, const Cell& b);
  static Cell inv(int j, const Cell& a);

  bool valid() const { return node_ != nullptr; }
  CellKind kind() const;
  int dim() const;
  const std::string& name() const;    // Gen
  const OperatorWord& word() const;   // Apply
  int direction() const;              // Comp, Inv
  Cell arg() const;                   // Apply, Inv
  Cell left() const;                  // Comp
  Cell right() const;                 // Comp

  /// Number of nodes when the term is unfolded as a tree (saturating).
  std::uint64_t tree_size() const;

  const CellNode* id() const { return node_.get(); }

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.node_ == b.node_;
  }

 private:
  explicit Cell(std::shared_ptr<const CellNode> n) : node_(std::move(n)) {}
  friend struct CellNode;
  friend Cell intern(CellNode&&);

  std::shared_ptr<const CellNode> node_;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    return std::hash<const void*>()(c.id());
  }
};

struct CellNode {
  CellKind kind = CellKind::Gen;
  int dim = 0;
  std::string name;
  OperatorWord word;
  int direction = 0;
  Cell a;
  Cell b;
  std::uint64_t tree_size = 1;
  std::size_t shallow_hash = 0;
};

Cell intern(CellNode&& node);

std::string to_string(const Cell& t);

// --- presentations ----------------------------------------------------------

using FaceKey = std::pair<int, Sign>;

/// A generator. Declared boundary entries fix faces; undeclared faces stay
/// free. Partial declarations are expected to cover a prefix of the
/// directions (as produced by tensor products).
struct GeneratorDecl {
  std::string name;
  int dim = 0;
  std::map<FaceKey, Cell> boundary;
};

class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  /// Throws NameClash on a duplicate name.
  void add(GeneratorDecl g);
  void add_generator(const std::string& name, int dim) { add({name, dim, {}}); }

  const std::vector<GeneratorDecl>& generators() const { return gens_; }
  const GeneratorDecl* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  /// Throws UnknownGenerator.
  Cell gen(const std::string& name) const;

  /// Declared boundary entry, if any.
  std::optional<Cell> declared_face(const std::string& name, int i, Sign s) const;

  /// Number of generators per dimension, indexed by dimension.
  std::vector<int> counts_by_dim() const;

 private:
  std::string name_;
  std::vector<GeneratorDecl> gens_;
  std::unordered_map<std::string, std::size_t> index_;
};

// --- verdicts ---------------------------------------------------------------

enum class EqVerdict : std::uint8_t { Equal, Distinct, Unknown };
enum class Tri : std::uint8_t { Yes, No, Unknown };

const char* to_string(EqVerdict v);
const char* to_string(Tri v);

/// Rule tags collected during normalisation. Word rules use the tags of
/// rule_tag(); term rules use "face-comp", "degen-comp", "conn-comp",
/// "transport+", "transport-", "interchange", "boundary", "inv-face",
/// "inv-raise", "inv-comp", "inv-conn", "inv-degen", "inv-inv",
/// "degenerate-comp", "assoc", "unit", "inverse".
struct CellTrace {
  RuleCounts counts;
  void add(const std::string& tag, long n = 1) { counts[tag] += n; }
  void merge(const WordTrace& w);
  /// True when every recorded tag is one of `allowed`.
  bool only(const std::vector<std::string>& allowed) const;
  /// True when every recorded tag is a law that holds pointwise for
  /// singular cubes: the B laws, interchange, and the reversal rules.
  bool strict_only() const;
};

struct NormalizeOptions {
  /// When false only strict laws are used: no associativity, unit or
  /// inverse-cancellation steps. Those laws hold in singular cubes only up
  /// to homotopy.
  bool groupoid_laws = true;
  /// Composability failures raise IllFormed when true.
  bool check_composable = true;
};

/// Normalisation engine bound to one presentation. Not thread-safe; create
/// one per thread. Results are memoised per instance.
class Normalizer {
 public:
  explicit Normalizer(const Presentation& p, NormalizeOptions opts = {},
                      CellTrace* trace = nullptr);

  /// Face pushed to generators using the word rules, faces of composites,
  /// declared boundaries and faces of inverses. No groupoid laws are used.
  Cell face(const Cell& t, int i, Sign s);

  Cell normalize(const Cell& t);

  EqVerdict equal(const Cell& a, const Cell& b);

  /// Membership in the image of e_1^k, tested as e_1^k (d_1^-)^k t = t.
  Tri in_image_eps(const Cell& t, int k);

  /// Throws IllFormed when a composite in t is not composable.
  void check_well_formed(const Cell& t);

  const Presentation& presentation() const { return pres_; }
  CellTrace* trace() const { return trace_; }
  void set_trace(CellTrace* t) { trace_ = t; }

 private:
  void note(const char* tag);
  void note_word(const WordTrace& w);

  Cell face_impl(const Cell& t, int i, Sign s);
  Cell faces_on_generator(const Cell& gen, const OperatorWord& faces);
  Cell apply_faces(const Cell& t, const OperatorWord& faces);

  Cell nf(const Cell& t);
  /// One bottom-up pass; re-passes over normal forms skip the composability check.
  Cell nf_pass(const Cell& t, bool check_composable);
  Cell push_word(const OperatorWord& w, const Cell& s);
  Cell push_op(const Operator& op, const Cell& s);
  Cell make_leaf(const OperatorWord& w, const Cell& gen);
  Cell make_comp(int j, const Cell& a, const Cell& b);
  /// Throws IllFormed unless the composite t is composable. User composites
  /// are checked once; faces of checked composites and normal forms are
  /// composable by construction and never rechecked.
  void ensure_composable(const Cell& t);
  void mark_verified(const Cell& t);
  Cell make_comp_list(int j, std::vector<Cell> factors);
  Cell make_inv(int j, const Cell& a);
  Cell transport(Sign s, int j, const Cell& a, const Cell& b);
  Cell left_assoc(int j, const std::vector<Cell>& factors);
  Cell trusted_comp(int j, const Cell& a, const Cell& b);
  Cell comp_range(int i, const std::vector<Cell>& row, std::size_t from, std::size_t to);
  std::optional<Cell> try_interchange(int j, const std::vector<Cell>& factors);
  bool composable_nf(int j, const Cell& a, const Cell& b);
  bool is_identity_nf(int j, const Cell& x);
  void flatten(int j, const Cell& t, std::vector<Cell>& out);

  EqVerdict distinct_check(const Cell& a, const Cell& b, int depth);

  const Presentation& pres_;
  NormalizeOptions opts_;
  CellTrace* trace_;
  struct FaceCacheKey {
    Cell cell;
    int index;
    Sign sign;
    bool operator==(const FaceCacheKey&) const = default;
  };
  struct FaceCacheHash {
    std::size_t operator()(const FaceCacheKey& k) const {
      return CellHash()(k.cell) * 31 + static_cast<std::size_t>(k.index) * 2 +
             (k.sign == Sign::Plus ? 1 : 0);
    }
  };

  std::unordered_map<Cell, Cell, CellHash> nf_cache_;
  std::unordered_set<Cell, CellHash> verified_;
  std::unordered_map<FaceCacheKey, Cell, FaceCacheHash> face_cache_;
  std::unordered_map<FaceCacheKey, bool, FaceCacheHash> identity_cache_;
};

// --- free-function interface ------------------------------------------------

Cell face(const Presentation& p, const Cell& t, int i, Sign s,
          CellTrace* trace = nullptr);
Cell normalize_cell(const Presentation& p, const Cell& t,
                    CellTrace* trace = nullptr,
                    NormalizeOptions opts = {});
EqVerdict eq_cells(const Presentation& p, const Cell& a, const Cell& b);
Tri in_image_eps(const Presentation& p, const Cell& t, int k);

/// e_1^k applied to t, and (d_1^s)^k applied to t.
Cell eps1_power(const Cell& t, int k);
Cell face1_power(const Cell& t, int k, Sign s);

/// Consistency problems of the declared boundaries: dimensions, unknown
/// references, and the face compatibility d_i d_j = d_{j-1} d_i (i < j).
std::vector<std::string> validate_presentation(const Presentation& p);

/// Generator names referenced by a term.
std::vector<std::string> referenced_generators(const Cell& t);

/// Substitutes generators by terms of the same dimension (used for
/// presentation morphisms). Unmapped generators are kept.
Cell substitute(const Cell& t, const std::map<std::string, Cell>& images);

}  // namespace cubical
