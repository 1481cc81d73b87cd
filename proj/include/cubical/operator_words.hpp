#pragma once

// The cubical operator algebra: words in faces d_i^a, degeneracies e_i and
// connections g_i^a, and the oriented rewrite system that puts them in
// normal form (raisers on the left, faces on the right).

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cubical {

enum class Sign : std::uint8_t { Minus, Plus };

constexpr Sign operator-(Sign s) {
  return s == Sign::Plus ? Sign::Minus : Sign::Plus;
}

constexpr char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

inline constexpr Sign kSigns[] = {Sign::Minus, Sign::Plus};

enum class OpKind : std::uint8_t { Face, Degen, Conn };

/// One structure map. `sign` is meaningless for degeneracies and is kept at
/// Plus so that equal operators compare equal.
struct Operator {
  OpKind kind = OpKind::Face;
  int index = 1;
  Sign sign = Sign::Plus;

  static Operator face(int i, Sign s) { return {OpKind::Face, i, s}; }
  static Operator degen(int i) { return {OpKind::Degen, i, Sign::Plus}; }
  static Operator conn(int i, Sign s) { return {OpKind::Conn, i, s}; }

  bool is_face() const { return kind == OpKind::Face; }
  bool is_raiser() const { return kind != OpKind::Face; }

  /// Change in dimension when this operator is applied.
  int delta() const { return is_face() ? -1 : 1; }

  /// Whether the operator may be applied to a cell of dimension `dim`.
  bool valid_on(int dim) const;

  friend auto operator<=>(const Operator&, const Operator&) = default;
};

std::string to_string(const Operator& op);

/// Names of the oriented rules, used in rewrite traces.
enum class WordRule : std::uint8_t {
  FaceFace,        // d_i d_j, i < j
  DegenDegen,      // e_i e_j, i > j
  FaceDegen,       // d_i e_j
  ConnConn,        // g_i g_j, i > j + 1
  ConnConnAssoc,   // g_{j+1}^a g_j^a
  ConnDegen,       // g_i e_j, i != j
  ConnDegenEqual,  // g_j e_j
  FaceConn,        // d_i g_j, i < j or i > j + 1
  FaceConnCancel,  // d_i g_j^a, i in {j, j+1}, same sign
  FaceConnDegen,   // d_i g_j^a, i in {j, j+1}, opposite sign
};

/// Short tag such as "face-face", used in rewrite traces.
const char* rule_tag(WordRule r);

/// Tags of all word rules.
const std::vector<std::string>& word_rule_tags();

/// A composable sequence of operators. ops[0] is applied last.
class OperatorWord {
 public:
  OperatorWord() = default;
  /// Throws IndexOutOfRange when some operator is invalid at its
  /// intermediate dimension.
  OperatorWord(std::vector<Operator> ops, int domain_dim);

  static OperatorWord identity(int dim) { return OperatorWord({}, dim); }

  const std::vector<Operator>& ops() const { return ops_; }
  int domain_dim() const { return domain_dim_; }
  int codomain_dim() const;
  bool empty() const { return ops_.empty(); }
  std::size_t size() const { return ops_.size(); }

  /// Leading raisers (applied last) and trailing faces (applied first).
  /// Only meaningful on normal forms.
  OperatorWord raiser_part() const;
  OperatorWord face_part() const;

  friend bool operator==(const OperatorWord&, const OperatorWord&) = default;

 private:
  std::vector<Operator> ops_;
  int domain_dim_ = 0;
};

std::string to_string(const OperatorWord& w);

/// w1 after w2, i.e. w1(w2(x)). Throws DimensionMismatch.
OperatorWord compose_words(const OperatorWord& w1, const OperatorWord& w2);

/// Result of rewriting one adjacent pair (left applied after right).
struct PairRewrite {
  WordRule rule;
  std::vector<Operator> replacement;  // zero, one or two operators
};

/// The oriented rule for the adjacent pair, if any applies.
std::optional<PairRewrite> rewrite_pair(const Operator& left,
                                        const Operator& right);

/// Rule application counts collected while rewriting.
using RuleCounts = std::map<std::string, long>;

struct WordTrace {
  RuleCounts counts;
  long steps = 0;
};

/// Unique normal form, leftmost redex first.
OperatorWord normalize_word(const OperatorWord& w, WordTrace* trace = nullptr);

/// Normal form reached by always contracting a uniformly random redex.
/// Used to test confluence of the rule set.
OperatorWord normalize_word_random(const OperatorWord& w, std::mt19937_64& rng,
                                   WordTrace* trace = nullptr);

bool is_normal(const OperatorWord& w);

/// Throws DimensionMismatch unless the domain dimensions agree.
bool words_equal(const OperatorWord& w1, const OperatorWord& w2);

/// Uniformly chosen valid operator at the given dimension.
Operator random_operator(int dim, std::mt19937_64& rng);

/// Random well-formed word with intermediate dimensions kept within
/// [0, max_dim].
OperatorWord random_word(int max_dim, int max_length, std::mt19937_64& rng);

}  // namespace cubical
