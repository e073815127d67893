#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dyson/rational.hpp"
#include "dyson/series.hpp"

namespace dyson::hopf {

/// Rooted tree with integer-decorated vertices. Children are unordered; the
/// stored order is canonical (sorted by encoding) so equal trees compare equal.
class Tree {
 public:
  explicit Tree(int decoration, std::vector<Tree> children = {});

  int decoration() const { return decoration_; }
  const std::vector<Tree>& children() const& { return children_; }
  std::vector<Tree> children() && { return std::move(children_); }
  int node_count() const { return nodes_; }
  /// Nested-parenthesis form, e.g. "1(1,2(1))".
  const std::string& encoding() const { return code_; }

  friend bool operator==(const Tree& a, const Tree& b) { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (a.nodes_ != b.nodes_) return a.nodes_ <=> b.nodes_;
    return a.code_ <=> b.code_;
  }

 private:
  int decoration_;
  std::vector<Tree> children_;
  int nodes_;
  std::string code_;
};

/// Parses the nested-parenthesis encoding produced by Tree::encoding().
Tree parse_tree(std::string_view text);

/// Sorted multiset of trees; the empty forest is the unit.
class Forest {
 public:
  Forest() = default;
  explicit Forest(std::vector<Tree> trees);
  explicit Forest(Tree tree) : Forest(std::vector<Tree>{std::move(tree)}) {}

  const std::vector<Tree>& trees() const& { return trees_; }
  std::vector<Tree> trees() && { return std::move(trees_); }
  bool empty() const { return trees_.empty(); }
  int node_count() const;
  /// Space-separated tree encodings; "I" for the empty forest.
  std::string encoding() const;

  friend Forest operator*(const Forest& a, const Forest& b);
  friend bool operator==(const Forest&, const Forest&) = default;
  friend std::strong_ordering operator<=>(const Forest& a, const Forest& b);

 private:
  std::vector<Tree> trees_;
};

/// Finite rational combination of forests. Zero coefficients are never stored.
class HopfElement {
 public:
  HopfElement() = default;
  explicit HopfElement(const Forest& f, const Rational& c = Rational(1));

  static HopfElement unit() { return HopfElement(Forest{}); }
  static HopfElement scalar(const Rational& c) { return HopfElement(Forest{}, c); }

  const std::map<Forest, Rational>& terms() const& { return terms_; }
  std::map<Forest, Rational> terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Forest& f) const;
  void add(const Forest& f, const Rational& c);

  HopfElement& operator+=(const HopfElement& other);
  HopfElement& operator-=(const HopfElement& other);
  friend HopfElement operator+(HopfElement a, const HopfElement& b) { return a += b; }
  friend HopfElement operator-(HopfElement a, const HopfElement& b) { return a -= b; }
  friend HopfElement operator-(HopfElement a);
  friend HopfElement operator*(const HopfElement& a, const HopfElement& b);
  friend HopfElement operator*(const Rational& k, const HopfElement& a);
  friend bool operator==(const HopfElement&, const HopfElement&) = default;

  std::string to_string() const;

 private:
  std::map<Forest, Rational> terms_;
};

/// Finite rational combination of pairs of forests (left ⊗ right).
class TensorElement {
 public:
  using Key = std::pair<Forest, Forest>;

  const std::map<Key, Rational>& terms() const& { return terms_; }
  std::map<Key, Rational> terms() && { return std::move(terms_); }
  Rational coefficient(const Forest& left, const Forest& right) const;
  void add(const Forest& left, const Forest& right, const Rational& c);

  TensorElement& operator+=(const TensorElement& other);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

  std::string to_string() const;

 private:
  std::map<Key, Rational> terms_;
};

/// a ⊗ b for two elements, expanded bilinearly.
TensorElement tensor(const HopfElement& a, const HopfElement& b);

/// Sum over admissible cuts, pruned part on the left and trunk on the right,
/// extended multiplicatively to forests and linearly to elements.
TensorElement coproduct(const Forest& f);
TensorElement coproduct(const HopfElement& e);

/// Antipode, via S(T) = -T - sum' S(P_c) R_c over proper admissible cuts.
HopfElement antipode(const Forest& f);
HopfElement antipode(const HopfElement& e);

/// Counit: coefficient of the empty forest.
Rational counit(const HopfElement& e);

/// Grafting 1-cocycle: a new root with the given decoration above every tree of f.
Tree b_plus(const Forest& f, int decoration);
HopfElement b_plus(const HopfElement& e, int decoration);

/// Checks Δ B₊ = (id ⊗ B₊) Δ + B₊ ⊗ 𝕀 on f for the given decoration.
bool check_cocycle(const Forest& f, int decoration = 1);

/// Applies id ⊗ Δ and Δ ⊗ id to Δ(f) and compares.
bool check_coassociativity(const Forest& f);
/// (ε ⊗ id)Δ = id = (id ⊗ ε)Δ.
bool check_counit(const Forest& f);
/// m(S ⊗ id)Δ = εη = m(id ⊗ S)Δ.
bool check_antipode(const Forest& f);
/// S(S(f)) = f.
bool check_involution(const Forest& f);

/// Every forest (including the empty one) with at most `max_nodes` vertices,
/// decorations drawn from `decorations`.
std::vector<Forest> enumerate_forests(int max_nodes, const std::vector<int>& decorations);

/// Coefficients [x^n]X, n = 0..order, of X = 𝕀 - sign(s) Σ_k x^k B₊^{(k)}(X^{1-sk}),
/// with one cocycle per loop order k decorated by k.
std::vector<HopfElement> combinatorial_dse(int s, int order);

/// Δ([x^k]X) = Σ_j [x^j]X^{1-s(k-j)} ⊗ [x^{k-j}]X, checked exactly.
bool check_breaking_apart(int s, int k);

struct AxiomReport {
  std::size_t forests = 0;
  std::size_t coassociativity_failures = 0;
  std::size_t counit_failures = 0;
  std::size_t antipode_failures = 0;
  std::size_t involution_failures = 0;
  std::size_t cocycle_failures = 0;
  std::size_t grading_failures = 0;

  bool ok() const {
    return coassociativity_failures + counit_failures + antipode_failures + involution_failures +
               cocycle_failures + grading_failures ==
           0;
  }
  friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

/// Runs every axiom check over the given forests. The serial version is the
/// reference; the parallel one splits the forest list across OpenMP threads.
AxiomReport check_axioms_serial(const std::vector<Forest>& forests);
AxiomReport check_axioms_parallel(const std::vector<Forest>& forests);

}  // namespace dyson::hopf

namespace dyson {

template <>
struct RingTraits<hopf::HopfElement> {
  static hopf::HopfElement zero() { return {}; }
  static hopf::HopfElement one() { return hopf::HopfElement::unit(); }
  static bool is_zero(const hopf::HopfElement& e) { return e.is_zero(); }
  /// Only scalar multiples of the unit are invertible here.
  static hopf::HopfElement inverse(const hopf::HopfElement& e) {
    if (e.terms().size() != 1 || !e.terms().begin()->first.empty()) throw ZeroConstantTerm();
    return hopf::HopfElement::scalar(RingTraits<Rational>::inverse(e.terms().begin()->second));
  }
};

}  // namespace dyson
