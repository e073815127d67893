#include "dyson/hopf.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dyson::hopf {

namespace {

struct Cut {
  std::vector<Tree> pruned;
  Tree trunk;
};

// Admissible cuts that keep the root, including the empty cut.
std::vector<Cut> rooted_cuts(const Tree& t) {
  // Partial products over the children seen so far: (pruned trees, trunk children).
  std::vector<std::pair<std::vector<Tree>, std::vector<Tree>>> partial{{{}, {}}};
  for (const Tree& child : t.children()) {
    const auto child_cuts = rooted_cuts(child);
    std::vector<std::pair<std::vector<Tree>, std::vector<Tree>>> next;
    next.reserve(partial.size() * (child_cuts.size() + 1));
    for (const auto& [pruned, kept] : partial) {
      auto cut_edge = pruned;
      cut_edge.push_back(child);
      next.emplace_back(std::move(cut_edge), kept);
      for (const Cut& c : child_cuts) {
        auto p = pruned;
        p.insert(p.end(), c.pruned.begin(), c.pruned.end());
        auto k = kept;
        k.push_back(c.trunk);
        next.emplace_back(std::move(p), std::move(k));
      }
    }
    partial = std::move(next);
  }
  std::vector<Cut> out;
  out.reserve(partial.size());
  for (auto& [pruned, kept] : partial) out.push_back(Cut{std::move(pruned), Tree(t.decoration(), std::move(kept))});
  return out;
}

TensorElement coproduct_tree(const Tree& t) {
  TensorElement out;
  out.add(Forest(t), Forest{}, Rational(1));
  for (Cut& c : rooted_cuts(t)) out.add(Forest(std::move(c.pruned)), Forest(c.trunk), Rational(1));
  return out;
}

TensorElement multiply(const TensorElement& a, const TensorElement& b) {
  TensorElement out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) out.add(ka.first * kb.first, ka.second * kb.second, ca * cb);
  return out;
}

using Triple = std::tuple<Forest, Forest, Forest>;

void accumulate(std::map<Triple, Rational>& m, Triple key, const Rational& c) {
  auto [it, inserted] = m.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) m.erase(it);
  }
}

HopfElement antipode_tree(const Tree& t) {
  thread_local std::map<std::string, HopfElement> cache;
  if (auto it = cache.find(t.encoding()); it != cache.end()) return it->second;
  HopfElement s(Forest(t), Rational(-1));
  for (const Cut& c : rooted_cuts(t)) {
    if (c.pruned.empty()) continue;
    s -= antipode(Forest(c.pruned)) * HopfElement(Forest(c.trunk));
  }
  cache.emplace(t.encoding(), s);
  return s;
}

HopfElement multiply_tensor(const TensorElement& t) {
  HopfElement out;
  for (const auto& [k, c] : t.terms()) out.add(k.first * k.second, c);
  return out;
}

}  // namespace

// --- Tree / Forest ----------------------------------------------------------

Tree::Tree(int decoration, std::vector<Tree> children)
    : decoration_(decoration), children_(std::move(children)), nodes_(1) {
  std::sort(children_.begin(), children_.end());
  code_ = std::to_string(decoration_);
  if (!children_.empty()) {
    code_ += '(';
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (i) code_ += ',';
      code_ += children_[i].code_;
    }
    code_ += ')';
  }
  for (const Tree& c : children_) nodes_ += c.nodes_;
}

namespace {
Tree parse_tree_at(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  if (pos < text.size() && text[pos] == '-') ++pos;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  if (pos == start || (pos == start + 1 && text[start] == '-'))
    throw std::invalid_argument("expected decoration in tree '" + std::string(text) + "'");
  const int deco = std::stoi(std::string(text.substr(start, pos - start)));
  std::vector<Tree> children;
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    while (true) {
      children.push_back(parse_tree_at(text, pos));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw std::invalid_argument("unbalanced tree '" + std::string(text) + "'");
    }
  }
  return Tree(deco, std::move(children));
}
}  // namespace

Tree parse_tree(std::string_view text) {
  std::size_t pos = 0;
  Tree t = parse_tree_at(text, pos);
  if (pos != text.size()) throw std::invalid_argument("trailing characters in tree '" + std::string(text) + "'");
  return t;
}

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) { std::sort(trees_.begin(), trees_.end()); }

int Forest::node_count() const {
  int n = 0;
  for (const Tree& t : trees_) n += t.node_count();
  return n;
}

std::string Forest::encoding() const {
  if (trees_.empty()) return "I";
  std::string s;
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (i) s += ' ';
    s += trees_[i].encoding();
  }
  return s;
}

Forest operator*(const Forest& a, const Forest& b) {
  std::vector<Tree> t = a.trees_;
  t.insert(t.end(), b.trees_.begin(), b.trees_.end());
  return Forest(std::move(t));
}

std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
  return std::lexicographical_compare_three_way(a.trees_.begin(), a.trees_.end(), b.trees_.begin(),
                                                b.trees_.end());
}

// --- HopfElement ------------------------------------------------------------

HopfElement::HopfElement(const Forest& f, const Rational& c) { add(f, c); }

Rational HopfElement::coefficient(const Forest& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HopfElement::add(const Forest& f, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(f, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

HopfElement& HopfElement::operator+=(const HopfElement& other) {
  for (const auto& [f, c] : other.terms_) add(f, c);
  return *this;
}

HopfElement& HopfElement::operator-=(const HopfElement& other) {
  for (const auto& [f, c] : other.terms_) add(f, -c);
  return *this;
}

HopfElement operator-(HopfElement a) {
  for (auto& [f, c] : a.terms_) c = -c;
  return a;
}

HopfElement operator*(const HopfElement& a, const HopfElement& b) {
  HopfElement out;
  for (const auto& [fa, ca] : a.terms_)
    for (const auto& [fb, cb] : b.terms_) out.add(fa * fb, ca * cb);
  return out;
}

HopfElement operator*(const Rational& k, const HopfElement& a) {
  HopfElement out;
  for (const auto& [f, c] : a.terms_) out.add(f, k * c);
  return out;
}

std::string HopfElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [f, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + dyson::to_string(c) + ")" + "[" + f.encoding() + "]";
  }
  return s;
}

// --- TensorElement ----------------------------------------------------------

Rational TensorElement::coefficient(const Forest& left, const Forest& right) const {
  auto it = terms_.find(Key{left, right});
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorElement::add(const Forest& left, const Forest& right, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

std::string TensorElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + dyson::to_string(c) + ")[" + k.first.encoding() + "]x[" + k.second.encoding() + "]";
  }
  return s;
}

TensorElement tensor(const HopfElement& a, const HopfElement& b) {
  TensorElement out;
  for (const auto& [fa, ca] : a.terms())
    for (const auto& [fb, cb] : b.terms()) out.add(fa, fb, ca * cb);
  return out;
}

// --- Hopf structure ---------------------------------------------------------

TensorElement coproduct(const Forest& f) {
  TensorElement out;
  out.add(Forest{}, Forest{}, Rational(1));
  for (const Tree& t : f.trees()) out = multiply(out, coproduct_tree(t));
  return out;
}

TensorElement coproduct(const HopfElement& e) {
  TensorElement out;
  for (const auto& [f, c] : e.terms())
    for (const auto& [k, v] : coproduct(f).terms()) out.add(k.first, k.second, c * v);
  return out;
}

HopfElement antipode(const Forest& f) {
  HopfElement out = HopfElement::unit();
  for (const Tree& t : f.trees()) out = out * antipode_tree(t);
  return out;
}

HopfElement antipode(const HopfElement& e) {
  HopfElement out;
  for (const auto& [f, c] : e.terms()) out += c * antipode(f);
  return out;
}

Rational counit(const HopfElement& e) { return e.coefficient(Forest{}); }

Tree b_plus(const Forest& f, int decoration) { return Tree(decoration, f.trees()); }

HopfElement b_plus(const HopfElement& e, int decoration) {
  HopfElement out;
  for (const auto& [f, c] : e.terms()) out.add(Forest(b_plus(f, decoration)), c);
  return out;
}

bool check_cocycle(const Forest& f, int decoration) {
  const TensorElement lhs = coproduct(Forest(b_plus(f, decoration)));
  TensorElement rhs;
  for (const auto& [k, c] : coproduct(f).terms()) rhs.add(k.first, Forest(b_plus(k.second, decoration)), c);
  rhs.add(Forest(b_plus(f, decoration)), Forest{}, Rational(1));
  return lhs == rhs;
}

bool check_coassociativity(const Forest& f) {
  std::map<Triple, Rational> left, right;
  for (const auto& [k, c] : coproduct(f).terms()) {
    for (const auto& [k2, c2] : coproduct(k.second).terms())
      accumulate(left, Triple{k.first, k2.first, k2.second}, c * c2);
    for (const auto& [k2, c2] : coproduct(k.first).terms())
      accumulate(right, Triple{k2.first, k2.second, k.second}, c * c2);
  }
  return left == right;
}

bool check_counit(const Forest& f) {
  HopfElement via_left, via_right;
  for (const auto& [k, c] : coproduct(f).terms()) {
    if (k.first.empty()) via_left.add(k.second, c);
    if (k.second.empty()) via_right.add(k.first, c);
  }
  const HopfElement id(f);
  return via_left == id && via_right == id;
}

bool check_antipode(const Forest& f) {
  const TensorElement d = coproduct(f);
  TensorElement s_left, s_right;
  for (const auto& [k, c] : d.terms()) {
    for (const auto& [g, v] : antipode(k.first).terms()) s_left.add(g, k.second, c * v);
    for (const auto& [g, v] : antipode(k.second).terms()) s_right.add(k.first, g, c * v);
  }
  const HopfElement expected = f.empty() ? HopfElement::unit() : HopfElement{};
  return multiply_tensor(s_left) == expected && multiply_tensor(s_right) == expected;
}

bool check_involution(const Forest& f) { return antipode(antipode(f)) == HopfElement(f); }

namespace {
bool check_grading(const Forest& f) {
  for (const auto& [k, c] : coproduct(f).terms())
    if (k.first.node_count() + k.second.node_count() != f.node_count()) return false;
  return true;
}

void check_one(const Forest& f, AxiomReport& r) {
  r.forests += 1;
  r.coassociativity_failures += check_coassociativity(f) ? 0 : 1;
  r.counit_failures += check_counit(f) ? 0 : 1;
  r.antipode_failures += check_antipode(f) ? 0 : 1;
  r.involution_failures += check_involution(f) ? 0 : 1;
  r.cocycle_failures += check_cocycle(f, 1) && check_cocycle(f, 2) ? 0 : 1;
  r.grading_failures += check_grading(f) ? 0 : 1;
}
}  // namespace

AxiomReport check_axioms_serial(const std::vector<Forest>& forests) {
  AxiomReport r;
  for (const Forest& f : forests) check_one(f, r);
  return r;
}

AxiomReport check_axioms_parallel(const std::vector<Forest>& forests) {
  std::size_t n = 0, coassoc = 0, counit_f = 0, anti = 0, invol = 0, cocyc = 0, grad = 0;
  const long count = static_cast<long>(forests.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : n, coassoc, counit_f, anti, invol, cocyc, grad)
  for (long i = 0; i < count; ++i) {
    AxiomReport local;
    check_one(forests[static_cast<std::size_t>(i)], local);
    n += local.forests;
    coassoc += local.coassociativity_failures;
    counit_f += local.counit_failures;
    anti += local.antipode_failures;
    invol += local.involution_failures;
    cocyc += local.cocycle_failures;
    grad += local.grading_failures;
  }
  return AxiomReport{n, coassoc, counit_f, anti, invol, cocyc, grad};
}

std::vector<Forest> enumerate_forests(int max_nodes, const std::vector<int>& decorations) {
  // forests_by_size[n]: all forests with exactly n vertices.
  std::vector<std::vector<Forest>> forests_by_size(static_cast<std::size_t>(max_nodes) + 1);
  std::vector<Tree> trees;  // every tree of size <= current n, in generation order
  forests_by_size[0].push_back(Forest{});
  for (int n = 1; n <= max_nodes; ++n) {
    for (int d : decorations)
      for (const Forest& f : forests_by_size[static_cast<std::size_t>(n - 1)]) trees.push_back(b_plus(f, d));
    std::sort(trees.begin(), trees.end());
    // Multisets of trees with total size n, trees chosen in non-decreasing index.
    std::vector<Tree> current;
    auto extend = [&](auto&& self, std::size_t start, int remaining) -> void {
      if (remaining == 0) {
        forests_by_size[static_cast<std::size_t>(n)].push_back(Forest(current));
        return;
      }
      for (std::size_t i = start; i < trees.size(); ++i) {
        if (trees[i].node_count() > remaining) break;
        current.push_back(trees[i]);
        self(self, i, remaining - trees[i].node_count());
        current.pop_back();
      }
    };
    extend(extend, 0, n);
  }
  std::vector<Forest> all;
  for (auto& bucket : forests_by_size) all.insert(all.end(), bucket.begin(), bucket.end());
  return all;
}

// --- Combinatorial Dyson-Schwinger equation ---------------------------------

std::vector<HopfElement> combinatorial_dse(int s, int order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  const Rational sign(sign_of(s));
  TruncatedSeries<HopfElement> x(order);
  x[0] = HopfElement::unit();
  for (int n = 1; n <= order; ++n) {
    HopfElement coeff;
    for (int k = 1; k <= n; ++k) {
      const auto insertion = pow(x.truncated(n - k), 1 - s * k);
      coeff -= sign * b_plus(insertion[n - k], k);
    }
    x[n] = coeff;
  }
  return std::vector<HopfElement>(x.coeffs().begin(), x.coeffs().end());
}

bool check_breaking_apart(int s, int k) {
  const auto coeffs = combinatorial_dse(s, k);
  TruncatedSeries<HopfElement> x(std::vector<HopfElement>(coeffs.begin(), coeffs.end()));
  TensorElement rhs;
  for (int j = 0; j <= k; ++j) {
    const auto power = pow(x.truncated(j), 1 - s * (k - j));
    rhs += tensor(power[j], x[k - j]);
  }
  return coproduct(x[k]) == rhs;
}

}  // namespace dyson::hopf
