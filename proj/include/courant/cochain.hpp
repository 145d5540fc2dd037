#pragma once

#include <functional>
#include <memory>
#include <span>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "courant/algebroid.hpp"
#include "courant/battery.hpp"

namespace courant {

inline constexpr int kMaxCochainDegree = 6;

// Finite sum of g df, the shape in which 1-forms enter Omega^1 slots.
struct OneForm {
  std::vector<std::pair<Scalar, Scalar>> terms;  // (g, f) for g df

  static OneForm exact(const Scalar& f) { return OneForm{{{Scalar(1), f}}}; }
  friend bool operator==(const OneForm& a, const OneForm& b) = default;
  OneForm scaled(const Scalar& g) const;
  bool is_exact_form() const;  // every coefficient constant
  Section sharp(const CourantAlgebroid& e) const;  // rho^* alpha
  // i_{rho(x)} d alpha
  OneForm contract_differential(const CourantAlgebroid& e, const Section& x) const;
};

// Cochain on E, stored as an expression
// DAG and evaluated on demand.  Component k takes p - 2k sections and k
// functions (through their differentials).
class Cochain {
 public:
  enum class Kind {
    Zero,
    ScalarLeaf,
    SectionLeaf,
    Product,
    Differential,
    InteriorE,
    InteriorF,
    LieE,
    LieF,
    Sum
  };
  struct Node;

  static Cochain scalar(AlgebroidPtr e, Scalar f);
  static Cochain section(AlgebroidPtr e, Section s);
  static Cochain zero(AlgebroidPtr e, int degree);

  Kind kind() const;
  int degree() const;
  int order() const;  // membership in D^p_{m,m-1}
  const AlgebroidPtr& algebroid() const;
  const Node& node() const { return *node_; }
  const std::shared_ptr<const Node>& node_ptr() const { return node_; }

  Scalar evaluate(int k, std::span<const Section> sections,
                  std::span<const Scalar> functions) const;
  Scalar evaluate_forms(int k, std::span<const Section> sections,
                        std::span<const OneForm> forms) const;

  std::string describe() const;

  explicit Cochain(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

struct Cochain::Node {
  Kind kind;
  int degree;
  int order;
  AlgebroidPtr algebroid;
  Scalar function;          // ScalarLeaf, InteriorF, LieF
  Section section;          // SectionLeaf, InteriorE, LieE
  std::vector<Cochain> children;
  std::vector<Rational> coefficients;  // Sum
};

// Evaluates cochains over one algebroid.  Arguments are interned, and the
// value of every node on every argument list met is cached for the lifetime
// of the evaluator, along with brackets and anchors of interned sections.
class Evaluator {
 public:
  using Ids = std::vector<int>;

  explicit Evaluator(AlgebroidPtr e);

  int intern(const Section& s);
  int intern(const OneForm& f);
  const Section& section(int id) const { return sections_[id]; }
  const OneForm& form(int id) const { return forms_[id]; }
  const CourantAlgebroid& algebroid() const { return *e_; }

  // Component k of c; checks arity.
  Scalar operator()(const Cochain& c, int k, const Ids& sections, const Ids& forms);

  int bracket(int a, int b);
  Scalar anchor(int a, const Scalar& f);
  int sharp(int f);            // rho^* of a form, as a section id
  int contract(int f, int x);  // i_{rho(x)} d of a form; -1 when zero
  bool exact(int f) const { return exact_[f] != 0; }

 private:
  struct Hash {
    std::size_t operator()(const Section& s) const;
    std::size_t operator()(const OneForm& f) const;
    std::size_t operator()(const std::pair<const Cochain::Node*, Ids>& key) const;
  };

  Scalar eval(const Cochain::Node& n, int k, const Ids& e, const Ids& a);
  Scalar product(const Cochain::Node& n, int k, const Ids& e, const Ids& a);
  Scalar differential(const Cochain::Node& n, int k, const Ids& e, const Ids& a);

  AlgebroidPtr e_;
  std::deque<Section> sections_;
  std::deque<OneForm> forms_;
  std::vector<char> exact_;
  std::vector<int> sharp_;
  std::vector<std::vector<Scalar>> anchors_;
  std::unordered_map<Section, int, Hash> section_ids_;
  std::unordered_map<OneForm, int, Hash> form_ids_;
  std::unordered_map<std::uint64_t, int> brackets_;
  std::unordered_map<std::uint64_t, int> contractions_;
  std::unordered_map<std::pair<const Cochain::Node*, Ids>, Scalar, Hash> memo_;
  std::vector<std::shared_ptr<const Cochain::Node>> roots_;
};

Cochain mul(const Cochain& a, const Cochain& b);
Cochain d(const Cochain& a);
Cochain interior_e(const Section& e, const Cochain& a);
Cochain interior_f(const Scalar& f, const Cochain& a);
Cochain lie_e(const Section& e, const Cochain& a);
Cochain lie_f(const Scalar& f, const Cochain& a);
Cochain linear_combination(std::vector<std::pair<Rational, Cochain>> terms);
Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator-(const Cochain& a, const Cochain& b);
Cochain operator*(const Rational& c, const Cochain& a);
// {P, Q} applied to a cochain, where P and Q shift degree by dp and dq.
Cochain graded_commutator(const std::function<Cochain(const Cochain&)>& p, int dp,
                          const std::function<Cochain(const Cochain&)>& q, int dq,
                          const Cochain& a);

// Extensional comparison on every battery tuple of every component.
Check equal(const Cochain& a, const Cochain& b, const Battery& battery,
            std::string name = "equal");
Check check_d_squared(const Cochain& a, const Battery& battery);
Check check_symmetry(const Cochain& a, const Battery& battery);

// Iterated symbol in an E-slot or Omega^1-slot:
// sum over subsets S of fs of (-1)^{|fs|-|S|} (prod_{not S} f) w(..., (prod_S f) x, ...).
Scalar iterated_symbol_e(const Cochain& a, int k, int slot, std::span<const Scalar> fs,
                         std::span<const Section> sections, std::span<const OneForm> forms);
Scalar iterated_symbol_omega(const Cochain& a, int k, int slot, std::span<const Scalar> fs,
                             std::span<const Section> sections,
                             std::span<const OneForm> forms);
// Iterated symbols one past the declared order vanish in every slot.
Check check_order(const Cochain& a, const Battery& battery);

// Test cochains over E built from battery data, covering every node kind,
// with degrees up to max_degree (at most 4).
std::vector<Cochain> sample_cochains(const AlgebroidPtr& e, const Battery& battery,
                                     int max_degree = 4);

// Graded commutativity, associativity and the Leibniz rules of d, i_e and
// i_f for the product, on random pairs and triples from `cochains` of total
// degree at most 6, drawn with the battery seed.
Report algebra_laws(const Battery& battery, const std::vector<Cochain>& cochains,
                    int pairs = 40, int triples = 12);

// The Cartan calculus identities on the given cochains.
Report cartan_suite(const AlgebroidPtr& e, const Battery& battery,
                    const std::vector<Cochain>& cochains);

}  // namespace courant
