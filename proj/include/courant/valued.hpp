#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "courant/cochain.hpp"
#include "courant/dorfman.hpp"

namespace courant {

// Cochains with values in B (V = BSection, differential d^nabla) or in
// End(B) (V = Matrix, differential d^{~nabla}).  Same component layout as
// Cochain.
template <class V>
class Valued {
 public:
  enum class Kind {
    Zero,
    Leaf,
    Curvature,  // R^nabla, End(B) only
    Product,    // scalar cochain times valued cochain
    Covariant,
    InteriorE,
    InteriorF,
    NablaE,
    LieF,
    Sum
  };
  struct Node {
    Kind kind;
    int degree;
    int order;
    ConnectionPtr nabla;
    V value;
    std::optional<Cochain> factor;
    Section section;
    Scalar function;
    std::vector<Valued> children;
    std::vector<Rational> coefficients;
  };

  static Valued leaf(ConnectionPtr nabla, V value);
  static Valued zero(ConnectionPtr nabla, int degree);

  Kind kind() const { return node_->kind; }
  int degree() const { return node_->degree; }
  int order() const { return node_->order; }
  const ConnectionPtr& connection() const { return node_->nabla; }
  const Node& node() const { return *node_; }
  const std::shared_ptr<const Node>& node_ptr() const { return node_; }

  explicit Valued(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

using BCochain = Valued<BSection>;
using EndCochain = Valued<Matrix>;

// R^nabla = (d^nabla)^2 as a degree 2 End(B)-valued cochain.
EndCochain curvature_cochain(ConnectionPtr nabla);

template <class V>
Valued<V> product(const Cochain& w, const Valued<V>& h);
template <class V>
Valued<V> tensor(const Cochain& w, const V& value, ConnectionPtr nabla);
template <class V>
Valued<V> covariant(const Valued<V>& h);
template <class V>
Valued<V> interior_e(const Section& e, const Valued<V>& h);
template <class V>
Valued<V> interior_f(const Scalar& f, const Valued<V>& h);
template <class V>
Valued<V> nabla_e(const Section& e, const Valued<V>& h);  // {i_e, d^nabla}
template <class V>
Valued<V> lie_f(const Scalar& f, const Valued<V>& h);  // {i_f, d^nabla}
template <class V>
Valued<V> linear_combination(std::vector<std::pair<Rational, Valued<V>>> terms);

template <class V>
class ValuedEvaluator {
 public:
  using Ids = Evaluator::Ids;
  explicit ValuedEvaluator(ConnectionPtr nabla);

  Evaluator& scalars() { return scalars_; }
  V operator()(const Valued<V>& h, int k, const Ids& sections, const Ids& forms);

 private:
  struct Hash {
    std::size_t operator()(const std::pair<const void*, Ids>& key) const;
  };
  V eval(const typename Valued<V>::Node& n, int k, const Ids& e, const Ids& a);
  V product(const typename Valued<V>::Node& n, int k, const Ids& e, const Ids& a);
  V covariant(const typename Valued<V>::Node& n, int k, const Ids& e, const Ids& a);
  V act(int e, const V& value);
  V zero() const;

  ConnectionPtr nabla_;
  Evaluator scalars_;
  std::unordered_map<std::pair<const void*, Ids>, V, Hash> memo_;
  std::vector<std::shared_ptr<const typename Valued<V>::Node>> roots_;
};

// Extensional equality on every component and every tuple of the E battery.
template <class V>
Check equal(const Valued<V>& a, const Valued<V>& b, const Battery& battery,
            std::string name = "equal");

}  // namespace courant
