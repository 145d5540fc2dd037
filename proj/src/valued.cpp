#include "courant/valued.hpp"

#include <bit>

namespace courant {

namespace {

void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

int inversion_parity(unsigned mask, int m) {
  int inv = 0;
  for (int s = 0; s < m; ++s) {
    if (!(mask & (1u << s))) continue;
    for (int t = 0; t < s; ++t) {
      if (!(mask & (1u << t))) ++inv;
    }
  }
  return inv & 1;
}

void check_cap(int degree) {
  if (degree > kMaxCochainDegree) {
    throw DomainError("cochain degree " + std::to_string(degree) + " exceeds the cap of " +
                      std::to_string(kMaxCochainDegree));
  }
}

BSection zero_value(const DorfmanConnection& nabla, const BSection*) {
  return nabla.predual().zero();
}
Matrix zero_value(const DorfmanConnection& nabla, const Matrix*) {
  return Matrix(nabla.rank(), nabla.rank());
}

bool is_zero(const BSection& v) { return v.is_zero(); }
bool is_zero(const Matrix& m) { return m.is_zero(); }

void add_scaled(BSection& acc, const Scalar& c, const BSection& v) {
  if (c.is_zero()) return;
  acc += c * v;
}

void add_scaled(Matrix& acc, const Scalar& c, const Matrix& v) {
  if (c.is_zero()) return;
  for (int i = 0; i < v.rows(); ++i) {
    for (int j = 0; j < v.cols(); ++j) {
      if (!v(i, j).is_zero()) acc(i, j) += c * v(i, j);
    }
  }
}

std::vector<Scalar> flatten(const BSection& v) { return v.components(); }
std::vector<Scalar> flatten(const Matrix& m) {
  std::vector<Scalar> out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

template <class V>
std::shared_ptr<typename Valued<V>::Node> make(typename Valued<V>::Kind kind, int degree,
                                               int order, ConnectionPtr nabla) {
  auto n = std::make_shared<typename Valued<V>::Node>();
  n->kind = kind;
  n->degree = degree;
  n->order = order;
  n->nabla = std::move(nabla);
  n->value = zero_value(*n->nabla, static_cast<const V*>(nullptr));
  return n;
}

template <class V>
bool zero_kind(const Valued<V>& h) {
  return h.kind() == Valued<V>::Kind::Zero || h.degree() < 0;
}

}  // namespace

template <class V>
Valued<V> Valued<V>::leaf(ConnectionPtr nabla, V value) {
  auto n = make<V>(Kind::Leaf, 0, 1, std::move(nabla));
  n->value = std::move(value);
  return Valued(n);
}

template <class V>
Valued<V> Valued<V>::zero(ConnectionPtr nabla, int degree) {
  return Valued(make<V>(Kind::Zero, degree, 1, std::move(nabla)));
}

EndCochain curvature_cochain(ConnectionPtr nabla) {
  return EndCochain(make<Matrix>(EndCochain::Kind::Curvature, 2, 2, std::move(nabla)));
}

template <class V>
Valued<V> product(const Cochain& w, const Valued<V>& h) {
  if (w.algebroid() != h.connection()->predual().algebroid_ptr()) {
    throw DomainError("scalar cochain over a different algebroid");
  }
  int p = w.degree() + h.degree();
  check_cap(p);
  if (w.kind() == Cochain::Kind::Zero || w.degree() < 0 || zero_kind(h)) {
    return Valued<V>::zero(h.connection(), p);
  }
  auto n = make<V>(Valued<V>::Kind::Product, p, std::max(w.order(), h.order()), h.connection());
  n->factor = w;
  n->children = {h};
  return Valued<V>(n);
}

template <class V>
Valued<V> tensor(const Cochain& w, const V& value, ConnectionPtr nabla) {
  return product(w, Valued<V>::leaf(std::move(nabla), value));
}

template <class V>
Valued<V> covariant(const Valued<V>& h) {
  int p = h.degree() + 1;
  check_cap(p);
  if (zero_kind(h)) return Valued<V>::zero(h.connection(), p);
  auto n = make<V>(Valued<V>::Kind::Covariant, p, h.order() + 1, h.connection());
  n->children = {h};
  return Valued<V>(n);
}

template <class V>
Valued<V> interior_e(const Section& e, const Valued<V>& h) {
  int p = h.degree() - 1;
  if (e.size() != h.connection()->algebroid().rank()) {
    throw DomainError("section has wrong rank");
  }
  if (p < 0 || zero_kind(h)) return Valued<V>::zero(h.connection(), p);
  auto n = make<V>(Valued<V>::Kind::InteriorE, p, h.order(), h.connection());
  n->section = e;
  n->children = {h};
  return Valued<V>(n);
}

template <class V>
Valued<V> interior_f(const Scalar& f, const Valued<V>& h) {
  int p = h.degree() - 2;
  if (p < 0 || zero_kind(h)) return Valued<V>::zero(h.connection(), p);
  auto n = make<V>(Valued<V>::Kind::InteriorF, p, h.order(), h.connection());
  n->function = f;
  n->children = {h};
  return Valued<V>(n);
}

template <class V>
Valued<V> nabla_e(const Section& e, const Valued<V>& h) {
  if (zero_kind(h)) return h;
  auto n = make<V>(Valued<V>::Kind::NablaE, h.degree(), h.order() + 1, h.connection());
  n->section = e;
  n->children = {interior_e(e, covariant(h)), covariant(interior_e(e, h))};
  n->coefficients = {1, 1};
  return Valued<V>(n);
}

template <class V>
Valued<V> lie_f(const Scalar& f, const Valued<V>& h) {
  int p = h.degree() - 1;
  if (p < 0 || zero_kind(h)) return Valued<V>::zero(h.connection(), p);
  auto n = make<V>(Valued<V>::Kind::LieF, p, h.order() + 1, h.connection());
  n->function = f;
  n->children = {interior_f(f, covariant(h)), covariant(interior_f(f, h))};
  n->coefficients = {1, -1};
  return Valued<V>(n);
}

template <class V>
Valued<V> linear_combination(std::vector<std::pair<Rational, Valued<V>>> terms) {
  if (terms.empty()) throw DomainError("empty linear combination");
  int p = terms[0].second.degree();
  ConnectionPtr nabla = terms[0].second.connection();
  int order = 1;
  std::vector<Valued<V>> children;
  std::vector<Rational> coeffs;
  for (auto& [c, h] : terms) {
    if (h.connection() != nabla) throw DomainError("valued cochains for different connections");
    if (h.degree() != p) throw DomainError("sum of cochains of different degrees");
    if (c == 0 || h.kind() == Valued<V>::Kind::Zero) continue;
    order = std::max(order, h.order());
    children.push_back(h);
    coeffs.push_back(c);
  }
  if (children.empty() || p < 0) return Valued<V>::zero(nabla, p);
  auto n = make<V>(Valued<V>::Kind::Sum, p, order, nabla);
  n->children = std::move(children);
  n->coefficients = std::move(coeffs);
  return Valued<V>(n);
}

// ---------------------------------------------------------------- evaluator

template <class V>
std::size_t ValuedEvaluator<V>::Hash::operator()(const std::pair<const void*, Ids>& key) const {
  std::size_t h = std::hash<const void*>{}(key.first);
  for (int i : key.second) mix(h, static_cast<std::size_t>(i));
  return h;
}

template <class V>
ValuedEvaluator<V>::ValuedEvaluator(ConnectionPtr nabla)
    : nabla_(std::move(nabla)), scalars_(nabla_->predual().algebroid_ptr()) {}

template <class V>
V ValuedEvaluator<V>::zero() const {
  return zero_value(*nabla_, static_cast<const V*>(nullptr));
}

template <class V>
V ValuedEvaluator<V>::act(int e, const V& value) {
  if constexpr (std::is_same_v<V, BSection>) {
    return nabla_->apply(scalars_.section(e), value);
  } else {
    return nabla_->endo(scalars_.section(e), value);
  }
}

template <class V>
V ValuedEvaluator<V>::operator()(const Valued<V>& h, int k, const Ids& sections,
                                 const Ids& forms) {
  int p = h.degree();
  if (p < 0) return zero();
  if (k < 0 || 2 * k > p || static_cast<int>(sections.size()) != p - 2 * k ||
      static_cast<int>(forms.size()) != k) {
    throw DomainError("component " + std::to_string(k) + " of a degree " + std::to_string(p) +
                      " cochain takes " + std::to_string(p - 2 * k) + " sections and " +
                      std::to_string(k) + " functions");
  }
  if (h.connection() != nabla_) throw DomainError("cochain for a different connection");
  if (roots_.empty() || roots_.back() != h.node_ptr()) roots_.push_back(h.node_ptr());
  return eval(h.node(), k, sections, forms);
}

template <class V>
V ValuedEvaluator<V>::eval(const typename Valued<V>::Node& n, int k, const Ids& e,
                           const Ids& a) {
  using Kind = typename Valued<V>::Kind;
  if (n.degree < 0 || k < 0 || 2 * k > n.degree || n.kind == Kind::Zero) return zero();
  if (n.kind == Kind::Leaf) return n.value;
  std::pair<const void*, Ids> key{&n, {}};
  key.second.reserve(e.size() + a.size() + 2);
  key.second.push_back(k);
  key.second.insert(key.second.end(), e.begin(), e.end());
  key.second.push_back(-1);
  key.second.insert(key.second.end(), a.begin(), a.end());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  V value = zero();
  switch (n.kind) {
    case Kind::Curvature:
      if constexpr (std::is_same_v<V, Matrix>) {
        if (k == 0) {
          value = nabla_->curvature0_matrix(scalars_.section(e[0]), scalars_.section(e[1]));
        } else {
          const CourantAlgebroid& alg = scalars_.algebroid();
          for (const auto& [g, f] : scalars_.form(a[0]).terms) {
            if (f.is_constant()) continue;
            add_scaled(value, g, nabla_->curvature1_matrix(alg.d(f)));
          }
        }
      }
      break;
    case Kind::Product:
      value = product(n, k, e, a);
      break;
    case Kind::Covariant:
      value = covariant(n, k, e, a);
      break;
    case Kind::InteriorE: {
      Ids args{scalars_.intern(n.section)};
      args.insert(args.end(), e.begin(), e.end());
      value = eval(n.children[0].node(), k, args, a);
      break;
    }
    case Kind::InteriorF: {
      Ids args{scalars_.intern(OneForm::exact(n.function))};
      args.insert(args.end(), a.begin(), a.end());
      value = eval(n.children[0].node(), k + 1, e, args);
      break;
    }
    case Kind::NablaE:
    case Kind::LieF:
    case Kind::Sum:
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        add_scaled(value, Scalar(n.coefficients[i]), eval(n.children[i].node(), k, e, a));
      }
      break;
    default:
      break;
  }
  memo_.emplace(std::move(key), value);
  return value;
}

template <class V>
V ValuedEvaluator<V>::product(const typename Valued<V>::Node& n, int k, const Ids& e,
                              const Ids& a) {
  const Cochain& x = *n.factor;
  const auto& y = n.children[0].node();
  int p = x.degree();
  int q = y.degree;
  int m = static_cast<int>(e.size());
  V sum = zero();
  for (int i = std::max(0, k - q / 2); i <= std::min(k, p / 2); ++i) {
    int j = k - i;
    int na = p - 2 * i;
    int nb = q - 2 * j;
    if (na < 0 || nb < 0 || na + nb != m) continue;
    for (unsigned smask = 0; smask < (1u << m); ++smask) {
      if (std::popcount(smask) != na) continue;
      bool negative = inversion_parity(smask, m) != 0;
      Ids ea;
      Ids eb;
      for (int s = 0; s < m; ++s) ((smask & (1u << s)) ? ea : eb).push_back(e[s]);
      for (unsigned tmask = 0; tmask < (1u << k); ++tmask) {
        if (std::popcount(tmask) != i) continue;
        Ids fa;
        Ids fb;
        for (int t = 0; t < k; ++t) ((tmask & (1u << t)) ? fa : fb).push_back(a[t]);
        Scalar vx = scalars_(x, i, ea, fa);
        if (vx.is_zero()) continue;
        V vy = eval(y, j, eb, fb);
        add_scaled(sum, negative ? -vx : vx, vy);
      }
    }
  }
  return sum;
}

template <class V>
V ValuedEvaluator<V>::covariant(const typename Valued<V>::Node& n, int k, const Ids& e,
                                const Ids& a) {
  const auto& w = n.children[0].node();
  int p = w.degree;
  int m = static_cast<int>(e.size());
  V sum = zero();
  for (int mu = 0; mu < k; ++mu) {
    Ids args{scalars_.sharp(a[mu])};
    args.insert(args.end(), e.begin(), e.end());
    Ids rest;
    for (int t = 0; t < k; ++t) {
      if (t != mu) rest.push_back(a[t]);
    }
    add_scaled(sum, Scalar(1), eval(w, k - 1, args, rest));
  }
  if (k > p / 2) return sum;
  bool exact = true;
  for (int f : a) exact = exact && scalars_.exact(f);
  Scalar plus(1);
  Scalar minus(-1);
  for (int i = 0; i < m; ++i) {
    Ids rest;
    for (int s = 0; s < m; ++s) {
      if (s != i) rest.push_back(e[s]);
    }
    V inner = eval(w, k, rest, a);
    add_scaled(sum, i % 2 == 0 ? plus : minus, act(e[i], inner));
    if (exact) continue;
    for (int mu = 0; mu < k; ++mu) {
      int c = scalars_.contract(a[mu], e[i]);
      if (c < 0) continue;
      Ids changed = a;
      changed[mu] = c;
      add_scaled(sum, i % 2 == 0 ? minus : plus, eval(w, k, rest, changed));
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Ids args;
      for (int s = 0; s < j; ++s) {
        if (s != i) args.push_back(e[s]);
      }
      args.push_back(scalars_.bracket(e[i], e[j]));
      for (int s = j + 1; s < m; ++s) args.push_back(e[s]);
      add_scaled(sum, i % 2 == 0 ? minus : plus, eval(w, k, args, a));
    }
  }
  return sum;
}

template <class V>
Check equal(const Valued<V>& a, const Valued<V>& b, const Battery& battery, std::string name) {
  Check c;
  c.name = std::move(name);
  c.identity = "extensional equality on the battery";
  if (a.degree() != b.degree()) {
    if (!(zero_kind(a) && zero_kind(b))) {
      c.status = Status::Fail;
      c.detail = "degrees differ: " + std::to_string(a.degree()) + " vs " +
                 std::to_string(b.degree());
    }
    return c;
  }
  int p = a.degree();
  if (p < 0) return c;
  ValuedEvaluator<V> ev(a.connection());
  for (int k = 0; 2 * k <= p; ++k) {
    for (const auto& t : battery.tuples(p - 2 * k, k)) {
      Evaluator::Ids sections;
      Evaluator::Ids forms;
      for (int v : t.vectors) sections.push_back(ev.scalars().intern(battery.vector<Section>(v)));
      for (int f : t.functions) {
        forms.push_back(ev.scalars().intern(OneForm::exact(battery.function(f))));
      }
      ++c.evaluations;
      V diff = ev(a, k, sections, forms);
      add_scaled(diff, Scalar(-1), ev(b, k, sections, forms));
      if (!is_zero(diff)) {
        c.status = Status::Fail;
        c.witness = Witness{"k=" + std::to_string(k) + ": " + battery.describe(t), flatten(diff)};
        return c;
      }
    }
  }
  return c;
}

#define COURANT_INSTANTIATE(V)                                                              \
  template class Valued<V>;                                                                 \
  template class ValuedEvaluator<V>;                                                        \
  template Valued<V> product<V>(const Cochain&, const Valued<V>&);                          \
  template Valued<V> tensor<V>(const Cochain&, const V&, ConnectionPtr);                    \
  template Valued<V> covariant<V>(const Valued<V>&);                                        \
  template Valued<V> interior_e<V>(const Section&, const Valued<V>&);                       \
  template Valued<V> interior_f<V>(const Scalar&, const Valued<V>&);                        \
  template Valued<V> nabla_e<V>(const Section&, const Valued<V>&);                          \
  template Valued<V> lie_f<V>(const Scalar&, const Valued<V>&);                             \
  template Valued<V> linear_combination<V>(std::vector<std::pair<Rational, Valued<V>>>);    \
  template Check equal<V>(const Valued<V>&, const Valued<V>&, const Battery&, std::string);

COURANT_INSTANTIATE(BSection)
COURANT_INSTANTIATE(Matrix)

#undef COURANT_INSTANTIATE

}  // namespace courant
