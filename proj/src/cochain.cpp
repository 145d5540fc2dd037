#include "courant/cochain.hpp"

#include <bit>
#include <functional>
#include <random>
#include <span>

namespace courant {

// ------------------------------------------------------------------ OneForm

OneForm OneForm::scaled(const Scalar& g) const {
  OneForm out;
  for (const auto& [c, f] : terms) {
    Scalar gc = g * c;
    if (!gc.is_zero()) out.terms.emplace_back(std::move(gc), f);
  }
  return out;
}

bool OneForm::is_exact_form() const {
  for (const auto& [c, f] : terms) {
    if (!c.is_constant()) return false;
  }
  return true;
}

Section OneForm::sharp(const CourantAlgebroid& e) const {
  Section out = e.zero();
  for (const auto& [c, f] : terms) {
    if (f.is_constant()) continue;
    out += c * e.d(f);
  }
  return out;
}

OneForm OneForm::contract_differential(const CourantAlgebroid& e, const Section& x) const {
  OneForm out;
  for (const auto& [c, f] : terms) {
    if (c.is_constant() || f.is_constant()) continue;
    Scalar xc = e.anchor_apply(x, c);
    Scalar xf = e.anchor_apply(x, f);
    if (!xc.is_zero()) out.terms.emplace_back(std::move(xc), f);
    if (!xf.is_zero()) out.terms.emplace_back(-xf, c);
  }
  return out;
}

// ---------------------------------------------------------------- Evaluator

namespace {

void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

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

std::shared_ptr<Cochain::Node> make(Cochain::Kind kind, int degree, int order,
                                    AlgebroidPtr e) {
  auto node = std::make_shared<Cochain::Node>();
  node->kind = kind;
  node->degree = degree;
  node->order = order;
  node->algebroid = std::move(e);
  return node;
}

void check_cap(int degree) {
  if (degree > kMaxCochainDegree) {
    throw DomainError("cochain degree " + std::to_string(degree) + " exceeds the cap of " +
                      std::to_string(kMaxCochainDegree));
  }
}

void check_same(const Cochain& a, const Cochain& b) {
  if (a.algebroid() != b.algebroid()) {
    throw DomainError("cochains over different algebroids");
  }
}


}  // namespace

std::size_t Evaluator::Hash::operator()(const Section& s) const {
  std::size_t h = 0;
  for (const auto& c : s.components()) mix(h, hash_value(c));
  return h;
}

std::size_t Evaluator::Hash::operator()(const OneForm& f) const {
  std::size_t h = 1;
  for (const auto& [g, x] : f.terms) {
    mix(h, hash_value(g));
    mix(h, hash_value(x));
  }
  return h;
}

std::size_t Evaluator::Hash::operator()(const std::pair<const Cochain::Node*, Ids>& key) const {
  std::size_t h = std::hash<const void*>{}(key.first);
  for (int i : key.second) mix(h, static_cast<std::size_t>(i));
  return h;
}

Evaluator::Evaluator(AlgebroidPtr e) : e_(std::move(e)) {}

int Evaluator::intern(const Section& s) {
  auto [it, inserted] = section_ids_.emplace(s, static_cast<int>(sections_.size()));
  if (inserted) {
    if (s.size() != e_->rank()) throw DomainError("section has wrong rank");
    sections_.push_back(s);
    anchors_.push_back(e_->anchor_field(s));
  }
  return it->second;
}

int Evaluator::intern(const OneForm& f) {
  auto [it, inserted] = form_ids_.emplace(f, static_cast<int>(forms_.size()));
  if (inserted) {
    forms_.push_back(f);
    exact_.push_back(f.is_exact_form());
    sharp_.push_back(-1);
  }
  return it->second;
}

int Evaluator::bracket(int a, int b) {
  auto key = pair_key(a, b);
  auto it = brackets_.find(key);
  if (it != brackets_.end()) return it->second;
  int id = intern(e_->bracket(sections_[a], sections_[b]));
  brackets_.emplace(key, id);
  return id;
}

Scalar Evaluator::anchor(int a, const Scalar& f) {
  if (f.is_constant()) return Scalar();
  return apply_field(anchors_[a], f);
}

int Evaluator::sharp(int f) {
  if (sharp_[f] < 0) {
    Section s = forms_[f].sharp(*e_);
    sharp_[f] = intern(s);
  }
  return sharp_[f];
}

int Evaluator::contract(int f, int x) {
  auto key = pair_key(f, x);
  auto it = contractions_.find(key);
  if (it != contractions_.end()) return it->second;
  OneForm c = forms_[f].contract_differential(*e_, sections_[x]);
  int id = c.terms.empty() ? -1 : intern(c);
  contractions_.emplace(key, id);
  return id;
}

Scalar Evaluator::operator()(const Cochain& c, int k, const Ids& sections, const Ids& forms) {
  int p = c.degree();
  if (p < 0) return Scalar();
  if (k < 0 || 2 * k > p) {
    throw DomainError("component " + std::to_string(k) + " does not exist in degree " +
                      std::to_string(p));
  }
  if (static_cast<int>(sections.size()) != p - 2 * k || static_cast<int>(forms.size()) != k) {
    throw DomainError("component " + std::to_string(k) + " of a degree " + std::to_string(p) +
                      " cochain takes " + std::to_string(p - 2 * k) + " sections and " +
                      std::to_string(k) + " functions");
  }
  if (c.algebroid() != e_) throw DomainError("cochain over a different algebroid");
  if (roots_.empty() || roots_.back() != c.node_ptr()) roots_.push_back(c.node_ptr());
  return eval(c.node(), k, sections, forms);
}

Scalar Evaluator::eval(const Cochain::Node& n, int k, const Ids& e, const Ids& a) {
  if (n.degree < 0 || k < 0 || 2 * k > n.degree) return Scalar();
  switch (n.kind) {
    case Cochain::Kind::Zero:
      return Scalar();
    case Cochain::Kind::ScalarLeaf:
      return n.function;
    default:
      break;
  }
  std::pair<const Cochain::Node*, Ids> key{&n, {}};
  key.second.reserve(e.size() + a.size() + 2);
  key.second.push_back(k);
  key.second.insert(key.second.end(), e.begin(), e.end());
  key.second.push_back(-1);
  key.second.insert(key.second.end(), a.begin(), a.end());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  Scalar value;
  switch (n.kind) {
    case Cochain::Kind::SectionLeaf:
      value = e_->pairing(n.section, sections_[e[0]]);
      break;
    case Cochain::Kind::Product:
      value = product(n, k, e, a);
      break;
    case Cochain::Kind::Differential:
      value = differential(n, k, e, a);
      break;
    case Cochain::Kind::InteriorE: {
      Ids args{intern(n.section)};
      args.insert(args.end(), e.begin(), e.end());
      value = eval(n.children[0].node(), k, args, a);
      break;
    }
    case Cochain::Kind::InteriorF: {
      Ids args{intern(OneForm::exact(n.function))};
      args.insert(args.end(), a.begin(), a.end());
      value = eval(n.children[0].node(), k + 1, e, args);
      break;
    }
    case Cochain::Kind::LieE:
    case Cochain::Kind::LieF:
    case Cochain::Kind::Sum:
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        Scalar v = eval(n.children[i].node(), k, e, a);
        if (!v.is_zero()) value += Scalar(n.coefficients[i]) * v;
      }
      break;
    default:
      break;
  }
  memo_.emplace(std::move(key), value);
  return value;
}

Scalar Evaluator::product(const Cochain::Node& n, int k, const Ids& e, const Ids& a) {
  const Cochain::Node& x = n.children[0].node();
  const Cochain::Node& y = n.children[1].node();
  int p = x.degree;
  int q = y.degree;
  int m = static_cast<int>(e.size());
  Scalar sum;
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
        Scalar vx = eval(x, i, ea, fa);
        if (vx.is_zero()) continue;
        Scalar vy = eval(y, j, eb, fb);
        if (vy.is_zero()) continue;
        if (negative) {
          sum -= vx * vy;
        } else {
          sum += vx * vy;
        }
      }
    }
  }
  return sum;
}

Scalar Evaluator::differential(const Cochain::Node& n, int k, const Ids& e, const Ids& a) {
  const Cochain::Node& w = n.children[0].node();
  int p = w.degree;
  int m = static_cast<int>(e.size());
  Scalar sum;
  // Omega^1 arguments moved into the first E slot through rho^*.
  for (int mu = 0; mu < k; ++mu) {
    Ids args{sharp(a[mu])};
    args.insert(args.end(), e.begin(), e.end());
    Ids rest;
    for (int t = 0; t < k; ++t) {
      if (t != mu) rest.push_back(a[t]);
    }
    sum += eval(w, k - 1, args, rest);
  }
  if (k > p / 2) return sum;
  bool exact = true;
  for (int f : a) exact = exact && exact_[f];
  for (int i = 0; i < m; ++i) {
    Ids rest;
    for (int s = 0; s < m; ++s) {
      if (s != i) rest.push_back(e[s]);
    }
    Scalar term = anchor(e[i], eval(w, k, rest, a));
    if (i % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (exact) continue;
    for (int mu = 0; mu < k; ++mu) {
      int c = contract(a[mu], e[i]);
      if (c < 0) continue;
      Ids changed = a;
      changed[mu] = c;
      Scalar t = eval(w, k, rest, changed);
      if (i % 2 == 0) {
        sum -= t;
      } else {
        sum += t;
      }
    }
  }
  // Bracket inserted where e_j stood.
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Ids args;
      for (int s = 0; s < j; ++s) {
        if (s != i) args.push_back(e[s]);
      }
      args.push_back(bracket(e[i], e[j]));
      for (int s = j + 1; s < m; ++s) args.push_back(e[s]);
      Scalar t = eval(w, k, args, a);
      if (i % 2 == 0) {
        sum -= t;
      } else {
        sum += t;
      }
    }
  }
  return sum;
}

// ------------------------------------------------------------------ Cochain

Cochain Cochain::scalar(AlgebroidPtr e, Scalar f) {
  auto n = make(Kind::ScalarLeaf, 0, 1, std::move(e));
  n->function = std::move(f);
  return Cochain(n);
}

Cochain Cochain::section(AlgebroidPtr e, Section s) {
  if (s.size() != e->rank()) throw DomainError("section has wrong rank");
  auto n = make(Kind::SectionLeaf, 1, 1, std::move(e));
  n->section = std::move(s);
  return Cochain(n);
}

Cochain Cochain::zero(AlgebroidPtr e, int degree) {
  return Cochain(make(Kind::Zero, degree, 1, std::move(e)));
}

Cochain::Kind Cochain::kind() const { return node_->kind; }
int Cochain::degree() const { return node_->degree; }
int Cochain::order() const { return node_->order; }
const AlgebroidPtr& Cochain::algebroid() const { return node_->algebroid; }

Scalar Cochain::evaluate(int k, std::span<const Section> sections,
                         std::span<const Scalar> functions) const {
  std::vector<OneForm> forms;
  for (const auto& f : functions) forms.push_back(OneForm::exact(f));
  return evaluate_forms(k, sections, forms);
}

Scalar Cochain::evaluate_forms(int k, std::span<const Section> sections,
                               std::span<const OneForm> forms) const {
  Evaluator ev(algebroid());
  Evaluator::Ids e;
  Evaluator::Ids a;
  for (const auto& s : sections) e.push_back(ev.intern(s));
  for (const auto& f : forms) a.push_back(ev.intern(f));
  return ev(*this, k, e, a);
}

std::string Cochain::describe() const {
  const Node& n = *node_;
  auto child = [&](int i) { return n.children[i].describe(); };
  switch (n.kind) {
    case Kind::Zero:
      return "0";
    case Kind::ScalarLeaf:
      return "[" + n.function.to_string() + "]";
    case Kind::SectionLeaf:
      return "<" + n.section.to_string() + ",.>";
    case Kind::Product:
      return "(" + child(0) + " . " + child(1) + ")";
    case Kind::Differential:
      return "d" + child(0);
    case Kind::InteriorE:
      return "i_" + n.section.to_string() + " " + child(0);
    case Kind::InteriorF:
      return "i_[" + n.function.to_string() + "] " + child(0);
    case Kind::LieE:
      return "L_" + n.section.to_string() + " " + n.children[0].node().children[0].describe();
    case Kind::LieF:
      return "L_[" + n.function.to_string() + "] " +
             n.children[0].node().children[0].describe();
    case Kind::Sum: {
      std::string out = "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += " + ";
        out += n.coefficients[i].get_str() + "*" + n.children[i].describe();
      }
      return out + ")";
    }
  }
  return "?";
}

Cochain mul(const Cochain& a, const Cochain& b) {
  check_same(a, b);
  int p = a.degree() + b.degree();
  check_cap(p);
  if (a.kind() == Cochain::Kind::Zero || b.kind() == Cochain::Kind::Zero || a.degree() < 0 ||
      b.degree() < 0) {
    return Cochain::zero(a.algebroid(), p);
  }
  auto n = make(Cochain::Kind::Product, p, std::max(a.order(), b.order()), a.algebroid());
  n->children = {a, b};
  return Cochain(n);
}

Cochain d(const Cochain& a) {
  int p = a.degree() + 1;
  check_cap(p);
  if (a.kind() == Cochain::Kind::Zero || a.degree() < 0) return Cochain::zero(a.algebroid(), p);
  auto n = make(Cochain::Kind::Differential, p, a.order() + 1, a.algebroid());
  n->children = {a};
  return Cochain(n);
}

Cochain interior_e(const Section& e, const Cochain& a) {
  int p = a.degree() - 1;
  if (e.size() != a.algebroid()->rank()) throw DomainError("section has wrong rank");
  if (p < 0 || a.kind() == Cochain::Kind::Zero) return Cochain::zero(a.algebroid(), p);
  auto n = make(Cochain::Kind::InteriorE, p, a.order(), a.algebroid());
  n->section = e;
  n->children = {a};
  return Cochain(n);
}

Cochain interior_f(const Scalar& f, const Cochain& a) {
  int p = a.degree() - 2;
  if (p < 0 || a.kind() == Cochain::Kind::Zero) return Cochain::zero(a.algebroid(), p);
  auto n = make(Cochain::Kind::InteriorF, p, a.order(), a.algebroid());
  n->function = f;
  n->children = {a};
  return Cochain(n);
}

Cochain lie_e(const Section& e, const Cochain& a) {
  if (a.kind() == Cochain::Kind::Zero || a.degree() < 0) return a;
  auto n = make(Cochain::Kind::LieE, a.degree(), a.order() + 1, a.algebroid());
  n->section = e;
  n->children = {interior_e(e, d(a)), d(interior_e(e, a))};
  n->coefficients = {1, 1};
  return Cochain(n);
}

Cochain lie_f(const Scalar& f, const Cochain& a) {
  int p = a.degree() - 1;
  if (p < 0 || a.kind() == Cochain::Kind::Zero) return Cochain::zero(a.algebroid(), p);
  auto n = make(Cochain::Kind::LieF, p, a.order() + 1, a.algebroid());
  n->function = f;
  n->children = {interior_f(f, d(a)), d(interior_f(f, a))};
  n->coefficients = {1, -1};
  return Cochain(n);
}

Cochain linear_combination(std::vector<std::pair<Rational, Cochain>> terms) {
  if (terms.empty()) throw DomainError("empty linear combination");
  int p = terms[0].second.degree();
  AlgebroidPtr e = terms[0].second.algebroid();
  int order = 1;
  std::vector<Cochain> children;
  std::vector<Rational> coeffs;
  for (auto& [c, w] : terms) {
    check_same(terms[0].second, w);
    if (w.degree() != p) throw DomainError("sum of cochains of different degrees");
    if (c == 0 || w.kind() == Cochain::Kind::Zero) continue;
    order = std::max(order, w.order());
    children.push_back(w);
    coeffs.push_back(c);
  }
  if (children.empty() || p < 0) return Cochain::zero(e, p);
  auto n = make(Cochain::Kind::Sum, p, order, e);
  n->children = std::move(children);
  n->coefficients = std::move(coeffs);
  return Cochain(n);
}

Cochain operator+(const Cochain& a, const Cochain& b) {
  return linear_combination({{Rational(1), a}, {Rational(1), b}});
}

Cochain operator-(const Cochain& a, const Cochain& b) {
  return linear_combination({{Rational(1), a}, {Rational(-1), b}});
}

Cochain operator*(const Rational& c, const Cochain& a) {
  return linear_combination({{c, a}});
}

Cochain graded_commutator(const std::function<Cochain(const Cochain&)>& p, int dp,
                          const std::function<Cochain(const Cochain&)>& q, int dq,
                          const Cochain& a) {
  Rational sign = ((dp * dq) % 2 == 0) ? -1 : 1;
  return linear_combination({{Rational(1), p(q(a))}, {sign, q(p(a))}});
}

// ------------------------------------------------------------------- checks

namespace {

struct Args {
  Evaluator::Ids sections;
  Evaluator::Ids forms;
  std::vector<Scalar> functions;
};

Args unpack(Evaluator& ev, const Battery& battery, const Battery::Tuple& t) {
  Args out;
  for (int v : t.vectors) out.sections.push_back(ev.intern(battery.vector<Section>(v)));
  for (int f : t.functions) {
    out.functions.push_back(battery.function(f));
    out.forms.push_back(ev.intern(OneForm::exact(battery.function(f))));
  }
  return out;
}

std::string component_label(int k, const Battery& battery, const Battery::Tuple& t) {
  return "k=" + std::to_string(k) + ": " + battery.describe(t);
}

Scalar symbol(Evaluator& ev, const Cochain& a, int k, bool omega, int slot,
              std::span<const Scalar> fs, const Evaluator::Ids& sections,
              const Evaluator::Ids& forms) {
  int s = static_cast<int>(fs.size());
  Scalar sum;
  for (unsigned mask = 0; mask < (1u << s); ++mask) {
    Scalar inside(1);
    Scalar outside(1);
    for (int i = 0; i < s; ++i) ((mask & (1u << i)) ? inside : outside) *= fs[i];
    Evaluator::Ids e = sections;
    Evaluator::Ids f = forms;
    if (omega) {
      f[slot] = ev.intern(ev.form(f[slot]).scaled(inside));
    } else {
      e[slot] = ev.intern(inside * ev.section(e[slot]));
    }
    Scalar v = outside * ev(a, k, e, f);
    if ((s - std::popcount(mask)) % 2) {
      sum -= v;
    } else {
      sum += v;
    }
  }
  return sum;
}

Scalar symbol_public(const Cochain& a, int k, bool omega, int slot, std::span<const Scalar> fs,
                     std::span<const Section> sections, std::span<const OneForm> forms) {
  Evaluator ev(a.algebroid());
  Evaluator::Ids e;
  Evaluator::Ids f;
  for (const auto& x : sections) e.push_back(ev.intern(x));
  for (const auto& x : forms) f.push_back(ev.intern(x));
  return symbol(ev, a, k, omega, slot, fs, e, f);
}

}  // namespace

Check equal(const Cochain& a, const Cochain& b, const Battery& battery, std::string name) {
  Check c;
  c.name = std::move(name);
  c.identity = "extensional equality on the battery";
  if (a.degree() != b.degree()) {
    bool both_zero = a.kind() == Cochain::Kind::Zero && b.kind() == Cochain::Kind::Zero;
    if (!both_zero) {
      c.status = Status::Fail;
      c.detail = "degrees differ: " + std::to_string(a.degree()) + " vs " +
                 std::to_string(b.degree());
    }
    return c;
  }
  check_same(a, b);
  int p = a.degree();
  if (p < 0) return c;
  Evaluator ev(a.algebroid());
  for (int k = 0; 2 * k <= p; ++k) {
    for (const auto& t : battery.tuples(p - 2 * k, k)) {
      Args args = unpack(ev, battery, t);
      ++c.evaluations;
      Scalar diff = ev(a, k, args.sections, args.forms) - ev(b, k, args.sections, args.forms);
      if (!diff.is_zero()) {
        c.status = Status::Fail;
        c.witness = Witness{component_label(k, battery, t), {diff}};
        return c;
      }
    }
  }
  return c;
}

Check check_d_squared(const Cochain& a, const Battery& battery) {
  Check c = equal(d(d(a)), Cochain::zero(a.algebroid(), a.degree() + 2), battery, "d_squared");
  c.identity = "d(d w) = 0";
  return c;
}

Check check_symmetry(const Cochain& a, const Battery& battery) {
  Check c;
  c.name = "symmetry_condition";
  c.identity =
      "w_k(..,v_i,v_{i+1},..) + w_k(..,v_{i+1},v_i,..) = -w_{k+1}(..;<v_i,v_{i+1}>,..)";
  int p = a.degree();
  Evaluator ev(a.algebroid());
  const CourantAlgebroid& alg = *a.algebroid();
  for (int k = 0; p - 2 * k >= 2; ++k) {
    int m = p - 2 * k;
    for (const auto& t : battery.tuples(m, k)) {
      Args args = unpack(ev, battery, t);
      for (int i = 0; i + 1 < m; ++i) {
        ++c.evaluations;
        Evaluator::Ids swapped = args.sections;
        std::swap(swapped[i], swapped[i + 1]);
        Evaluator::Ids rest;
        for (int s = 0; s < m; ++s) {
          if (s != i && s != i + 1) rest.push_back(args.sections[s]);
        }
        Scalar g = alg.pairing(ev.section(args.sections[i]), ev.section(args.sections[i + 1]));
        Evaluator::Ids forms{ev.intern(OneForm::exact(g))};
        forms.insert(forms.end(), args.forms.begin(), args.forms.end());
        Scalar r = ev(a, k, args.sections, args.forms) + ev(a, k, swapped, args.forms) +
                   ev(a, k + 1, rest, forms);
        if (!r.is_zero()) {
          c.status = Status::Fail;
          c.witness =
              Witness{component_label(k, battery, t) + " (slot " + std::to_string(i + 1) + ")",
                      {r}};
          return c;
        }
      }
    }
  }
  return c;
}

Scalar iterated_symbol_e(const Cochain& a, int k, int slot, std::span<const Scalar> fs,
                         std::span<const Section> sections, std::span<const OneForm> forms) {
  return symbol_public(a, k, false, slot, fs, sections, forms);
}

Scalar iterated_symbol_omega(const Cochain& a, int k, int slot, std::span<const Scalar> fs,
                             std::span<const Section> sections,
                             std::span<const OneForm> forms) {
  return symbol_public(a, k, true, slot, fs, sections, forms);
}

Check check_order(const Cochain& a, const Battery& battery) {
  constexpr std::size_t kTuplesPerSlot = 8;
  Check c;
  c.name = "order_bound";
  c.identity = "iterated symbols beyond the declared order vanish";
  int p = a.degree();
  int m = a.order();
  Evaluator ev(a.algebroid());
  for (int k = 0; 2 * k <= p; ++k) {
    int ne = p - 2 * k;
    auto run = [&](bool omega, int slot, int bound) {
      auto tuples = battery.tuples(ne, k + bound + 1);
      if (tuples.size() > kTuplesPerSlot) tuples.resize(kTuplesPerSlot);
      for (const auto& t : tuples) {
        Args args = unpack(ev, battery, t);
        std::vector<Scalar> fs(args.functions.begin() + k, args.functions.end());
        Evaluator::Ids forms(args.forms.begin(), args.forms.begin() + k);
        ++c.evaluations;
        Scalar v = symbol(ev, a, k, omega, slot, fs, args.sections, forms);
        if (!v.is_zero()) {
          c.status = Status::Fail;
          c.witness = Witness{component_label(k, battery, t) + (omega ? " (form slot " : " (slot ") +
                                  std::to_string(slot + 1) + ")",
                              {v}};
          return false;
        }
      }
      return true;
    };
    for (int slot = 0; slot < ne; ++slot) {
      int bound = (slot == ne - 1 && p >= 2) ? m - 1 : m;
      if (!run(false, slot, bound)) return c;
    }
    for (int slot = 0; slot < k; ++slot) {
      if (!run(true, slot, m)) return c;
    }
  }
  return c;
}

// --------------------------------------------------------------- test sets

std::vector<Cochain> sample_cochains(const AlgebroidPtr& e, const Battery& battery,
                                     int max_degree) {
  int r = e->rank();
  int nv = static_cast<int>(battery.vectors().size());
  int nf = static_cast<int>(battery.functions().size());
  auto vec = [&](int i) { return battery.vector<Section>(std::min(i, nv - 1)); };
  Section s0 = vec(0);
  Section s1 = vec(r > 1 ? 1 : 0);
  Section s2 = vec(r + 1);
  Section s3 = vec(nv - 1);
  Scalar f1 = battery.function(std::min(1, nf - 1));
  Scalar f2 = battery.function(nf - 1);
  auto S = [&](const Section& s) { return Cochain::section(e, s); };
  auto F = [&](const Scalar& f) { return Cochain::scalar(e, f); };

  std::vector<Cochain> out{
      F(f2),
      S(s3),
      S(s2),
      d(F(f2)),
      mul(F(f1), S(s0)),
      mul(S(s0), S(s3)),
      d(S(s3)),
      mul(d(F(f1)), S(s2)),
      lie_f(f1, d(S(s2))),
      interior_f(f2, d(S(s0))),
      mul(S(s0), mul(S(s1), S(s3))),
      d(mul(S(s2), S(s3))),
      mul(d(S(s1)), S(s3)),
      lie_e(s3, mul(S(s1), S(s2))),
      S(s0) + mul(F(f2), S(s3)),
      interior_e(s2, mul(S(s0), mul(S(s1), S(s3)))),
      lie_e(s0, d(mul(S(s1), S(s3)))),
      mul(lie_f(f2, d(S(s3))), d(S(s0))),
      interior_e(s3, d(mul(S(s1), d(S(s2))))),
      mul(F(f1), mul(d(S(s3)), S(s1))),
      mul(d(S(s3)), d(S(s1))),
      mul(S(s0), mul(S(s1), mul(S(s2), S(s3)))),
      interior_f(f1, mul(d(S(s2)), d(S(s3)))),
      d(interior_f(f2, mul(d(S(s0)), d(S(s3))))),
  };
  std::vector<Cochain> kept;
  for (auto& c : out) {
    if (c.degree() >= 0 && c.degree() <= max_degree) kept.push_back(std::move(c));
  }
  return kept;
}

Report algebra_laws(const Battery& battery, const std::vector<Cochain>& cochains, int pairs,
                    int triples) {
  auto sign = [](int p, int q) { return Rational((p * q) % 2 ? -1 : 1); };
  Section v = battery.vector<Section>(static_cast<int>(battery.vectors().size()) - 1);
  Scalar f = battery.function(static_cast<int>(battery.functions().size()) - 1);
  struct Law {
    std::string name;
    std::string text;
    Check check;
  };
  std::vector<Law> laws{
      {"graded_commutativity", "a b = (-1)^{pq} b a", {}},
      {"associativity", "(a b) c = a (b c)", {}},
      {"leibniz_d", "d(a b) = (d a) b + (-1)^p a d b", {}},
      {"leibniz_interior_e", "i_e(a b) = (i_e a) b + (-1)^p a i_e b", {}},
      {"leibniz_interior_f", "i_f(a b) = (i_f a) b + a i_f b", {}},
  };
  for (auto& law : laws) {
    law.check.name = law.name;
    law.check.identity = law.text;
  }
  auto record = [](Law& law, const Cochain& lhs, const Cochain& rhs, const Battery& b,
                   const std::string& where) {
    if (!law.check.passed()) return;
    Check one = equal(lhs, rhs, b, law.name);
    law.check.evaluations += one.evaluations;
    if (!one.passed()) {
      law.check.status = Status::Fail;
      law.check.detail = "on " + where + (one.detail.empty() ? "" : ": " + one.detail);
      law.check.witness = one.witness;
    }
  };
  std::mt19937_64 rng(battery.config().seed);
  auto draw = [&](int arity) {
    std::vector<const Cochain*> pick;
    int total = 0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      pick.clear();
      total = 0;
      for (int i = 0; i < arity; ++i) {
        pick.push_back(&cochains[rng() % cochains.size()]);
        total += pick.back()->degree();
      }
      if (total <= kMaxCochainDegree) return pick;
    }
    return std::vector<const Cochain*>{};
  };
  for (int t = 0; t < pairs && !cochains.empty(); ++t) {
    auto pick = draw(2);
    if (pick.empty()) continue;
    const Cochain& x = *pick[0];
    const Cochain& y = *pick[1];
    int p = x.degree();
    int q = y.degree();
    std::string where = x.describe() + " ; " + y.describe();
    record(laws[0], mul(x, y), sign(p, q) * mul(y, x), battery, where);
    if (p + q + 1 <= kMaxCochainDegree) {
      record(laws[2], d(mul(x, y)), mul(d(x), y) + sign(p, 1) * mul(x, d(y)), battery, where);
    }
    record(laws[3], interior_e(v, mul(x, y)),
           mul(interior_e(v, x), y) + sign(p, 1) * mul(x, interior_e(v, y)), battery, where);
    record(laws[4], interior_f(f, mul(x, y)),
           mul(interior_f(f, x), y) + mul(x, interior_f(f, y)), battery, where);
  }
  for (int t = 0; t < triples && !cochains.empty(); ++t) {
    auto pick = draw(3);
    if (pick.empty()) continue;
    const Cochain& x = *pick[0];
    const Cochain& y = *pick[1];
    const Cochain& z = *pick[2];
    record(laws[1], mul(mul(x, y), z), mul(x, mul(y, z)), battery,
           x.describe() + " ; " + y.describe() + " ; " + z.describe());
  }
  Report report;
  for (auto& law : laws) report.checks.push_back(std::move(law.check));
  return report;
}

Report cartan_suite(const AlgebroidPtr& e, const Battery& battery,
                    const std::vector<Cochain>& cochains) {
  int nv = static_cast<int>(battery.vectors().size());
  int nf = static_cast<int>(battery.functions().size());
  Section e1 = battery.vector<Section>(0);
  Section e2 = battery.vector<Section>(nv - 1);
  Scalar f = battery.function(std::min(1, nf - 1));
  Scalar g = battery.function(nf - 1);
  using Op = std::function<Cochain(const Cochain&)>;
  auto ie = [](Section s) -> Op { return [s](const Cochain& w) { return interior_e(s, w); }; };
  auto iff = [](Scalar h) -> Op { return [h](const Cochain& w) { return interior_f(h, w); }; };
  auto le = [](Section s) -> Op { return [s](const Cochain& w) { return lie_e(s, w); }; };
  auto lf = [](Scalar h) -> Op { return [h](const Cochain& w) { return lie_f(h, w); }; };
  Scalar e1e2 = e->pairing(e1, e2);
  Scalar rho_f = e->anchor_apply(e1, f);  // <e1, d_E f>

  struct Identity {
    std::string name;
    std::string text;
    std::function<Cochain(const Cochain&)> lhs;
    std::function<Cochain(const Cochain&)> rhs;
  };
  std::vector<Identity> ids{
      {"ie_ie", "{i_e1, i_e2} = -i_<e1,e2>",
       [&](const Cochain& w) { return graded_commutator(ie(e1), -1, ie(e2), -1, w); },
       [&](const Cochain& w) { return Rational(-1) * interior_f(e1e2, w); }},
      {"ie_if", "{i_e, i_f} = 0",
       [&](const Cochain& w) { return graded_commutator(ie(e1), -1, iff(f), -2, w); },
       [&](const Cochain& w) { return Cochain::zero(e, w.degree() - 3); }},
      {"if_if", "{i_f, i_g} = 0",
       [&](const Cochain& w) { return graded_commutator(iff(f), -2, iff(g), -2, w); },
       [&](const Cochain& w) { return Cochain::zero(e, w.degree() - 4); }},
      {"lf_is_interior", "L_f = i_{d_E f}", [&](const Cochain& w) { return lie_f(f, w); },
       [&](const Cochain& w) { return interior_e(e->d(f), w); }},
      {"lf_ie", "{L_f, i_e} = -i_<d_E f, e>",
       [&](const Cochain& w) { return graded_commutator(lf(f), -1, ie(e1), -1, w); },
       [&](const Cochain& w) { return Rational(-1) * interior_f(rho_f, w); }},
      {"le_if", "{L_e, i_f} = i_<d_E f, e>",
       [&](const Cochain& w) { return graded_commutator(le(e1), 0, iff(f), -2, w); },
       [&](const Cochain& w) { return interior_f(rho_f, w); }},
      {"le_ie", "{L_e1, i_e2} = i_[e1,e2]",
       [&](const Cochain& w) { return graded_commutator(le(e1), 0, ie(e2), -1, w); },
       [&](const Cochain& w) { return interior_e(e->bracket(e1, e2), w); }},
      {"lf_lg", "{L_f, L_g} = 0",
       [&](const Cochain& w) { return graded_commutator(lf(f), -1, lf(g), -1, w); },
       [&](const Cochain& w) { return Cochain::zero(e, w.degree() - 2); }},
      {"le_lf", "{L_e, L_f} = L_<e, d_E f>",
       [&](const Cochain& w) { return graded_commutator(le(e1), 0, lf(f), -1, w); },
       [&](const Cochain& w) { return lie_f(rho_f, w); }},
      {"lf_le", "{L_f, L_e} = -L_<e, d_E f>",
       [&](const Cochain& w) { return graded_commutator(lf(f), -1, le(e1), 0, w); },
       [&](const Cochain& w) { return Rational(-1) * lie_f(rho_f, w); }},
      {"le_le", "{L_e1, L_e2} = L_[e1,e2]",
       [&](const Cochain& w) { return graded_commutator(le(e1), 0, le(e2), 0, w); },
       [&](const Cochain& w) { return lie_e(e->bracket(e1, e2), w); }},
  };

  Report report;
  for (const auto& id : ids) {
    Check c;
    c.name = id.name;
    c.identity = id.text;
    for (const auto& w : cochains) {
      Check one = equal(id.lhs(w), id.rhs(w), battery, id.name);
      c.evaluations += one.evaluations;
      if (!one.passed()) {
        c.status = Status::Fail;
        c.detail = "on " + w.describe() + (one.detail.empty() ? "" : ": " + one.detail);
        c.witness = one.witness;
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace courant
