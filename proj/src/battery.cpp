#include "courant/battery.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace courant {

Battery::Battery(int num_variables, int rank, BatteryConfig config,
                 std::string frame_prefix)
    : n_(num_variables), rank_(rank), config_(config) {
  if (config_.degree < 0 || config_.extras < 0 || config_.max_tuples < 1) {
    throw DomainError("invalid battery configuration");
  }
  for (int i = 0; i < rank; ++i) {
    std::vector<Scalar> c(rank);
    c[i] = 1;
    vectors_.push_back({frame_prefix + std::to_string(i + 1), std::move(c)});
  }
  for (auto m : monomials_up_to(n_, config_.degree)) {
    if (m.is_one()) continue;
    Scalar f(Polynomial::monomial(m));
    for (int i = 0; i < rank; ++i) {
      std::vector<Scalar> c(rank);
      c[i] = f;
      vectors_.push_back(
          {f.to_string() + "*" + frame_prefix + std::to_string(i + 1), std::move(c)});
    }
  }
  random_vectors_begin_ = static_cast<int>(vectors_.size());
  for (int t = 0; t < config_.extras; ++t) {
    std::vector<Scalar> c(rank);
    for (int i = 0; i < rank; ++i) {
      std::uint64_t s = config_.seed * 7919 + static_cast<std::uint64_t>(t) * 131 + i;
      c[i] = Scalar(random_polynomial(n_, config_.degree, s));
    }
    vectors_.push_back({"rand_" + frame_prefix + std::to_string(t + 1), std::move(c)});
  }
  for (auto m : monomials_up_to(n_, config_.degree + 1)) {
    Scalar f(Polynomial::monomial(m));
    functions_.push_back({f.to_string(), f});
  }
  random_functions_begin_ = static_cast<int>(functions_.size());
  for (int t = 0; t < config_.extras; ++t) {
    std::uint64_t s = config_.seed * 104729 + static_cast<std::uint64_t>(t) * 17 + 5;
    Scalar f(random_polynomial(n_, config_.degree, s));
    functions_.push_back({f.to_string(), f});
  }
}

namespace {

// Lexicographic enumeration with slot 0 most significant.
void enumerate(const std::vector<int>& radix, std::size_t limit,
               const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> idx(radix.size(), 0);
  for (int r : radix) {
    if (r == 0) return;
  }
  std::size_t count = 0;
  while (count < limit) {
    emit(idx);
    ++count;
    int k = static_cast<int>(idx.size()) - 1;
    while (k >= 0 && ++idx[k] == radix[k]) idx[k--] = 0;
    if (k < 0) return;
  }
}

double product_size(const std::vector<int>& radix) {
  double p = 1;
  for (int r : radix) p *= r;
  return p;
}

}  // namespace

std::vector<Battery::Tuple> Battery::tuples(int nv, int nf) const {
  std::vector<Tuple> out;
  std::set<std::vector<int>> seen;
  auto push = [&](const std::vector<int>& flat) {
    if (!seen.insert(flat).second) return;
    Tuple t;
    t.vectors.assign(flat.begin(), flat.begin() + nv);
    t.functions.assign(flat.begin() + nv, flat.end());
    out.push_back(std::move(t));
  };
  const int nvec = static_cast<int>(vectors_.size());
  const int nfun = static_cast<int>(functions_.size());
  const auto max = static_cast<std::size_t>(config_.max_tuples);

  std::vector<int> full(nv, nvec);
  full.insert(full.end(), nf, nfun);
  if (product_size(full) <= static_cast<double>(max + config_.extras)) {
    enumerate(full, max + config_.extras, push);
    return out;
  }

  std::mt19937_64 rng(config_.seed * 1000003 + static_cast<std::uint64_t>(nv) * 31 +
                      static_cast<std::uint64_t>(nf));
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo));
  };

  // Frame vectors in every vector slot.
  std::vector<int> frame(nv, rank_);
  frame.insert(frame.end(), nf, nfun);
  const std::size_t budget = std::max<std::size_t>(1, max / 2);
  if (product_size(frame) <= static_cast<double>(budget)) {
    enumerate(frame, budget, push);
  } else {
    enumerate(frame, budget / 2 + 1, push);
    for (std::size_t i = 0; i < budget / 2; ++i) {
      std::vector<int> flat;
      for (int s = 0; s < nv; ++s) flat.push_back(pick(0, rank_));
      for (int s = 0; s < nf; ++s) flat.push_back(pick(0, nfun));
      push(flat);
    }
  }

  // One non-frame vector, frame vectors elsewhere.
  std::vector<std::vector<int>> single;
  for (int slot = 0; slot < nv; ++slot) {
    for (int v = rank_; v < nvec; ++v) {
      std::vector<int> flat;
      for (int s = 0; s < nv; ++s) flat.push_back(s == slot ? v : pick(0, rank_));
      for (int s = 0; s < nf; ++s) flat.push_back(pick(0, nfun));
      single.push_back(std::move(flat));
    }
  }
  if (nv == 0) {
    for (int f = 0; f < nfun; ++f) {
      std::vector<int> flat;
      for (int s = 0; s < nf; ++s) flat.push_back(s == 0 ? f : pick(0, nfun));
      single.push_back(std::move(flat));
    }
  }
  if (single.size() > budget) {
    std::vector<std::size_t> order(single.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    order.resize(budget);
    std::sort(order.begin(), order.end());
    for (auto i : order) push(single[i]);
  } else {
    for (const auto& flat : single) push(flat);
  }

  // Fully random arguments.
  const int rv = random_vectors_begin_;
  const int rf = random_functions_begin_;
  for (int t = 0; t < config_.extras; ++t) {
    std::vector<int> flat;
    for (int s = 0; s < nv; ++s) flat.push_back(rv < nvec ? pick(rv, nvec) : pick(0, nvec));
    for (int s = 0; s < nf; ++s) flat.push_back(rf < nfun ? pick(rf, nfun) : pick(0, nfun));
    push(flat);
  }
  return out;
}

Check check_identity(std::string name, std::string identity,
                     const Battery& battery, int nv, int nf,
                     const std::function<std::vector<Scalar>(const Battery::Tuple&)>&
                         residual) {
  Check c;
  c.name = std::move(name);
  c.identity = std::move(identity);
  for (const auto& t : battery.tuples(nv, nf)) {
    ++c.evaluations;
    std::vector<Scalar> r = residual(t);
    for (const auto& s : r) {
      if (!s.is_zero()) {
        c.status = Status::Fail;
        c.witness = Witness{battery.describe(t), std::move(r)};
        return c;
      }
    }
  }
  return c;
}

std::string Battery::describe(const Tuple& t) const {
  std::string out;
  for (int v : t.vectors) {
    if (!out.empty()) out += ", ";
    out += vectors_[v].label;
  }
  if (!t.functions.empty()) {
    out += "; ";
    bool first = true;
    for (int f : t.functions) {
      if (!first) out += ", ";
      first = false;
      out += functions_[f].label;
    }
  }
  return out;
}

}  // namespace courant
