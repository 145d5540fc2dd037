#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "courant/report.hpp"
#include "courant/scalar.hpp"

namespace courant {

struct BatteryConfig {
  int degree = 2;           // D
  int extras = 3;           // t
  std::uint64_t seed = 1;
  int max_tuples = 48;      // per identity, before the random extras
};

// Finite test set: frame vectors, frame vectors times monomials of degree
// 1..D, t random vectors; functions are the monomials of degree <= D+1 and
// t random polynomials.  Everything is a function of the config.
class Battery {
 public:
  struct Entry {
    std::string label;
    std::vector<Scalar> components;
  };
  struct Function {
    std::string label;
    Scalar value;
  };
  struct Tuple {
    std::vector<int> vectors;
    std::vector<int> functions;
  };

  Battery(int num_variables, int rank, BatteryConfig config,
          std::string frame_prefix = "e");

  const BatteryConfig& config() const { return config_; }
  int rank() const { return rank_; }
  const std::vector<Entry>& vectors() const { return vectors_; }
  const std::vector<Function>& functions() const { return functions_; }

  template <class V>
  V vector(int i) const {
    return V(vectors_[i].components);
  }
  const Scalar& function(int i) const { return functions_[i].value; }

  // Argument tuples for an identity with `nv` vector and `nf` function slots.
  // Frame-only tuples come first in lexicographic order.
  std::vector<Tuple> tuples(int nv, int nf) const;
  std::string describe(const Tuple& t) const;

 private:
  int n_;
  int rank_;
  BatteryConfig config_;
  std::vector<Entry> vectors_;
  std::vector<Function> functions_;
  int random_vectors_begin_ = 0;
  int random_functions_begin_ = 0;
};

// Evaluates `residual` on every battery tuple; the first nonzero residual
// becomes the witness.
Check check_identity(std::string name, std::string identity,
                     const Battery& battery, int nv, int nf,
                     const std::function<std::vector<Scalar>(const Battery::Tuple&)>&
                         residual);

}  // namespace courant
