#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "courant/scalar.hpp"

namespace courant {

enum class Status { Pass, Fail, Info };

std::string_view to_string(Status s);

struct Witness {
  std::string arguments;
  std::vector<Scalar> residual;

  std::string residual_text() const;
};

struct Check {
  std::string name;
  std::string identity;  // the identity being checked, in words or symbols
  Status status = Status::Pass;
  std::size_t evaluations = 0;
  std::optional<Witness> witness;
  std::string detail;

  bool passed() const { return status != Status::Fail; }
};

struct Report {
  std::vector<Check> checks;

  bool passed() const;
  const Check* find(std::string_view name) const;
  std::vector<std::string> failures() const;
  void append(const Report& other);
};

}  // namespace courant
