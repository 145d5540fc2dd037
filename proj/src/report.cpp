#include "courant/report.hpp"

namespace courant {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Info:
      return "info";
  }
  return "unknown";
}

std::string Witness::residual_text() const {
  if (residual.size() == 1) return residual[0].to_string();
  std::string out = "(";
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (i) out += ", ";
    out += residual[i].to_string();
  }
  return out + ")";
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

const Check* Report::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed()) out.push_back(c.name);
  }
  return out;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

}  // namespace courant
