#include "forge/report.hpp"

namespace forge {

bool Report::overall_pass() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void Report::add(CheckRecord record) { checks.push_back(std::move(record)); }

void Report::absorb(const Report& other, const std::string& prefix) {
  for (CheckRecord c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

}  // namespace forge
