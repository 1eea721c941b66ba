#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace forge {

/// One verification record: a named check, whether it held, the margin by
/// which it did (or failed), and an optional witness (named scalars /
/// small vectors serialized as flat lists).
struct CheckRecord {
  std::string name;
  bool passed = false;
  double margin = 0.0;
  std::map<std::string, std::vector<double>> witness;
};

struct Report {
  std::string command;
  std::string version;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  bool overall_pass() const;
  void add(CheckRecord record);
  /// Appends all records of other, prefixing their names.
  void absorb(const Report& other, const std::string& prefix);
};

}  // namespace forge
