#pragma once

#include <string>
#include <utility>
#include <vector>

namespace surgeflow {

/// Outcome of a verifier: passes iff no issue was recorded.
struct CheckReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  explicit operator bool() const { return ok(); }
  void fail(std::string message) { issues.push_back(std::move(message)); }
};

}  // namespace surgeflow
