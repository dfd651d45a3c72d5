#pragma once

#include <string>
#include <vector>

namespace qrf {

inline constexpr const char* kToolkitVersion = "1.0.0";

struct CheckResult {
  std::string name;
  std::string kind;
  std::string status;  // "pass" | "fail" | "precondition-error"
  double residual = 0.0;  // -1 when the check aborted before computing one
  std::string message;    // empty on pass
  double runtime_ms = 0.0;  // reported in text output only
};

struct Report {
  std::vector<CheckResult> checks;
  int pass = 0;
  int fail = 0;
  int precondition_errors = 0;
  std::string version = kToolkitVersion;
  std::string digest;  // FNV-1a over the canonical scenario serialization
};

/// Canonical JSON: lexicographically sorted keys, shortest round-trip float
/// formatting, no runtime fields. Byte-stable across runs for identical
/// (scenario, seed, tolerance).
std::string emit_report_json(const Report& report);

/// Human-readable table, including per-check runtime.
std::string emit_report_text(const Report& report);

/// FNV-1a 64-bit digest of a byte string, as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace qrf
