#include "qrf/report.hpp"

#include <cstdint>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace qrf {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string emit_report_json(const Report& report) {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["kind"] = c.kind;
    e["status"] = c.status;
    e["residual"] = c.residual;
    if (!c.message.empty()) e["message"] = c.message;
    j["checks"].push_back(std::move(e));
  }
  j["summary"] = {{"pass", report.pass},
                  {"fail", report.fail},
                  {"precondition_errors", report.precondition_errors}};
  j["version"] = report.version;
  j["digest"] = report.digest;
  return j.dump(2) + "\n";
}

std::string emit_report_text(const Report& report) {
  std::ostringstream out;
  for (const CheckResult& c : report.checks) {
    out << std::left << std::setw(40) << c.name << std::setw(20) << c.status
        << "residual=" << std::setprecision(6) << std::scientific
        << c.residual << "  " << std::fixed << std::setprecision(2)
        << c.runtime_ms << "ms";
    if (!c.message.empty()) out << "  [" << c.message << "]";
    out << "\n";
  }
  out << report.checks.size() << " checks: " << report.pass << " passed, "
      << report.fail << " failed, " << report.precondition_errors
      << " precondition errors\n";
  out << "version " << report.version << "  digest " << report.digest << "\n";
  return out.str();
}

}  // namespace qrf
