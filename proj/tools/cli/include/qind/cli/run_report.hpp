#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qind::cli {

inline constexpr std::string_view kToolName = "qind";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Machine-readable record of one CLI invocation.
struct RunReport {
  std::string tool{kToolName};
  std::string version{kToolVersion};
  std::string command;
  std::vector<std::string> args;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  int exit_status = 0;
  std::optional<std::string> error;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// Stable rendering: sorted keys, two-space indent, trailing newline.
std::string serialize(const RunReport& r);
/// Throws nlohmann::json exceptions on malformed documents.
RunReport parse_report(std::string_view text);

/// Shortest decimal string that parses back to the same double.
std::string format_number(double v);

}  // namespace qind::cli
