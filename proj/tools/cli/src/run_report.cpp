#include "qind/cli/run_report.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace qind::cli {

void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"tool", r.tool},       {"version", r.version},
                     {"command", r.command}, {"args", r.args},
                     {"inputs", r.inputs},   {"outputs", r.outputs},
                     {"exit_status", r.exit_status}};
  j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("tool").get_to(r.tool);
  j.at("version").get_to(r.version);
  j.at("command").get_to(r.command);
  j.at("args").get_to(r.args);
  r.inputs = j.at("inputs");
  r.outputs = j.at("outputs");
  j.at("exit_status").get_to(r.exit_status);
  const auto& err = j.at("error");
  r.error = err.is_null() ? std::nullopt : std::optional<std::string>(err.get<std::string>());
}

std::string serialize(const RunReport& r) { return nlohmann::json(r).dump(2) + "\n"; }

RunReport parse_report(std::string_view text) {
  return nlohmann::json::parse(text).get<RunReport>();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ec == std::errc{} ? end : buf.data());
}

}  // namespace qind::cli
