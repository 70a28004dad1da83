#pragma once

// Input documents read by the CLI.
//
// Universe file (YAML):
//
//     species: [photon, electron]
//     atoms:
//       - {name: a, kind: micro, species: photon}
//       - {name: lab, kind: macro}
//     qsets:
//       - {name: x, members: [a, lab]}
//
// P_ID table file (YAML):
//
//     sources: [s1, s2]
//     pid:
//       - [1.0, 0.5]
//       - [0.5, 1.0]

#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qind/quasiset.hpp"

namespace qind::cli {

/// Malformed input; the message carries "file:line:column:" when known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

quasiset::Universe parse_universe(std::string_view text, std::string_view origin = "<input>");
quasiset::Universe load_universe(const std::filesystem::path& path);

struct PidTable {
  std::vector<std::string> sources;
  std::vector<double> pid;  // row-major
};

PidTable parse_pid_table(std::string_view text, std::string_view origin = "<input>");
PidTable load_pid_table(const std::filesystem::path& path);

/// "re" or "re,im".
std::complex<double> parse_complex(std::string_view text);

}  // namespace qind::cli
