#include "qind/cli/inputs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qind/error.hpp"

namespace qind::cli {

namespace {

[[noreturn]] void fail_at(std::string_view origin, const YAML::Mark& mark, const std::string& msg) {
  std::ostringstream out;
  out << origin;
  if (!mark.is_null()) out << ':' << mark.line + 1 << ':' << mark.column + 1;
  out << ": " << msg;
  throw InputError(out.str());
}

YAML::Node load_document(std::string_view text, std::string_view origin) {
  try {
    auto doc = YAML::Load(std::string(text));
    if (!doc.IsMap()) fail_at(origin, doc.Mark(), "expected a mapping at the top level");
    return doc;
  } catch (const YAML::ParserException& e) {
    fail_at(origin, e.mark, e.msg);
  }
}

const YAML::Node require(const YAML::Node& parent, const char* key, std::string_view origin) {
  auto node = parent[key];
  if (!node) fail_at(origin, parent.Mark(), std::string("missing key '") + key + "'");
  return node;
}

std::string scalar(const YAML::Node& node, std::string_view origin, const char* what) {
  if (!node.IsScalar()) fail_at(origin, node.Mark(), std::string(what) + " must be a scalar");
  return node.Scalar();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

quasiset::Universe parse_universe(std::string_view text, std::string_view origin) {
  const auto doc = load_document(text, origin);
  quasiset::Universe::Builder builder;

  // Builder errors are reported at the node that triggered them.
  auto guarded = [&](const YAML::Node& at, auto&& step) {
    try {
      step();
    } catch (const Error& e) {
      fail_at(origin, at.Mark(), e.what());
    }
  };

  if (const auto species = doc["species"]) {
    if (!species.IsSequence()) fail_at(origin, species.Mark(), "'species' must be a list");
    for (const auto& s : species) {
      guarded(s, [&] { builder.add_species(scalar(s, origin, "species label")); });
    }
  }

  if (const auto atoms = doc["atoms"]) {
    if (!atoms.IsSequence()) fail_at(origin, atoms.Mark(), "'atoms' must be a list");
    for (const auto& a : atoms) {
      if (!a.IsMap()) fail_at(origin, a.Mark(), "each atom must be a mapping");
      const auto name = scalar(require(a, "name", origin), origin, "atom name");
      const auto kind = scalar(require(a, "kind", origin), origin, "atom kind");
      if (kind == "micro") {
        const auto species = scalar(require(a, "species", origin), origin, "species");
        guarded(a, [&] { builder.add_micro(name, species); });
      } else if (kind == "macro") {
        if (a["species"]) fail_at(origin, a["species"].Mark(), "macro-atoms have no species");
        guarded(a, [&] { builder.add_macro(name); });
      } else {
        fail_at(origin, a["kind"].Mark(), "atom kind must be 'micro' or 'macro', got '" + kind + "'");
      }
    }
  }

  if (const auto qsets = doc["qsets"]) {
    if (!qsets.IsSequence()) fail_at(origin, qsets.Mark(), "'qsets' must be a list");
    for (const auto& q : qsets) {
      if (!q.IsMap()) fail_at(origin, q.Mark(), "each qset must be a mapping");
      const auto name = scalar(require(q, "name", origin), origin, "qset name");
      const auto members = require(q, "members", origin);
      if (!members.IsSequence()) fail_at(origin, members.Mark(), "'members' must be a list");
      std::vector<std::string> names;
      for (const auto& m : members) names.push_back(scalar(m, origin, "member name"));
      guarded(q, [&] { builder.add_qset(name, std::move(names)); });
    }
  }

  for (const auto& kv : doc) {
    const auto key = kv.first.Scalar();
    if (key != "species" && key != "atoms" && key != "qsets") {
      fail_at(origin, kv.first.Mark(), "unknown section '" + key + "'");
    }
  }

  try {
    return std::move(builder).build();
  } catch (const Error& e) {
    fail_at(origin, YAML::Mark::null_mark(), e.what());
  }
}

quasiset::Universe load_universe(const std::filesystem::path& path) {
  return parse_universe(read_file(path), path.string());
}

PidTable parse_pid_table(std::string_view text, std::string_view origin) {
  const auto doc = load_document(text, origin);
  PidTable table;

  const auto sources = require(doc, "sources", origin);
  if (!sources.IsSequence()) fail_at(origin, sources.Mark(), "'sources' must be a list");
  for (const auto& s : sources) table.sources.push_back(scalar(s, origin, "source label"));

  const auto rows = require(doc, "pid", origin);
  if (!rows.IsSequence()) fail_at(origin, rows.Mark(), "'pid' must be a list of rows");
  for (const auto& row : rows) {
    if (!row.IsSequence()) fail_at(origin, row.Mark(), "each pid row must be a list");
    if (row.size() != table.sources.size()) {
      fail_at(origin, row.Mark(),
              "row has " + std::to_string(row.size()) + " entries, expected " +
                  std::to_string(table.sources.size()));
    }
    for (const auto& cell : row) {
      try {
        table.pid.push_back(cell.as<double>());
      } catch (const YAML::Exception&) {
        fail_at(origin, cell.Mark(), "'" + scalar(cell, origin, "entry") + "' is not a number");
      }
    }
  }
  if (rows.size() != table.sources.size()) {
    fail_at(origin, rows.Mark(),
            "table has " + std::to_string(rows.size()) + " rows, expected " +
                std::to_string(table.sources.size()));
  }
  return table;
}

PidTable load_pid_table(const std::filesystem::path& path) {
  return parse_pid_table(read_file(path), path.string());
}

std::complex<double> parse_complex(std::string_view text) {
  auto number = [&](std::string_view part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(std::string(part), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || !std::isfinite(v)) {
      throw InputError("'" + std::string(text) + "' is not a complex number (use re or re,im)");
    }
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {number(text), 0.0};
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

}  // namespace qind::cli
