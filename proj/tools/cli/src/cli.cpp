#include "qind/cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "qind/cli/inputs.hpp"
#include "qind/cli/run_report.hpp"
#include "qind/error.hpp"
#include "qind/onephoton.hpp"
#include "qind/qmetric.hpp"
#include "qind/quasiset.hpp"
#include "qind/zwm.hpp"

namespace qind::cli {

namespace {

using nlohmann::json;
using onephoton::Complex;
using onephoton::DensityOperator2;
using quasiset::AxiomReport;
using quasiset::TermId;
using quasiset::Universe;

enum class Format { Json, Csv };

struct Options {
  Format format = Format::Json;
  std::string out_path;
  std::size_t steps = 11;
  std::size_t samples = 360;
  double tolerance = qmetric::kDefaultTolerance;
};

/// What a command produced: the structured report, plus CSV text when the
/// command succeeded and CSV was requested.
struct Outcome {
  RunReport report;
  std::string csv;
};

class CsvWriter {
 public:
  CsvWriter& row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ',';
      first = false;
      out_ << c;
    }
    out_ << '\n';
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string num(double v) { return format_number(v); }

// Conjugation turns 0 into -0; keep it out of reports.
double unsigned_zero(double v) { return v == 0.0 ? 0.0 : v; }

json complex_json(Complex z) {
  return {{"re", unsigned_zero(z.real())}, {"im", unsigned_zero(z.imag())}};
}

json density_json(const DensityOperator2& rho) {
  return {{"rho11", rho.rho11},
          {"rho22", rho.rho22},
          {"rho12_re", unsigned_zero(rho.rho12.real())},
          {"rho12_im", unsigned_zero(rho.rho12.imag())}};
}

json names_json(const Universe& u, const std::optional<std::vector<TermId>>& tuple) {
  if (!tuple) return nullptr;
  json out = json::array();
  for (const auto t : *tuple) out.push_back(std::string(u.name(t)));
  return out;
}

json axiom_json(const Universe& u, const AxiomReport& r) {
  return {{"axiom", r.axiom},
          {"holds", r.holds},
          {"counterexample", names_json(u, r.counterexample)},
          {"detail", r.detail}};
}

std::string tuple_cell(const Universe& u, const std::optional<std::vector<TermId>>& tuple) {
  if (!tuple) return "";
  std::string out;
  for (const auto t : *tuple) {
    if (!out.empty()) out += ' ';
    out += u.name(t);
  }
  return out;
}

DensityOperator2 density_from(const std::vector<double>& v) { return {v[0], v[1], {v[2], v[3]}}; }

// ---------------------------------------------------------------------------
// decompose

void cmd_decompose(const std::vector<double>& values, const Options& opt, Outcome& o) {
  const auto rho = density_from(values);
  o.report.inputs = density_json(rho);

  const auto dec = onephoton::mandel_decompose(rho);
  const auto coh = onephoton::coherence_functions(rho, Complex{1.0, 0.0});
  const auto vis = onephoton::visibility_vs_pid(rho);
  const double gamma_abs = std::abs(coh.gamma12_normalized);
  const double residual = std::abs(gamma_abs - dec.p_id);

  o.report.outputs = {
      {"p_id", dec.p_id},
      {"p_d", dec.p_d},
      {"rho_id", density_json(dec.rho_id)},
      {"rho_d", density_json(dec.rho_d)},
      {"gamma12_normalized", complex_json(coh.gamma12_normalized)},
      {"gamma12_abs", gamma_abs},
      {"visibility", vis.visibility},
      {"visibility_pid_ratio", vis.ratio_defined() ? json(vis.ratio) : json(nullptr)},
      {"mandel_residual", residual},
  };

  if (opt.format == Format::Csv) {
    CsvWriter csv;
    csv.row({"p_id", "p_d", "rho_id_11", "rho_id_22", "rho_id_12_re", "rho_id_12_im", "rho_d_11",
             "rho_d_22", "gamma12_abs", "visibility", "visibility_pid_ratio", "mandel_residual"});
    csv.row({num(dec.p_id), num(dec.p_d), num(dec.rho_id.rho11), num(dec.rho_id.rho22),
             num(dec.rho_id.rho12.real()), num(dec.rho_id.rho12.imag()), num(dec.rho_d.rho11),
             num(dec.rho_d.rho22), num(gamma_abs), num(vis.visibility),
             vis.ratio_defined() ? num(vis.ratio) : "", num(residual)});
    o.csv = csv.str();
  }
}

// ---------------------------------------------------------------------------
// zwm-sweep

void cmd_zwm_sweep(const std::string& alpha_text, const std::string& beta_text, double tau_phase,
                   const Options& opt, Outcome& o) {
  const auto alpha = parse_complex(alpha_text);
  const auto beta = parse_complex(beta_text);
  o.report.inputs = {{"alpha", complex_json(alpha)},
                     {"beta", complex_json(beta)},
                     {"tau_phase", tau_phase},
                     {"steps", opt.steps}};
  if (opt.steps < 2) throw InputError("--steps must be at least 2");
  if (!std::isfinite(tau_phase)) throw InputError("--tau-phase must be finite");
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InputError("pump amplitudes cannot be normalized");
  }

  zwm::ZwmSetup setup{alpha / norm, beta / norm, std::polar(1.0, tau_phase)};
  const auto rows = zwm::sweep_transmission(setup, opt.steps);

  json out = json::array();
  CsvWriter csv;
  csv.row({"t_mag", "p_id", "visibility", "coincidence_id_prob"});
  for (const auto& r : rows) {
    out.push_back({{"t_mag", r.t_mag},
                   {"p_id", r.p_id},
                   {"visibility", r.visibility},
                   {"coincidence_id_prob", r.coincidence_id_prob}});
    csv.row({num(r.t_mag), num(r.p_id), num(r.visibility), num(r.coincidence_id_prob)});
  }
  o.report.outputs = {{"rows", out}};
  if (opt.format == Format::Csv) o.csv = csv.str();
}

// ---------------------------------------------------------------------------
// fringes

void cmd_fringes(const std::vector<double>& values, const std::string& k_text,
                 const Options& opt, Outcome& o) {
  const auto rho = density_from(values);
  const auto k = parse_complex(k_text);
  o.report.inputs = density_json(rho);
  o.report.inputs["samples"] = opt.samples;
  o.report.inputs["k"] = complex_json(k);

  const auto scan = onephoton::fringe_scan(rho, k, opt.samples);
  json samples = json::array();
  CsvWriter csv;
  csv.row({"phase_rad", "rate"});
  for (const auto& s : scan.samples) {
    samples.push_back({s.phase, s.rate});
    csv.row({num(s.phase), num(s.rate)});
  }
  csv.row({"visibility", num(scan.visibility)});
  // 2|G12| / (G11 + G22) with equal coupling; defined for one-sided states too.
  const double analytic = 2.0 * std::abs(rho.rho12) / rho.trace();
  o.report.outputs = {
      {"samples", samples}, {"visibility", scan.visibility}, {"analytic_visibility", analytic}};
  if (opt.format == Format::Csv) o.csv = csv.str();
}

// ---------------------------------------------------------------------------
// qset-check

void cmd_qset_check(const std::string& path, const Options& opt, Outcome& o) {
  const auto u = load_universe(path);
  o.report.inputs = {{"file", path},
                     {"species", u.species_count()},
                     {"atoms", u.atoms().size()},
                     {"qsets", u.named_qsets().size()}};

  bool all_hold = true;
  CsvWriter csv;
  csv.row({"check", "subject", "holds", "counterexample", "detail"});
  auto record_csv = [&](const std::string& subject, const AxiomReport& r) {
    csv.row({quoted(r.axiom), quoted(subject), r.holds ? "true" : "false",
             quoted(tuple_cell(u, r.counterexample)), quoted(r.detail)});
  };

  json equivalence = json::array();
  for (const auto& r : quasiset::check_equivalence_axioms(u)) {
    all_hold = all_hold && r.holds;
    equivalence.push_back(axiom_json(u, r));
    record_csv("universe", r);
  }

  const auto terms = u.all_terms();
  json permutation = json::array();
  for (const auto x : u.named_qsets()) {
    const auto& xs = u.members(x);
    for (const auto z : xs.elements()) {
      if (u.kind(z) != quasiset::TermKind::Micro) continue;
      if (quasiset::ext_identity(u, xs, quasiset::indist_class(u, z))) continue;
      for (const auto w : u.atoms()) {
        if (xs.contains(w) || !quasiset::indist(u, w, z)) continue;
        const auto r = quasiset::permutation_theorem_check(u, x, z, w);
        all_hold = all_hold && r.holds;
        auto entry = axiom_json(u, r);
        entry["x"] = u.name(x);
        entry["z"] = u.name(z);
        entry["w"] = u.name(w);
        permutation.push_back(std::move(entry));
        record_csv(std::string(u.name(x)) + " " + std::string(u.name(z)) + " " +
                       std::string(u.name(w)),
                   r);
      }
    }
  }

  json substitutivity = json::array();
  json witnesses = json::array();
  std::vector<std::string> witness_rows;
  AxiomReport entailment{"=_E implies indist", true, std::nullopt, ""};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const auto a = terms[i];
      const auto b = terms[j];
      const bool same = quasiset::indist(u, a, b);
      const bool ext = quasiset::ext_identity(u, a, b);
      if (same && !ext) {
        witnesses.push_back({{"x", u.name(a)}, {"y", u.name(b)}});
        witness_rows.push_back(std::string(u.name(a)) + " " + std::string(u.name(b)));
      }
      if (ext && !same && entailment.holds) {
        entailment = {entailment.axiom, false, std::vector<TermId>{a, b},
                      "extensionally identical but distinguishable"};
      }
      if (ext) {
        const auto r = quasiset::check_substitutivity_surrogate(u, a, b);
        all_hold = all_hold && r.holds;
        auto entry = axiom_json(u, r);
        entry["x"] = u.name(a);
        entry["y"] = u.name(b);
        substitutivity.push_back(std::move(entry));
        record_csv(std::string(u.name(a)) + " " + std::string(u.name(b)), r);
      }
    }
  }
  all_hold = all_hold && entailment.holds;
  record_csv("universe", entailment);
  for (const auto& pair : witness_rows) {
    csv.row({quoted("indist_not_ext"), quoted(pair), "true", quoted(""),
             quoted("indistinguishable but not extensionally identical")});
  }

  o.report.outputs = {{"equivalence", equivalence},
                      {"permutation_instances", permutation},
                      {"substitutivity", substitutivity},
                      {"ext_implies_indist", axiom_json(u, entailment)},
                      {"indist_not_ext_witnesses", witnesses},
                      {"all_hold", all_hold}};
  if (opt.format == Format::Csv) o.csv = csv.str();
  o.report.exit_status = all_hold ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// bridge

void cmd_bridge(const std::string& path, const Options& opt, Outcome& o) {
  const auto table = load_pid_table(path);
  o.report.inputs = {{"file", path}, {"sources", table.sources}, {"tolerance", opt.tolerance}};

  const auto n = table.sources.size();
  json distances = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(1.0 - table.pid[i * n + j]);
    distances.push_back(std::move(row));
  }
  o.report.outputs["distances"] = distances;

  const auto bridge = qmetric::from_pid_table(table.sources, table.pid, opt.tolerance);
  const auto& space = bridge.space;
  const auto& u = space.base().universe();

  CsvWriter csv;
  csv.row({"check", "holds", "counterexample", "detail"});
  json axioms = json::array();
  for (const auto& r : bridge.reports) {
    axioms.push_back(axiom_json(u, r));
    csv.row({quoted(r.axiom), r.holds ? "true" : "false", quoted(tuple_cell(u, r.counterexample)),
             quoted(r.detail)});
  }

  json species = json::object();
  for (const auto t : space.base().carrier().elements()) {
    species[std::string(u.name(t))] = u.species_label(*u.species_of(t));
  }

  json degrees = nullptr;
  if (space.sound()) {
    degrees = json::array();
    const auto elems = space.base().carrier().elements();
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        const double r = qmetric::degree(space, elems[i], elems[j]);
        degrees.push_back({{"a", u.name(elems[i])}, {"b", u.name(elems[j])}, {"r", r}});
        csv.row({quoted("degree"), "true", quoted(tuple_cell(u, std::vector{elems[i], elems[j]})),
                 num(r)});
      }
    }
  }

  o.report.outputs["species"] = species;
  o.report.outputs["axioms"] = axioms;
  o.report.outputs["sound"] = space.sound();
  o.report.outputs["degrees"] = degrees;
  if (opt.format == Format::Csv) o.csv = csv.str();
  o.report.exit_status = space.sound() ? kExitOk : kExitUnsoundSpace;
}

// ---------------------------------------------------------------------------

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateSource: return kExitDegenerate;
    case ErrorCode::NonTransitiveZeroes: return kExitUnsoundSpace;
    default: return kExitInvalidInput;
  }
}

/// Runs `body`, turning failures into an error report with the matching exit
/// code.
void execute(Outcome& o, const std::function<void()>& body) {
  try {
    body();
    return;
  } catch (const InputError& e) {
    o.report.error = e.what();
    o.report.exit_status = kExitInvalidInput;
  } catch (const Error& e) {
    o.report.error = e.what();
    o.report.exit_status = exit_code_for(e.code());
  }
  o.report.outputs = json::object();
  o.csv.clear();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degrees of indistinguishability in single-photon interferometry", "qind"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  Options opt;
  std::string format = "json";
  app.add_option("--output", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", opt.out_path, "Write the report to a file instead of stdout");
  app.add_option("--steps", opt.steps, "Grid points for zwm-sweep")->capture_default_str();
  app.add_option("--samples", opt.samples, "Phase samples for fringes")->capture_default_str();
  app.add_option("--tolerance", opt.tolerance, "Numeric tolerance for axiom checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<double> rho_values;
  std::string alpha = "1";
  std::string beta = "1";
  std::string k_const = "1";
  double tau_phase = 0.0;
  std::string path;

  auto* decompose = app.add_subcommand("decompose", "Mandel decomposition of a density operator");
  decompose->add_option("rho", rho_values, "rho11 rho22 Re(rho12) Im(rho12)")
      ->expected(4)
      ->required();

  auto* sweep = app.add_subcommand("zwm-sweep", "P_ID versus idler transmission |tau|");
  sweep->add_option("--alpha", alpha, "Pump amplitude toward crystal 1 (re or re,im)")
      ->capture_default_str();
  sweep->add_option("--beta", beta, "Pump amplitude toward crystal 2 (re or re,im)")
      ->capture_default_str();
  sweep->add_option("--tau-phase", tau_phase, "arg(tau) in radians")->capture_default_str();

  auto* fringes = app.add_subcommand("fringes", "Detection rate versus interferometer phase");
  fringes->add_option("rho", rho_values, "rho11 rho22 Re(rho12) Im(rho12)")
      ->expected(4)
      ->required();
  fringes->add_option("--k", k_const, "Field constant K (re or re,im)")->capture_default_str();

  auto* qset_check = app.add_subcommand("qset-check", "Check quasi-set axioms on a universe file");
  qset_check->add_option("universe", path, "Universe description (YAML)")->required();

  auto* bridge = app.add_subcommand("bridge", "Build a differentiation space from a P_ID table");
  bridge->add_option("table", path, "P_ID table (YAML)")->required();

  for (auto* sub : {decompose, sweep, fringes, qset_check, bridge}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidInput;
  }
  opt.format = format == "csv" ? Format::Csv : Format::Json;

  Outcome o;
  o.report.args.assign(args.begin(), args.end());
  if (decompose->parsed()) {
    o.report.command = "decompose";
    execute(o, [&] { cmd_decompose(rho_values, opt, o); });
  } else if (sweep->parsed()) {
    o.report.command = "zwm-sweep";
    execute(o, [&] { cmd_zwm_sweep(alpha, beta, tau_phase, opt, o); });
  } else if (fringes->parsed()) {
    o.report.command = "fringes";
    execute(o, [&] { cmd_fringes(rho_values, k_const, opt, o); });
  } else if (qset_check->parsed()) {
    o.report.command = "qset-check";
    execute(o, [&] { cmd_qset_check(path, opt, o); });
  } else {
    o.report.command = "bridge";
    execute(o, [&] { cmd_bridge(path, opt, o); });
  }

  if (o.report.error) err << "qind " << o.report.command << ": " << *o.report.error << '\n';

  std::ofstream file;
  std::ostream* sink = &out;
  if (!opt.out_path.empty()) {
    file.open(opt.out_path, std::ios::binary);
    if (!file) {
      err << "qind: cannot open '" << opt.out_path << "' for writing\n";
      return kExitInvalidInput;
    }
    sink = &file;
  }
  if (opt.format == Format::Json) {
    *sink << serialize(o.report);
  } else {
    *sink << o.csv;
  }
  return o.report.exit_status;
}

}  // namespace qind::cli
