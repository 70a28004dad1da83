#include "qind/qmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qind/error.hpp"

namespace qind::qmetric {

namespace {

std::string num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

AxiomReport ok(std::string axiom) { return {std::move(axiom), true, std::nullopt, ""}; }

AxiomReport broken(std::string axiom, std::vector<TermId> tuple, std::string detail) {
  return {std::move(axiom), false, std::move(tuple), std::move(detail)};
}

}  // namespace

QuasiMetricSpace::QuasiMetricSpace(std::shared_ptr<const Universe> universe, Qset carrier,
                                   std::vector<double> distances)
    : universe_(std::move(universe)), carrier_(std::move(carrier)),
      distances_(std::move(distances)) {
  if (!universe_) throw Error(ErrorCode::InvalidArgument, "quasi-metric space needs a universe");
  universe_->require(carrier_);
  if (distances_.size() != carrier_.size() * carrier_.size()) {
    throw Error(ErrorCode::IncompleteTable,
                "distance table has " + std::to_string(distances_.size()) + " entries, expected " +
                    std::to_string(carrier_.size() * carrier_.size()));
  }
}

std::size_t QuasiMetricSpace::index_of(TermId t) const {
  const auto elems = carrier_.elements();
  const auto it = std::lower_bound(elems.begin(), elems.end(), t);
  if (it == elems.end() || *it != t) {
    throw Error(ErrorCode::NotInCarrier,
                "term id " + std::to_string(t.value) + " is not in the carrier");
  }
  return static_cast<std::size_t>(it - elems.begin());
}

std::vector<AxiomReport> verify_qm_axioms(const QuasiMetricSpace& space, double tolerance) {
  const auto& u = space.universe();
  return verify_qm_axioms(
      space, [&u](TermId a, TermId b) { return quasiset::indist(u, a, b); }, tolerance);
}

std::vector<AxiomReport> verify_qm_axioms(const QuasiMetricSpace& space,
                                          const quasiset::Relation& equiv, double tolerance) {
  const auto& u = space.universe();
  const auto elems = space.carrier().elements();
  const std::size_t n = elems.size();
  auto name = [&u](TermId t) { return std::string(u.name(t)); };
  auto d = [&space](std::size_t i, std::size_t j) { return space.at(i, j); };

  std::vector<AxiomReport> out;
  out.push_back(n > 0 ? ok("QM1") : broken("QM1", {}, "carrier is empty"));

  auto check_pairs = [&](const char* axiom, auto&& pred, auto&& describe) -> AxiomReport {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!pred(i, j)) return broken(axiom, {elems[i], elems[j]}, describe(i, j));
      }
    }
    return ok(axiom);
  };

  out.push_back(check_pairs(
      "QM2", [&](auto i, auto j) { return std::isfinite(d(i, j)); },
      [&](auto i, auto j) {
        return "d(" + name(elems[i]) + ", " + name(elems[j]) + ") = " + num(d(i, j)) +
               " is not a real number";
      }));

  out.push_back(check_pairs(
      "QM3", [&](auto i, auto j) { return d(i, j) >= -tolerance; },
      [&](auto i, auto j) {
        return "d(" + name(elems[i]) + ", " + name(elems[j]) + ") = " + num(d(i, j)) + " < 0";
      }));

  out.push_back(check_pairs(
      "QM4",
      [&](auto i, auto j) {
        return (std::abs(d(i, j)) <= tolerance) == equiv(elems[i], elems[j]);
      },
      [&](auto i, auto j) {
        const bool same = equiv(elems[i], elems[j]);
        return "d(" + name(elems[i]) + ", " + name(elems[j]) + ") = " + num(d(i, j)) +
               (same ? " but the terms are indistinguishable"
                     : " but the terms are distinguishable");
      }));

  out.push_back(check_pairs(
      "QM5", [&](auto i, auto j) { return std::abs(d(i, j) - d(j, i)) <= tolerance; },
      [&](auto i, auto j) {
        return "d(" + name(elems[i]) + ", " + name(elems[j]) + ") = " + num(d(i, j)) +
               " != d(" + name(elems[j]) + ", " + name(elems[i]) + ") = " + num(d(j, i));
      }));

  out.push_back([&]() -> AxiomReport {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!(d(a, c) <= d(a, b) + d(b, c) + tolerance)) {
            return broken("QM6", {elems[a], elems[b], elems[c]},
                          "d(" + name(elems[a]) + ", " + name(elems[c]) + ") = " + num(d(a, c)) +
                              " > d(" + name(elems[a]) + ", " + name(elems[b]) + ") + d(" +
                              name(elems[b]) + ", " + name(elems[c]) +
                              ") = " + num(d(a, b) + d(b, c)));
          }
        }
      }
    }
    return ok("QM6");
  }());

  out.push_back([&]() -> AxiomReport {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t a2 = 0; a2 < n; ++a2) {
        if (a == a2 || !equiv(elems[a], elems[a2])) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (!(std::abs(d(a, b) - d(a2, b)) <= tolerance)) {
            return broken("congruence", {elems[a], elems[a2], elems[b]},
                          name(elems[a]) + " and " + name(elems[a2]) +
                              " are indistinguishable but lie at distances " + num(d(a, b)) +
                              " and " + num(d(a2, b)) + " from " + name(elems[b]));
          }
        }
      }
    }
    return ok("congruence");
  }());

  return out;
}

bool all_hold(std::span<const AxiomReport> reports) noexcept {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds; });
}

DifferentiationSpace::DifferentiationSpace(QuasiMetricSpace base, double tolerance)
    : base_(std::move(base)), tolerance_(tolerance) {
  const std::size_t n = base_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = base_.at(i, j);
      if (!(v >= -tolerance && v <= 1.0 + tolerance)) {
        throw Error(ErrorCode::OutOfRange, "distance " + num(v) + " between " +
                                               std::string(base_.universe().name(
                                                   base_.carrier().elements()[i])) +
                                               " and " +
                                               std::string(base_.universe().name(
                                                   base_.carrier().elements()[j])) +
                                               " is outside [0, 1]");
      }
    }
  }
  reports_ = verify_qm_axioms(base_, tolerance);
  sound_ = all_hold(reports_);
}

double degree(const DifferentiationSpace& space, TermId a, TermId b) {
  const auto i = space.base().index_of(a);
  const auto j = space.base().index_of(b);
  if (!space.sound()) {
    std::string failed;
    for (const auto& r : space.axiom_reports()) {
      if (!r.holds) failed += (failed.empty() ? "" : ", ") + r.axiom;
    }
    throw Error(ErrorCode::AxiomsViolated, "space fails " + failed);
  }
  return 1.0 - space.base().at(i, j);
}

bool degree_relation_holds(const DifferentiationSpace& space, TermId a, TermId b, double r) {
  return std::abs(r - degree(space, a, b)) <= space.tolerance();
}

BridgeResult from_pid_table(std::span<const std::string> sources, std::span<const double> pid,
                            double tolerance) {
  const std::size_t n = sources.size();
  auto malformed = [](const std::string& what) { throw Error(ErrorCode::MalformedTable, what); };

  if (pid.size() != n * n) {
    malformed("P_ID table has " + std::to_string(pid.size()) + " entries for " +
              std::to_string(n) + " sources");
  }
  if (std::set<std::string>(sources.begin(), sources.end()).size() != n) {
    malformed("source labels must be unique");
  }
  auto p = [&](std::size_t i, std::size_t j) { return pid[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (sources[i].empty()) malformed("source labels must be non-empty");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(p(i, j) >= 0.0 && p(i, j) <= 1.0)) {
        malformed("P_ID(" + sources[i] + ", " + sources[j] + ") = " + num(p(i, j)) +
                  " is outside [0, 1]");
      }
      if (std::abs(p(i, j) - p(j, i)) > tolerance) {
        malformed("table is not symmetric at (" + sources[i] + ", " + sources[j] + ")");
      }
    }
    if (std::abs(p(i, i) - 1.0) > tolerance) {
      malformed("P_ID(" + sources[i] + ", " + sources[i] + ") must be 1");
    }
  }

  std::vector<double> dist(n * n);
  for (std::size_t k = 0; k < n * n; ++k) dist[k] = 1.0 - pid[k];

  // Species = classes of the transitive closure of zero-distance pairs.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist[i * n + j]) <= tolerance) parent[root(j)] = root(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (root(i) == root(j) && std::abs(dist[i * n + j]) > tolerance) {
        throw Error(ErrorCode::NonTransitiveZeroes,
                    sources[i] + " and " + sources[j] +
                        " are chained by fully indistinguishable pairs but d = " +
                        num(dist[i * n + j]));
      }
    }
  }

  Universe::Builder builder;
  std::vector<std::size_t> class_of_root(n, n);
  std::vector<quasiset::SpeciesId> species;
  std::vector<TermId> ids;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = root(i);
    if (class_of_root[r] == n) {
      class_of_root[r] = species.size();
      species.push_back(builder.add_species("class" + std::to_string(species.size())));
    }
    ids.push_back(builder.add_micro(sources[i], species[class_of_root[r]]));
  }
  auto universe = std::make_shared<const Universe>(std::move(builder).build());

  DifferentiationSpace space(QuasiMetricSpace(universe, Qset(ids), std::move(dist)), tolerance);
  auto reports = space.axiom_reports();
  return {std::move(space), std::move(reports)};
}

HeytingValue identity_semantic_value(const DifferentiationSpace& space, TermId a, TermId b) {
  return HeytingValue(std::clamp(degree(space, a, b), 0.0, 1.0));
}

Formula Formula::identity(TermId a, TermId b) {
  Formula f;
  f.op_ = Op::Identity;
  f.a_ = a;
  f.b_ = b;
  return f;
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  Formula f;
  f.op_ = Op::And;
  f.lhs_ = std::make_shared<const Formula>(std::move(lhs));
  f.rhs_ = std::make_shared<const Formula>(std::move(rhs));
  return f;
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  Formula f = conj(std::move(lhs), std::move(rhs));
  f.op_ = Op::Or;
  return f;
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  Formula f = conj(std::move(lhs), std::move(rhs));
  f.op_ = Op::Implies;
  return f;
}

Formula Formula::negation(Formula inner) {
  Formula f;
  f.op_ = Op::Not;
  f.lhs_ = std::make_shared<const Formula>(std::move(inner));
  return f;
}

HeytingValue evaluate(const DifferentiationSpace& space, const Formula& formula) {
  switch (formula.op()) {
    case Formula::Op::Identity:
      return identity_semantic_value(space, formula.lhs_term(), formula.rhs_term());
    case Formula::Op::And:
      return heyting_meet(evaluate(space, formula.lhs()), evaluate(space, formula.rhs()));
    case Formula::Op::Or:
      return heyting_join(evaluate(space, formula.lhs()), evaluate(space, formula.rhs()));
    case Formula::Op::Implies:
      return heyting_implies(evaluate(space, formula.lhs()), evaluate(space, formula.rhs()));
    case Formula::Op::Not:
      return heyting_not(evaluate(space, formula.lhs()));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown formula operator");
}

}  // namespace qind::qmetric
