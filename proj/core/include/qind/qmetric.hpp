#pragma once

// Quasi-metric spaces over finite qsets and graded indistinguishability.
//
// A quasi-metric space <M, d> satisfies
//   QM1  M is non-empty
//   QM2  d is total on M x M (finite values)
//   QM3  d(a,b) >= 0
//   QM4  d(a,b) = 0  iff  a indist b
//   QM5  d(a,b) = d(b,a)
//   QM6  d(a,c) <= d(a,b) + d(b,c)
// and d must respect indistinguishability (a indist a' implies
// d(a,b) = d(a',b)). With all distances in [0,1] the space is a
// differentiation space, and a and b are indistinguishable to degree
// r = 1 - d(a,b).
//
// Real-number equality is approximated by an absolute tolerance, 1e-12 by
// default.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qind/heyting.hpp"
#include "qind/quasiset.hpp"

namespace qind::qmetric {

using quasiset::AxiomReport;
using quasiset::Qset;
using quasiset::TermId;
using quasiset::Universe;

inline constexpr double kDefaultTolerance = 1e-12;

class QuasiMetricSpace {
 public:
  /// `distances` is row-major over carrier.elements(). Throws IncompleteTable
  /// when its size is not |carrier|^2, UnknownTerm for foreign carrier ids.
  QuasiMetricSpace(std::shared_ptr<const Universe> universe, Qset carrier,
                   std::vector<double> distances);

  const Universe& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const Universe>& shared_universe() const noexcept { return universe_; }
  const Qset& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }

  /// Position of t in the carrier. Throws NotInCarrier.
  std::size_t index_of(TermId t) const;
  double at(std::size_t i, std::size_t j) const { return distances_[i * size() + j]; }
  double distance(TermId a, TermId b) const { return at(index_of(a), index_of(b)); }

 private:
  std::shared_ptr<const Universe> universe_;
  Qset carrier_;
  std::vector<double> distances_;
};

/// One report each for QM1..QM6 and congruence, in that order. The relation
/// defaults to quasiset::indist over the space's universe.
std::vector<AxiomReport> verify_qm_axioms(const QuasiMetricSpace& space,
                                          double tolerance = kDefaultTolerance);
std::vector<AxiomReport> verify_qm_axioms(const QuasiMetricSpace& space,
                                          const quasiset::Relation& equiv,
                                          double tolerance = kDefaultTolerance);

bool all_hold(std::span<const AxiomReport> reports) noexcept;

class DifferentiationSpace {
 public:
  /// Throws OutOfRange when some distance lies outside [0, 1]. The axiom
  /// reports are computed once here.
  explicit DifferentiationSpace(QuasiMetricSpace base, double tolerance = kDefaultTolerance);

  const QuasiMetricSpace& base() const noexcept { return base_; }
  const std::vector<AxiomReport>& axiom_reports() const noexcept { return reports_; }
  bool sound() const noexcept { return sound_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  QuasiMetricSpace base_;
  std::vector<AxiomReport> reports_;
  bool sound_;
  double tolerance_;
};

/// r = 1 - d(a, b). Throws NotInCarrier, or AxiomsViolated on unsound spaces.
double degree(const DifferentiationSpace& space, TermId a, TermId b);

/// a indist_r b, i.e. |r - (1 - d(a,b))| <= tolerance.
bool degree_relation_holds(const DifferentiationSpace& space, TermId a, TermId b, double r);

struct BridgeResult {
  DifferentiationSpace space;
  std::vector<AxiomReport> reports;
};

/// Builds d = 1 - P_ID over one micro-atom per source. Sources joined by
/// zero distances share a species (transitive closure). `pid` is row-major
/// n x n.
///
/// Throws MalformedTable for shape, range, symmetry or diagonal problems and
/// NonTransitiveZeroes when the closure of zero-distance pairs would put two
/// sources at positive distance into one class. Axiom failures are reported,
/// not thrown.
BridgeResult from_pid_table(std::span<const std::string> sources, std::span<const double> pid,
                            double tolerance = kDefaultTolerance);

HeytingValue identity_semantic_value(const DifferentiationSpace& space, TermId a, TermId b);

/// Propositional formulas over atomic identities x = y.
class Formula {
 public:
  enum class Op { Identity, And, Or, Implies, Not };

  static Formula identity(TermId a, TermId b);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula negation(Formula f);

  Op op() const noexcept { return op_; }
  TermId lhs_term() const noexcept { return a_; }
  TermId rhs_term() const noexcept { return b_; }
  const Formula& lhs() const { return *lhs_; }
  const Formula& rhs() const { return *rhs_; }

 private:
  Formula() = default;

  Op op_ = Op::Identity;
  TermId a_{};
  TermId b_{};
  std::shared_ptr<const Formula> lhs_;
  std::shared_ptr<const Formula> rhs_;
};

HeytingValue evaluate(const DifferentiationSpace& space, const Formula& formula);

}  // namespace qind::qmetric
