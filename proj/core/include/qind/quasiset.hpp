#pragma once

// Finite models of a fragment of quasi-set theory.
//
// A Universe holds micro-atoms (each tagged with a species), macro-atoms and
// named qsets. Every term carries a TermId for bookkeeping, but no
// observational operation on micro-atoms branches on it: micro-atoms are
// indistinguishable exactly when they share a species, and qsets are
// indistinguishable when their hereditary species-count signatures agree
// (weak extensionality).
//
// Macro-atoms are indistinguishable exactly when they are extensionally
// identical, i.e. when they belong to the same named qsets. In a universe
// where every macro-atom has its own membership profile this is plain
// identity.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace qind::quasiset {

struct TermId {
  std::uint32_t value = 0;
  friend auto operator<=>(const TermId&, const TermId&) = default;
};

struct SpeciesId {
  std::uint32_t value = 0;
  friend auto operator<=>(const SpeciesId&, const SpeciesId&) = default;
};

enum class TermKind { Micro, Macro, Qset };

/// A finite collection of universe terms, held as a sorted set of ids.
/// Values of this type need not be registered in the universe; union,
/// difference and class construction all produce fresh Qset values.
class Qset {
 public:
  Qset() = default;
  explicit Qset(std::vector<TermId> elements);

  std::span<const TermId> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(TermId t) const noexcept;

  friend bool operator==(const Qset&, const Qset&) = default;

 private:
  std::vector<TermId> elements_;
};

/// A term is either registered in the universe or a derived qset value.
using Term = std::variant<TermId, Qset>;

struct AxiomReport {
  std::string axiom;
  bool holds = true;
  /// Present whenever holds is false; the tuple that breaks the axiom.
  std::optional<std::vector<TermId>> counterexample;
  std::string detail;
};

class Universe {
 public:
  class Builder {
   public:
    SpeciesId add_species(std::string label);
    TermId add_micro(std::string name, std::string_view species_label);
    TermId add_micro(std::string name, SpeciesId species);
    TermId add_macro(std::string name);
    /// Members may name terms added later; they are resolved by build().
    TermId add_qset(std::string name, std::vector<std::string> members);
    TermId add_qset(std::string name, std::span<const TermId> members);

    /// Throws UnknownTerm for unresolved members and InvalidArgument for
    /// membership cycles.
    Universe build() &&;

   private:
    struct PendingTerm {
      std::string name;
      TermKind kind;
      SpeciesId species;
      std::vector<std::string> members;
    };
    void claim_name(const std::string& name);

    std::vector<std::string> species_;
    std::vector<PendingTerm> terms_;
    std::unordered_map<std::string, std::uint32_t> names_;
  };

  std::size_t term_count() const noexcept { return kinds_.size(); }
  std::size_t species_count() const noexcept { return species_.size(); }

  TermKind kind(TermId t) const;
  std::string_view name(TermId t) const;
  std::optional<TermId> find(std::string_view name) const;
  std::optional<SpeciesId> find_species(std::string_view label) const;
  std::string_view species_label(SpeciesId s) const;
  /// Species of a micro-atom; empty for macro-atoms and qsets.
  std::optional<SpeciesId> species_of(TermId t) const;

  /// Elements of a registered qset. Throws UnknownTerm otherwise.
  const Qset& members(TermId qset) const;

  std::span<const TermId> atoms() const noexcept { return atoms_; }
  std::span<const TermId> named_qsets() const noexcept { return qsets_; }
  std::vector<TermId> all_terms() const;

  /// Throws UnknownTerm for ids outside the universe or derived qsets
  /// referencing such ids.
  void require(const Term& t) const;

  /// Canonical weak-extensionality signature; equal strings <=> indist.
  std::string signature(const Term& t) const;

  /// Human-readable rendering ("a" or "{a, b}").
  std::string describe(const Term& t) const;

 private:
  Universe() = default;

  std::vector<std::string> species_;
  std::vector<std::string> names_;
  std::vector<TermKind> kinds_;
  std::vector<SpeciesId> species_of_;
  std::vector<Qset> members_;  // empty for atoms
  std::vector<TermId> atoms_;
  std::vector<TermId> qsets_;
  std::vector<std::string> signatures_;
  std::unordered_map<std::string, TermId> by_name_;
};

/// Observable relation used by the axiom checkers.
using Relation = std::function<bool(TermId, TermId)>;

bool indist(const Universe& u, const Term& x, const Term& y);

/// Qsets with the same elements, or macro-atoms with the same memberships.
/// Micro-atoms are never extensionally identical to anything.
bool ext_identity(const Universe& u, const Term& x, const Term& y);

/// Number of top-level elements. Throws PreconditionViolated on atoms.
std::size_t quasi_cardinality(const Universe& u, const Term& x);

/// [z]: every registered term indistinguishable from z.
Qset indist_class(const Universe& u, const Term& z);

/// A one-element z' with z' in [z], picked from `within` when given. The
/// pick is the lowest id; use singleton_subs to quantify over every choice.
/// Throws EmptyClass when no candidate exists.
Qset singleton_sub(const Universe& u, const Term& z,
                   const std::optional<Qset>& within = std::nullopt);
std::vector<Qset> singleton_subs(const Universe& u, const Term& z,
                                 const std::optional<Qset>& within = std::nullopt);

Qset qset_union(const Universe& u, const Term& x, const Term& y);
/// x minus the single element of z1. Throws NotSingleton when qc(z1) != 1
/// and PreconditionViolated when that element is not in x.
Qset qset_difference(const Universe& u, const Term& x, const Term& z1);

/// Z predicate: no micro-atom occurs in x hereditarily.
bool is_classical(const Universe& u, const Term& x);

/// For x finite with x !=_E [z], z a micro-atom in x, w indist z and w not in
/// x, checks that for every admissible z' (qc 1, z' in [z], z' in x) some
/// w' = {t} with t indist w gives (x - z') u w' indist x.
/// Throws PreconditionViolated naming the failed hypothesis.
AxiomReport permutation_theorem_check(const Universe& u, const Term& x, TermId z, TermId w);

/// Reflexivity, symmetry and transitivity (Q1-Q3) over every registered term.
std::vector<AxiomReport> check_equivalence_axioms(const Universe& u);
std::vector<AxiomReport> check_equivalence_axioms(const Universe& u, const Relation& rel);

/// Finite stand-in for the substitutivity schema: x =_E y must agree on
/// membership in every registered qset, on quasi-cardinality and on their
/// indistinguishability class. Throws PreconditionViolated unless x =_E y.
AxiomReport check_substitutivity_surrogate(const Universe& u, const Term& x, const Term& y);

/// Totality on `domain` and congruence: a indist a' implies f(a) indist f(a').
AxiomReport quasi_function_check(const Universe& u,
                                 std::span<const std::pair<TermId, TermId>> pairs,
                                 const Qset& domain, const Qset& codomain);

}  // namespace qind::quasiset
