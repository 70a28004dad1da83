#include "qind/quasiset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qind/error.hpp"

namespace qind::quasiset {

Qset::Qset(std::vector<TermId> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool Qset::contains(TermId t) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), t);
}

// ---------------------------------------------------------------------------
// Builder

void Universe::Builder::claim_name(const std::string& name) {
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "term names must be non-empty");
  const auto id = static_cast<std::uint32_t>(terms_.size());
  if (!names_.emplace(name, id).second) {
    throw Error(ErrorCode::InvalidArgument, "duplicate term name '" + name + "'");
  }
}

SpeciesId Universe::Builder::add_species(std::string label) {
  if (label.empty()) throw Error(ErrorCode::InvalidArgument, "species labels must be non-empty");
  if (std::find(species_.begin(), species_.end(), label) != species_.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate species '" + label + "'");
  }
  species_.push_back(std::move(label));
  return SpeciesId{static_cast<std::uint32_t>(species_.size() - 1)};
}

TermId Universe::Builder::add_micro(std::string name, std::string_view species_label) {
  const auto it = std::find(species_.begin(), species_.end(), species_label);
  if (it == species_.end()) {
    throw Error(ErrorCode::UnknownTerm, "unregistered species '" + std::string(species_label) +
                                            "' for micro-atom '" + name + "'");
  }
  return add_micro(std::move(name),
                   SpeciesId{static_cast<std::uint32_t>(it - species_.begin())});
}

TermId Universe::Builder::add_micro(std::string name, SpeciesId species) {
  if (species.value >= species_.size()) {
    throw Error(ErrorCode::UnknownTerm, "unregistered species id for micro-atom '" + name + "'");
  }
  claim_name(name);
  terms_.push_back({std::move(name), TermKind::Micro, species, {}});
  return TermId{static_cast<std::uint32_t>(terms_.size() - 1)};
}

TermId Universe::Builder::add_macro(std::string name) {
  claim_name(name);
  terms_.push_back({std::move(name), TermKind::Macro, {}, {}});
  return TermId{static_cast<std::uint32_t>(terms_.size() - 1)};
}

TermId Universe::Builder::add_qset(std::string name, std::vector<std::string> members) {
  claim_name(name);
  terms_.push_back({std::move(name), TermKind::Qset, {}, std::move(members)});
  return TermId{static_cast<std::uint32_t>(terms_.size() - 1)};
}

TermId Universe::Builder::add_qset(std::string name, std::span<const TermId> members) {
  std::vector<std::string> names;
  names.reserve(members.size());
  for (const auto t : members) {
    if (t.value >= terms_.size()) {
      throw Error(ErrorCode::UnknownTerm, "qset '" + name + "' references an unknown id");
    }
    names.push_back(terms_[t.value].name);
  }
  return add_qset(std::move(name), std::move(names));
}

Universe Universe::Builder::build() && {
  Universe u;
  const auto n = terms_.size();
  u.species_ = std::move(species_);
  u.names_.reserve(n);
  u.kinds_.reserve(n);
  u.species_of_.reserve(n);
  u.members_.resize(n);

  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& t = terms_[i];
    u.names_.push_back(t.name);
    u.kinds_.push_back(t.kind);
    u.species_of_.push_back(t.species);
    u.by_name_.emplace(t.name, TermId{i});
    (t.kind == TermKind::Qset ? u.qsets_ : u.atoms_).push_back(TermId{i});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (terms_[i].kind != TermKind::Qset) continue;
    std::vector<TermId> ids;
    for (const auto& m : terms_[i].members) {
      const auto it = u.by_name_.find(m);
      if (it == u.by_name_.end()) {
        throw Error(ErrorCode::UnknownTerm,
                    "qset '" + terms_[i].name + "' references unknown term '" + m + "'");
      }
      ids.push_back(it->second);
    }
    u.members_[i] = Qset(std::move(ids));
  }

  // Acyclicity, then signatures in dependency order.
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<TermId> order;
  order.reserve(n);
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t i) {
    if (mark[i] == Mark::Black) return;
    if (mark[i] == Mark::Grey) {
      throw Error(ErrorCode::InvalidArgument,
                  "qset '" + u.names_[i] + "' contains itself (membership cycle)");
    }
    mark[i] = Mark::Grey;
    for (const auto e : u.members_[i].elements()) visit(e.value);
    mark[i] = Mark::Black;
    order.push_back(TermId{i});
  };
  for (std::uint32_t i = 0; i < n; ++i) visit(i);

  // Macro-atoms are keyed by their membership profile.
  std::map<std::vector<std::uint32_t>, std::uint32_t> profile_key;
  std::vector<std::uint32_t> macro_key(n, 0);
  for (const auto a : u.atoms_) {
    if (u.kinds_[a.value] != TermKind::Macro) continue;
    std::vector<std::uint32_t> profile;
    for (const auto q : u.qsets_) {
      if (u.members_[q.value].contains(a)) profile.push_back(q.value);
    }
    const auto key = static_cast<std::uint32_t>(profile_key.size());
    macro_key[a.value] = profile_key.try_emplace(std::move(profile), key).first->second;
  }

  u.signatures_.resize(n);
  for (const auto t : order) {
    switch (u.kinds_[t.value]) {
      case TermKind::Micro:
        u.signatures_[t.value] = "s" + std::to_string(u.species_of_[t.value].value);
        break;
      case TermKind::Macro:
        u.signatures_[t.value] = "M" + std::to_string(macro_key[t.value]);
        break;
      case TermKind::Qset:
        u.signatures_[t.value] = u.signature(u.members_[t.value]);
        break;
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// Universe accessors

namespace {

void check_id(const Universe& u, TermId t) {
  if (t.value >= u.term_count()) {
    throw Error(ErrorCode::UnknownTerm, "term id " + std::to_string(t.value) +
                                            " is not in the universe");
  }
}

}  // namespace

TermKind Universe::kind(TermId t) const {
  check_id(*this, t);
  return kinds_[t.value];
}

std::string_view Universe::name(TermId t) const {
  check_id(*this, t);
  return names_[t.value];
}

std::optional<TermId> Universe::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<SpeciesId> Universe::find_species(std::string_view label) const {
  const auto it = std::find(species_.begin(), species_.end(), label);
  if (it == species_.end()) return std::nullopt;
  return SpeciesId{static_cast<std::uint32_t>(it - species_.begin())};
}

std::string_view Universe::species_label(SpeciesId s) const {
  if (s.value >= species_.size()) throw Error(ErrorCode::UnknownTerm, "unknown species id");
  return species_[s.value];
}

std::optional<SpeciesId> Universe::species_of(TermId t) const {
  if (kind(t) != TermKind::Micro) return std::nullopt;
  return species_of_[t.value];
}

const Qset& Universe::members(TermId qset) const {
  if (kind(qset) != TermKind::Qset) {
    throw Error(ErrorCode::UnknownTerm, "'" + names_[qset.value] + "' is not a qset");
  }
  return members_[qset.value];
}

std::vector<TermId> Universe::all_terms() const {
  std::vector<TermId> out(term_count());
  for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = TermId{i};
  return out;
}

void Universe::require(const Term& t) const {
  if (const auto* id = std::get_if<TermId>(&t)) {
    check_id(*this, *id);
    return;
  }
  for (const auto e : std::get<Qset>(t).elements()) check_id(*this, e);
}

std::string Universe::signature(const Term& t) const {
  if (const auto* id = std::get_if<TermId>(&t)) {
    check_id(*this, *id);
    return signatures_[id->value];
  }
  const auto& q = std::get<Qset>(t);
  std::vector<std::string_view> parts;
  parts.reserve(q.size());
  for (const auto e : q.elements()) {
    check_id(*this, e);
    parts.push_back(signatures_[e.value]);
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += '}';
  return out;
}

std::string Universe::describe(const Term& t) const {
  if (const auto* id = std::get_if<TermId>(&t)) return std::string(name(*id));
  // Sorted by name so the rendering does not leak id order.
  std::vector<std::string_view> names;
  for (const auto e : std::get<Qset>(t).elements()) names.push_back(name(e));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Observational operations

namespace {

bool is_qset(const Universe& u, const Term& t) {
  if (const auto* id = std::get_if<TermId>(&t)) return u.kind(*id) == TermKind::Qset;
  return true;
}

const Qset& as_qset(const Universe& u, const Term& t) {
  if (const auto* id = std::get_if<TermId>(&t)) {
    if (u.kind(*id) != TermKind::Qset) {
      throw Error(ErrorCode::PreconditionViolated,
                  "'" + std::string(u.name(*id)) + "' is an atom, not a qset");
    }
    return u.members(*id);
  }
  u.require(t);
  return std::get<Qset>(t);
}

bool same_memberships(const Universe& u, TermId a, TermId b) {
  return std::all_of(u.named_qsets().begin(), u.named_qsets().end(), [&](TermId q) {
    return u.members(q).contains(a) == u.members(q).contains(b);
  });
}

// Membership of a term in a registered qset; derived qset values belong
// to s when s holds a registered qset with the same elements.
bool member_of(const Universe& u, const Term& t, TermId s) {
  const auto& set = u.members(s);
  if (const auto* id = std::get_if<TermId>(&t)) return set.contains(*id);
  const auto& value = std::get<Qset>(t);
  return std::any_of(set.elements().begin(), set.elements().end(), [&](TermId e) {
    return u.kind(e) == TermKind::Qset && u.members(e) == value;
  });
}

AxiomReport failure(std::string axiom, std::vector<TermId> tuple, std::string detail) {
  return {std::move(axiom), false, std::move(tuple), std::move(detail)};
}

}  // namespace

bool indist(const Universe& u, const Term& x, const Term& y) {
  return u.signature(x) == u.signature(y);
}

bool ext_identity(const Universe& u, const Term& x, const Term& y) {
  u.require(x);
  u.require(y);
  if (is_qset(u, x) && is_qset(u, y)) return as_qset(u, x) == as_qset(u, y);
  const auto* a = std::get_if<TermId>(&x);
  const auto* b = std::get_if<TermId>(&y);
  if (a && b && u.kind(*a) == TermKind::Macro && u.kind(*b) == TermKind::Macro) {
    return same_memberships(u, *a, *b);
  }
  return false;
}

std::size_t quasi_cardinality(const Universe& u, const Term& x) { return as_qset(u, x).size(); }

Qset indist_class(const Universe& u, const Term& z) {
  const auto sig = u.signature(z);
  std::vector<TermId> out;
  for (const auto t : u.all_terms()) {
    if (u.signature(t) == sig) out.push_back(t);
  }
  return Qset(std::move(out));
}

std::vector<Qset> singleton_subs(const Universe& u, const Term& z,
                                 const std::optional<Qset>& within) {
  const auto sig = u.signature(z);
  const auto pool = within ? std::vector<TermId>(within->elements().begin(),
                                                 within->elements().end())
                           : u.all_terms();
  std::vector<Qset> out;
  for (const auto t : pool) {
    if (u.signature(t) == sig) out.emplace_back(std::vector<TermId>{t});
  }
  return out;
}

Qset singleton_sub(const Universe& u, const Term& z, const std::optional<Qset>& within) {
  auto choices = singleton_subs(u, z, within);
  if (choices.empty()) {
    throw Error(ErrorCode::EmptyClass, "no term indistinguishable from " + u.describe(z) +
                                           (within ? " in " + u.describe(*within) : ""));
  }
  return std::move(choices.front());
}

Qset qset_union(const Universe& u, const Term& x, const Term& y) {
  const auto& a = as_qset(u, x);
  const auto& b = as_qset(u, y);
  std::vector<TermId> out(a.elements().begin(), a.elements().end());
  out.insert(out.end(), b.elements().begin(), b.elements().end());
  return Qset(std::move(out));
}

Qset qset_difference(const Universe& u, const Term& x, const Term& z1) {
  const auto& a = as_qset(u, x);
  const auto& single = as_qset(u, z1);
  if (single.size() != 1) {
    throw Error(ErrorCode::NotSingleton, u.describe(z1) + " has quasi-cardinality " +
                                             std::to_string(single.size()));
  }
  const auto victim = single.elements().front();
  if (!a.contains(victim)) {
    throw Error(ErrorCode::PreconditionViolated,
                std::string(u.name(victim)) + " is not an element of " + u.describe(x));
  }
  std::vector<TermId> out;
  for (const auto e : a.elements()) {
    if (e != victim) out.push_back(e);
  }
  return Qset(std::move(out));
}

bool is_classical(const Universe& u, const Term& x) {
  const auto& q = as_qset(u, x);
  return std::all_of(q.elements().begin(), q.elements().end(), [&](TermId e) {
    switch (u.kind(e)) {
      case TermKind::Micro: return false;
      case TermKind::Macro: return true;
      case TermKind::Qset: return is_classical(u, e);
    }
    return false;
  });
}

AxiomReport permutation_theorem_check(const Universe& u, const Term& x, TermId z, TermId w) {
  const auto& xs = as_qset(u, x);
  auto violated = [](const std::string& what) {
    throw Error(ErrorCode::PreconditionViolated, what);
  };
  if (u.kind(z) != TermKind::Micro) violated("z is not a micro-atom");
  u.require(w);
  if (!xs.contains(z)) violated("z is not an element of x");
  if (ext_identity(u, xs, indist_class(u, z))) violated("x =_E [z]");
  if (!indist(u, w, z)) violated("w is not indistinguishable from z");
  if (xs.contains(w)) violated("w is an element of x");

  const auto x_sig = u.signature(xs);
  const auto removals = singleton_subs(u, z, xs);
  const auto insertions = singleton_subs(u, w);

  for (const auto& zp : removals) {
    const auto rest = qset_difference(u, xs, zp);
    const bool found = std::any_of(insertions.begin(), insertions.end(), [&](const Qset& wp) {
      return u.signature(qset_union(u, rest, wp)) == x_sig;
    });
    if (!found) {
      return failure("permutation", {zp.elements().begin(), zp.elements().end()},
                     "no w' restores x after removing " + u.describe(zp));
    }
  }
  std::ostringstream detail;
  detail << removals.size() << " choice(s) of z' checked against " << insertions.size()
         << " candidate(s) w'";
  return {"permutation", true, std::nullopt, detail.str()};
}

std::vector<AxiomReport> check_equivalence_axioms(const Universe& u) {
  return check_equivalence_axioms(u, [&u](TermId a, TermId b) { return indist(u, a, b); });
}

std::vector<AxiomReport> check_equivalence_axioms(const Universe& u, const Relation& rel) {
  const auto terms = u.all_terms();
  auto name = [&u](TermId t) { return std::string(u.name(t)); };

  auto reflexivity = [&]() -> AxiomReport {
    for (const auto a : terms) {
      if (!rel(a, a)) return failure("Q1 reflexivity", {a}, name(a) + " is not related to itself");
    }
    return {"Q1 reflexivity", true, std::nullopt, ""};
  };
  auto symmetry = [&]() -> AxiomReport {
    for (const auto a : terms) {
      for (const auto b : terms) {
        if (rel(a, b) && !rel(b, a)) {
          return failure("Q2 symmetry", {a, b},
                         name(a) + "~" + name(b) + " but not " + name(b) + "~" + name(a));
        }
      }
    }
    return {"Q2 symmetry", true, std::nullopt, ""};
  };
  auto transitivity = [&]() -> AxiomReport {
    for (const auto a : terms) {
      for (const auto b : terms) {
        if (!rel(a, b)) continue;
        for (const auto c : terms) {
          if (rel(b, c) && !rel(a, c)) {
            return failure("Q3 transitivity", {a, b, c},
                           name(a) + "~" + name(b) + " and " + name(b) + "~" + name(c) +
                               " but not " + name(a) + "~" + name(c));
          }
        }
      }
    }
    return {"Q3 transitivity", true, std::nullopt, ""};
  };
  return {reflexivity(), symmetry(), transitivity()};
}

AxiomReport check_substitutivity_surrogate(const Universe& u, const Term& x, const Term& y) {
  if (!ext_identity(u, x, y)) {
    throw Error(ErrorCode::PreconditionViolated,
                u.describe(x) + " and " + u.describe(y) + " are not extensionally identical");
  }
  auto tuple = [&]() {
    std::vector<TermId> out;
    for (const auto* t : {&x, &y}) {
      if (const auto* id = std::get_if<TermId>(t)) out.push_back(*id);
    }
    return out;
  };

  for (const auto s : u.named_qsets()) {
    if (member_of(u, x, s) != member_of(u, y, s)) {
      auto ce = tuple();
      ce.push_back(s);
      return failure("Q4 surrogate", std::move(ce),
                     "membership in " + std::string(u.name(s)) + " differs");
    }
  }
  if (is_qset(u, x) && quasi_cardinality(u, x) != quasi_cardinality(u, y)) {
    return failure("Q4 surrogate", tuple(), "quasi-cardinality differs");
  }
  if (indist_class(u, x) != indist_class(u, y)) {
    return failure("Q4 surrogate", tuple(), "indistinguishability classes differ");
  }
  return {"Q4 surrogate", true, std::nullopt, "membership, quasi-cardinality and class agree"};
}

AxiomReport quasi_function_check(const Universe& u,
                                 std::span<const std::pair<TermId, TermId>> pairs,
                                 const Qset& domain, const Qset& codomain) {
  u.require(domain);
  u.require(codomain);
  for (const auto& [a, b] : pairs) {
    if (!domain.contains(a) || !codomain.contains(b)) {
      return failure("quasi-function", {a, b},
                     "(" + std::string(u.name(a)) + ", " + std::string(u.name(b)) +
                         ") lies outside domain x codomain");
    }
  }
  for (const auto a : domain.elements()) {
    const bool has_image = std::any_of(pairs.begin(), pairs.end(),
                                       [a](const auto& p) { return p.first == a; });
    if (!has_image) {
      return failure("quasi-function", {a}, std::string(u.name(a)) + " has no image (totality)");
    }
  }
  for (const auto& [a, b] : pairs) {
    for (const auto& [a2, b2] : pairs) {
      if (indist(u, a, a2) && !indist(u, b, b2)) {
        return failure("quasi-function", {a, b, a2, b2},
                       std::string(u.name(a)) + " and " + std::string(u.name(a2)) +
                           " are indistinguishable but their images are not (congruence)");
      }
    }
  }
  return {"quasi-function", true, std::nullopt, "total and congruent"};
}

}  // namespace qind::quasiset
