#pragma once

// Everything the quasiset module lets a caller observe about a universe,
// keyed by term names so that two builds of the same universe with
// different internal ids can be compared.

#include <map>
#include <string>
#include <utility>

#include "qind/error.hpp"
#include "qind/quasiset.hpp"

namespace qind::testing {

struct Observations {
  std::map<std::pair<std::string, std::string>, bool> indist;
  std::map<std::pair<std::string, std::string>, bool> ext_identity;
  std::map<std::string, std::size_t> cardinality;
  std::map<std::string, std::size_t> class_size;
  std::map<std::string, std::size_t> singleton_choices;
  std::map<std::string, bool> classical;
  std::map<std::string, std::string> permutation;

  friend bool operator==(const Observations&, const Observations&) = default;
};

inline Observations observe(const quasiset::Universe& u) {
  using quasiset::TermKind;
  Observations o;
  const auto terms = u.all_terms();
  for (const auto a : terms) {
    const std::string na(u.name(a));
    o.class_size[na] = quasiset::indist_class(u, a).size();
    o.singleton_choices[na] = quasiset::singleton_subs(u, a).size();
    if (u.kind(a) == TermKind::Qset) {
      o.cardinality[na] = quasiset::quasi_cardinality(u, a);
      o.classical[na] = quasiset::is_classical(u, a);
    }
    for (const auto b : terms) {
      const std::pair key{na, std::string(u.name(b))};
      o.indist[key] = quasiset::indist(u, a, b);
      o.ext_identity[key] = quasiset::ext_identity(u, a, b);
    }
  }
  for (const auto x : u.named_qsets()) {
    for (const auto z : u.atoms()) {
      for (const auto w : u.atoms()) {
        std::string outcome;
        try {
          outcome = quasiset::permutation_theorem_check(u, x, z, w).holds ? "holds" : "fails";
        } catch (const Error& e) {
          outcome = e.what();
        }
        o.permutation[std::string(u.name(x)) + "/" + std::string(u.name(z)) + "/" +
                      std::string(u.name(w))] = outcome;
      }
    }
  }
  return o;
}

}  // namespace qind::testing
