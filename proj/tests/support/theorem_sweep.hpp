#pragma once

// Exhaustive sweep of the permutation theorem over small micro-atom
// universes, with an independent oracle: for micro-atoms, two finite sets
// are indistinguishable exactly when their per-species counts agree, so
// (x - {t}) u {t'} can be evaluated on plain index sets and count vectors.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qind/error.hpp"
#include "qind/quasiset.hpp"
#include "support/generators.hpp"

namespace qind::testing {

struct TheoremSweepStats {
  std::size_t universes = 0;
  std::size_t instances = 0;           // admissible (x, z, w)
  std::size_t removal_choices = 0;     // z' choices checked
  std::size_t failures = 0;            // check reported holds = false
  std::size_t oracle_disagreements = 0;
  std::size_t unexpected_rejections = 0;  // admissible but check threw
  std::size_t wide_reading_failures = 0;  // z' drawn from [z] outside x
};

/// Every ordered species-count vector with 1..max_species positive entries
/// summing to at most max_atoms.
inline std::vector<std::vector<int>> species_compositions(int max_species, int max_atoms) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_species) return;
    for (int c = 1; c <= remaining; ++c) {
      cur.push_back(c);
      self(self, remaining - c);
      cur.pop_back();
    }
  };
  rec(rec, max_atoms);
  return out;
}

inline TheoremSweepStats run_theorem_sweep(int max_species, int max_atoms) {
  using quasiset::Qset;
  using quasiset::TermId;

  TheoremSweepStats stats;
  for (const auto& counts : species_compositions(max_species, max_atoms)) {
    const auto u = micro_universe(counts);
    ++stats.universes;

    // Oracle view: atom index -> species index, independent of the library.
    std::vector<std::size_t> species;
    std::vector<TermId> ids;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      for (int k = 0; k < counts[s]; ++k) {
        species.push_back(s);
        ids.push_back(*u.find("sp" + std::to_string(s) + "_" + std::to_string(k)));
      }
    }
    const std::size_t n = species.size();

    auto count_vector = [&](std::uint32_t mask) {
      std::vector<int> c(counts.size(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) ++c[species[i]];
      }
      return c;
    };
    auto class_mask = [&](std::size_t z) {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (species[i] == species[z]) m |= 1u << i;
      }
      return m;
    };
    // Some t' indist w makes (x - {t}) u {t'} match x's species counts.
    auto restorable = [&](std::uint32_t x, std::size_t t, std::size_t w) {
      const auto target = count_vector(x);
      for (std::size_t tp = 0; tp < n; ++tp) {
        if (species[tp] != species[w]) continue;
        if (count_vector((x & ~(1u << t)) | (1u << tp)) == target) return true;
      }
      return false;
    };

    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      std::vector<TermId> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (x >> i & 1u) members.push_back(ids[i]);
      }
      const Qset xs(members);
      for (std::size_t z = 0; z < n; ++z) {
        if (!(x >> z & 1u) || x == class_mask(z)) continue;
        for (std::size_t w = 0; w < n; ++w) {
          if ((x >> w & 1u) || species[w] != species[z]) continue;
          ++stats.instances;

          bool expected = true;
          for (std::size_t t = 0; t < n; ++t) {
            if (!(x >> t & 1u) || species[t] != species[z]) continue;
            ++stats.removal_choices;
            expected = expected && restorable(x, t, w);
          }
          for (std::size_t t = 0; t < n; ++t) {
            if ((x >> t & 1u) || species[t] != species[z]) continue;
            if (!restorable(x, t, w)) ++stats.wide_reading_failures;
          }

          try {
            const auto report = quasiset::permutation_theorem_check(u, xs, ids[z], ids[w]);
            if (!report.holds) ++stats.failures;
            if (report.holds != expected) ++stats.oracle_disagreements;
          } catch (const Error&) {
            ++stats.unexpected_rejections;
          }
        }
      }
    }
  }
  return stats;
}

}  // namespace qind::testing
