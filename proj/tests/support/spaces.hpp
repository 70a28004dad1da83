#pragma once

// Generated differentiation spaces: every set partition of an n-element
// carrier (restricted growth strings), one species per block, and species
// placed at points of [0, 1] so that d(a, b) = |x(a) - x(b)| is a
// quasi-metric for the block relation.

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qind/qmetric.hpp"

namespace qind::testing {

/// All set partitions of {0..n-1} as block labels with labels[0] = 0 and
/// labels[i] <= 1 + max(labels[0..i-1]).
inline std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int max_label) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= max_label + 1; ++b) {
      cur.push_back(b);
      self(self, std::max(max_label, b));
      cur.pop_back();
    }
  };
  if (n > 0) rec(rec, -1);
  return out;
}

struct GeneratedSpace {
  std::shared_ptr<const quasiset::Universe> universe;
  std::vector<quasiset::TermId> atoms;  // carrier order
  std::vector<int> block;               // block label per atom
  std::vector<double> position;         // per block
};

/// Atoms "a0".."a<n-1>", atom i of species "b<block[i]>". Block positions
/// are distinct points drawn from [0, 1].
inline GeneratedSpace generate_space(const std::vector<int>& block, std::mt19937_64& rng) {
  const int blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  GeneratedSpace g;
  g.block = block;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(g.position.size()) < blocks) {
    const double x = unit(rng);
    const bool apart = std::all_of(g.position.begin(), g.position.end(),
                                   [x](double p) { return std::abs(p - x) > 1e-6; });
    if (apart) g.position.push_back(x);
  }
  quasiset::Universe::Builder b;
  for (int k = 0; k < blocks; ++k) b.add_species("b" + std::to_string(k));
  for (std::size_t i = 0; i < block.size(); ++i) {
    g.atoms.push_back(b.add_micro("a" + std::to_string(i), "b" + std::to_string(block[i])));
  }
  g.universe = std::make_shared<const quasiset::Universe>(std::move(b).build());
  return g;
}

inline qmetric::QuasiMetricSpace line_space(const GeneratedSpace& g) {
  const std::size_t n = g.atoms.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = std::abs(g.position[g.block[i]] - g.position[g.block[j]]);
    }
  }
  return {g.universe, quasiset::Qset(g.atoms), std::move(d)};
}

}  // namespace qind::testing
