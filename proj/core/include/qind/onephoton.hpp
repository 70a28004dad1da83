#pragma once

// One photon shared between two secondary sources.
//
// The state space is spanned by |1>_1|0>_2 and |0>_1|1>_2, so every density
// operator is a 2x2 Hermitian matrix
//
//     [ rho11        rho12 ]
//     [ conj(rho12)  rho22 ]
//
// Mandel's decomposition splits it uniquely into a maximally coherent part
// (weight P_ID) and a diagonal part (weight P_D = 1 - P_ID), with
// P_ID = |rho12| / sqrt(rho11 rho22) = |gamma12|.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace qind::onephoton {

using Complex = std::complex<double>;

/// Residual allowed on analytic identities evaluated in double precision.
inline constexpr double kIdentityTolerance = 1e-12;
/// Residual allowed on user-supplied (already rounded) inputs.
inline constexpr double kInputTolerance = 1e-9;
/// Smallest source population for which P_ID is defined.
inline constexpr double kDegenerateThreshold = 1e-12;

/// alpha |1>_1|0>_2 + beta |0>_1|1>_2
struct OnePhotonState {
  Complex alpha;
  Complex beta;
};

/// Hermitian 2x2 operator; rho21 is conj(rho12) and is never stored.
struct DensityOperator2 {
  double rho11 = 0.0;
  double rho22 = 0.0;
  Complex rho12 = 0.0;

  Complex rho21() const noexcept { return std::conj(rho12); }
  double trace() const noexcept { return rho11 + rho22; }

  friend bool operator==(const DensityOperator2&, const DensityOperator2&) = default;
};

enum class Invariant { Finite, Trace, Positivity };

std::string_view to_string(Invariant inv) noexcept;

struct Violation {
  Invariant invariant;
  double residual;  // magnitude by which the invariant is broken
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

struct MandelDecomposition {
  double p_id = 0.0;
  double p_d = 1.0;
  DensityOperator2 rho_id;
  DensityOperator2 rho_d;
};

struct CoherenceReport {
  double gamma11 = 0.0;  // units |K|^2
  double gamma22 = 0.0;
  Complex gamma12;       // |K|^2 rho21
  Complex gamma12_normalized;
  Complex k_const;
};

struct FringeSample {
  double phase;  // radians, [0, 2pi)
  double rate;
};

struct FringeScan {
  std::vector<FringeSample> samples;
  double visibility = 0.0;
};

struct VisibilityComparison {
  double visibility;  // analytic, equal detector coupling
  double p_id;
  double ratio;       // visibility / p_id; NaN when p_id == 0
  bool ratio_defined() const noexcept { return p_id > 0.0; }
};

/// |psi><psi|. Throws NotNormalized beyond kInputTolerance.
DensityOperator2 make_pure_state(const OnePhotonState& psi);

/// Reports every violated invariant; never throws.
ValidationReport validate_density(const DensityOperator2& rho,
                                  double tolerance = kInputTolerance);

/// Throws InvalidDensity or DegenerateSource.
MandelDecomposition mandel_decompose(const DensityOperator2& rho);

/// P_ID, bit-identical to mandel_decompose(rho).p_id.
double degree_of_indistinguishability(const DensityOperator2& rho);

/// First-order mutual coherence functions for E+(r_j) = K a_j.
/// Throws InvalidDensity, ZeroField, DegenerateSource.
CoherenceReport coherence_functions(const DensityOperator2& rho, Complex k_const);

/// Detection rate R(phi) = G11 + G22 + 2 Re(G12 e^{i phi}) on n equally spaced
/// phases starting at 0. Visibility is (max - min) / (max + min) over the
/// samples. Requires n_samples >= 8.
FringeScan fringe_scan(const DensityOperator2& rho, Complex k_const, std::size_t n_samples);

/// Analytic visibility 2 sqrt(rho11 rho22) P_ID next to P_ID itself.
VisibilityComparison visibility_vs_pid(const DensityOperator2& rho);

}  // namespace qind::onephoton
