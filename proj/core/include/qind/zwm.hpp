#pragma once

// Induced coherence in the two-crystal (Zou-Wang-Mandel) interferometer.
//
// A pump photon reaches crystal 1 with amplitude alpha and crystal 2 with
// amplitude beta. The idler from crystal 1 is sent through crystal 2; tau is
// the amplitude with which it overlaps the crystal-2 idler mode (|tau| = 1
// for perfect alignment, 0 for an opaque obstacle). Tracing out the idler
// leaves the signal photon with
//
//     rho11 = |alpha|^2,  rho22 = |beta|^2,  rho12 = alpha conj(beta) conj(tau)
//
// so P_ID = |tau| regardless of the pump split.

#include <cstddef>
#include <vector>

#include "qind/onephoton.hpp"

namespace qind::zwm {

using onephoton::Complex;
using onephoton::DensityOperator2;

struct ZwmSetup {
  Complex pump_alpha;
  Complex pump_beta;
  Complex idler_transmission{1.0, 0.0};
};

struct SweepRow {
  double t_mag;
  double p_id;
  double visibility;
  double coincidence_id_prob;
};

/// Throws InvalidSetup when the pump is not normalized or |tau| > 1.
void validate_setup(const ZwmSetup& setup);

DensityOperator2 zwm_signal_state(const ZwmSetup& setup);

/// 1 - |tau|^2: chance that the idler survives to tag the source in a
/// signal/idler coincidence measurement.
double whichway_coincidence_prob(const ZwmSetup& setup);

/// |tau| on a uniform grid over [0, 1] with arg(tau) and the pump split held
/// fixed. Rows are returned in grid order.
std::vector<SweepRow> sweep_transmission(const ZwmSetup& setup, std::size_t steps);

}  // namespace qind::zwm
