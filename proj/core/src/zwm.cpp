#include "qind/zwm.hpp"

#include <cmath>
#include <sstream>

#include "qind/error.hpp"

namespace qind::zwm {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void validate_setup(const ZwmSetup& setup) {
  if (!finite(setup.pump_alpha) || !finite(setup.pump_beta) ||
      !finite(setup.idler_transmission)) {
    throw Error(ErrorCode::InvalidSetup, "setup amplitudes must be finite");
  }
  const double norm = std::norm(setup.pump_alpha) + std::norm(setup.pump_beta);
  if (std::abs(norm - 1.0) > onephoton::kIdentityTolerance) {
    std::ostringstream msg;
    msg << "pump split not normalized: |alpha|^2 + |beta|^2 = " << norm;
    throw Error(ErrorCode::InvalidSetup, msg.str());
  }
  if (std::abs(setup.idler_transmission) > 1.0 + onephoton::kIdentityTolerance) {
    std::ostringstream msg;
    msg << "|tau| = " << std::abs(setup.idler_transmission) << " exceeds 1";
    throw Error(ErrorCode::InvalidSetup, msg.str());
  }
}

DensityOperator2 zwm_signal_state(const ZwmSetup& setup) {
  validate_setup(setup);
  const auto& a = setup.pump_alpha;
  const auto& b = setup.pump_beta;
  return {std::norm(a), std::norm(b),
          a * std::conj(b) * std::conj(setup.idler_transmission)};
}

double whichway_coincidence_prob(const ZwmSetup& setup) {
  validate_setup(setup);
  return 1.0 - std::norm(setup.idler_transmission);
}

std::vector<SweepRow> sweep_transmission(const ZwmSetup& setup, std::size_t steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs at least 2 steps");
  validate_setup(setup);

  const double tau_phase = setup.idler_transmission == Complex{}
                               ? 0.0
                               : std::arg(setup.idler_transmission);
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t_mag = static_cast<double>(i) / static_cast<double>(steps - 1);
    ZwmSetup point = setup;
    point.idler_transmission = std::polar(t_mag, tau_phase);

    const auto cmp = onephoton::visibility_vs_pid(zwm_signal_state(point));
    rows.push_back({t_mag, cmp.p_id, cmp.visibility, whichway_coincidence_prob(point)});
  }
  return rows;
}

}  // namespace qind::zwm
