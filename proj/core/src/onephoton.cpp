#include "qind/onephoton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qind/error.hpp"

namespace qind::onephoton {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_valid(const DensityOperator2& rho) {
  const auto report = validate_density(rho);
  if (report.valid()) return;
  std::ostringstream msg;
  msg << "density operator violates";
  for (const auto& v : report.violations) {
    msg << ' ' << to_string(v.invariant) << " (residual " << v.residual << ')';
  }
  throw Error(ErrorCode::InvalidDensity, msg.str());
}

void require_nondegenerate(const DensityOperator2& rho) {
  if (std::min(rho.rho11, rho.rho22) < kDegenerateThreshold) {
    std::ostringstream msg;
    msg << "only one source has support (rho11=" << rho.rho11 << ", rho22=" << rho.rho22
        << ")";
    throw Error(ErrorCode::DegenerateSource, msg.str());
  }
}

void require_field(Complex k_const) {
  if (!finite(k_const)) throw Error(ErrorCode::ZeroField, "field constant is not finite");
  if (std::abs(k_const) == 0.0) throw Error(ErrorCode::ZeroField, "field constant K is zero");
}

// P_ID with the rounding excess above 1 removed; pure states land on 1
// only up to an ulp otherwise.
double pid_of(const DensityOperator2& rho) {
  return std::min(1.0, std::abs(rho.rho12) / std::sqrt(rho.rho11 * rho.rho22));
}

}  // namespace

std::string_view to_string(Invariant inv) noexcept {
  switch (inv) {
    case Invariant::Finite: return "finite";
    case Invariant::Trace: return "trace";
    case Invariant::Positivity: return "positivity";
  }
  return "unknown";
}

DensityOperator2 make_pure_state(const OnePhotonState& psi) {
  if (!finite(psi.alpha) || !finite(psi.beta)) {
    throw Error(ErrorCode::NotNormalized, "amplitudes must be finite");
  }
  const double norm = std::norm(psi.alpha) + std::norm(psi.beta);
  if (std::abs(norm - 1.0) > kInputTolerance) {
    std::ostringstream msg;
    msg << "|alpha|^2 + |beta|^2 = " << norm;
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
  return {std::norm(psi.alpha), std::norm(psi.beta), psi.alpha * std::conj(psi.beta)};
}

ValidationReport validate_density(const DensityOperator2& rho, double tolerance) {
  ValidationReport report;
  if (!std::isfinite(rho.rho11) || !std::isfinite(rho.rho22) || !finite(rho.rho12)) {
    report.violations.push_back({Invariant::Finite, std::numeric_limits<double>::infinity()});
    return report;
  }

  const double trace_residual = std::abs(rho.trace() - 1.0);
  if (trace_residual > tolerance) {
    report.violations.push_back({Invariant::Trace, trace_residual});
  }

  // A 2x2 Hermitian matrix is PSD iff both diagonal entries and the
  // determinant are nonnegative.
  const double positivity_residual =
      std::max({-rho.rho11, -rho.rho22, std::norm(rho.rho12) - rho.rho11 * rho.rho22});
  if (positivity_residual > tolerance) {
    report.violations.push_back({Invariant::Positivity, positivity_residual});
  }
  return report;
}

MandelDecomposition mandel_decompose(const DensityOperator2& rho) {
  require_valid(rho);
  require_nondegenerate(rho);

  MandelDecomposition out;
  out.p_id = pid_of(rho);
  out.p_d = 1.0 - out.p_id;

  // alpha beta* = sqrt(rho11 rho22) exp(i arg rho12); phase 0 when rho12 == 0.
  const double coherent_magnitude = std::sqrt(rho.rho11 * rho.rho22);
  const double phase = rho.rho12 == Complex{} ? 0.0 : std::arg(rho.rho12);
  out.rho_id = {rho.rho11, rho.rho22, std::polar(coherent_magnitude, phase)};
  out.rho_d = {rho.rho11, rho.rho22, Complex{}};
  return out;
}

double degree_of_indistinguishability(const DensityOperator2& rho) {
  return mandel_decompose(rho).p_id;
}

CoherenceReport coherence_functions(const DensityOperator2& rho, Complex k_const) {
  require_valid(rho);
  require_field(k_const);
  require_nondegenerate(rho);

  const double k2 = std::norm(k_const);
  CoherenceReport out;
  out.k_const = k_const;
  out.gamma11 = k2 * rho.rho11;
  out.gamma22 = k2 * rho.rho22;
  out.gamma12 = k2 * rho.rho21();
  out.gamma12_normalized = rho.rho21() / std::sqrt(rho.rho11 * rho.rho22);
  return out;
}

FringeScan fringe_scan(const DensityOperator2& rho, Complex k_const, std::size_t n_samples) {
  if (n_samples < 8) {
    throw Error(ErrorCode::InvalidArgument, "fringe scan needs at least 8 samples");
  }
  require_valid(rho);
  require_field(k_const);

  const double k2 = std::norm(k_const);
  const double g11 = k2 * rho.rho11;
  const double g22 = k2 * rho.rho22;
  const Complex g12 = k2 * rho.rho21();

  FringeScan scan;
  scan.samples.reserve(n_samples);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double phase =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_samples);
    const double rate = g11 + g22 + 2.0 * (g12 * std::polar(1.0, phase)).real();
    scan.samples.push_back({phase, rate});
    lo = std::min(lo, rate);
    hi = std::max(hi, rate);
  }
  scan.visibility = std::clamp((hi - lo) / (hi + lo), 0.0, 1.0);
  return scan;
}

VisibilityComparison visibility_vs_pid(const DensityOperator2& rho) {
  const double p_id = degree_of_indistinguishability(rho);
  const double v = 2.0 * std::sqrt(rho.rho11 * rho.rho22) * p_id;
  return {v, p_id, p_id > 0.0 ? v / p_id : std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace qind::onephoton
