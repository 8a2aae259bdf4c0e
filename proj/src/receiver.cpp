#include "sqzlink/receiver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sqzlink/errors.hpp"

namespace sqzlink {

MeasurementModel parse_measurement_model(std::string_view name) {
  if (name == "joint" || name == "joint-phase-space") return MeasurementModel::joint_phase_space;
  if (name == "alt-homodyne" || name == "alternating-homodyne") {
    return MeasurementModel::alternating_homodyne;
  }
  if (name == "heterodyne") return MeasurementModel::heterodyne;
  throw DomainError("unknown measurement model '" + std::string(name) + "'");
}

std::string_view to_string(MeasurementModel model) {
  switch (model) {
    case MeasurementModel::joint_phase_space: return "joint";
    case MeasurementModel::alternating_homodyne: return "alt-homodyne";
    case MeasurementModel::heterodyne: return "heterodyne";
  }
  return "?";
}

CovMat2 output_state(const OperatingPoint& point) {
  const CovMat1 prepared = apply_squeeze(make_thermal(point.nbar), point.squeeze);
  return beam_splitter(apply_loss(prepared, point.eta), CovMat1::vacuum());
}

double correlation_mean(const CovMat2& v) { return v(kX1, kX2) - v(kP1, kP2); }

namespace {

// Var(uv) = ⟨u²⟩⟨v²⟩ + ⟨uv⟩² for zero-mean jointly Gaussian u, v.
double product_variance(const CovMat2& v, int u, int w) {
  return v(u, u) * v(w, w) + v(u, w) * v(u, w);
}

double joint_variance(const CovMat2& v) {
  const double cov = v(kX1, kP1) * v(kX2, kP2) + v(kX1, kP2) * v(kX2, kP1);
  return product_variance(v, kX1, kX2) + product_variance(v, kP1, kP2) - 2.0 * cov;
}

}  // namespace

double correlation_variance(const CovMat2& v, MeasurementModel model) {
  switch (model) {
    case MeasurementModel::joint_phase_space: return joint_variance(v);
    case MeasurementModel::heterodyne: return joint_variance(v.with_added_vacuum());
    case MeasurementModel::alternating_homodyne:
      return 2.0 * (product_variance(v, kX1, kX2) + product_variance(v, kP1, kP2));
  }
  throw DomainError("invalid measurement model");
}

std::optional<std::uint64_t> required_copies(double snr, MeasurementModel model) {
  if (!(snr > 0.0)) return std::nullopt;
  const double copies = std::ceil(1.0 / snr);
  if (!(copies < 9.0e18)) return std::nullopt;
  auto m = static_cast<std::uint64_t>(copies);
  if (model == MeasurementModel::alternating_homodyne && m % 2 != 0) ++m;
  return m;
}

CorrelationStats correlation_stats(const CovMat2& v, MeasurementModel model) {
  CorrelationStats stats;
  stats.c_mean = correlation_mean(v);
  stats.sigma_per_copy = std::sqrt(correlation_variance(v, model));
  stats.snr = std::abs(stats.c_mean) / stats.sigma_per_copy;
  stats.m_required = required_copies(stats.snr, model);
  return stats;
}

CorrelationStats snr_and_copies(const OperatingPoint& point, MeasurementModel model) {
  return correlation_stats(output_state(point), model);
}

}  // namespace sqzlink
