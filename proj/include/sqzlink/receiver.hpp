#pragma once

// Statistics of the cross-port correlation Ĉ = x̂₁x̂₂ − p̂₁p̂₂ read out after
// the beam splitter. Variances follow from Isserlis' theorem on zero-mean
// Gaussian phase-space samples.

#include <cstdint>
#include <optional>
#include <string_view>

#include "sqzlink/gaussian.hpp"

namespace sqzlink {

enum class MeasurementModel {
  joint_phase_space,     // x and p of both ports from every copy
  alternating_homodyne,  // x on odd copies, p on even copies
  heterodyne,            // simultaneous x,p with one extra vacuum unit per quadrature
};

MeasurementModel parse_measurement_model(std::string_view name);
std::string_view to_string(MeasurementModel model);

// Transmitter-side parameters of one symbol: thermal seed, squeezing, channel.
struct OperatingPoint {
  ThermalOccupation nbar;
  SqueezeSpec squeeze;
  double eta = 1.0;
};

// Thermal → squeeze → loss → 50:50 split against vacuum.
CovMat2 output_state(const OperatingPoint& point);

double correlation_mean(const CovMat2& v);

// Variance of the single-copy estimator of Ĉ under `model`.
double correlation_variance(const CovMat2& v, MeasurementModel model);

struct CorrelationStats {
  double c_mean = 0.0;
  double sigma_per_copy = 0.0;
  double snr = 0.0;
  std::optional<std::uint64_t> m_required;  // nullopt: no finite copy count suffices

  bool infinite() const { return !m_required.has_value(); }
};

// ceil(1/snr), rounded up to even for alternating homodyne.
std::optional<std::uint64_t> required_copies(double snr, MeasurementModel model);

CorrelationStats correlation_stats(const CovMat2& v, MeasurementModel model);
CorrelationStats snr_and_copies(const OperatingPoint& point, MeasurementModel model);

}  // namespace sqzlink
