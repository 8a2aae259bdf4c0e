#pragma once

#include <variant>

#include "sqzlink/gaussian.hpp"

namespace sqzlink {

// Nanowire propagation described either by a length and a characteristic
// attenuation length (same units) or by the intensity transmittance directly.
class ChannelParams {
 public:
  static ChannelParams from_length(double length, double characteristic_length);
  static ChannelParams from_length_ratio(double length_over_l0);
  static ChannelParams from_transmittance(double eta);

  // Intensity transmittance η = e^(−L/L₀).
  double transmittance() const;
  bool is_length_based() const { return std::holds_alternative<Length>(value_); }

 private:
  struct Length {
    double length;
    double characteristic_length;
  };
  struct Direct {
    double eta;
  };

  explicit ChannelParams(std::variant<Length, Direct> v) : value_(v) {}

  std::variant<Length, Direct> value_;
};

inline double transmittance(const ChannelParams& params) { return params.transmittance(); }

CovMat1 propagate(const CovMat1& v, const ChannelParams& params);

}  // namespace sqzlink
