#include "sqzlink/channel.hpp"

#include <cmath>

#include "sqzlink/errors.hpp"

namespace sqzlink {

ChannelParams ChannelParams::from_length(double length, double characteristic_length) {
  if (!(characteristic_length > 0.0) || !std::isfinite(characteristic_length)) {
    throw DomainError("characteristic length L0 must be positive");
  }
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw DomainError("propagation length must be non-negative");
  }
  return ChannelParams(Length{length, characteristic_length});
}

ChannelParams ChannelParams::from_length_ratio(double length_over_l0) {
  return from_length(length_over_l0, 1.0);
}

ChannelParams ChannelParams::from_transmittance(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("transmittance must lie in [0, 1]");
  return ChannelParams(Direct{eta});
}

double ChannelParams::transmittance() const {
  if (const auto* l = std::get_if<Length>(&value_)) {
    return std::exp(-l->length / l->characteristic_length);
  }
  return std::get<Direct>(value_).eta;
}

CovMat1 propagate(const CovMat1& v, const ChannelParams& params) {
  return apply_loss(v, params.transmittance());
}

}  // namespace sqzlink
