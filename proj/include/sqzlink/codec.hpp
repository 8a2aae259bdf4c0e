#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqzlink/channel.hpp"
#include "sqzlink/gaussian.hpp"
#include "sqzlink/receiver.hpp"

namespace sqzlink {

// Ordered squeezing levels; label k carries level k. Levels must share one
// convention and squeeze strictly harder with increasing label.
class Alphabet {
 public:
  explicit Alphabet(std::vector<SqueezeSpec> levels);
  static Alphabet from_values(std::span<const double> values, SqueezeConvention convention);

  std::size_t size() const { return levels_.size(); }
  const SqueezeSpec& level(std::size_t label) const { return levels_.at(label); }
  const std::vector<SqueezeSpec>& levels() const { return levels_; }
  SqueezeConvention convention() const { return levels_.front().convention; }

  // log2(K); throws DomainError unless K is a power of two.
  std::size_t bits_per_symbol() const;

 private:
  std::vector<SqueezeSpec> levels_;
};

struct FrameSpec {
  std::size_t copies_per_symbol = 1;
  MeasurementModel model = MeasurementModel::joint_phase_space;
  ThermalOccupation nbar{1e4};
  ChannelParams channel = ChannelParams::from_length_ratio(10.0);

  void validate() const;
  OperatingPoint operating_point(const SqueezeSpec& level) const;
};

struct DitFrame {
  std::vector<std::size_t> dits;
  std::size_t bit_length = 0;  // payload length before tail padding
};

// Big-endian grouping of log2(K) bits per dit, zero-padded at the tail.
// `bits` may contain only '0' and '1'.
DitFrame encode(std::string_view bits, const Alphabet& alphabet);
std::string decode_bits(const DitFrame& frame, const Alphabet& alphabet);

std::vector<double> expected_correlations(const Alphabet& alphabet, const FrameSpec& frame);

// K−1 midpoints between consecutive expected correlations, strictly decreasing.
std::vector<double> thresholds(const Alphabet& alphabet, const FrameSpec& frame);

// Index of the interval holding c_hat; ties go to the smaller label.
std::size_t decode(double c_hat, std::span<const double> boundaries);

struct SymbolErrorReport {
  std::vector<double> per_symbol;
  double mean = 0.0;
  std::vector<std::vector<double>> confusion;  // [sent][decided], rows sum to 1
};

// Label k uses streams [k·trials, (k+1)·trials).
SymbolErrorReport symbol_error_rate(const Alphabet& alphabet, const FrameSpec& frame,
                                    std::size_t trials, std::uint64_t master_seed);

}  // namespace sqzlink
