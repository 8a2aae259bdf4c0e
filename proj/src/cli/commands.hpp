#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "output.hpp"
#include "sqzlink/codec.hpp"
#include "sqzlink/gaussian.hpp"
#include "sqzlink/receiver.hpp"

namespace sqzlink::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitNumeric = 3, kExitIo = 4 };

// Transmission symbol i draws from stream kTransmitStreamBase + i, clear of the
// per-label streams used by the symbol-error simulation.
inline constexpr std::uint64_t kTransmitStreamBase = std::uint64_t{1} << 62;

// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

Table fig2a_table(const std::vector<double>& nbars, const SqueezeSpec& squeeze, double eta,
                  MeasurementModel model);

Table fig2b_table(const std::vector<double>& length_ratios, const std::vector<double>& nbars,
                  const SqueezeSpec& squeeze, MeasurementModel model);

Table fig3_table(const Alphabet& alphabet, const FrameSpec& frame);

struct TransmitRequest {
  std::string payload_bits;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
};

nlohmann::json transmit_results(const TransmitRequest& request, const Alphabet& alphabet,
                                const FrameSpec& frame);

// CSV view of a transmit run: per-label SER and confusion row.
Table transmit_table(const nlohmann::json& results, const Alphabet& alphabet);

}  // namespace sqzlink::cli
