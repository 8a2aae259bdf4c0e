#pragma once

// Counter-based normal variates. Every (master_seed, stream_id) pair names an
// independent, platform-stable sequence, so trials can be scheduled on any
// number of workers without changing their samples.

#include <array>
#include <cstdint>

namespace sqzlink {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

class NormalStream {
 public:
  explicit NormalStream(RngSpec spec);

  double next();

  // Uniform on the open interval (0, 1); consumes half a Philox block.
  double next_uniform();

 private:
  void refill();

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  int buffered_words_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sqzlink
