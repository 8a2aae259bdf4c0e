#include "sqzlink/rng.hpp"

#include <cmath>
#include <numbers>

namespace sqzlink {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kPhiloxM0, c[0], hi0, lo0);
  mulhilo(kPhiloxM1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    counter = round(counter, key);
  }
  return counter;
}

NormalStream::NormalStream(RngSpec spec)
    : key_{static_cast<std::uint32_t>(spec.master_seed),
           static_cast<std::uint32_t>(spec.master_seed >> 32)},
      stream_(spec.stream_id) {}

void NormalStream::refill() {
  const PhiloxCounter counter{static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32),
                              static_cast<std::uint32_t>(stream_),
                              static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = philox4x32_10(counter, key_);
  ++block_;
  buffered_words_ = 4;
}

double NormalStream::next_uniform() {
  if (buffered_words_ < 2) refill();
  const int i = 4 - buffered_words_;
  buffered_words_ -= 2;
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(buffer_[i]) << 32 | buffer_[i + 1]) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace sqzlink
