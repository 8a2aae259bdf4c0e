#include "sqzlink/codec.hpp"

#include <algorithm>
#include <bit>

#include "sqzlink/errors.hpp"
#include "sqzlink/montecarlo.hpp"

namespace sqzlink {

Alphabet::Alphabet(std::vector<SqueezeSpec> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2) throw DomainError("an alphabet needs at least two levels");
  double previous = 0.0;
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (levels_[k].convention != levels_.front().convention) {
      throw DomainError("all alphabet levels must share one squeeze convention");
    }
    const double s = squeeze_factor(levels_[k]);
    if (k > 0 && !(s < previous)) {
      throw DomainError("alphabet levels must be in strictly increasing squeezing order");
    }
    previous = s;
  }
}

Alphabet Alphabet::from_values(std::span<const double> values, SqueezeConvention convention) {
  std::vector<SqueezeSpec> levels;
  levels.reserve(values.size());
  for (double v : values) levels.push_back({v, convention});
  return Alphabet(std::move(levels));
}

std::size_t Alphabet::bits_per_symbol() const {
  if (!std::has_single_bit(levels_.size())) {
    throw DomainError("bit framing needs a power-of-two alphabet size");
  }
  return static_cast<std::size_t>(std::countr_zero(levels_.size()));
}

void FrameSpec::validate() const {
  if (copies_per_symbol < 1) throw DomainError("copies per symbol must be at least 1");
  if (model == MeasurementModel::alternating_homodyne && copies_per_symbol % 2 != 0) {
    throw DomainError("alternating homodyne needs an even copy count");
  }
  make_thermal(nbar);
}

OperatingPoint FrameSpec::operating_point(const SqueezeSpec& level) const {
  return {nbar, level, channel.transmittance()};
}

DitFrame encode(std::string_view bits, const Alphabet& alphabet) {
  const std::size_t width = alphabet.bits_per_symbol();
  DitFrame frame;
  frame.bit_length = bits.size();
  frame.dits.reserve((bits.size() + width - 1) / width);
  for (std::size_t start = 0; start < bits.size(); start += width) {
    std::size_t dit = 0;
    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t pos = start + i;
      const char c = pos < bits.size() ? bits[pos] : '0';
      if (c != '0' && c != '1') throw DomainError("payload may contain only '0' and '1'");
      dit = (dit << 1) | static_cast<std::size_t>(c - '0');
    }
    frame.dits.push_back(dit);
  }
  return frame;
}

std::string decode_bits(const DitFrame& frame, const Alphabet& alphabet) {
  const std::size_t width = alphabet.bits_per_symbol();
  if (frame.bit_length > frame.dits.size() * width) {
    throw DomainError("recorded bit length exceeds the dit payload");
  }
  std::string bits;
  bits.reserve(frame.dits.size() * width);
  for (std::size_t dit : frame.dits) {
    if (dit >= alphabet.size()) throw DomainError("dit outside the alphabet");
    for (std::size_t i = width; i-- > 0;) bits.push_back(((dit >> i) & 1u) ? '1' : '0');
  }
  bits.resize(frame.bit_length);
  return bits;
}

std::vector<double> expected_correlations(const Alphabet& alphabet, const FrameSpec& frame) {
  std::vector<double> c;
  c.reserve(alphabet.size());
  for (const auto& level : alphabet.levels()) {
    c.push_back(correlation_mean(output_state(frame.operating_point(level))));
  }
  return c;
}

std::vector<double> thresholds(const Alphabet& alphabet, const FrameSpec& frame) {
  const auto c = expected_correlations(alphabet, frame);
  std::vector<double> boundaries;
  boundaries.reserve(c.size() - 1);
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    if (!(c[k + 1] < c[k])) {
      throw DegenerateAlphabet("labels " + std::to_string(k) + " and " + std::to_string(k + 1) +
                               " have indistinguishable expected correlations");
    }
    boundaries.push_back(0.5 * (c[k] + c[k + 1]));
  }
  return boundaries;
}

std::size_t decode(double c_hat, std::span<const double> boundaries) {
  // Boundaries decrease, so the label is the number of boundaries strictly above c_hat.
  std::size_t label = 0;
  while (label < boundaries.size() && c_hat < boundaries[label]) ++label;
  return label;
}

SymbolErrorReport symbol_error_rate(const Alphabet& alphabet, const FrameSpec& frame,
                                    std::size_t trials, std::uint64_t master_seed) {
  if (trials < 1) throw DomainError("trial count must be at least 1");
  frame.validate();
  const auto boundaries = thresholds(alphabet, frame);
  const std::size_t k_count = alphabet.size();

  SymbolErrorReport report;
  report.per_symbol.resize(k_count);
  report.confusion.assign(k_count, std::vector<double>(k_count, 0.0));
  for (std::size_t k = 0; k < k_count; ++k) {
    const CovMat2 v = output_state(frame.operating_point(alphabet.level(k)));
    const auto c_hat = estimate_trials(
        v, frame.model, {master_seed, k * trials, trials, frame.copies_per_symbol});
    std::vector<std::size_t> counts(k_count, 0);
    for (double c : c_hat) ++counts[decode(c, boundaries)];
    for (std::size_t j = 0; j < k_count; ++j) {
      report.confusion[k][j] = static_cast<double>(counts[j]) / static_cast<double>(trials);
    }
    report.per_symbol[k] = static_cast<double>(trials - counts[k]) / static_cast<double>(trials);
  }
  double sum = 0.0;
  for (double p : report.per_symbol) sum += p;
  report.mean = sum / static_cast<double>(k_count);
  return report;
}

}  // namespace sqzlink
