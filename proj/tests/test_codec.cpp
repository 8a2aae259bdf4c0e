#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sqzlink/codec.hpp"
#include "sqzlink/errors.hpp"
#include "sqzlink/montecarlo.hpp"

using namespace sqzlink;
namespace pp = oracle::paper_point;

namespace {

Alphabet paper_alphabet() {
  const double levels[] = {0.0, 0.1, 0.2, 0.3};
  return Alphabet::from_values(levels, SqueezeConvention::paper);
}

Alphabet binary_alphabet() {
  const double levels[] = {0.0, 0.576};
  return Alphabet::from_values(levels, SqueezeConvention::paper);
}

FrameSpec paper_frame(std::size_t copies = 2) {
  FrameSpec f;
  f.copies_per_symbol = copies;
  f.nbar = {1e4};
  f.channel = ChannelParams::from_length_ratio(10.0);
  return f;
}

}  // namespace

TEST_SUITE("codec") {
  TEST_CASE("alphabet invariants") {
    const double one[] = {0.1};
    CHECK_THROWS_AS(Alphabet::from_values(one, SqueezeConvention::paper), DomainError);
    const double unordered[] = {0.0, 0.2, 0.1};
    CHECK_THROWS_AS(Alphabet::from_values(unordered, SqueezeConvention::paper), DomainError);
    const double repeated[] = {0.0, 0.1, 0.1};
    CHECK_THROWS_AS(Alphabet::from_values(repeated, SqueezeConvention::paper), DomainError);
    CHECK_THROWS_AS(Alphabet({{0.0, SqueezeConvention::paper}, {3.0, SqueezeConvention::decibel}}),
                    DomainError);
    const double factors[] = {1.0, 0.5, 0.25};
    CHECK(Alphabet::from_values(factors, SqueezeConvention::variance_factor).size() == 3);
    CHECK(paper_alphabet().bits_per_symbol() == 2);
    CHECK_THROWS_AS(Alphabet::from_values(factors, SqueezeConvention::variance_factor).bits_per_symbol(),
                    DomainError);
  }

  TEST_CASE("encode framing") {
    const auto a4 = paper_alphabet();
    const auto frame = encode("1011", a4);
    CHECK(frame.dits == std::vector<std::size_t>{2, 3});
    CHECK(frame.bit_length == 4);

    const auto padded = encode("1", a4);
    CHECK(padded.dits == std::vector<std::size_t>{2});
    CHECK(padded.bit_length == 1);
    CHECK(decode_bits(padded, a4) == "1");

    const auto a2 = binary_alphabet();
    CHECK(encode("0110", a2).dits == std::vector<std::size_t>{0, 1, 1, 0});
    CHECK(encode("", a2).dits.empty());
    CHECK(decode_bits(encode("", a2), a2).empty());
    CHECK_THROWS_AS(encode("10x1", a4), DomainError);
  }

  TEST_CASE("round trip on random payloads") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<std::size_t> length(0, 10000);
    std::vector<Alphabet> alphabets{binary_alphabet(), paper_alphabet()};
    const double eight[] = {0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35};
    alphabets.push_back(Alphabet::from_values(eight, SqueezeConvention::paper));
    for (int i = 0; i < 1000; ++i) {
      std::string payload(length(rng) / (i % 10 == 0 ? 1 : 20), '0');
      for (auto& c : payload) c = bit(rng) ? '1' : '0';
      for (const auto& a : alphabets) {
        const auto frame = encode(payload, a);
        CHECK(frame.dits.size() == (payload.size() + a.bits_per_symbol() - 1) / a.bits_per_symbol());
        REQUIRE(decode_bits(frame, a) == payload);
      }
    }
  }

  TEST_CASE("thresholds") {
    const auto c = expected_correlations(paper_alphabet(), paper_frame());
    const double expected_c[] = {0.0, -0.186490591475622, -0.403219652104214, -0.685328659868736};
    for (int k = 0; k < 4; ++k) CHECK(c[k] == doctest::Approx(expected_c[k]).epsilon(1e-12));

    const auto b = thresholds(paper_alphabet(), paper_frame());
    REQUIRE(b.size() == 3);
    CHECK(b[0] == doctest::Approx(-0.093245295737811).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(-0.294855121789918).epsilon(1e-12));
    CHECK(b[2] == doctest::Approx(-0.544274155986475).epsilon(1e-12));
    CHECK(b[0] > b[1]);
    CHECK(b[1] > b[2]);

    const auto b2 = thresholds(binary_alphabet(), paper_frame());
    REQUIRE(b2.size() == 1);
    CHECK(b2[0] == doctest::Approx(-1.12532762661844).epsilon(1e-12));

    FrameSpec dark = paper_frame();
    dark.channel = ChannelParams::from_transmittance(0.0);
    CHECK_THROWS_AS(thresholds(paper_alphabet(), dark), DegenerateAlphabet);
  }

  TEST_CASE("decode") {
    const auto b = thresholds(paper_alphabet(), paper_frame());
    CHECK(decode(-0.25, b) == 1);
    CHECK(decode(5.0, b) == 0);
    CHECK(decode(b[0], b) == 0);
    CHECK(decode(b[1], b) == 1);
    CHECK(decode(-100.0, b) == 3);
    CHECK(decode(-0.5, b) == 2);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 0.3);
    for (int i = 0; i < 10000; ++i) {
      const double x = u(rng);
      const double y = u(rng);
      if (x <= y) {
        CHECK(decode(x, b) >= decode(y, b));
      } else {
        CHECK(decode(x, b) <= decode(y, b));
      }
    }
  }

  TEST_CASE("frame validation") {
    FrameSpec f = paper_frame(3);
    f.model = MeasurementModel::alternating_homodyne;
    CHECK_THROWS_AS(f.validate(), DomainError);
    f.copies_per_symbol = 0;
    f.model = MeasurementModel::joint_phase_space;
    CHECK_THROWS_AS(f.validate(), DomainError);
  }

  TEST_CASE("symbol error rate in the high-SNR regime") {
    FrameSpec f = paper_frame(10000);
    f.channel = ChannelParams::from_transmittance(1.0);
    const auto report = symbol_error_rate(binary_alphabet(), f, 2000, 5);
    CHECK(report.mean < 1e-3);
    for (const auto& row : report.confusion) {
      CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("binary SER at M = 1 matches the detection test") {
    const FrameSpec f = paper_frame(1);
    const std::size_t trials = 50000;
    const auto report = symbol_error_rate(binary_alphabet(), f, trials, 12);
    const auto det = detection_error(f.operating_point(binary_alphabet().level(0)),
                                     f.operating_point(binary_alphabet().level(1)), 1,
                                     MeasurementModel::joint_phase_space, trials, 12);
    // Same streams, same threshold rule: identical counts.
    CHECK(report.per_symbol[0] == det.p_error_given_a);
    CHECK(report.per_symbol[1] == det.p_error_given_b);
    CHECK(report.mean == doctest::Approx(0.5 * (det.p_error_given_a + det.p_error_given_b)));
  }

  TEST_CASE("SER non-increasing in M") {
    const std::size_t trials = 10000;
    double previous = 1.0;
    double previous_se = 0.0;
    for (std::size_t m : {2, 8, 32, 128}) {
      const auto report = symbol_error_rate(paper_alphabet(), paper_frame(m), trials, 99);
      const double se = std::sqrt(report.mean * (1 - report.mean) / (4.0 * trials));
      CAPTURE(m);
      CHECK(report.mean <= previous + 2.0 * std::hypot(se, previous_se));
      previous = report.mean;
      previous_se = se;
    }
  }

  TEST_CASE("SER worker independence") {
    const auto a = symbol_error_rate(paper_alphabet(), paper_frame(4), 3000, 1);
    const auto b = symbol_error_rate(paper_alphabet(), paper_frame(4), 3000, 1);
    CHECK(a.confusion == b.confusion);
    CHECK_THROWS_AS(symbol_error_rate(paper_alphabet(), paper_frame(4), 0, 1), DomainError);
  }
}
