#include <doctest.h>

#include <cmath>
#include <numeric>

#include <omp.h>

#include "exact_distribution.hpp"
#include "oracles.hpp"
#include "sqzlink/errors.hpp"
#include "sqzlink/montecarlo.hpp"

using namespace sqzlink;
namespace pp = oracle::paper_point;

namespace {

const SqueezeSpec kPaperSqueeze{0.576, SqueezeConvention::paper};

CovMat2 paper_state(double nbar = 1e4, double r = 0.576) {
  return output_state({{nbar}, {r, SqueezeConvention::paper}, pp::kEta});
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("sampler root squares back to the covariance") {
    for (const CovMat2& v : {CovMat2::vacuum(), paper_state(), paper_state(0.0),
                             beam_splitter({0.05, 5.0, 0.0}, CovMat1::vacuum())}) {
      const QuadratureSampler sampler(v);
      CHECK((sampler.root() * sampler.root() - v.matrix()).cwiseAbs().maxCoeff() <
            1e-12 * v.matrix().cwiseAbs().maxCoeff());
      CHECK((sampler.root() - sampler.root().transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("jitter regularizes singular matrices; indefinite ones fail") {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    const QuadratureSampler regularized{CovMat2(m)};
    CHECK((regularized.root() * regularized.root() - m).cwiseAbs().maxCoeff() < 1e-11);
    m(1, 1) = -1.0;
    CHECK_THROWS_AS(QuadratureSampler(CovMat2(m)), NumericError);
  }

  TEST_CASE("vacuum sample covariance") {
    const std::size_t n = 1'000'000;
    const auto xs = sample_quadratures(CovMat2::vacuum(), {99, 0}, n);
    REQUIRE(xs.rows() == static_cast<Eigen::Index>(n));
    const Eigen::Matrix4d cov = xs.transpose() * xs / static_cast<double>(n);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double expected = i == j ? 0.5 : 0.0;
        // SE of ⟨z_i z_j⟩: √((Σ_ii Σ_jj + Σ_ij²)/n)
        const double se = std::sqrt((0.25 + expected * expected) / n);
        CHECK(std::abs(cov(i, j) - expected) < 5.0 * se);
      }
    }
    CHECK_THROWS_AS(sample_quadratures(CovMat2::vacuum(), {1, 0}, 0), DomainError);
  }

  TEST_CASE("paper-point sample moments") {
    const CovMat2 v = paper_state();
    const std::size_t n = 2'000'000;
    const auto xs = sample_quadratures(v, {123, 4}, n);
    const Eigen::Matrix4d cov = xs.transpose() * xs / static_cast<double>(n);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double se = std::sqrt((v(i, i) * v(j, j) + v(i, j) * v(i, j)) / n);
        CHECK(std::abs(cov(i, j) - v(i, j)) < 5.0 * se);
      }
    }
    double c = 0.0;
    for (Eigen::Index k = 0; k < xs.rows(); ++k) c += xs(k, kX1) * xs(k, kX2) - xs(k, kP1) * xs(k, kP2);
    c /= static_cast<double>(n);
    CHECK(std::abs(c - pp::kC) < 5.0 * pp::kSigma / std::sqrt(static_cast<double>(n)));
  }

  TEST_CASE("sampled statistics agree with an independent Cholesky sampler") {
    const CovMat2 v = paper_state();
    oracle::CholeskySampler other(v.matrix(), 77);
    const int n = 400'000;
    double c_ours = 0.0;
    double c_other = 0.0;
    const auto xs = sample_quadratures(v, {55, 1}, n);
    for (int k = 0; k < n; ++k) {
      c_ours += xs(k, kX1) * xs(k, kX2) - xs(k, kP1) * xs(k, kP2);
      const auto z = other.draw();
      c_other += z[kX1] * z[kX2] - z[kP1] * z[kP2];
    }
    const double se = pp::kSigma * std::sqrt(2.0 / n);
    CHECK(std::abs(c_ours / n - c_other / n) < 5.0 * se);
  }

  TEST_CASE("estimator moments at the paper point (M = 2)") {
    const CovMat2 v = paper_state();
    const std::size_t trials = 100'000;
    const auto c = estimate_trials(v, MeasurementModel::joint_phase_space, {2024, 0, trials, 2});
    const auto m = moments(c);
    CHECK(std::abs(m.mean - pp::kC) < 0.03 * std::abs(pp::kC));
    CHECK(std::abs(m.mean - pp::kC) < 5.0 * pp::kSigma / std::sqrt(2.0 * trials));
    CHECK(std::sqrt(m.variance) == doctest::Approx(pp::kSigma / std::sqrt(2.0)).epsilon(0.03));
    CHECK(m.variance * 2.0 == doctest::Approx(pp::kVariance).epsilon(0.03));
  }

  TEST_CASE("unbiased under every model") {
    const CovMat2 v = paper_state();
    const std::size_t trials = 100'000;
    for (auto model : {MeasurementModel::joint_phase_space, MeasurementModel::alternating_homodyne,
                       MeasurementModel::heterodyne}) {
      CAPTURE(to_string(model));
      const auto c = estimate_trials(v, model, {31, 0, trials, 4});
      const auto m = moments(c);
      const double sigma = std::sqrt(correlation_variance(v, model));
      CHECK(std::abs(m.mean - pp::kC) <= 5.0 * sigma / std::sqrt(4.0 * trials));
      CHECK(m.variance * 4.0 == doctest::Approx(sigma * sigma).epsilon(0.03));
    }
    const auto zero = estimate_trials(paper_state(1e4, 0.0), MeasurementModel::joint_phase_space,
                                      {8, 0, trials, 3});
    const double sigma0 = std::sqrt(pp::kR0Variance);
    CHECK(std::abs(moments(zero).mean) < 5.0 * sigma0 / std::sqrt(3.0 * trials));
  }

  TEST_CASE("large-M consistency") {
    const std::size_t m = 1'000'000;
    const double c = estimate_correlation(paper_state(), MeasurementModel::joint_phase_space, m, {6, 6});
    CHECK(std::abs(c - pp::kC) < 5.0 * pp::kSigma / std::sqrt(static_cast<double>(m)));
  }

  TEST_CASE("copy-count preconditions") {
    const CovMat2 v = paper_state();
    CHECK_THROWS_AS(estimate_correlation(v, MeasurementModel::alternating_homodyne, 3, {1, 1}), DomainError);
    CHECK_THROWS_AS(estimate_correlation(v, MeasurementModel::joint_phase_space, 0, {1, 1}), DomainError);
    CHECK_NOTHROW(estimate_correlation(v, MeasurementModel::alternating_homodyne, 2, {1, 1}));
  }

  TEST_CASE("parallel kernel is bit-identical to the serial reference") {
    const CovMat2 v = paper_state();
    for (auto model : {MeasurementModel::joint_phase_space, MeasurementModel::alternating_homodyne,
                       MeasurementModel::heterodyne}) {
      const TrialBatch batch{777, 1000, 5000, 4};
      const auto serial = reference::estimate_trials(v, model, batch);
      for (int threads : {1, 2, 3, 8}) {
        omp_set_num_threads(threads);
        CHECK(estimate_trials(v, model, batch) == serial);
      }
    }
    omp_set_num_threads(omp_get_num_procs());
    // Trial t of a shifted batch is trial t + offset of the original.
    const auto full = estimate_trials(v, MeasurementModel::joint_phase_space, {3, 0, 100, 2});
    const auto tail = estimate_trials(v, MeasurementModel::joint_phase_space, {3, 40, 60, 2});
    CHECK(std::equal(tail.begin(), tail.end(), full.begin() + 40));
  }

  TEST_CASE("detection error") {
    const OperatingPoint r0{{1e4}, {0.0, SqueezeConvention::paper}, pp::kEta};
    const OperatingPoint r1{{1e4}, kPaperSqueeze, pp::kEta};
    CHECK_THROWS_AS(detection_error(r1, r1, 2, MeasurementModel::joint_phase_space, 10, 1),
                    DegenerateAlphabet);

    const auto res = detection_error(r0, r1, 2, MeasurementModel::joint_phase_space, 100'000, 2025);
    CHECK(res.threshold == doctest::Approx(pp::kC / 2).epsilon(1e-13));
    CHECK(res.gaussian_error_given_a == doctest::Approx(pp::kGaussianErrorR0).epsilon(1e-9));
    CHECK(res.gaussian_error_given_b == doctest::Approx(pp::kGaussianErrorR1).epsilon(1e-9));

    // Exact distribution of the M = 2 estimator.
    const double exact_a =
        oracle::estimator_cdf(output_state(r0).matrix(), oracle::correlation_form(), 2, res.threshold);
    const double exact_b =
        1.0 - oracle::estimator_cdf(output_state(r1).matrix(), oracle::correlation_form(), 2, res.threshold);
    CHECK(exact_a == doctest::Approx(0.0630422179724).epsilon(1e-8));
    CHECK(exact_b == doctest::Approx(0.416793839213).epsilon(1e-8));
    const double se_a = std::sqrt(exact_a * (1 - exact_a) / 1e5);
    const double se_b = std::sqrt(exact_b * (1 - exact_b) / 1e5);
    CHECK(std::abs(res.p_error_given_a - exact_a) < 5.0 * se_a);
    CHECK(std::abs(res.p_error_given_b - exact_b) < 5.0 * se_b);

    // Well-separated hypotheses.
    const OperatingPoint far0{{1e4}, {0.0, SqueezeConvention::paper}, 1.0};
    const OperatingPoint far1{{1e4}, kPaperSqueeze, 1.0};
    const auto sep = detection_error(far0, far1, 400, MeasurementModel::joint_phase_space, 2000, 9);
    CHECK(sep.p_error_given_a == 0.0);
    CHECK(sep.p_error_given_b == 0.0);
    CHECK(sep.gaussian_error_given_a < 1e-12);
  }

  TEST_CASE("exact oracle agrees with Monte Carlo at larger M") {
    const CovMat2 v = paper_state();
    const std::size_t m = 8;
    const auto c = estimate_trials(v, MeasurementModel::joint_phase_space, {4, 0, 100'000, m});
    for (double x : {-4.0, -2.25, -1.0, 0.0}) {
      const double exact = oracle::estimator_cdf(v.matrix(), oracle::correlation_form(), m, x);
      const double empirical =
          static_cast<double>(std::count_if(c.begin(), c.end(), [&](double y) { return y <= x; })) /
          static_cast<double>(c.size());
      CHECK(std::abs(empirical - exact) < 5.0 * std::sqrt(exact * (1 - exact) / c.size()) + 1e-4);
    }
  }
}
