#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "sqzlink/gaussian.hpp"
#include "sqzlink/receiver.hpp"
#include "sqzlink/rng.hpp"

namespace sqzlink {

inline constexpr double kFactorizationJitter = 1e-12;

using QuadratureSamples = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;

// Draws zero-mean 4-vectors with a given covariance through its symmetric
// square root. Retries once with +1e-12·I when V is numerically singular.
class QuadratureSampler {
 public:
  explicit QuadratureSampler(const CovMat2& v);

  Eigen::Vector4d draw(NormalStream& normals) const;
  const Eigen::Matrix4d& root() const { return root_; }

 private:
  Eigen::Matrix4d root_;
};

QuadratureSamples sample_quadratures(const CovMat2& v, RngSpec rng, std::size_t count);

// One M-copy estimate of Ĉ drawn from stream `rng`.
double estimate_correlation(const CovMat2& v, MeasurementModel model, std::size_t copies,
                            RngSpec rng);

struct TrialBatch {
  std::uint64_t master_seed = 0;
  std::uint64_t first_stream = 0;  // trial t uses stream first_stream + t
  std::size_t trials = 0;
  std::size_t copies = 1;
};

// OpenMP kernel. Output index t is always trial t, whatever the worker count.
std::vector<double> estimate_trials(const CovMat2& v, MeasurementModel model,
                                    const TrialBatch& batch);

namespace reference {
// Serial loop kept as the ground truth for the parallel kernel.
std::vector<double> estimate_trials(const CovMat2& v, MeasurementModel model,
                                    const TrialBatch& batch);
}  // namespace reference

struct TrialResult {
  double c_hat = 0.0;
  std::size_t decided_symbol = 0;
  std::size_t copies_used = 1;
};

struct DetectionResult {
  double threshold = 0.0;
  double c_mean_a = 0.0;
  double c_mean_b = 0.0;
  double p_error_given_a = 0.0;
  double p_error_given_b = 0.0;
  // Q(|ΔC|/2 ÷ σ/√M) for each hypothesis.
  double gaussian_error_given_a = 0.0;
  double gaussian_error_given_b = 0.0;
};

// Midpoint-threshold binary test between two operating points. Hypothesis a
// uses streams [0, trials), b uses [trials, 2·trials).
DetectionResult detection_error(const OperatingPoint& a, const OperatingPoint& b,
                                std::size_t copies, MeasurementModel model, std::size_t trials,
                                std::uint64_t master_seed);

// Upper Gaussian tail Q(z) = P(N(0,1) > z).
double gaussian_tail(double z);

}  // namespace sqzlink
