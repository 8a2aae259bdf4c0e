#include "sqzlink/montecarlo.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "sqzlink/errors.hpp"

namespace sqzlink {

namespace {

bool symmetric_root(const Eigen::Matrix4d& v, Eigen::Matrix4d& root) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(v);
  if (solver.info() != Eigen::Success) return false;
  const Eigen::Vector4d& lambda = solver.eigenvalues();
  if (!(lambda.minCoeff() > 0.0)) return false;
  root = solver.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
         solver.eigenvectors().transpose();
  return true;
}

void check_copies(MeasurementModel model, std::size_t copies) {
  if (copies < 1) throw DomainError("copy count must be at least 1");
  if (model == MeasurementModel::alternating_homodyne && copies % 2 != 0) {
    throw DomainError("alternating homodyne needs an even copy count");
  }
}

// Single-trial estimator on a sampler already built for the model's state.
double estimate_with(const QuadratureSampler& sampler, MeasurementModel model,
                     std::size_t copies, NormalStream& normals) {
  if (model == MeasurementModel::alternating_homodyne) {
    double xx = 0.0;
    double pp = 0.0;
    for (std::size_t j = 0; j < copies; ++j) {
      const Eigen::Vector4d q = sampler.draw(normals);
      // copies are 1-indexed: odd copies read x, even copies read p
      if (j % 2 == 0) {
        xx += q[kX1] * q[kX2];
      } else {
        pp += q[kP1] * q[kP2];
      }
    }
    const double half = static_cast<double>(copies / 2);
    return xx / half - pp / half;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < copies; ++j) {
    const Eigen::Vector4d q = sampler.draw(normals);
    sum += q[kX1] * q[kX2] - q[kP1] * q[kP2];
  }
  return sum / static_cast<double>(copies);
}

CovMat2 measured_state(const CovMat2& v, MeasurementModel model) {
  if (!is_physical(v)) throw DomainError("sampling requires a physical covariance matrix");
  return model == MeasurementModel::heterodyne ? v.with_added_vacuum() : v;
}

}  // namespace

QuadratureSampler::QuadratureSampler(const CovMat2& v) {
  if (symmetric_root(v.matrix(), root_)) return;
  const Eigen::Matrix4d jittered = v.matrix() + kFactorizationJitter * Eigen::Matrix4d::Identity();
  if (!symmetric_root(jittered, root_)) {
    throw NumericError("covariance matrix is not positive definite even after jitter");
  }
}

Eigen::Vector4d QuadratureSampler::draw(NormalStream& normals) const {
  Eigen::Vector4d z;
  for (int i = 0; i < 4; ++i) z[i] = normals.next();
  return root_ * z;
}

QuadratureSamples sample_quadratures(const CovMat2& v, RngSpec rng, std::size_t count) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  if (!is_physical(v)) throw DomainError("sampling requires a physical covariance matrix");
  const QuadratureSampler sampler(v);
  NormalStream normals(rng);
  QuadratureSamples out(static_cast<Eigen::Index>(count), 4);
  for (Eigen::Index i = 0; i < out.rows(); ++i) out.row(i) = sampler.draw(normals).transpose();
  return out;
}

double estimate_correlation(const CovMat2& v, MeasurementModel model, std::size_t copies,
                            RngSpec rng) {
  check_copies(model, copies);
  const QuadratureSampler sampler(measured_state(v, model));
  NormalStream normals(rng);
  return estimate_with(sampler, model, copies, normals);
}

std::vector<double> estimate_trials(const CovMat2& v, MeasurementModel model,
                                    const TrialBatch& batch) {
  check_copies(model, batch.copies);
  const QuadratureSampler sampler(measured_state(v, model));
  std::vector<double> out(batch.trials);
  const auto n = static_cast<std::int64_t>(batch.trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    NormalStream normals({batch.master_seed, batch.first_stream + static_cast<std::uint64_t>(t)});
    out[static_cast<std::size_t>(t)] = estimate_with(sampler, model, batch.copies, normals);
  }
  return out;
}

namespace reference {

std::vector<double> estimate_trials(const CovMat2& v, MeasurementModel model,
                                    const TrialBatch& batch) {
  check_copies(model, batch.copies);
  const QuadratureSampler sampler(measured_state(v, model));
  std::vector<double> out;
  out.reserve(batch.trials);
  for (std::size_t t = 0; t < batch.trials; ++t) {
    NormalStream normals({batch.master_seed, batch.first_stream + t});
    out.push_back(estimate_with(sampler, model, batch.copies, normals));
  }
  return out;
}

}  // namespace reference

double gaussian_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

DetectionResult detection_error(const OperatingPoint& a, const OperatingPoint& b,
                                std::size_t copies, MeasurementModel model, std::size_t trials,
                                std::uint64_t master_seed) {
  if (trials < 1) throw DomainError("trial count must be at least 1");
  check_copies(model, copies);
  const CovMat2 va = output_state(a);
  const CovMat2 vb = output_state(b);
  const CorrelationStats sa = correlation_stats(va, model);
  const CorrelationStats sb = correlation_stats(vb, model);
  if (sa.c_mean == sb.c_mean) {
    throw DegenerateAlphabet("both hypotheses have the same expected correlation");
  }

  DetectionResult result;
  result.c_mean_a = sa.c_mean;
  result.c_mean_b = sb.c_mean;
  result.threshold = 0.5 * (sa.c_mean + sb.c_mean);
  const bool a_above = sa.c_mean > sb.c_mean;

  // A tie at the threshold is decided for the hypothesis with the larger mean.
  const auto decides_upper = [&](double c) { return c >= result.threshold; };

  const auto ca = estimate_trials(va, model, {master_seed, 0, trials, copies});
  const auto cb = estimate_trials(vb, model, {master_seed, trials, trials, copies});
  std::size_t wrong_a = 0;
  std::size_t wrong_b = 0;
  for (double c : ca) wrong_a += decides_upper(c) != a_above ? 1 : 0;
  for (double c : cb) wrong_b += decides_upper(c) == a_above ? 1 : 0;
  result.p_error_given_a = static_cast<double>(wrong_a) / static_cast<double>(trials);
  result.p_error_given_b = static_cast<double>(wrong_b) / static_cast<double>(trials);

  const double half_gap = 0.5 * std::abs(sa.c_mean - sb.c_mean);
  const double root_m = std::sqrt(static_cast<double>(copies));
  result.gaussian_error_given_a = gaussian_tail(half_gap / (sa.sigma_per_copy / root_m));
  result.gaussian_error_given_b = gaussian_tail(half_gap / (sb.sigma_per_copy / root_m));
  return result;
}

}  // namespace sqzlink
