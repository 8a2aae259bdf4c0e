#include "sqzlink/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "sqzlink/errors.hpp"

namespace sqzlink {

SqueezeConvention parse_squeeze_convention(std::string_view name) {
  if (name == "standard") return SqueezeConvention::standard;
  if (name == "paper") return SqueezeConvention::paper;
  if (name == "db" || name == "decibel") return SqueezeConvention::decibel;
  if (name == "factor" || name == "variance-factor") return SqueezeConvention::variance_factor;
  throw DomainError("unknown squeeze convention '" + std::string(name) + "'");
}

std::string_view to_string(SqueezeConvention convention) {
  switch (convention) {
    case SqueezeConvention::standard: return "standard";
    case SqueezeConvention::paper: return "paper";
    case SqueezeConvention::decibel: return "db";
    case SqueezeConvention::variance_factor: return "factor";
  }
  return "?";
}

double squeeze_factor(const SqueezeSpec& spec) {
  if (!std::isfinite(spec.value) || spec.value < 0.0) {
    throw DomainError("squeeze value must be a finite non-negative number");
  }
  switch (spec.convention) {
    case SqueezeConvention::standard: return std::exp(-2.0 * spec.value);
    case SqueezeConvention::paper: return std::exp(-4.0 * spec.value);
    case SqueezeConvention::decibel: return std::pow(10.0, -spec.value / 10.0);
    case SqueezeConvention::variance_factor:
      if (!(spec.value > 0.0 && spec.value <= 1.0)) {
        throw DomainError("variance factor must lie in (0, 1]");
      }
      return spec.value;
  }
  throw DomainError("invalid squeeze convention");
}

Eigen::Matrix2d CovMat1::matrix() const {
  Eigen::Matrix2d m;
  m << vxx, vxp, vxp, vpp;
  return m;
}

CovMat2::CovMat2(const Eigen::Matrix4d& m) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  if (!m.allFinite() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("two-mode covariance matrix must be finite and symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
}

CovMat2 CovMat2::vacuum() { return CovMat2(kVacuumVariance * Eigen::Matrix4d::Identity()); }

CovMat1 CovMat2::mode(int index) const {
  if (index != 0 && index != 1) throw DomainError("mode index must be 0 or 1");
  const int o = 2 * index;
  return {m_(o, o), m_(o + 1, o + 1), m_(o, o + 1)};
}

CovMat2 CovMat2::with_added_vacuum() const {
  return CovMat2(m_ + kVacuumVariance * Eigen::Matrix4d::Identity());
}

double symplectic_eigenvalue(const CovMat1& v) {
  return std::sqrt(std::max(v.determinant(), 0.0));
}

std::array<double, 2> symplectic_eigenvalues(const CovMat2& v) {
  // With R = √V, the Hermitian matrix R(iΩ)R has spectrum ±ν₋, ±ν₊ and stays
  // well conditioned where det V would cancel catastrophically.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> root_solver(v.matrix());
  const Eigen::Vector4d lambda = root_solver.eigenvalues().cwiseMax(0.0);
  const Eigen::Matrix4d root = root_solver.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
                               root_solver.eigenvectors().transpose();
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  const Eigen::Matrix4cd hermitian =
      std::complex<double>(0.0, 1.0) * (root * omega * root).cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hermitian, Eigen::EigenvaluesOnly);
  const Eigen::Vector4d spectrum = solver.eigenvalues();  // ascending: −ν₊, −ν₋, ν₋, ν₊
  return {0.5 * (spectrum[2] - spectrum[1]), 0.5 * (spectrum[3] - spectrum[0])};
}

bool is_physical(const CovMat1& v, double tol) {
  return std::isfinite(v.vxx) && std::isfinite(v.vpp) && std::isfinite(v.vxp) && v.vxx > 0.0 &&
         v.vpp > 0.0 && symplectic_eigenvalue(v) >= kVacuumVariance - tol;
}

bool is_physical(const CovMat2& v, double tol) {
  if (!is_physical(v.mode(0), tol) || !is_physical(v.mode(1), tol)) return false;
  const auto nu = symplectic_eigenvalues(v);
  return nu[0] >= kVacuumVariance - tol;
}

namespace {

void require_physical(const CovMat1& v, const char* where) {
  if (!is_physical(v)) throw DomainError(std::string(where) + ": unphysical covariance matrix");
}

}  // namespace

CovMat1 make_thermal(ThermalOccupation occupation) {
  if (!std::isfinite(occupation.nbar) || occupation.nbar < 0.0) {
    throw DomainError("thermal occupation must be a finite non-negative number");
  }
  const double v = occupation.nbar + kVacuumVariance;
  return {v, v, 0.0};
}

CovMat1 apply_squeeze(const CovMat1& v, double factor) {
  require_physical(v, "apply_squeeze");
  if (!(factor > 0.0 && factor <= 1.0)) throw DomainError("squeeze factor must lie in (0, 1]");
  if (v.vxp != 0.0) {
    throw UnsupportedConfiguration("apply_squeeze: only x/p-aligned states are supported");
  }
  return {v.vxx * factor, v.vpp / factor, 0.0};
}

CovMat1 apply_squeeze(const CovMat1& v, const SqueezeSpec& spec) {
  return apply_squeeze(v, squeeze_factor(spec));
}

CovMat1 apply_loss(const CovMat1& v, double eta) {
  require_physical(v, "apply_loss");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("transmittance must lie in [0, 1]");
  const double added = (1.0 - eta) * kVacuumVariance;
  return {eta * v.vxx + added, eta * v.vpp + added, eta * v.vxp};
}

CovMat2 beam_splitter(const CovMat1& a, const CovMat1& b) {
  require_physical(a, "beam_splitter");
  require_physical(b, "beam_splitter");
  // S(Va ⊕ Vb)Sᵀ with S = [[I, I], [I, −I]]/√2 reduces to sums and differences of blocks.
  const Eigen::Matrix2d va = a.matrix();
  const Eigen::Matrix2d vb = b.matrix();
  Eigen::Matrix4d out;
  out.block<2, 2>(0, 0) = 0.5 * (va + vb);
  out.block<2, 2>(2, 2) = 0.5 * (va + vb);
  out.block<2, 2>(0, 2) = 0.5 * (va - vb);
  out.block<2, 2>(2, 0) = 0.5 * (va - vb);
  return CovMat2(out);
}

}  // namespace sqzlink
