#pragma once

// Zero-mean one- and two-mode Gaussian states in the covariance-matrix
// picture. Quadratures are x = (a + a†)/√2 and p = (a − a†)/(i√2), so the
// vacuum has variance 1/2 in each.

#include <array>
#include <string_view>

#include <Eigen/Core>

namespace sqzlink {

inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kPhysicalityTolerance = 1e-9;

// Quadrature ordering of a two-mode covariance matrix.
enum Quadrature : int { kX1 = 0, kP1 = 1, kX2 = 2, kP2 = 3 };

struct ThermalOccupation {
  double nbar = 0.0;
};

enum class SqueezeConvention {
  standard,         // s = e^(-2r)
  paper,            // s = e^(-4r); pairs r = 0.576 with 10 dB
  decibel,          // s = 10^(-dB/10)
  variance_factor,  // s given directly, 0 < s <= 1
};

SqueezeConvention parse_squeeze_convention(std::string_view name);
std::string_view to_string(SqueezeConvention convention);

struct SqueezeSpec {
  double value = 0.0;
  SqueezeConvention convention = SqueezeConvention::paper;
};

// Factor s applied to the squeezed (x) quadrature variance; p is scaled by 1/s.
double squeeze_factor(const SqueezeSpec& spec);

struct CovMat1 {
  double vxx = kVacuumVariance;
  double vpp = kVacuumVariance;
  double vxp = 0.0;

  static constexpr CovMat1 vacuum() { return {}; }

  double determinant() const { return vxx * vpp - vxp * vxp; }
  Eigen::Matrix2d matrix() const;

  friend bool operator==(const CovMat1&, const CovMat1&) = default;
};

class CovMat2 {
 public:
  // Throws DomainError when `m` is not symmetric to 1e-12 relative.
  explicit CovMat2(const Eigen::Matrix4d& m);

  static CovMat2 vacuum();

  const Eigen::Matrix4d& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  // Reduced single-mode state of mode 0 or 1.
  CovMat1 mode(int index) const;

  // State seen by an ideal heterodyne (eight-port) receiver on both modes.
  CovMat2 with_added_vacuum() const;

 private:
  Eigen::Matrix4d m_;
};

double symplectic_eigenvalue(const CovMat1& v);
// Ascending (ν₋, ν₊).
std::array<double, 2> symplectic_eigenvalues(const CovMat2& v);

bool is_physical(const CovMat1& v, double tol = kPhysicalityTolerance);
bool is_physical(const CovMat2& v, double tol = kPhysicalityTolerance);

CovMat1 make_thermal(ThermalOccupation occupation);
CovMat1 apply_squeeze(const CovMat1& v, double factor);
CovMat1 apply_squeeze(const CovMat1& v, const SqueezeSpec& spec);
CovMat1 apply_loss(const CovMat1& v, double eta);

// 50:50 beam splitter a₁ = (a + b)/√2, a₂ = (a − b)/√2 acting on the product state.
CovMat2 beam_splitter(const CovMat1& a, const CovMat1& b);

}  // namespace sqzlink
