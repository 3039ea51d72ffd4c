#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lanemden/radial_ode.hpp"

namespace lanemden {

enum class CorrectionKind { Phi1, Phi2 };

std::string to_string(CorrectionKind k);

/// Radial Neumann data g(rho) on the boundary hyperplane.
struct BoundaryData {
  std::function<double(double)> g;
  /// Power series of g valid beyond `r_switch`; used for the far tail in closed form.
  std::vector<PowerTerm> tail;
  /// Breakpoint where the representation of g changes (profile r_max).
  double r_switch = 1.0;
};

/// Harmonic function on the upper half-space with d(phi)/dx_n = g(|x'|) on
/// the boundary and phi -> 0 at infinity:
///   phi(x) = -(2/(omega_n (n-2))) * int |x-(y',0)|^{2-n} g(|y'|) dy'.
/// With g >= 0 this gives phi <= 0.
class HalfSpaceCorrection {
 public:
  /// phi_{1,0} (data -(rho/2)U') or phi_{2,0} (data -(rho/2)V').
  HalfSpaceCorrection(std::shared_ptr<const RadialProfile> profile, CorrectionKind which);
  /// Arbitrary radial data, for validation against closed forms.
  HalfSpaceCorrection(int n, BoundaryData data);

  int dimension() const { return n_; }
  CorrectionKind kind() const { return kind_; }
  const BoundaryData& data() const { return data_; }
  double g(double rho) const { return data_.g(rho); }

  /// phi at |x'| = s, x_n = h >= 0.
  double phi(double s, double h) const;
  /// phi at a point of the closed half-space (last coordinate is x_n).
  double phi(std::span<const double> x) const;
  /// phi with the difference between two Gauss orders as error estimate;
  /// throws QuadratureNonConvergent if the estimate exceeds rel_tol * |phi|.
  double phi_checked(double s, double h, double rel_tol, double* err = nullptr) const;

  /// Exponent of the leading power decay of g (phi decays like R^{1-e}).
  double data_decay_exponent() const;
  /// Expected decay exponent of phi at infinity.
  double expected_phi_decay() const { return data_decay_exponent() - 1.0; }

  /// Precomputes phi on a (log(1+R), angle) grid covering |x| <= R_max.
  void tabulate(double R_max);
  double table_radius() const { return table_R_; }
  /// Table interpolation inside the tabulated range, direct quadrature outside.
  double phi_fast(double s, double h) const;

  /// Angular integral over S^{n-2} of |x-(y',0)|^{2-n} with |y'| = rho.
  double angular_kernel(double s, double rho, double h) const;
  /// Same, always by numerical quadrature (any n); for cross-checks.
  double angular_kernel_quadrature(double s, double rho, double h) const;

 private:
  double integrate(double s, double h, int order) const;

  int n_;
  CorrectionKind kind_ = CorrectionKind::Phi1;
  std::shared_ptr<const RadialProfile> profile_;
  BoundaryData data_;
  double prefactor_;
  // Table on u = log(1+R) in [0, u_max], theta in [0, pi/2] (x_n = R cos, s = R sin).
  double table_R_ = 0.0;
  double du_ = 0.0, dth_ = 0.0;
  int nu_ = 0, nth_ = 0;
  std::vector<double> table_;
};

struct DecayFit {
  double exponent = 0.0;
  double expected = 0.0;
  double rel_deviation = 0.0;
  std::vector<double> radii, values;
};

/// Fits |phi| ~ C1 R^{-e} + C2 R^{-e-kappa} along the ray at angle theta
/// from the x_n axis over [R_lo, R_hi].
DecayFit fit_phi_decay(const HalfSpaceCorrection& corr, double R_lo, double R_hi, double theta = 0.785398163397448);

/// Max |Laplacian phi| over a lattice in the box x' in [lo, hi]^{n-1},
/// x_n in [zlo, zhi], by central differences of step h.
double verify_harmonic(const HalfSpaceCorrection& corr, double lo, double hi, double zlo, double zhi,
                       double h, int points_per_axis = 3);

/// Max relative mismatch between the one-sided normal derivative on the
/// boundary and the data g at the given radii.
double verify_neumann_data(const HalfSpaceCorrection& corr, std::span<const double> radii, double h = 1e-3);

}  // namespace lanemden
