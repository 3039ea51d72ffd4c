#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "lanemden/halfspace.hpp"
#include "lanemden/radial_ode.hpp"

namespace lanemden {

class BallQuadrature;

enum class FieldKind { W1, W2, PW1Approx, PW2Approx };

std::string to_string(FieldKind k);

struct BubblePair {
  double U;
  double V;
};

/// (delta^{-n/(q+1)} U(|x-xi|/delta), delta^{-n/(p+1)} V(|x-xi|/delta)).
BubblePair bubble_eval(const RadialProfile& profile, std::span<const double> xi, double delta,
                       std::span<const double> x);

/// Both half-space corrections of a profile, tabulated for |x| <= R_max.
struct CorrectionPair {
  std::shared_ptr<HalfSpaceCorrection> phi1;
  std::shared_ptr<HalfSpaceCorrection> phi2;
};

CorrectionPair make_corrections(const std::shared_ptr<const RadialProfile>& profile, double R_max);

/// All ingredients of the two-bubble ansatz at one point, in axisymmetric
/// coordinates s = |x'|, t = x_n.
struct AnsatzPoint {
  double Ue, Um;      ///< U_{e_n,delta}, U_{-e_n,delta}
  double Ve, Vm;      ///< V_{e_n,delta}, V_{-e_n,delta}
  double corr1;       ///< delta^{1-n/(q+1)} (phi1((e_n-x)/delta) - phi1((e_n+x)/delta))
  double corr2;       ///< delta^{1-n/(p+1)} (phi2((e_n-x)/delta) - phi2((e_n+x)/delta))
  double phi1_minus;  ///< delta^{1-n/(q+1)} phi1((e_n-x)/delta)
  double phi1_plus;   ///< delta^{1-n/(q+1)} phi1((e_n+x)/delta)
  double phi2_minus;
  double phi2_plus;
  double W1() const { return Ue - Um; }
  double W2() const { return Ve - Vm; }
  double PW1() const { return W1() - corr1; }
  double PW2() const { return W2() - corr2; }
};

/// Two-bubble fields on the unit ball centred at +-e_n, with the boundary
/// corrections of the projection (remainder dropped).
class Ansatz {
 public:
  Ansatz(std::shared_ptr<const RadialProfile> profile, CorrectionPair corrections, double delta);

  double delta() const { return delta_; }
  const RadialProfile& profile() const { return *profile_; }
  const ProblemParams& params() const { return profile_->params(); }

  AnsatzPoint at(double s, double t) const;
  double field(FieldKind kind, double s, double t) const;
  /// Field at a point of the unit ball (last coordinate is x_n).
  double field(FieldKind kind, std::span<const double> x) const;

 private:
  std::shared_ptr<const RadialProfile> profile_;
  CorrectionPair corr_;
  double delta_;
  double su_, sv_;
  double scale_u_, scale_v_, scale_c1_, scale_c2_;
};

struct CompatibilityResult {
  double mean;               ///< integral of the field over the ball
  double signed_power_mean;  ///< integral of |field|^{t-1} field
  double error_estimate;
};

/// Integrals that vanish for odd fields; throws QuadratureAsymmetry if either
/// exceeds ten times the estimated quadrature error.
CompatibilityResult symmetry_and_compatibility_check(const std::function<double(double, double)>& field,
                                                     double power, const BallQuadrature& fine,
                                                     const BallQuadrature& coarse);

}  // namespace lanemden
