#pragma once

#include <memory>
#include <string>

#include "lanemden/radial_ode.hpp"

namespace lanemden {

enum class BMode { Limit, Delta };

/// The eight constants of the reduced-energy expansion:
///   A1 = int U^{q+1},  A2 = int V^{p+1},
///   B1 = (1/2) int_{R^{n-1}} |y'|^2 U^{q+1},  B2 likewise with V^{p+1},
///   C1 = -int_{R^{n-1}} |x'| U'(x') V(x'),  C2 = -int |x'| V' U,
///   D1 = int U^{q+1} log U,  D2 = int V^{p+1} log V.
struct EnergyConstants {
  double A1 = 0, A2 = 0, B1 = 0, B2 = 0, C1 = 0, C2 = 0, D1 = 0, D2 = 0;
  double err_A1 = 0, err_A2 = 0, err_B1 = 0, err_B2 = 0, err_C1 = 0, err_C2 = 0, err_D1 = 0, err_D2 = 0;
  BMode b_mode = BMode::Limit;
  double delta_used = 0.0;
  /// |A1 - A2| / A1
  double identity_deviation() const;
};

struct ADResult {
  double A1, A2, D1, D2;
  double err_A1, err_A2, err_D1, err_D2;
};
struct BResult {
  double B1, B2, err_B1, err_B2;
};
struct CResult {
  double C1, C2, err_C1, err_C2;
};

ADResult compute_A_D(const RadialProfile& profile);
/// LIMIT mode: delta -> 0 limit; DELTA mode: boundary-strip integral at `delta` in (0, 0.1].
BResult compute_B(const RadialProfile& profile, BMode mode, double delta = 0.0);
CResult compute_C(const RadialProfile& profile);

EnergyConstants compute_constants(const RadialProfile& profile, BMode mode = BMode::Limit, double delta = 0.0);

std::string to_string(BMode m);

}  // namespace lanemden
