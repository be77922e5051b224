#pragma once

// Calibrated constants.  The energy-factor values are measured by the
// calibration tests in tests/test_constructions.cpp and frozen here; the
// bound tests assert against them.
namespace nuclab::constants {

// measured block energy <= kBlockEnergyFactor * (h^3/len + len) for the
// standalone branching block across the calibration sweep (observed 21-25
// with Frobenius jump weights for the four-well pair)
inline constexpr double kBlockEnergyFactor = 30.0;

// measured nested-laminate energy <= kTartarEnergyFactor * bound form
inline constexpr double kTartarEnergyFactor = 24.0;

// refined commutator radius mu_tilde = M mu mu2; covers relation degree <= 8
inline constexpr double kCommutatorRadiusFactor = 8.0;

inline constexpr double kDefaultGamma = 0.5;

// nested-laminate order and coarse scale: k = round(c1 sqrt(log L)),
// r = c2 L^(k/(k+1))
inline constexpr double kTartarC1 = 1.0;
inline constexpr double kTartarC2 = 0.5;

// inner laminate period of the double branching: q = c * width^(2/3)
inline constexpr double kInnerPeriodFactor = 0.7;

}  // namespace nuclab::constants
