#pragma once

#include <array>
#include <optional>

#include "strainkp/materials.hpp"

namespace strainkp {

struct ElasticConstants {
  double c11 = 0.0;
  double c12 = 0.0;
  double c44 = 0.0;

  static ElasticConstants of(const MaterialParams& p) { return {p.c11, p.c12, p.c44}; }
  void validate() const;
};

/// Symmetric stress in Voigt order (xx, yy, zz, yz, xz, xy), GPa.
struct StressTensor {
  double xx = 0.0, yy = 0.0, zz = 0.0;
  double yz = 0.0, xz = 0.0, xy = 0.0;

  std::array<double, 6> voigt() const { return {xx, yy, zz, yz, xz, xy}; }
  bool operator==(const StressTensor&) const = default;
};

/// Symmetric strain, tensor components (not engineering shears).
struct StrainState {
  double xx = 0.0, yy = 0.0, zz = 0.0;
  double yz = 0.0, xz = 0.0, xy = 0.0;
  std::optional<StressTensor> source;

  double trace() const { return xx + yy + zz; }
  std::array<double, 6> voigt() const { return {xx, yy, zz, yz, xz, xy}; }

  /// Finite and every component below kMaxStrain in magnitude.
  void validate() const;
};

inline constexpr double kMaxStrain = 0.1;

/// Membrane actuator: two fingers of length l (mm) separated by a gap d (um).
struct ActuatorGeometry {
  double finger_length_mm = 0.0;
  double gap_width_um = 0.0;

  void validate() const;
  double amplification() const { return 2.0 * finger_length_mm * 1000.0 / gap_width_um; }
};

/// Inverse of the cubic Hooke map.
StrainState strain_from_stress(const StressTensor& stress, const ElasticConstants& c);

/// Forward cubic Hooke map, used to verify round trips.
StressTensor stress_from_strain(const StrainState& strain, const ElasticConstants& c);

StrainState uniaxial_strain(double sigma_xx_gpa, const ElasticConstants& c);

/// In-plane biaxial stress sigma_xx = sigma_yy, sigma_zz = 0.
StrainState biaxial_strain(double sigma_gpa, const ElasticConstants& c);

/// Linear superposition; the source stress is summed when both are known.
StrainState superpose(const StrainState& a, const StrainState& b);

double actuator_strain(const ActuatorGeometry& g, double piezo_strain);

}  // namespace strainkp
