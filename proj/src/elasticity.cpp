#include "strainkp/elasticity.hpp"

#include <cmath>

#include "strainkp/error.hpp"

namespace strainkp {

void ElasticConstants::validate() const {
  if (!(c12 > 0.0 && c11 > c12 && c44 > 0.0))
    throw DomainError("elastic constants violate cubic stability (c11 > c12 > 0, c44 > 0)");
}

void StrainState::validate() const {
  for (double v : voigt()) {
    if (!std::isfinite(v)) throw DomainError("strain component is not finite");
    if (std::abs(v) >= kMaxStrain) throw DomainError("strain component exceeds the 10% sanity bound");
  }
}

void ActuatorGeometry::validate() const {
  if (!(finger_length_mm > 0.0 && gap_width_um > 0.0))
    throw DomainError("finger length and gap width must be positive");
  if (!(amplification() > 1.0)) throw DomainError("actuator geometry must amplify (2l/d > 1)");
}

StrainState strain_from_stress(const StressTensor& s, const ElasticConstants& c) {
  c.validate();
  // Closed-form inverse of the normal block: compliance s11, s12.
  const double det = (c.c11 - c.c12) * (c.c11 + 2.0 * c.c12);
  const double s11 = (c.c11 + c.c12) / det;
  const double s12 = -c.c12 / det;

  StrainState e;
  e.xx = s11 * s.xx + s12 * (s.yy + s.zz);
  e.yy = s11 * s.yy + s12 * (s.xx + s.zz);
  e.zz = s11 * s.zz + s12 * (s.xx + s.yy);
  // sigma_ij = C44 * 2 eps_ij for the shear rows
  e.yz = s.yz / (2.0 * c.c44);
  e.xz = s.xz / (2.0 * c.c44);
  e.xy = s.xy / (2.0 * c.c44);
  e.source = s;
  e.validate();
  return e;
}

StressTensor stress_from_strain(const StrainState& e, const ElasticConstants& c) {
  StressTensor s;
  s.xx = c.c11 * e.xx + c.c12 * (e.yy + e.zz);
  s.yy = c.c11 * e.yy + c.c12 * (e.xx + e.zz);
  s.zz = c.c11 * e.zz + c.c12 * (e.xx + e.yy);
  s.yz = c.c44 * 2.0 * e.yz;
  s.xz = c.c44 * 2.0 * e.xz;
  s.xy = c.c44 * 2.0 * e.xy;
  return s;
}

StrainState uniaxial_strain(double sigma_xx_gpa, const ElasticConstants& c) {
  return strain_from_stress(StressTensor{.xx = sigma_xx_gpa}, c);
}

StrainState biaxial_strain(double sigma_gpa, const ElasticConstants& c) {
  return strain_from_stress(StressTensor{.xx = sigma_gpa, .yy = sigma_gpa}, c);
}

StrainState superpose(const StrainState& a, const StrainState& b) {
  StrainState r;
  r.xx = a.xx + b.xx;
  r.yy = a.yy + b.yy;
  r.zz = a.zz + b.zz;
  r.yz = a.yz + b.yz;
  r.xz = a.xz + b.xz;
  r.xy = a.xy + b.xy;
  if (a.source && b.source) {
    const auto& p = *a.source;
    const auto& q = *b.source;
    r.source = StressTensor{p.xx + q.xx, p.yy + q.yy, p.zz + q.zz, p.yz + q.yz, p.xz + q.xz, p.xy + q.xy};
  }
  r.validate();
  return r;
}

double actuator_strain(const ActuatorGeometry& g, double piezo_strain) {
  g.validate();
  return g.amplification() * piezo_strain;
}

}  // namespace strainkp
