#pragma once

#include <map>
#include <string>
#include <string_view>

namespace strainkp {

/// Band-structure and elastic parameters of one zincblende material.
///
/// Energies in eV, stiffnesses in GPa, masses in units of m0. `vb_avg` is the
/// average valence-band energy E_v,av on an absolute scale; the top of the
/// HH/LH bands sits at vb_avg + spin_orbit / 3. `av` uses the convention that
/// the valence-band edge moves by +av * Tr(strain).
struct MaterialParams {
  double band_gap = 0.0;
  double vb_avg = 0.0;
  double spin_orbit = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double electron_mass = 0.0;
  double ac = 0.0;
  double av = 0.0;
  double b = 0.0;
  double d = 0.0;
  double c11 = 0.0;
  double c12 = 0.0;
  double c44 = 0.0;

  /// Energy of the unstrained HH/LH edge at Gamma.
  double vb_edge() const { return vb_avg + spin_orbit / 3.0; }
  double cb_edge() const { return vb_edge() + band_gap; }

  /// Poisson ratio for uniaxial stress along [100].
  double poisson_100() const { return c12 / (c11 + c12); }

  /// Throws DomainError naming the first violated invariant.
  void validate() const;

  bool operator==(const MaterialParams&) const = default;
};

/// Aluminium fraction x of Al_x Ga_(1-x) As.
class AlloyComposition {
 public:
  explicit AlloyComposition(double al_fraction);
  double al_fraction() const { return x_; }

 private:
  double x_;
};

using MaterialTable = std::map<std::string, MaterialParams, std::less<>>;

/// Parses the sectioned key/value parameter format (see data/materials.ini).
/// GaAs and AlAs sections are mandatory. Throws LoadError; never returns a
/// partial table.
MaterialTable load_parameter_table(std::string_view text);
MaterialTable load_parameter_file(const std::string& path);

/// Writes a table in the same format, with round-trip exact numbers.
std::string serialize_parameter_table(const MaterialTable& table);

/// Path of the parameter file shipped with the sources.
std::string default_parameter_file();

/// Field-wise (1 - x) * a + x * b.
MaterialParams vegard(double x, const MaterialParams& a, const MaterialParams& b);
MaterialParams vegard(AlloyComposition x, const MaterialParams& a, const MaterialParams& b);

/// Al_x Ga_(1-x) As from the table's GaAs and AlAs entries.
MaterialParams algaas(const MaterialTable& table, AlloyComposition x);

const MaterialParams& lookup(const MaterialTable& table, std::string_view name);

}  // namespace strainkp
