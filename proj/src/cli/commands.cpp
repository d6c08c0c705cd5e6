#include "strainkp/commands.hpp"

#include <fmt/format.h>

#include <numbers>

#include "strainkp/axis.hpp"
#include "strainkp/optics.hpp"
#include "strainkp/qw.hpp"

namespace strainkp::cli {
namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

Table projection_table() { return {{"strain_xx", "p_hh", "p_lh", "p_so"}, {}}; }

}  // namespace

MaterialTable load_table(const RunConfig& c) {
  return load_parameter_file(c.parameter_file.empty() ? default_parameter_file() : c.parameter_file);
}

StrainState prestress(const RunConfig& c, const MaterialTable& table) {
  return biaxial_strain(c.prestress_biaxial_gpa, ElasticConstants::of(lookup(table, c.material)));
}

std::vector<OutputFile> mixing_curve_files(const RunConfig& c, const MaterialTable& table) {
  const auto& m = lookup(table, c.material);
  const auto stresses = c.sweep.values();
  const StrainState pre = prestress(c, table);
  const SweepOptions opts{c.threads, c.report_total_strain};

  std::vector<OutputFile> files;
  for (const auto& axis : c.axes) {
    OutputFile f{"mixing_curve_" + axis.name, projection_table()};
    for (const auto& row : mixing_curve(stresses, pre, axis.axis, m, opts))
      f.table.add({row.strain_xx, row.weights.hh, row.weights.lh, row.weights.so});
    files.push_back(std::move(f));
  }
  return files;
}

std::vector<OutputFile> mixing_map_files(const RunConfig& c, const MaterialTable& table) {
  const auto& m = lookup(table, c.material);
  const auto thetas = linspace(c.theta_min_deg / kRadToDeg, c.theta_max_deg / kRadToDeg,
                               static_cast<std::size_t>(c.theta_steps));
  const auto stresses = c.sweep.values();
  const MixingMap map = mixing_map(thetas, stresses, prestress(c, table), m, {c.threads, c.report_total_strain});

  OutputFile cells{"mixing_map", {{"theta_deg", "strain_xx", "p_hh"}, {}}};
  for (std::size_t i = 0; i < map.thetas.size(); ++i)
    for (std::size_t j = 0; j < map.strains.size(); ++j)
      cells.table.add({map.thetas[i] * kRadToDeg, map.strains[j], map.at(i, j)});

  OutputFile ridge{"mixing_map_ridge", {{"strain_xx", "max_p_hh", "theta_deg_at_max"}, {}}};
  for (std::size_t j = 0; j < map.strains.size(); ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < map.thetas.size(); ++i)
      if (map.at(i, j) > map.at(best, j)) best = i;
    ridge.table.add({map.strains[j], map.at(best, j), map.thetas[best] * kRadToDeg});
  }
  return {std::move(cells), std::move(ridge)};
}

std::vector<OutputFile> qw_files(const RunConfig& c, const MaterialTable& table) {
  const QwGeometry base{c.qw_wells_nm.front(), c.qw_barrier_nm, c.qw_al_fraction, c.qw_grid_points};
  std::vector<QuantizationAxis> axes;
  for (const auto& a : c.axes) axes.push_back(a.axis);

  const auto stresses = c.qw_sweep.values();
  const auto curves = qw_mixing_vs_strain(c.qw_wells_nm, stresses, axes, base, table, c.threads);

  std::vector<OutputFile> files;
  for (const auto& curve : curves) {
    for (std::size_t a = 0; a < axes.size(); ++a) {
      OutputFile f{fmt::format("qw_{:g}nm_{}", curve.well_nm, c.axes[a].name),
                   {{"strain_xx", "p_hh", "p_lh", "p_so", "hgs_energy_ev", "transition_energy_ev", "converged"}, {}}};
      for (const auto& row : curve.rows) {
        const auto& w = row.weights[a];
        f.table.add({row.strain_xx, w.hh, w.lh, w.so, row.hgs_energy, row.transition_energy, row.converged ? 1.0 : 0.0});
      }
      files.push_back(std::move(f));
    }
  }

  // Bulk model with confinement offsets, no prestress.
  const auto& m = lookup(table, c.material);
  const auto elastic = ElasticConstants::of(m);
  const double e0 = transition_energy(c.emulation, StrainState{}, m);
  OutputFile emu{"transition_energy_emulated", {{"strain_xx", "transition_energy_ev", "shift_mev"}, {}}};
  for (double s : c.emulation_sweep.values()) {
    const StrainState strain = uniaxial_strain(s, elastic);
    const double e = transition_energy(c.emulation, strain, m);
    emu.table.add({strain.xx, e, (e - e0) * 1e3});
  }
  files.push_back(std::move(emu));
  return files;
}

std::vector<OutputFile> dipole_files(const RunConfig& c, const MaterialTable& table) {
  const auto& m = lookup(table, c.material);
  const auto stresses = c.sweep.values();
  const StrainState pre = prestress(c, table);
  const auto rows = dipole_sweep(stresses, pre, m, c.calibration, c.threads, c.report_total_strain);

  OutputFile dip{"dipoles", {{"strain_xx", "s_x", "s_y", "s_z", "r_x_ghz", "r_y_ghz", "r_z_ghz"}, {}}};
  OutputFile pol{"polarization", {{"strain_xx", "dlp", "angle_deg", "tie"}, {}}};
  for (const auto& row : rows) {
    const auto& s = row.strengths;
    const auto& r = *s.rates;
    dip.table.add({row.strain_xx, s.sx, s.sy, s.sz, r[0], r[1], r[2]});
    const Polarization p = dlp_and_angle(s, c.collection);
    pol.table.add({row.strain_xx, p.degree, p.angle_deg, p.tie ? 1.0 : 0.0});
  }

  std::vector<OutputFile> files;
  files.push_back(std::move(dip));
  files.push_back(std::move(pol));

  const SphereGrid grid{c.density_theta_steps, c.density_phi_steps};
  const auto elastic = ElasticConstants::of(m);
  for (double sigma : c.density_stress_gpa) {
    const StrainState strain = superpose(pre, uniaxial_strain(sigma, elastic));
    const AngularDensity d = angular_density(topmost_doublet({}, strain, m), grid);
    OutputFile f{fmt::format("angular_density_{:g}gpa", sigma), {{"theta_rad", "phi_rad", "density"}, {}}};
    for (int i = 0; i < grid.n_theta; ++i)
      for (int j = 0; j < grid.n_phi; ++j) f.table.add({grid.theta(i), grid.phi(j), d.at(i, j)});
    files.push_back(std::move(f));
  }
  return files;
}

}  // namespace strainkp::cli
