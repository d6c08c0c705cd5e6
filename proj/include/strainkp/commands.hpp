#pragma once

#include <vector>

#include "strainkp/config.hpp"
#include "strainkp/elasticity.hpp"
#include "strainkp/output.hpp"

namespace strainkp::cli {

/// Parameter table named by the config (or the shipped one).
MaterialTable load_table(const RunConfig& c);

/// Biaxial in-plane prestress of the configured material.
StrainState prestress(const RunConfig& c, const MaterialTable& table);

// Each command computes its tables without touching the file system.

/// mixing_curve_<axis>: strain_xx, p_hh, p_lh, p_so.
std::vector<OutputFile> mixing_curve_files(const RunConfig& c, const MaterialTable& table);

/// mixing_map (theta_deg, strain_xx, p_hh, long format) and mixing_map_ridge.
std::vector<OutputFile> mixing_map_files(const RunConfig& c, const MaterialTable& table);

/// qw_<w>nm_<axis> per well width and axis, plus transition_energy_emulated.
std::vector<OutputFile> qw_files(const RunConfig& c, const MaterialTable& table);

/// dipoles (strengths and rates), polarization, and optional angular
/// density snapshots.
std::vector<OutputFile> dipole_files(const RunConfig& c, const MaterialTable& table);

}  // namespace strainkp::cli
