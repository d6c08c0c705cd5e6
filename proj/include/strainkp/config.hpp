#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "strainkp/axis.hpp"
#include "strainkp/materials.hpp"
#include "strainkp/optics.hpp"
#include "strainkp/qw.hpp"

namespace strainkp::cli {

enum class OutputFormat { Csv, Json };

struct StressSweep {
  double min_gpa = -2.0;
  double max_gpa = 2.0;
  int steps = 201;

  std::vector<double> values() const { return linspace(min_gpa, max_gpa, static_cast<std::size_t>(steps)); }
};

struct NamedAxis {
  std::string name;  // used in file names
  QuantizationAxis axis;
};

/// Everything a command needs. Key names in the JSON file carry their unit
/// (stress_min_gpa, barrier_nm, tau_ref_ps, ...).
struct RunConfig {
  std::string parameter_file;  // empty: the table shipped with the sources
  std::string material = "GaAs";
  double prestress_biaxial_gpa = -0.12;
  bool report_total_strain = true;

  StressSweep sweep;
  std::vector<NamedAxis> axes = {{"z", QuantizationAxis::z()}, {"x", QuantizationAxis::x()}};

  double theta_min_deg = 0.0;
  double theta_max_deg = 90.0;
  int theta_steps = 61;

  std::vector<double> qw_wells_nm = {4.0, 8.0, 12.0};
  double qw_barrier_nm = 20.0;
  double qw_al_fraction = 0.4;
  int qw_grid_points = 201;
  StressSweep qw_sweep{-2.0, 2.0, 41};

  EmulationOffsets emulation;
  /// Sweep for the emulated transition energy; no prestress is applied.
  StressSweep emulation_sweep{-2.0, 2.0, 201};

  RateCalibration calibration;
  Collection collection = Collection::TopOnly;
  std::vector<double> density_stress_gpa;  // angular-density snapshots
  int density_theta_steps = 90;
  int density_phi_steps = 180;

  std::filesystem::path output_dir = "out";
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;

  /// Throws ConfigError on inconsistent values or unknown materials.
  void validate(const MaterialTable& table) const;
};

/// Parses a JSON document. Unknown keys are errors, so misspelled units never
/// fall back to a default silently.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

OutputFormat parse_format(std::string_view name);
std::string_view format_extension(OutputFormat f);

}  // namespace strainkp::cli
