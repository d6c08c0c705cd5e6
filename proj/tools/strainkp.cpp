// Command-line front end. Every command computes all of its tables first and
// only then writes them, so a failing run leaves no partial output.
#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <optional>

#include "strainkp/commands.hpp"
#include "strainkp/error.hpp"
#include "strainkp/kernels.hpp"

namespace {

using namespace strainkp;
using namespace strainkp::cli;

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Globals {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
  std::optional<int> steps;
};

RunConfig resolve(const Globals& g) {
  RunConfig c = g.config.empty() ? RunConfig{} : load_config(g.config);
  if (g.out) c.output_dir = *g.out;
  if (g.format) c.format = parse_format(*g.format);
  if (g.threads) c.threads = *g.threads;
  if (g.steps) {
    c.sweep.steps = *g.steps;
    c.qw_sweep.steps = *g.steps;
    c.emulation_sweep.steps = *g.steps;
  }
  return c;
}

int run(const Globals& g, const std::function<std::vector<OutputFile>(const RunConfig&, const MaterialTable&)>& cmd) {
  RunConfig c = resolve(g);
  MaterialTable table = load_table(c);
  c.validate(table);
  const auto files = cmd(c, table);
  for (const auto& path : write_outputs(files, c.output_dir, c.format)) fmt::print("{}\n", path.string());
  return kOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfig;
  } catch (const LoadError& e) {
    fmt::print(stderr, "parameter file error: {}\n", e.what());
    return kConfig;
  } catch (const DomainError& e) {
    fmt::print(stderr, "invalid input: {}\n", e.what());
    return kConfig;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kNumerical;
  } catch (const IoError& e) {
    fmt::print(stderr, "i/o error: {}\n", e.what());
    return kIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strain-dependent valence-band mixing and optical selection rules of GaAs"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output directory");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--steps", g.steps, "points in every stress sweep")->check(CLI::PositiveNumber);

  auto* curve = app.add_subcommand("mixing-curve", "HH/LH/SO weights of the top valence doublet vs strain");
  auto* map = app.add_subcommand("mixing-map", "HH weight vs quantization-axis angle and strain");
  auto* qw = app.add_subcommand("qw", "quantum-well hole states and transition energies");
  auto* dip = app.add_subcommand("dipoles", "dipole strengths, rates and polarization vs strain");
  auto* amp = app.add_subcommand("amplify", "membrane strain from the actuator geometry");
  auto* isa = app.add_subcommand("isa", "print the selected SIMD kernel path");

  ActuatorGeometry geometry{1.5, 20.0};
  double piezo = 0.0;
  amp->add_option("--length-mm", geometry.finger_length_mm, "finger length l (mm)");
  amp->add_option("--gap-um", geometry.gap_width_um, "gap width d (um)");
  amp->add_option("--piezo-strain", piezo, "strain of the piezo actuator")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*curve) return guarded([&] { return run(g, mixing_curve_files); });
  if (*map) return guarded([&] { return run(g, mixing_map_files); });
  if (*qw) return guarded([&] { return run(g, qw_files); });
  if (*dip) return guarded([&] { return run(g, dipole_files); });
  if (*amp)
    return guarded([&] {
      geometry.validate();
      fmt::print("{}\n", format_number(actuator_strain(geometry, piezo)));
      return kOk;
    });
  if (*isa) {
    fmt::print("{}\n", kernels::isa_name(kernels::active_isa()));
    return kOk;
  }
  return kConfig;
}
