#include "strainkp/config.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <set>
#include <sstream>

#include "strainkp/elasticity.hpp"
#include "strainkp/error.hpp"

namespace strainkp::cli {
namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

// Wraps a JSON object and remembers which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(fmt::format("{}: expected an object", label()));
  }

  // Rejects keys nobody asked for.
  void done() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.contains(key)) throw ConfigError(fmt::format("unknown key '{}{}'", prefix(), key));
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void get(const std::string& key, double& out) {
    if (auto* v = find(key)) {
      if (!v->is_number()) throw ConfigError(fmt::format("'{}{}' must be a number", prefix(), key));
      out = v->get<double>();
    }
  }
  void get(const std::string& key, int& out) {
    if (auto* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(fmt::format("'{}{}' must be an integer", prefix(), key));
      out = v->get<int>();
    }
  }
  void get(const std::string& key, unsigned& out) {
    int tmp = static_cast<int>(out);
    get(key, tmp);
    if (tmp < 0) throw ConfigError(fmt::format("'{}{}' must be non-negative", prefix(), key));
    out = static_cast<unsigned>(tmp);
  }
  void get(const std::string& key, bool& out) {
    if (auto* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(fmt::format("'{}{}' must be true or false", prefix(), key));
      out = v->get<bool>();
    }
  }
  void get(const std::string& key, std::string& out) {
    if (auto* v = find(key)) {
      if (!v->is_string()) throw ConfigError(fmt::format("'{}{}' must be a string", prefix(), key));
      out = v->get<std::string>();
    }
  }
  void get(const std::string& key, std::vector<double>& out) {
    if (auto* v = find(key)) {
      if (!v->is_array()) throw ConfigError(fmt::format("'{}{}' must be an array", prefix(), key));
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) throw ConfigError(fmt::format("'{}{}' must hold numbers", prefix(), key));
        out.push_back(e.get<double>());
      }
    }
  }

  std::string prefix() const { return path_.empty() ? "" : path_ + "."; }
  std::string label() const { return path_.empty() ? "config" : path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_sweep(Section& parent, const std::string& key, StressSweep& sweep) {
  if (auto* v = parent.find(key)) {
    Section s(*v, parent.prefix() + key);
    s.get("stress_min_gpa", sweep.min_gpa);
    s.get("stress_max_gpa", sweep.max_gpa);
    s.get("steps", sweep.steps);
    s.done();
  }
}

NamedAxis parse_axis(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "x") return {name, QuantizationAxis::x()};
    if (name == "y") return {name, QuantizationAxis::y()};
    if (name == "z") return {name, QuantizationAxis::z()};
    throw ConfigError(fmt::format("{}: axis must be x, y, z or an object, got '{}'", where, name));
  }
  Section s(j, where);
  double theta = 0.0, phi = 0.0;
  std::string name;
  s.get("theta_deg", theta);
  s.get("phi_deg", phi);
  s.get("name", name);
  s.done();
  if (name.empty()) name = fmt::format("t{:g}p{:g}", theta, phi);
  return {name, {theta * kDeg, phi * kDeg}};
}

void read_axes(Section& parent, const std::string& key, std::vector<NamedAxis>& out) {
  if (auto* v = parent.find(key)) {
    if (!v->is_array()) throw ConfigError(fmt::format("'{}{}' must be an array", parent.prefix(), key));
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      out.push_back(parse_axis((*v)[i], fmt::format("{}{}[{}]", parent.prefix(), key, i)));
  }
}

void check_sweep(const StressSweep& s, std::string_view name) {
  if (!std::isfinite(s.min_gpa) || !std::isfinite(s.max_gpa))
    throw ConfigError(fmt::format("{}: stress bounds must be finite", name));
  if (!(s.min_gpa < s.max_gpa)) throw ConfigError(fmt::format("{}: stress_min_gpa must be below stress_max_gpa", name));
  if (s.steps < 2) throw ConfigError(fmt::format("{}: steps must be at least 2", name));
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError(fmt::format("unknown output format '{}' (csv or json)", name));
}

std::string_view format_extension(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }

  RunConfig c;
  Section root(doc, "");
  root.get("parameter_file", c.parameter_file);
  root.get("material", c.material);
  root.get("prestress_biaxial_gpa", c.prestress_biaxial_gpa);
  root.get("report_total_strain", c.report_total_strain);
  root.get("threads", c.threads);
  read_sweep(root, "sweep", c.sweep);
  read_axes(root, "axes", c.axes);

  if (auto* v = root.find("map")) {
    Section s(*v, "map");
    s.get("theta_min_deg", c.theta_min_deg);
    s.get("theta_max_deg", c.theta_max_deg);
    s.get("theta_steps", c.theta_steps);
    s.done();
  }
  if (auto* v = root.find("qw")) {
    Section s(*v, "qw");
    s.get("well_thicknesses_nm", c.qw_wells_nm);
    s.get("barrier_nm", c.qw_barrier_nm);
    s.get("al_fraction", c.qw_al_fraction);
    s.get("grid_points", c.qw_grid_points);
    read_sweep(s, "sweep", c.qw_sweep);
    s.done();
  }
  if (auto* v = root.find("emulation")) {
    Section s(*v, "emulation");
    double cb = c.emulation.cb * 1e3, hh = c.emulation.hh * 1e3, lh = c.emulation.lh * 1e3;
    s.get("cb_shift_mev", cb);
    s.get("hh_shift_mev", hh);
    s.get("lh_shift_mev", lh);
    c.emulation = {cb * 1e-3, hh * 1e-3, lh * 1e-3};
    read_sweep(s, "sweep", c.emulation_sweep);
    s.done();
  }
  if (auto* v = root.find("optics")) {
    Section s(*v, "optics");
    s.get("tau_ref_ps", c.calibration.tau_ref_ps);
    std::string collection = "top";
    s.get("collection", collection);
    if (collection == "top")
      c.collection = Collection::TopOnly;
    else if (collection == "ideal")
      c.collection = Collection::Ideal;
    else
      throw ConfigError(fmt::format("optics.collection must be 'top' or 'ideal', got '{}'", collection));
    s.get("density_stress_gpa", c.density_stress_gpa);
    s.get("density_theta_steps", c.density_theta_steps);
    s.get("density_phi_steps", c.density_phi_steps);
    s.done();
  }
  if (auto* v = root.find("output")) {
    Section s(*v, "output");
    std::string dir = c.output_dir.string(), format = std::string(format_extension(c.format));
    s.get("dir", dir);
    s.get("format", format);
    c.output_dir = dir;
    c.format = parse_format(format);
    s.done();
  }
  root.done();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void RunConfig::validate(const MaterialTable& table) const {
  if (!table.contains(material)) throw ConfigError(fmt::format("material '{}' is not in the parameter table", material));
  if (!std::isfinite(prestress_biaxial_gpa)) throw ConfigError("prestress_biaxial_gpa must be finite");
  check_sweep(sweep, "sweep");
  check_sweep(qw_sweep, "qw.sweep");
  check_sweep(emulation_sweep, "emulation.sweep");
  if (axes.empty()) throw ConfigError("axes must not be empty");
  std::set<std::string> names;
  for (const auto& a : axes)
    if (!names.insert(a.name).second) throw ConfigError(fmt::format("axis name '{}' is used twice", a.name));

  // Every strain a sweep will produce must pass the sanity bound.
  const auto& m = table.find(material)->second;
  const auto elastic = ElasticConstants::of(m);
  const StrainState pre = biaxial_strain(prestress_biaxial_gpa, elastic);
  auto check_strain = [&](const StressSweep& s, std::string_view name, bool with_prestress) {
    for (double sigma : {s.min_gpa, s.max_gpa}) {
      StrainState e = uniaxial_strain(sigma, elastic);
      if (with_prestress) e = superpose(pre, e);
      try {
        e.validate();
      } catch (const DomainError& err) {
        throw ConfigError(fmt::format("{}: stress {} GPa gives {}", name, sigma, err.what()));
      }
    }
  };
  check_strain(sweep, "sweep", true);
  check_strain(qw_sweep, "qw.sweep", false);
  check_strain(emulation_sweep, "emulation.sweep", false);
  for (double sigma : density_stress_gpa) check_strain({sigma, sigma, 2}, "optics.density_stress_gpa", true);

  if (!(theta_min_deg < theta_max_deg) || theta_steps < 2)
    throw ConfigError("map: need theta_min_deg < theta_max_deg and theta_steps >= 2");
  if (qw_wells_nm.empty()) throw ConfigError("qw.well_thicknesses_nm must not be empty");
  for (double w : qw_wells_nm) {
    QwGeometry g{w, qw_barrier_nm, qw_al_fraction, qw_grid_points};
    try {
      g.validate();
    } catch (const DomainError& e) {
      throw ConfigError(fmt::format("qw: {}", e.what()));
    }
  }
  if (!table.contains("AlAs")) throw ConfigError("parameter table has no AlAs entry");
  if (!(calibration.tau_ref_ps > 0.0)) throw ConfigError("optics.tau_ref_ps must be positive");
  if (density_theta_steps < 1 || density_phi_steps < 1) throw ConfigError("optics: density grid must be non-empty");
  if (format != OutputFormat::Csv && format != OutputFormat::Json) throw ConfigError("bad output format");
}

}  // namespace strainkp::cli
