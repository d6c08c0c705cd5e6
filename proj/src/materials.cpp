#include "strainkp/materials.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "strainkp/error.hpp"

namespace strainkp {
namespace {

struct FieldSpec {
  std::string_view name;  // key without unit suffix
  std::string_view unit;  // canonical suffix, empty for dimensionless
  double MaterialParams::*member;
};

constexpr FieldSpec kFields[] = {
    {"band_gap", "ev", &MaterialParams::band_gap},
    {"vb_avg", "ev", &MaterialParams::vb_avg},
    {"spin_orbit", "ev", &MaterialParams::spin_orbit},
    {"gamma1", "", &MaterialParams::gamma1},
    {"gamma2", "", &MaterialParams::gamma2},
    {"gamma3", "", &MaterialParams::gamma3},
    {"electron_mass", "m0", &MaterialParams::electron_mass},
    {"ac", "ev", &MaterialParams::ac},
    {"av", "ev", &MaterialParams::av},
    {"b", "ev", &MaterialParams::b},
    {"d", "ev", &MaterialParams::d},
    {"c11", "gpa", &MaterialParams::c11},
    {"c12", "gpa", &MaterialParams::c12},
    {"c44", "gpa", &MaterialParams::c44},
};

// Accepted alternative suffixes and their factor to the canonical unit.
struct UnitAlias {
  std::string_view canonical;
  std::string_view alias;
  double factor;
};

constexpr UnitAlias kAliases[] = {
    {"ev", "ev", 1.0},
    {"ev", "mev", 1e-3},
    {"gpa", "gpa", 1.0},
    {"gpa", "mbar", 100.0},
    {"m0", "m0", 1.0},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

// Resolves "c11_gpa" -> (field, 1.0), "band_gap_mev" -> (field, 1e-3).
std::pair<const FieldSpec*, double> resolve_key(std::string_view key) {
  for (const auto& f : kFields) {
    if (f.unit.empty()) {
      if (key == f.name) return {&f, 1.0};
      continue;
    }
    if (key.size() <= f.name.size() + 1 || key.substr(0, f.name.size()) != f.name ||
        key[f.name.size()] != '_')
      continue;
    const auto suffix = key.substr(f.name.size() + 1);
    for (const auto& a : kAliases)
      if (a.canonical == f.unit && a.alias == suffix) return {&f, a.factor};
  }
  return {nullptr, 0.0};
}

double parse_number(std::string_view text, std::size_t line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw LoadError(at_line(line) + "malformed number '" + std::string(text) + "'");
  return value;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

void MaterialParams::validate() const {
  for (const auto& f : kFields)
    check(std::isfinite(this->*f.member), std::string(f.name) + " is not finite");
  check(band_gap > 0.0, "band gap must be positive");
  check(spin_orbit > 0.0, "spin-orbit splitting must be positive");
  check(gamma2 >= 0.0 && gamma1 > 2.0 * gamma2, "Luttinger parameters need gamma1 > 2*gamma2 >= 0");
  check(electron_mass > 0.0, "electron mass must be positive");
  check(c12 > 0.0 && c11 > c12, "stiffness needs c11 > c12 > 0");
  check(c44 > 0.0, "stiffness needs c44 > 0");
}

AlloyComposition::AlloyComposition(double al_fraction) : x_(al_fraction) {
  if (!(al_fraction >= 0.0 && al_fraction <= 1.0))
    throw DomainError("aluminium fraction must lie in [0, 1]");
}

MaterialTable load_parameter_table(std::string_view text) {
  MaterialTable table;
  std::map<std::string, std::vector<bool>, std::less<>> seen;
  std::string section;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw LoadError(at_line(line_no) + "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (table.count(section)) throw LoadError(at_line(line_no) + "duplicate material " + section);
      table[section] = MaterialParams{};
      seen[section].assign(std::size(kFields), false);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw LoadError(at_line(line_no) + "expected key = value");
    if (section.empty()) throw LoadError(at_line(line_no) + "key outside of a [material] section");

    const auto key = trim(line.substr(0, eq));
    const auto [field, factor] = resolve_key(key);
    if (!field) throw LoadError(at_line(line_no) + "unknown field '" + std::string(key) + "'");
    const auto index = static_cast<std::size_t>(field - kFields);
    if (seen[section][index])
      throw LoadError(at_line(line_no) + "duplicate field " + std::string(field->name));
    seen[section][index] = true;
    table[section].*(field->member) = factor * parse_number(trim(line.substr(eq + 1)), line_no);
  }

  if (table.empty()) throw LoadError("parameter document contains no materials");
  for (const auto* required : {"GaAs", "AlAs"})
    if (!table.count(required)) throw LoadError(std::string("missing material ") + required);

  for (const auto& [name, params] : table) {
    const auto& flags = seen.at(name);
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (!flags[i])
        throw LoadError(name + ": missing field " + std::string(kFields[i].name));
    try {
      params.validate();
    } catch (const DomainError& e) {
      throw LoadError(name + ": " + e.what());
    }
  }
  return table;
}

MaterialTable load_parameter_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open parameter file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_parameter_table(buf.str());
}

std::string serialize_parameter_table(const MaterialTable& table) {
  std::string out =
      "# Units: *_ev eV, *_gpa GPa, *_m0 free-electron masses; gamma1..3 dimensionless.\n";
  for (const auto& [name, params] : table) {
    out += "\n[" + name + "]\n";
    for (const auto& f : kFields) {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, params.*f.member);
      out += std::string(f.name);
      if (!f.unit.empty()) out += "_" + std::string(f.unit);
      out += " = " + std::string(buf, res.ptr) + "\n";
    }
  }
  return out;
}

std::string default_parameter_file() { return std::string(STRAINKP_DATA_DIR) + "/materials.ini"; }

MaterialParams vegard(double x, const MaterialParams& a, const MaterialParams& b) {
  const AlloyComposition checked(x);
  MaterialParams r;
  const double w = checked.al_fraction();
  for (const auto& f : kFields) r.*f.member = (1.0 - w) * (a.*f.member) + w * (b.*f.member);
  return r;
}

MaterialParams vegard(AlloyComposition x, const MaterialParams& a, const MaterialParams& b) {
  return vegard(x.al_fraction(), a, b);
}

MaterialParams algaas(const MaterialTable& table, AlloyComposition x) {
  return vegard(x, lookup(table, "GaAs"), lookup(table, "AlAs"));
}

const MaterialParams& lookup(const MaterialTable& table, std::string_view name) {
  const auto it = table.find(name);
  if (it == table.end()) throw LoadError("unknown material " + std::string(name));
  return it->second;
}

}  // namespace strainkp
