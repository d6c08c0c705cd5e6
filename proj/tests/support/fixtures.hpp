#pragma once

#include "strainkp/materials.hpp"

namespace fixtures {

inline const strainkp::MaterialTable& table() {
  static const auto t = strainkp::load_parameter_file(strainkp::default_parameter_file());
  return t;
}

inline const strainkp::MaterialParams& gaas() { return strainkp::lookup(table(), "GaAs"); }
inline const strainkp::MaterialParams& alas() { return strainkp::lookup(table(), "AlAs"); }

}  // namespace fixtures
