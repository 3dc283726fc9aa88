#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dualred/game_io.hpp"
#include "dualred/rational.hpp"

namespace testing_support {

inline std::string data_path(const std::string& name) {
  return std::string(DUALRED_TEST_DATA) + "/" + name;
}

inline std::string slurp(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline dualred::Game load(const std::string& name) { return dualred::parse_game(slurp(name)); }

inline dualred::Rational q(const char* text) { return dualred::parse_rational(text); }

}  // namespace testing_support
