#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "peq/peq.hpp"

namespace peq::testing {

inline std::string sample_path(const std::string& name) { return std::string(PEQ_SAMPLES_DIR) + "/" + name; }

inline SourceFile load_sample(const std::string& name) {
  std::ifstream in(sample_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_source(ss.str());
}

inline Program stmt(const std::string& text) { return parse(text); }

}  // namespace peq::testing
