#pragma once

#include <string>

#include "spec.hpp"

namespace qcgeo::cli {

struct RunOptions {
  std::string out_override;  // non-empty: overrides spec.out
  int threads = 1;
};

/// Executes one problem spec: writes the mode's CSV artifacts plus a
/// manifest.json into the output directory. Returns the process exit code:
/// 0 success, 1 input error, 2 solver failure.
int run(const ProblemSpec& spec, const RunOptions& opt = {});

}  // namespace qcgeo::cli
