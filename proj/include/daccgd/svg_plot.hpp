#pragma once

#include <string>
#include <vector>

#include "daccgd/trace.hpp"

namespace daccgd {

struct LabeledTrace {
  std::string label;
  const RunTrace* trace = nullptr;
};

// Two side-by-side log-scale panels in a fixed 800x600 viewport: f_gap vs.
// cumulative gradient evaluations and vs. cumulative communication rounds.
// Pure function of its inputs, so output bytes are reproducible; f_gap values
// below 1e-16 are clamped to 1e-16 before taking logs.
std::string render_convergence_svg(const std::vector<LabeledTrace>& traces);
void write_convergence_svg(const std::vector<LabeledTrace>& traces, const std::string& path);

}  // namespace daccgd
