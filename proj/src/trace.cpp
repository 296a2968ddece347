#include "daccgd/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace daccgd {

std::string trace_to_csv(const RunTrace& trace) {
  std::string out = "iter,grad_evals,comm_rounds,f_gap,consensus_err_sq\n";
  char buf[160];
  for (const auto& row : trace.rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%lld,%lld,%.17g,%.17g\n", row.iter,
                  static_cast<long long>(row.grad_evals), static_cast<long long>(row.comm_rounds),
                  row.f_gap, row.consensus_err_sq);
    out += buf;
  }
  return out;
}

void write_trace_csv(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << trace_to_csv(trace);
}

}  // namespace daccgd
