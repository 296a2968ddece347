#include "daccgd/libsvm.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace daccgd {
namespace {

[[noreturn]] void fail(std::int64_t line_no, const std::string& what) {
  throw std::runtime_error("libsvm parse error at line " + std::to_string(line_no) + ": " + what);
}

struct SparseRow {
  double label = 0.0;
  std::vector<std::pair<int, double>> entries;
};

}  // namespace

Dataset parse_libsvm(std::istream& in, int dim) {
  std::vector<SparseRow> rows;
  int max_index = 0;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // strip trailing comment and whitespace-only lines
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    double label;
    if (!(ls >> label)) continue;  // blank line
    if (label == 0.0) label = -1.0;
    if (label != 1.0 && label != -1.0) fail(line_no, "label must be +1, -1 or 0");

    SparseRow row;
    row.label = label;
    std::string tok;
    int prev_index = 0;
    while (ls >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) fail(line_no, "expected index:value, got '" + tok + "'");
      int index = 0;
      double value = 0.0;
      try {
        std::size_t used = 0;
        index = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing");
        std::string vs = tok.substr(colon + 1);
        value = std::stod(vs, &used);
        if (used != vs.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(line_no, "bad index:value token '" + tok + "'");
      }
      if (index < 1) fail(line_no, "indices are 1-based, got " + std::to_string(index));
      if (index <= prev_index)
        fail(line_no, "indices must be strictly increasing, got " + std::to_string(index) +
                          " after " + std::to_string(prev_index));
      prev_index = index;
      row.entries.emplace_back(index, value);
    }
    if (prev_index > max_index) max_index = prev_index;
    rows.push_back(std::move(row));
  }

  if (dim == 0) dim = max_index;
  if (max_index > dim)
    throw std::runtime_error("libsvm parse error: feature index " + std::to_string(max_index) +
                             " exceeds requested dimension " + std::to_string(dim));
  if (rows.empty()) throw std::runtime_error("libsvm parse error: no samples found");

  Dataset out;
  out.features = Eigen::MatrixXd::Zero(static_cast<int>(rows.size()), dim);
  out.labels.resize(static_cast<int>(rows.size()));
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    out.labels(i) = rows[i].label;
    for (const auto& [idx, val] : rows[i].entries) out.features(i, idx - 1) = val;
  }
  return out;
}

Dataset load_libsvm(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open libsvm file: " + path);
  return parse_libsvm(in, dim);
}

std::string to_libsvm(const Dataset& data) {
  std::string out;
  char buf[64];
  for (int i = 0; i < data.rows(); ++i) {
    std::snprintf(buf, sizeof(buf), "%+g", data.labels(i));
    out += buf;
    for (int j = 0; j < data.dim(); ++j) {
      if (data.features(i, j) == 0.0) continue;
      std::snprintf(buf, sizeof(buf), " %d:%.17g", j + 1, data.features(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace daccgd
