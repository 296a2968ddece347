#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace daccgd {

// Dense design matrix plus +/-1 labels, loaded from LIBSVM-format text.
struct Dataset {
  Eigen::MatrixXd features;  // rows x dim
  Eigen::VectorXd labels;    // entries in {-1, +1}

  int rows() const { return static_cast<int>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }
};

// Parses "label idx:val idx:val ..." lines; 1-based strictly increasing
// indices per line; labels +1/-1 (or 0, mapped to -1). dim 0 means infer
// from the max index seen. Throws std::runtime_error naming the offending
// line on malformed input.
Dataset parse_libsvm(std::istream& in, int dim = 0);
Dataset load_libsvm(const std::string& path, int dim = 0);

// Inverse of parse_libsvm: zeros skipped, "%.17g" values.
std::string to_libsvm(const Dataset& data);

}  // namespace daccgd
