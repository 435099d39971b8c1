#pragma once

// Scaled reverse circulant matrix built from n raw entries. The (i, j) entry
// is x_{(i+j-1) mod n} / sqrt(n) with 1-based indices; residue 0 maps to n.
// Each row is a one-step left circular shift of the row above it.

#include <vector>

#include <Eigen/Dense>

namespace rcfluct {

struct RCMatrix {
  int n = 0;
  std::vector<double> raw;  // unscaled entries x_1..x_n
  double scale = 1.0;       // 1/sqrt(n)

  /// 1-based, scaled entry.
  double entry(int i, int j) const;

  Eigen::MatrixXd dense() const;
};

/// Validates |x| == n.
RCMatrix build_rc(const std::vector<double>& x, int n);

}  // namespace rcfluct
