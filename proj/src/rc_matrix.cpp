#include "rcfluct/rc_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace rcfluct {

double RCMatrix::entry(int i, int j) const {
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::out_of_range("RCMatrix::entry: index out of range");
  int r = (i + j - 1) % n;
  if (r == 0) r = n;
  return raw[static_cast<std::size_t>(r) - 1] * scale;
}

Eigen::MatrixXd RCMatrix::dense() const {
  Eigen::MatrixXd m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m(i - 1, j - 1) = entry(i, j);
  return m;
}

RCMatrix build_rc(const std::vector<double>& x, int n) {
  if (n < 1) throw std::invalid_argument("build_rc: n must be >= 1");
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("build_rc: entry count does not match n");
  RCMatrix m;
  m.n = n;
  m.raw = x;
  m.scale = 1.0 / std::sqrt(static_cast<double>(n));
  return m;
}

}  // namespace rcfluct
