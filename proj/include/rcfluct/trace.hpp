#pragma once

// Tr(M^{2p}) on the scaled matrix by three independent routes: repeated dense
// multiplication, a symmetric eigensolver, and a DFT of the first row. The
// routes must agree to 1e-8 relative; that agreement is the validation gate
// for the fast path.

#include <string>
#include <vector>

#include "rcfluct/rc_matrix.hpp"

namespace rcfluct {

enum class TracePath { Dense, Spectral, Fast };

/// O(p n^3): repeated multiplication of the dense matrix.
double trace_power_dense(const RCMatrix& M, int two_p);

/// Full symmetric eigendecomposition, then the power sum of the eigenvalues.
double trace_power_spectral(const RCMatrix& M, int two_p);

/// O(n log n) via the DFT of the raw entries. With self_check set, also runs
/// the spectral route and throws integrity_error on relative disagreement
/// beyond 1e-8.
double trace_power_fast(const RCMatrix& M, int two_p, bool self_check = false);

double trace_power(const RCMatrix& M, int two_p, TracePath path);

/// Squared eigenvalues of the scaled matrix from the DFT, one value per
/// eigenvalue (length n). Sufficient for every even-power statistic.
std::vector<double> fast_squared_spectrum(const RCMatrix& M);

TracePath trace_path_from_name(const std::string& name);
std::string to_string(TracePath path);

}  // namespace rcfluct
