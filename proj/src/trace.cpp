#include "rcfluct/trace.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

#include "rcfluct/errors.hpp"

namespace rcfluct {

namespace {

void require_even_power(int two_p) {
  if (two_p < 2 || two_p % 2 != 0)
    throw std::invalid_argument("trace power must be even and >= 2");
}

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

// FFTW plan creation and destruction are not thread safe.
std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double trace_power_dense(const RCMatrix& M, int two_p) {
  require_even_power(two_p);
  const Eigen::MatrixXd a = M.dense();
  Eigen::MatrixXd acc = a;
  for (int i = 1; i < two_p; ++i) acc = acc * a;
  return acc.trace();
}

double trace_power_spectral(const RCMatrix& M, int two_p) {
  require_even_power(two_p);
  const Eigen::MatrixXd a = M.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numeric_error("symmetric eigensolver failed: n=" + std::to_string(M.n) +
                        " max|entry|=" + std::to_string(a.cwiseAbs().maxCoeff()));
  double total = 0.0;
  const auto& ev = solver.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) total += ipow(ev[i] * ev[i], two_p / 2);
  return total;
}

std::vector<double> fast_squared_spectrum(const RCMatrix& M) {
  const int n = M.n;
  std::vector<double> in(M.raw);
  std::vector<double> out(2 * (static_cast<std::size_t>(n) / 2 + 1), 0.0);

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw numeric_error("fftw plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }

  // DFT coefficient b_k at index k: eigenvalues of the scaled matrix are
  // b_0/sqrt(n), +-|b_k|/sqrt(n) in conjugate pairs, and b_{n/2}/sqrt(n)
  // when n is even.
  std::vector<double> sq;
  sq.reserve(static_cast<std::size_t>(n));
  const double inv_n = 1.0 / static_cast<double>(n);
  auto mod2 = [&](int k) {
    const double re = out[2 * static_cast<std::size_t>(k)];
    const double im = out[2 * static_cast<std::size_t>(k) + 1];
    return (re * re + im * im) * inv_n;
  };
  sq.push_back(mod2(0));
  for (int k = 1; 2 * k < n; ++k) {
    const double v = mod2(k);
    sq.push_back(v);
    sq.push_back(v);
  }
  if (n % 2 == 0) sq.push_back(mod2(n / 2));
  return sq;
}

double trace_power_fast(const RCMatrix& M, int two_p, bool self_check) {
  require_even_power(two_p);
  double total = 0.0;
  for (double s : fast_squared_spectrum(M)) total += ipow(s, two_p / 2);
  if (self_check) {
    const double ref = trace_power_spectral(M, two_p);
    const double denom = std::max(std::abs(ref), 1e-300);
    if (std::abs(total - ref) / denom > 1e-8)
      throw integrity_error("fast trace disagrees with spectral trace: fast=" +
                            std::to_string(total) + " spectral=" + std::to_string(ref));
  }
  return total;
}

double trace_power(const RCMatrix& M, int two_p, TracePath path) {
  switch (path) {
    case TracePath::Dense: return trace_power_dense(M, two_p);
    case TracePath::Spectral: return trace_power_spectral(M, two_p);
    case TracePath::Fast: return trace_power_fast(M, two_p);
  }
  throw std::invalid_argument("trace_power: unknown path");
}

TracePath trace_path_from_name(const std::string& name) {
  if (name == "dense") return TracePath::Dense;
  if (name == "spectral") return TracePath::Spectral;
  if (name == "fast") return TracePath::Fast;
  throw std::invalid_argument("unknown trace path: " + name);
}

std::string to_string(TracePath path) {
  switch (path) {
    case TracePath::Dense: return "dense";
    case TracePath::Spectral: return "spectral";
    case TracePath::Fast: return "fast";
  }
  return "?";
}

}  // namespace rcfluct
