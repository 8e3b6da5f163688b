#pragma once

#include "hwm/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <unistd.h>
#include <string>
#include <vector>

namespace hwm::test {

inline constexpr double pi = std::numbers::pi;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64 &g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(std::mt19937_64 &g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

/// Trapezoid rule on a periodic interval of length 2 pi (spectrally accurate).
inline double periodic_quadrature(const std::function<double(double)> &f, int nodes) {
  double s = 0.0;
  for (int i = 0; i < nodes; ++i)
    s += f(2.0 * pi * i / nodes);
  return s * 2.0 * pi / nodes;
}

inline std::complex<double>
periodic_quadrature_c(const std::function<std::complex<double>(double)> &f, int nodes) {
  std::complex<double> s{};
  for (int i = 0; i < nodes; ++i)
    s += f(-pi + 2.0 * pi * i / nodes);
  return s * (2.0 * pi / nodes);
}

struct OracleEigen {
  double value = 0.0;
  std::vector<double> coeffs; // indexed by harmonic
};

/// Mathieu eigenpair from the textbook (non-symmetric) recurrence matrix with a
/// general dense eigensolver, normalized and sign-fixed as documented.
inline OracleEigen mathieu_oracle(Parity parity, int n, double q, int dim) {
  const int odd_order = ((n % 2) + 2) % 2;
  const int first = parity == Parity::even ? odd_order : (odd_order == 1 ? 1 : 2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int j = first + 2 * r;
    m(r, r) = static_cast<double>(j) * j;
    if (r > 0)
      m(r, r - 1) = q;
    if (r + 1 < dim)
      m(r, r + 1) = q;
  }
  if (parity == Parity::even && first == 0) {
    if (dim > 1)
      m(1, 0) = 2.0 * q; // a A_2 = 2q A_0 + 4 A_2 + q A_4
  } else if (parity == Parity::even) {
    m(0, 0) += q;
  } else if (first == 1) {
    m(0, 0) -= q;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i)
    idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return es.eigenvalues()(a).real() < es.eigenvalues()(b).real();
  });
  const int rank = (n - first) / 2;
  const int pick = idx[rank];
  OracleEigen out;
  out.value = es.eigenvalues()(pick).real();
  const Eigen::VectorXd v = es.eigenvectors().col(pick).real();
  out.coeffs.assign(first + 2 * dim, 0.0);
  double ss = 0.0;
  for (int r = 0; r < dim; ++r) {
    const int j = first + 2 * r;
    out.coeffs[j] = v(r);
    ss += (j == 0 ? 2.0 : 1.0) * v(r) * v(r);
  }
  double big = 0.0;
  int at = 0;
  for (std::size_t j = 0; j < out.coeffs.size(); ++j)
    if (std::abs(out.coeffs[j]) > big * (1.0 + 1e-12)) {
      big = std::abs(out.coeffs[j]);
      at = static_cast<int>(j);
    }
  const double scale = (out.coeffs[at] < 0 ? -1.0 : 1.0) / std::sqrt(ss);
  for (double &c : out.coeffs)
    c *= scale;
  return out;
}

/// Unique scratch path inside the system temp directory.
inline std::filesystem::path scratch_path(const std::string &name) {
  static std::uint64_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() / "hwm_tests";
  std::filesystem::create_directories(dir);
  return dir / (std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
}

} // namespace hwm::test
