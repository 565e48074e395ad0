#pragma once

// Test-only reference implementations.  These deliberately avoid the
// library's bit-gather/scatter code paths: indices are decoded with
// digit arithmetic and operators are formed as dense Kronecker products,
// so agreement with the library is a genuine cross-check.

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spinphase/doubled.hpp"
#include "spinphase/state.hpp"

namespace test_support {

using spinphase::Complex;
using spinphase::PairProjector;
using spinphase::PureState;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Value of site s (0-based, leftmost spin first) in basis index b.
inline int site_value(std::size_t b, int site, int n_spins) {
  return static_cast<int>((b >> (n_spins - 1 - site)) & 1);
}

// |psi>|psi> in the doubled layout, built from per-site digits: the
// doubled index is a base-4 number whose digit for site s is
// 2 * (primary bit) + (auxiliary bit), site 0 most significant.
inline Eigen::VectorXcd reference_doubled_vector(const PureState& psi) {
  const int n = psi.n_spins();
  const std::size_t dim = psi.dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim * dim));
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t b2 = 0; b2 < dim; ++b2) {
      std::size_t d = 0;
      for (int s = 0; s < n; ++s) {
        const int digit = 2 * site_value(b, s, n) + site_value(b2, s, n);
        d = d * 4 + static_cast<std::size_t>(digit);
      }
      out(static_cast<Eigen::Index>(d)) = psi[b] * psi[b2];
    }
  return out;
}

// Pair projectors as dense 4x4 blocks in the (primary, auxiliary) digit
// basis 00, 01, 10, 11.
inline Eigen::Matrix4cd pair_symmetric() {
  Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
  p(0, 0) = 1.0;
  p(3, 3) = 1.0;
  p(1, 1) = p(2, 2) = p(1, 2) = p(2, 1) = 0.5;
  return p;
}

inline Eigen::Matrix4cd pair_antisymmetric() {
  Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
  p(1, 1) = p(2, 2) = 0.5;
  p(1, 2) = p(2, 1) = -0.5;
  return p;
}

inline Eigen::MatrixXcd reference_pattern_matrix(
    const std::vector<PairProjector>& pattern) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (const PairProjector p : pattern)
    m = kron(m, p == PairProjector::Symmetric
                    ? Eigen::MatrixXcd(pair_symmetric())
                    : Eigen::MatrixXcd(pair_antisymmetric()));
  return m;
}

// Partial trace onto `keep_sites` (ascending), by digit arithmetic over
// all basis-index pairs.
inline Eigen::MatrixXcd reference_partial_trace(const PureState& psi,
                                                std::vector<int> keep_sites) {
  std::sort(keep_sites.begin(), keep_sites.end());
  const int n = psi.n_spins();
  const int k = static_cast<int>(keep_sites.size());
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << k);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < psi.dim(); ++x)
    for (std::size_t y = 0; y < psi.dim(); ++y) {
      bool env_equal = true;
      for (int s = 0; s < n && env_equal; ++s) {
        if (std::find(keep_sites.begin(), keep_sites.end(), s) != keep_sites.end())
          continue;
        env_equal = site_value(x, s, n) == site_value(y, s, n);
      }
      if (!env_equal) continue;
      std::size_t a = 0, a2 = 0;
      for (int j = 0; j < k; ++j) {
        a = a * 2 + static_cast<std::size_t>(site_value(x, keep_sites[j], n));
        a2 = a2 * 2 + static_cast<std::size_t>(site_value(y, keep_sites[j], n));
      }
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)) +=
          psi[x] * std::conj(psi[y]);
    }
  return rho;
}

// Wootters concurrence through the non-Hermitian product rho * rho~,
// independent of the library's Hermitian-square-root route.
inline double reference_wootters(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  const Eigen::Matrix4cd product = rho * y * rho.conjugate() * y;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product);
  std::vector<double> lambda(4);
  for (int i = 0; i < 4; ++i)
    lambda[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(lambda.begin(), lambda.end(), std::greater<double>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace test_support
