#pragma once

// Concurrence-family entanglement measures.
//
// Besides the familiar two-spin concurrence this provides the N-partite
// concurrence c_N built from subsystem purities, the squared total length
// of the concurrence vectors over all bipartitions, the mixed-state
// (Wootters) concurrence of two-spin marginals, and the residual 3-tangle.
// Bipartitions are enumerated once each by fixing site 0 in subsystem A.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinphase/density.hpp"
#include "spinphase/state.hpp"

namespace spinphase {

namespace detail {

inline Eigen::Matrix4cd sigma_y_sigma_y() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

}  // namespace detail

// |<psi| sigma_y (x) sigma_y |psi*>| for a two-spin pure state.
inline double concurrence_two_spin(const PureState& state) {
  if (state.n_spins() != 2)
    throw std::invalid_argument("concurrence_two_spin: requires exactly two spins");
  const Complex a = state[0], b = state[1], c = state[2], d = state[3];
  return 2.0 * std::abs(b * c - a * d);
}

// Wootters concurrence of the two-spin marginal on sites (i, j).
//
// Writing the marginal through the conditional vectors w_e (one per
// environment configuration e), the decreasing square-rooted eigenvalues
// of rho rho~ are the singular values of the symmetric matrix
// tau_{ee'} = w_e^T (sigma_y x sigma_y) w_e'.  Unlike forming
// sqrt(sqrt(rho) rho~ sqrt(rho)) directly, nothing here takes the square
// root of a rounding-level eigenvalue, so exact zeros stay at machine
// noise instead of sqrt(eps).  tau is reduced through the thin SVD of the
// 4 x 2^{N-2} conditional-vector matrix, keeping the final SVD 4 x 4.
inline double concurrence_two_spin_pair(const PureState& state, int i, int j) {
  check_site(state, i, "concurrence_two_spin_pair");
  check_site(state, j, "concurrence_two_spin_pair");
  if (i == j)
    throw std::invalid_argument("concurrence_two_spin_pair: sites must differ");
  const int n = state.n_spins();
  const int left = std::min(i, j);
  const int right = std::max(i, j);
  const std::size_t bit_left = std::size_t{1} << site_bit(n, left);
  const std::size_t bit_right = std::size_t{1} << site_bit(n, right);
  const std::size_t pair_bits = bit_left | bit_right;

  const auto r = static_cast<Eigen::Index>(state.dim() / 4);
  Eigen::MatrixXcd w(4, r);
  Eigen::Index col = 0;
  for (std::size_t e = 0; e < state.dim(); ++e) {
    if (e & pair_bits) continue;
    w(0, col) = state[e];
    w(1, col) = state[e | bit_right];
    w(2, col) = state[e | bit_left];
    w(3, col) = state[e | pair_bits];
    ++col;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> thin(w, Eigen::ComputeThinU);
  const Eigen::MatrixXcd u = thin.matrixU();
  const Eigen::VectorXd sig = thin.singularValues();
  const Eigen::MatrixXcd core = sig.asDiagonal() *
                                (u.transpose() * detail::sigma_y_sigma_y() * u) *
                                sig.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(core);
  Eigen::Vector4d lambda = Eigen::Vector4d::Zero();
  for (Eigen::Index k = 0; k < svd.singularValues().size() && k < 4; ++k)
    lambda(k) = svd.singularValues()(k);  // already sorted decreasing
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

// Squared concurrence between one spin and the rest: 2(1 - Tr rho_i^2),
// cross-checked against the equivalent 4 det(rho_i).
inline double one_vs_rest_concurrence_sq(const PureState& state, int site) {
  check_site(state, site, "one_vs_rest_concurrence_sq");
  if (state.n_spins() < 2)
    throw std::invalid_argument("one_vs_rest_concurrence_sq: requires at least two spins");
  const DensityOperator rho =
      reduced_density(state, SubsetMask::single_site(state.n_spins(), site));
  const double from_purity = 2.0 * (1.0 - purity(rho));
  const double from_det = 4.0 * rho.matrix().determinant().real();
  if (std::abs(from_purity - from_det) > 1e-12)
    throw std::logic_error("one_vs_rest_concurrence_sq: purity and determinant forms disagree");
  return std::max(0.0, from_purity);
}

// Residual 3-tangle via the monogamy decomposition
// tau = C^2_{A(BC)} - C^2_{AB} - C^2_{AC}.
inline double three_tangle(const PureState& state) {
  if (state.n_spins() != 3)
    throw std::invalid_argument("three_tangle: requires exactly three spins");
  const double c_one_rest = one_vs_rest_concurrence_sq(state, 0);
  const double c01 = concurrence_two_spin_pair(state, 0, 1);
  const double c02 = concurrence_two_spin_pair(state, 0, 2);
  const double tau = c_one_rest - c01 * c01 - c02 * c02;
  if (tau < -1e-10)
    throw std::runtime_error("three_tangle: monogamy residual is negative beyond tolerance");
  return std::max(0.0, tau);
}

namespace detail {

// Visit each unordered bipartition A|B once, with site 0 always in A.
// f receives the mask of A.
template <typename F>
inline void for_each_bipartition(int n_spins, F&& f) {
  const std::uint64_t site0 = std::uint64_t{1} << (n_spins - 1);
  const std::uint64_t rest = site0 - 1;
  for (std::uint64_t m = 0; m < rest; ++m) f(SubsetMask{site0 | m});
}

}  // namespace detail

// N-partite concurrence c_N = 2^{1-N/2} sqrt((2^N - 2) - sum_i Tr rho_i^2),
// the sum running over all proper nonempty subsystems.  Subsystem purities
// come in equal pairs (subsystem vs complement), so each pair is computed
// once on its smaller side.
inline double multipartite_concurrence(const PureState& state) {
  const int n = state.n_spins();
  if (n < 2)
    throw std::invalid_argument("multipartite_concurrence: requires at least two spins");
  double purity_sum = 0.0;
  detail::for_each_bipartition(n, [&](SubsetMask a) {
    const SubsetMask b = a.complement(n);
    const SubsetMask smaller = (a.count() <= b.count()) ? a : b;
    purity_sum += 2.0 * subsystem_purity(state, smaller);
  });
  const double count = std::ldexp(1.0, n) - 2.0;  // 2^N - 2
  const double radicand = std::max(0.0, count - purity_sum);
  return std::exp2(1.0 - 0.5 * n) * std::sqrt(radicand);
}

// Squared total length of the concurrence vectors over all bipartitions:
// sum over unordered A|B of 2(1 - Tr rho_A^2).
inline double concurrence_vector_length_sq(const PureState& state) {
  const int n = state.n_spins();
  if (n < 2)
    throw std::invalid_argument("concurrence_vector_length_sq: requires at least two spins");
  double total = 0.0;
  detail::for_each_bipartition(n, [&](SubsetMask a) {
    total += 2.0 * (1.0 - subsystem_purity(state, a));
  });
  return std::max(0.0, total);
}

}  // namespace spinphase
