#pragma once

// Named state factories and random-state generators.

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spinphase/density.hpp"
#include "spinphase/rng.hpp"
#include "spinphase/state.hpp"

namespace spinphase {

// (|00...0> + |11...1>)/sqrt(2)
inline PureState ghz_state(int n_spins) {
  if (n_spins < 1) throw std::invalid_argument("ghz_state: n_spins must be >= 1");
  std::vector<Complex> amps(std::size_t{1} << n_spins, Complex{0.0, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  amps.front() = Complex{r, 0.0};
  amps.back() = Complex{r, 0.0};
  return PureState(n_spins, std::move(amps));
}

// Equal superposition of all single-excitation basis states; w_state(1) = |1>.
inline PureState w_state(int n_spins) {
  if (n_spins < 1) throw std::invalid_argument("w_state: n_spins must be >= 1");
  std::vector<Complex> amps(std::size_t{1} << n_spins, Complex{0.0, 0.0});
  const double r = 1.0 / std::sqrt(static_cast<double>(n_spins));
  for (int s = 0; s < n_spins; ++s)
    amps[std::size_t{1} << site_bit(n_spins, s)] = Complex{r, 0.0};
  return PureState(n_spins, std::move(amps));
}

// (|00> + |11>)/sqrt(2)
inline PureState bell_state() { return ghz_state(2); }

inline PureState random_pure_state(int n_spins, Xoshiro256pp& rng) {
  std::vector<Complex> amps(std::size_t{1} << n_spins);
  for (auto& a : amps) a = Complex{rng.normal(), rng.normal()};
  return PureState(n_spins, std::move(amps));
}

// rho = G G^dagger / Tr(...) with G a 2^n x rank complex Gaussian matrix.
inline DensityOperator random_density_operator(int n_spins, int rank,
                                               Xoshiro256pp& rng) {
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  if (rank < 1) throw std::invalid_argument("random_density_operator: rank must be >= 1");
  Eigen::MatrixXcd g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j)
      g(i, j) = Complex{rng.normal(), rng.normal()};
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  // Symmetrize away rounding noise.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityOperator(n_spins, std::move(m));
}

// Haar-random 2x2 unitary (QR of a complex Gaussian with phase fix).
inline Eigen::Matrix2cd random_unitary2(Xoshiro256pp& rng) {
  Eigen::Matrix2cd g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Complex{rng.normal(), rng.normal()};
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  Eigen::Matrix2cd q = qr.householderQ();
  Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline std::vector<int> random_permutation(int n, Xoshiro256pp& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
  return perm;
}

}  // namespace spinphase
