#pragma once

// Density operators, subsystem masks, partial traces and purities.

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spinphase/state.hpp"

namespace spinphase {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = -1e-10;

// Subsystem selector.  Bits use the same layout as basis indices: bit
// (N-1-s) selects site s, so from_sites(n, {0}) marks the leftmost spin.
struct SubsetMask {
  std::uint64_t bits = 0;

  static SubsetMask from_sites(int n_spins, std::initializer_list<int> sites) {
    SubsetMask m;
    for (int s : sites) {
      if (s < 0 || s >= n_spins)
        throw std::out_of_range("SubsetMask::from_sites: site out of range");
      m.bits |= std::uint64_t{1} << site_bit(n_spins, s);
    }
    return m;
  }

  static SubsetMask single_site(int n_spins, int site) {
    return from_sites(n_spins, {site});
  }

  static SubsetMask full(int n_spins) {
    return SubsetMask{(std::uint64_t{1} << n_spins) - 1};
  }

  int count() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }

  SubsetMask complement(int n_spins) const {
    return SubsetMask{~bits & ((std::uint64_t{1} << n_spins) - 1)};
  }
};

class DensityOperator {
 public:
  DensityOperator(int n_spins, Eigen::MatrixXcd matrix)
      : n_spins_(n_spins), m_(std::move(matrix)) {
    const Eigen::Index dim = Eigen::Index{1} << n_spins;
    if (n_spins < 1) throw std::invalid_argument("DensityOperator: n_spins must be >= 1");
    if (m_.rows() != dim || m_.cols() != dim)
      throw std::invalid_argument("DensityOperator: matrix must be 2^n x 2^n");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
      throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    if (std::abs(m_.trace() - Complex{1.0, 0.0}) > kTraceTolerance)
      throw std::invalid_argument("DensityOperator: trace must be 1");
  }

  int n_spins() const { return n_spins_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  // Opt-in positivity diagnostic; full eigendecomposition, so not run per
  // operation.
  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  void check_positive() const {
    if (min_eigenvalue() < kPsdTolerance)
      throw std::runtime_error("DensityOperator: negative eigenvalue beyond tolerance");
  }

 private:
  int n_spins_;
  Eigen::MatrixXcd m_;
};

inline DensityOperator density_from_pure(const PureState& state) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      m(i, j) = state[i] * std::conj(state[j]);
  return DensityOperator(state.n_spins(), std::move(m));
}

namespace detail {

// Positions of the set bits of `mask`, highest first, and a scatter table
// mapping a compact k-bit index to its full-index bits.  The reduced basis
// keeps the original left-to-right spin order.
inline std::vector<std::uint64_t> scatter_table(std::uint64_t mask, int n_spins) {
  std::vector<int> positions;  // descending
  for (int p = n_spins - 1; p >= 0; --p)
    if (mask & (std::uint64_t{1} << p)) positions.push_back(p);
  const int k = static_cast<int>(positions.size());
  std::vector<std::uint64_t> table(std::size_t{1} << k, 0);
  for (std::uint64_t compact = 0; compact < table.size(); ++compact) {
    std::uint64_t full = 0;
    for (int j = 0; j < k; ++j)
      if (compact & (std::uint64_t{1} << (k - 1 - j)))
        full |= std::uint64_t{1} << positions[j];
    table[compact] = full;
  }
  return table;
}

inline void check_keep_mask(SubsetMask keep, int n_spins, const char* who) {
  if (keep.empty()) throw std::invalid_argument(std::string(who) + ": empty subsystem mask");
  if (keep.bits >= (std::uint64_t{1} << n_spins))
    throw std::out_of_range(std::string(who) + ": mask exceeds system size");
}

}  // namespace detail

// Partial trace over the complement of `keep`.
inline DensityOperator reduced_density(const PureState& state, SubsetMask keep) {
  const int n = state.n_spins();
  detail::check_keep_mask(keep, n, "reduced_density");
  if (keep.bits == SubsetMask::full(n).bits) return density_from_pure(state);

  const auto kept = detail::scatter_table(keep.bits, n);
  const auto env = detail::scatter_table(keep.complement(n).bits, n);
  const auto dim = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index a2 = 0; a2 <= a; ++a2) {
      Complex s{0.0, 0.0};
      for (const std::uint64_t e : env)
        s += state[kept[a] | e] * std::conj(state[kept[a2] | e]);
      m(a, a2) = s;
      m(a2, a) = std::conj(s);
    }
  }
  return DensityOperator(keep.count(), std::move(m));
}

inline DensityOperator reduced_density(const DensityOperator& rho, SubsetMask keep) {
  const int n = rho.n_spins();
  detail::check_keep_mask(keep, n, "reduced_density");
  if (keep.bits == SubsetMask::full(n).bits) return rho;

  const auto kept = detail::scatter_table(keep.bits, n);
  const auto env = detail::scatter_table(keep.complement(n).bits, n);
  const auto dim = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index a2 = 0; a2 < dim; ++a2) {
      Complex s{0.0, 0.0};
      for (const std::uint64_t e : env)
        s += rho.matrix()(kept[a] | e, kept[a2] | e);
      m(a, a2) = s;
    }
  return DensityOperator(keep.count(), std::move(m));
}

// Tr(rho^2).  For Hermitian rho this is the squared Frobenius norm.
inline double purity(const DensityOperator& rho) {
  return rho.matrix().squaredNorm();
}

// Purity of the marginal on `keep`, without the complement shortcut.
inline double subsystem_purity(const PureState& state, SubsetMask keep) {
  return purity(reduced_density(state, keep));
}

}  // namespace spinphase
