#pragma once

// The doubled space: the N-spin Hilbert space tensored with an auxiliary
// copy of itself.  Per spin there are two copy bits; projecting each pair
// onto its symmetric (triplet) or antisymmetric (singlet) subspace and
// taking expectation values in |psi>|psi> yields phase-space moments
// without any integration.
//
// Bit layout: with p = N-1-s the basis-bit position of site s, the two
// copies of that spin sit at doubled-index bits (2p+1, 2p): primary copy
// high, auxiliary copy low.  An original pair of basis indices (b, b')
// maps to D(b, b') = 2*spread(b) + spread(b') where spread() doubles the
// gap between bits.  The per-spin projectors act on the four amplitudes
// selected by one bit pair, so they never need to be formed as matrices.

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spinphase/density.hpp"
#include "spinphase/state.hpp"

namespace spinphase {

enum class PairProjector { Symmetric, Antisymmetric };

inline constexpr int kMaxDoubledPureSpins = 13;   // 16 B * 4^13 ~ 1 GiB
inline constexpr int kMaxDoubledMixedSpins = 6;   // 16 B * 16^6 ~ 256 MiB
inline constexpr double kImagResidueTolerance = 1e-10;

namespace detail {

inline std::vector<std::uint64_t> spread_table(int n_spins) {
  std::vector<std::uint64_t> table(std::size_t{1} << n_spins);
  table[0] = 0;
  for (std::size_t b = 1; b < table.size(); ++b)
    table[b] = (table[b >> 1] << 2) | (b & 1);
  return table;
}

// Apply the symmetric pair projector to the copy bits of pair position p.
inline void apply_pair_symmetric(std::span<Complex> v, int p) {
  const std::size_t lo = std::size_t{1} << (2 * p);
  const std::size_t hi = lo << 1;
  const std::size_t both = lo | hi;
  for (std::size_t base = 0; base < v.size(); ++base) {
    if (base & both) continue;
    const Complex s = 0.5 * (v[base | lo] + v[base | hi]);
    v[base | lo] = s;
    v[base | hi] = s;
  }
}

inline void apply_pair_antisymmetric(std::span<Complex> v, int p) {
  const std::size_t lo = std::size_t{1} << (2 * p);
  const std::size_t hi = lo << 1;
  const std::size_t both = lo | hi;
  for (std::size_t base = 0; base < v.size(); ++base) {
    if (base & both) continue;
    const Complex t = 0.5 * (v[base | lo] - v[base | hi]);
    v[base] = Complex{0.0, 0.0};
    v[base | lo] = t;
    v[base | hi] = -t;
    v[base | both] = Complex{0.0, 0.0};
  }
}

// (P_s - P_a) on one pair is the copy-exchange swap.
inline void apply_pair_swap(std::span<Complex> v, int p) {
  const std::size_t lo = std::size_t{1} << (2 * p);
  const std::size_t hi = lo << 1;
  const std::size_t both = lo | hi;
  for (std::size_t base = 0; base < v.size(); ++base) {
    if (base & both) continue;
    std::swap(v[base | lo], v[base | hi]);
  }
}

inline void apply_pattern(std::span<Complex> v, int n_spins,
                          std::span<const PairProjector> pattern) {
  for (int s = 0; s < n_spins; ++s) {
    const int p = site_bit(n_spins, s);
    if (pattern[s] == PairProjector::Symmetric)
      apply_pair_symmetric(v, p);
    else
      apply_pair_antisymmetric(v, p);
  }
}

}  // namespace detail

class DoubledState {
 public:
  static DoubledState from_pure(const PureState& state) {
    const int n = state.n_spins();
    if (n > kMaxDoubledPureSpins)
      throw std::length_error("DoubledState: system too large for the doubled space");
    const auto spread = detail::spread_table(n);
    DoubledState d;
    d.n_spins_ = n;
    d.amps_.resize(std::size_t{1} << (2 * n));
    for (std::size_t b = 0; b < state.dim(); ++b) {
      const std::uint64_t row = spread[b] << 1;
      for (std::size_t b2 = 0; b2 < state.dim(); ++b2)
        d.amps_[row | spread[b2]] = state[b] * state[b2];
    }
    return d;
  }

  int n_spins() const { return n_spins_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  std::vector<Complex> take_amplitudes() && { return std::move(amps_); }

  // Exchange the two copies of every spin.
  DoubledState copy_exchanged() const {
    DoubledState out = *this;
    for (int p = 0; p < n_spins_; ++p)
      detail::apply_pair_swap(std::span<Complex>(out.amps_), p);
    return out;
  }

 private:
  DoubledState() = default;

  int n_spins_ = 0;
  std::vector<Complex> amps_;
};

// <d| (x)_s P_{pattern[s]} |d> for one ordered choice of pair projectors.
inline double pattern_expectation(const DoubledState& doubled,
                                  std::span<const PairProjector> pattern) {
  const int n = doubled.n_spins();
  if (static_cast<int>(pattern.size()) != n)
    throw std::invalid_argument("pattern_expectation: pattern length mismatch");
  std::vector<Complex> work(doubled.amplitudes());
  detail::apply_pattern(std::span<Complex>(work), n, pattern);
  Complex e{0.0, 0.0};
  const auto& orig = doubled.amplitudes();
  for (std::size_t i = 0; i < work.size(); ++i) e += std::conj(orig[i]) * work[i];
  if (std::abs(e.imag()) > kImagResidueTolerance)
    throw std::logic_error("pattern_expectation: non-negligible imaginary residue");
  return e.real();
}

// || P_s^{(x)N} |d> ||^2; for |d> built from a pure state this is the
// second moment of its Husimi function.
inline double symmetric_projection_norm_sq(DoubledState doubled) {
  // Consumes its argument; the projection happens in place.
  const int n = doubled.n_spins();
  std::vector<Complex> work = std::move(doubled).take_amplitudes();
  for (int p = 0; p < n; ++p)
    detail::apply_pair_symmetric(std::span<Complex>(work), p);
  double s = 0.0;
  for (const auto& a : work) s += std::norm(a);
  return s;
}

namespace detail {

// rho (x) rho in the doubled layout, as a dense matrix.  Memory 16^N.
inline Eigen::MatrixXcd doubled_operator(const DensityOperator& rho) {
  const int n = rho.n_spins();
  if (n > kMaxDoubledMixedSpins)
    throw std::length_error("doubled_operator: mixed-state doubled space capped at 6 spins");
  const auto spread = spread_table(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << (2 * n));
  const auto& m = rho.matrix();
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index b = 0; b < m.rows(); ++b)
    for (Eigen::Index b2 = 0; b2 < m.rows(); ++b2) {
      const auto row = static_cast<Eigen::Index>((spread[b] << 1) | spread[b2]);
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index c2 = 0; c2 < m.cols(); ++c2) {
          const auto col = static_cast<Eigen::Index>((spread[c] << 1) | spread[c2]);
          out(row, col) = m(b, c) * m(b2, c2);
        }
    }
  return out;
}

inline double traced_after_gates(Eigen::MatrixXcd varrho, int n_spins,
                                 std::span<const PairProjector> pattern,
                                 bool swap_gates) {
  const auto dim = varrho.rows();
  for (Eigen::Index j = 0; j < dim; ++j) {
    std::span<Complex> col(varrho.col(j).data(), static_cast<std::size_t>(dim));
    if (swap_gates) {
      for (int p = 0; p < n_spins; ++p) apply_pair_swap(col, p);
    } else {
      apply_pattern(col, n_spins, pattern);
    }
  }
  const Complex tr = varrho.trace();
  if (std::abs(tr.imag()) > kImagResidueTolerance)
    throw std::logic_error("doubled trace: non-negligible imaginary residue");
  return tr.real();
}

}  // namespace detail

// Tr((rho (x) rho) (x)_s P_{pattern[s]}), the mixed-state analogue of
// pattern_expectation.
inline double pattern_trace(const DensityOperator& rho,
                            std::span<const PairProjector> pattern) {
  if (static_cast<int>(pattern.size()) != rho.n_spins())
    throw std::invalid_argument("pattern_trace: pattern length mismatch");
  return detail::traced_after_gates(detail::doubled_operator(rho), rho.n_spins(),
                                    pattern, /*swap_gates=*/false);
}

// Tr((rho (x) rho) (P_s - P_a)^{(x)N}).  Mathematically equal to Tr(rho^2);
// computed here entirely through the doubled-space gates as a self-test of
// the projector machinery.
inline double trace_ps_minus_pa(const DensityOperator& rho) {
  return detail::traced_after_gates(detail::doubled_operator(rho), rho.n_spins(),
                                    {}, /*swap_gates=*/true);
}

}  // namespace spinphase
