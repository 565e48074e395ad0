#pragma once

// Multi-spin pure states on the 2^N computational basis.
//
// Index convention: site 0 is the leftmost spin in ket notation, so for a
// basis index b the value of site s is bit (N-1-s) of b.  |s1 s2 ... sN>
// therefore prints in the same order the amplitudes are stored:
// basis_state(3, 4) is |100>.
//
// |0> and |1> are the sigma_z eigenstates with eigenvalues +1 and -1.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinphase {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;

enum class PauliAxis { X, Y, Z };

class PureState {
 public:
  PureState(int n_spins, std::vector<Complex> amplitudes)
      : n_spins_(n_spins), amps_(std::move(amplitudes)) {
    if (n_spins < 1) throw std::invalid_argument("PureState: n_spins must be >= 1");
    if (amps_.size() != (std::size_t{1} << n_spins))
      throw std::invalid_argument("PureState: amplitude vector must have length 2^n_spins");
    normalize();
  }

  int n_spins() const { return n_spins_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  void normalize() {
    const double n2 = norm_sq();
    if (n2 <= 0.0) throw std::invalid_argument("PureState: zero state cannot be normalized");
    if (std::abs(n2 - 1.0) > kNormTolerance) {
      const double inv = 1.0 / std::sqrt(n2);
      for (auto& a : amps_) a *= inv;
    }
  }

  int n_spins_;
  std::vector<Complex> amps_;
};

// Bit position of a site inside a basis index.
inline int site_bit(int n_spins, int site) { return n_spins - 1 - site; }

inline void check_site(const PureState& state, int site, const char* who) {
  if (site < 0 || site >= state.n_spins())
    throw std::out_of_range(std::string(who) + ": site index out of range");
}

inline PureState basis_state(int n_spins, std::uint64_t bits) {
  if (n_spins < 1) throw std::invalid_argument("basis_state: n_spins must be >= 1");
  const std::uint64_t dim = std::uint64_t{1} << n_spins;
  if (bits >= dim) throw std::out_of_range("basis_state: basis index out of range");
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[bits] = Complex{1.0, 0.0};
  return PureState(n_spins, std::move(amps));
}

// Tensor product; a's spins become the leading (leftmost) sites.
inline PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
  return PureState(a.n_spins() + b.n_spins(), std::move(amps));
}

inline PureState apply_pauli(const PureState& state, int site, PauliAxis axis) {
  check_site(state, site, "apply_pauli");
  const std::size_t mask = std::size_t{1} << site_bit(state.n_spins(), site);
  std::vector<Complex> out(state.amplitudes());
  const Complex i_unit{0.0, 1.0};
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (b & mask) continue;
    const Complex a0 = out[b];
    const Complex a1 = out[b | mask];
    switch (axis) {
      case PauliAxis::X:
        out[b] = a1;
        out[b | mask] = a0;
        break;
      case PauliAxis::Y:
        out[b] = -i_unit * a1;
        out[b | mask] = i_unit * a0;
        break;
      case PauliAxis::Z:
        out[b | mask] = -a1;
        break;
    }
  }
  return PureState(state.n_spins(), std::move(out));
}

// General one-spin operation u (2x2), applied to `site`.
inline PureState apply_one_spin(const PureState& state, int site,
                                const Eigen::Matrix2cd& u) {
  check_site(state, site, "apply_one_spin");
  const std::size_t mask = std::size_t{1} << site_bit(state.n_spins(), site);
  std::vector<Complex> out(state.amplitudes());
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (b & mask) continue;
    const Complex a0 = out[b];
    const Complex a1 = out[b | mask];
    out[b] = u(0, 0) * a0 + u(0, 1) * a1;
    out[b | mask] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return PureState(state.n_spins(), std::move(out));
}

// Relabel spins: the spin at site s moves to site new_site[s].
inline PureState permute_spins(const PureState& state,
                               const std::vector<int>& new_site) {
  const int n = state.n_spins();
  if (static_cast<int>(new_site.size()) != n)
    throw std::invalid_argument("permute_spins: permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int s : new_site) {
    if (s < 0 || s >= n || seen[s])
      throw std::invalid_argument("permute_spins: not a permutation");
    seen[s] = true;
  }
  std::vector<Complex> out(state.dim());
  for (std::size_t b = 0; b < state.dim(); ++b) {
    std::size_t target = 0;
    for (int s = 0; s < n; ++s) {
      if (b & (std::size_t{1} << site_bit(n, s)))
        target |= std::size_t{1} << site_bit(n, new_site[s]);
    }
    out[target] = state[b];
  }
  return PureState(n, std::move(out));
}

inline Complex inner_product(const PureState& a, const PureState& b) {
  if (a.n_spins() != b.n_spins())
    throw std::invalid_argument("inner_product: dimension mismatch");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace spinphase
