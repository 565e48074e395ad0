#pragma once

// Spin-coherent states and the Husimi function.
//
// A single spin-1/2 coherent state is parametrized by Bloch angles:
//   |theta, phi> = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>,
// and an N-spin coherent state is the product over sites.  The Husimi
// function of a state rho is H(mu) = <mu|rho|mu>.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spinphase/density.hpp"
#include "spinphase/rng.hpp"
#include "spinphase/state.hpp"

namespace spinphase {

struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

class PhasePoint {
 public:
  explicit PhasePoint(std::vector<BlochAngles> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw std::invalid_argument("PhasePoint: needs at least one spin");
    for (auto& a : angles_) {
      if (!(a.theta >= 0.0 && a.theta <= std::numbers::pi))
        throw std::domain_error("PhasePoint: theta outside [0, pi]");
      a.phi = std::fmod(a.phi, 2.0 * std::numbers::pi);
      if (a.phi < 0.0) a.phi += 2.0 * std::numbers::pi;
    }
  }

  int n_spins() const { return static_cast<int>(angles_.size()); }
  const BlochAngles& operator[](int site) const { return angles_[site]; }
  const std::vector<BlochAngles>& angles() const { return angles_; }

 private:
  std::vector<BlochAngles> angles_;
};

inline PureState coherent_state(const PhasePoint& point) {
  std::vector<Complex> amps{Complex{1.0, 0.0}};
  for (const auto& a : point.angles()) {
    const Complex c0{std::cos(0.5 * a.theta), 0.0};
    const Complex c1 = std::sin(0.5 * a.theta) *
                       Complex{std::cos(a.phi), std::sin(a.phi)};
    std::vector<Complex> next(2 * amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      next[2 * i] = amps[i] * c0;
      next[2 * i + 1] = amps[i] * c1;
    }
    amps = std::move(next);
  }
  return PureState(point.n_spins(), std::move(amps));
}

inline PhasePoint random_phase_point(int n_spins, Xoshiro256pp& rng) {
  std::vector<BlochAngles> angles(n_spins);
  for (auto& a : angles) {
    a.theta = std::acos(rng.uniform(-1.0, 1.0));
    a.phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return PhasePoint(std::move(angles));
}

inline double husimi(const PureState& state, const PhasePoint& point) {
  if (point.n_spins() != state.n_spins())
    throw std::invalid_argument("husimi: dimension mismatch");
  return std::norm(inner_product(coherent_state(point), state));
}

inline double husimi(const DensityOperator& rho, const PhasePoint& point) {
  if (point.n_spins() != rho.n_spins())
    throw std::invalid_argument("husimi: dimension mismatch");
  const PureState mu = coherent_state(point);
  const auto dim = static_cast<Eigen::Index>(mu.dim());
  Eigen::Map<const Eigen::VectorXcd> v(mu.amplitudes().data(), dim);
  const Complex h = v.dot(rho.matrix() * v);
  if (std::abs(h.imag()) > 1e-10)
    throw std::logic_error("husimi: expectation has a non-negligible imaginary part");
  return h.real();
}

}  // namespace spinphase
