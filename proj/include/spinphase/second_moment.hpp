#pragma once

// Second moment of the Husimi function, P = 3^N * integral of H(mu)^2 over
// the product of Bloch spheres with the rotation-invariant measure.  P = 1
// exactly for product states and decreases as the state spreads over phase
// space.
//
// Four routes are provided and must agree:
//   Projector   exact contraction in the doubled space
//   Purity      P = 1 - c_N^2 / 4 through subsystem purities
//   Quadrature  tensor-grid integration, exact for this integrand class
//   MonteCarlo  Haar sampling with standard-error reporting
//
// The quadrature is exact because per spin the squared Husimi function is
// a trigonometric polynomial of degree <= 2 in (theta, phi): with
// u = cos(theta), Gauss-Legendre in u (>= 3 nodes) and a uniform periodic
// grid in phi (>= 5 nodes) integrate it without error.  Every quadrature
// call re-runs itself with doubled node counts and requires agreement to
// 1e-12, so a non-exact configuration cannot slip through.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "spinphase/concurrence.hpp"
#include "spinphase/density.hpp"
#include "spinphase/doubled.hpp"
#include "spinphase/quadrature.hpp"
#include "spinphase/rng.hpp"
#include "spinphase/state.hpp"

namespace spinphase {

enum class SecondMomentMethod { Projector, Purity, Quadrature, MonteCarlo };

struct SecondMomentReport {
  double value = 0.0;
  SecondMomentMethod method = SecondMomentMethod::Projector;
  std::optional<double> std_error;  // MonteCarlo only
  std::uint64_t samples_or_nodes = 0;
};

struct QuadratureSpec {
  int nodes_theta = 3;
  int nodes_phi = 5;
};

struct MonteCarloSpec {
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  int streams = 16;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

inline constexpr int kMaxQuadratureSpins = 4;
inline constexpr double kQuadratureDoublingTolerance = 1e-12;

// Default worker count: SPINPHASE_THREADS if set, hardware otherwise.
inline int default_thread_count() {
  if (const char* env = std::getenv("SPINPHASE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace detail {

// One quadrature node of a single Bloch sphere: coherent-state components
// plus the node's share of the normalized measure (weights sum to 1).
struct SpinNode {
  double weight;
  double c0;      // cos(theta/2)
  Complex c1;     // sin(theta/2) e^{i phi}
};

inline std::vector<SpinNode> spin_nodes(int nodes_theta, int nodes_phi) {
  const GaussLegendreRule gl = gauss_legendre(nodes_theta);
  std::vector<SpinNode> nodes;
  nodes.reserve(static_cast<std::size_t>(nodes_theta) * nodes_phi);
  for (int t = 0; t < nodes_theta; ++t) {
    const double u = gl.nodes[t];
    const double w_u = 0.5 * gl.weights[t];
    const double c0 = std::sqrt(0.5 * (1.0 + u));
    const double s = std::sqrt(0.5 * (1.0 - u));
    for (int k = 0; k < nodes_phi; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / nodes_phi;
      nodes.push_back({w_u / nodes_phi, c0,
                       s * Complex{std::cos(phi), std::sin(phi)}});
    }
  }
  return nodes;
}

// Tensor-grid sum of H^power for a pure state, by depth-first contraction
// of the bra over one site at a time.  buffers[d] holds the partially
// contracted vector at depth d.
class PureGridSum {
 public:
  PureGridSum(const PureState& state, const std::vector<SpinNode>& nodes,
              int power)
      : nodes_(nodes), power_(power) {
    std::size_t m = state.dim() / 2;
    while (m >= 1) {
      buffers_.emplace_back(m);
      if (m == 1) break;
      m /= 2;
    }
    sum_ = descend(state.amplitudes().data(), state.dim(), 0);
  }

  double value() const { return sum_; }

 private:
  double descend(const Complex* v, std::size_t m, int depth) {
    if (m == 1) {
      const double h = std::norm(v[0]);
      return power_ == 1 ? h : h * h;
    }
    const std::size_t half = m / 2;
    auto& out = buffers_[depth];
    double total = 0.0;
    for (const SpinNode& node : nodes_) {
      const Complex c1c = std::conj(node.c1);
      for (std::size_t i = 0; i < half; ++i)
        out[i] = node.c0 * v[i] + c1c * v[i + half];
      total += node.weight * descend(out.data(), half, depth + 1);
    }
    return total;
  }

  const std::vector<SpinNode>& nodes_;
  int power_;
  std::vector<std::vector<Complex>> buffers_;
  double sum_ = 0.0;
};

// Same grid sum for a density operator, contracting <mu|rho|mu> from both
// sides one site at a time.
class MixedGridSum {
 public:
  MixedGridSum(const DensityOperator& rho, const std::vector<SpinNode>& nodes,
               int power)
      : nodes_(nodes), power_(power) {
    sum_ = descend(rho.matrix());
  }

  double value() const { return sum_; }

 private:
  double descend(const Eigen::MatrixXcd& m) {
    if (m.rows() == 1) {
      const Complex h = m(0, 0);
      if (std::abs(h.imag()) > kImagResidueTolerance)
        throw std::logic_error("quadrature: Husimi value has imaginary residue");
      return power_ == 1 ? h.real() : h.real() * h.real();
    }
    const Eigen::Index half = m.rows() / 2;
    double total = 0.0;
    for (const SpinNode& node : nodes_) {
      const Complex c0{node.c0, 0.0};
      const Complex c1 = node.c1;
      Eigen::MatrixXcd next =
          std::conj(c0) * c0 * m.topLeftCorner(half, half) +
          std::conj(c0) * c1 * m.topRightCorner(half, half) +
          std::conj(c1) * c0 * m.bottomLeftCorner(half, half) +
          std::conj(c1) * c1 * m.bottomRightCorner(half, half);
      total += node.weight * descend(next);
    }
    return total;
  }

  const std::vector<SpinNode>& nodes_;
  int power_;
  double sum_ = 0.0;
};

inline void check_quadrature_spec(int n_spins, const QuadratureSpec& spec) {
  if (n_spins > kMaxQuadratureSpins)
    throw std::length_error("quadrature: grid integration capped at 4 spins");
  if (spec.nodes_theta < 3 || spec.nodes_phi < 5)
    throw std::invalid_argument(
        "quadrature: need >= 3 theta nodes and >= 5 phi nodes for exactness");
}

template <typename Input>
double grid_sum(const Input& input, const QuadratureSpec& spec, int power) {
  const auto nodes = spin_nodes(spec.nodes_theta, spec.nodes_phi);
  if constexpr (std::is_same_v<Input, PureState>)
    return PureGridSum(input, nodes, power).value();
  else
    return MixedGridSum(input, nodes, power).value();
}

// Runs the grid sum twice, the second time with doubled node counts, and
// insists on agreement: both rules are exact for this integrand, so any
// discrepancy flags a bug or an invalid input.
template <typename Input>
double verified_grid_sum(const Input& input, const QuadratureSpec& spec,
                         int power) {
  const double base = grid_sum(input, spec, power);
  const QuadratureSpec doubled{2 * spec.nodes_theta, 2 * spec.nodes_phi};
  const double check = grid_sum(input, doubled, power);
  if (std::abs(base - check) > kQuadratureDoublingTolerance)
    throw std::logic_error("quadrature: node doubling changed the result");
  return base;
}

inline std::uint64_t grid_node_count(int n_spins, const QuadratureSpec& spec) {
  std::uint64_t per_spin =
      static_cast<std::uint64_t>(spec.nodes_theta) * spec.nodes_phi;
  std::uint64_t total = 1;
  for (int i = 0; i < n_spins; ++i) total *= per_spin;
  return total;
}

// Monte Carlo mean of H^power over Haar-distributed phase points:
// cos(theta) uniform on [-1, 1], phi uniform on [0, 2pi).  Samples are
// split over fixed logical streams and merged in stream order, so the
// result is bit-identical for any worker count.
template <typename HusimiAtNodes>
MonteCarloEstimate mc_mean(int n_spins, const MonteCarloSpec& spec,
                           HusimiAtNodes&& husimi_value, int power) {
  if (spec.samples < 100)
    throw std::invalid_argument("monte carlo: need at least 100 samples");
  if (spec.streams < 1)
    throw std::invalid_argument("monte carlo: need at least one stream");

  const int streams = spec.streams;
  std::vector<double> sums(streams, 0.0), sq_sums(streams, 0.0);
  std::vector<std::uint64_t> counts(streams, 0);
  const std::uint64_t base = spec.samples / streams;
  const std::uint64_t extra = spec.samples % streams;

  auto run_stream = [&](int k) {
    Xoshiro256pp rng = Xoshiro256pp::stream(spec.seed, k);
    const std::uint64_t n_k = base + (static_cast<std::uint64_t>(k) < extra ? 1 : 0);
    std::vector<SpinNode> point(n_spins);
    double sum = 0.0, sq = 0.0;
    for (std::uint64_t s = 0; s < n_k; ++s) {
      for (int i = 0; i < n_spins; ++i) {
        const double u = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        point[i].weight = 1.0;
        point[i].c0 = std::sqrt(0.5 * (1.0 + u));
        point[i].c1 = std::sqrt(0.5 * (1.0 - u)) *
                      Complex{std::cos(phi), std::sin(phi)};
      }
      const double h = husimi_value(point);
      const double x = power == 1 ? h : h * h;
      sum += x;
      sq += x * x;
    }
    sums[k] = sum;
    sq_sums[k] = sq;
    counts[k] = n_k;
  };

  const int workers = std::min(streams, default_thread_count());
  if (workers <= 1) {
    for (int k = 0; k < streams; ++k) run_stream(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int k = next.fetch_add(1); k < streams; k = next.fetch_add(1))
          run_stream(k);
      });
    for (auto& t : pool) t.join();
  }

  double sum = 0.0, sq = 0.0;
  std::uint64_t n = 0;
  for (int k = 0; k < streams; ++k) {
    sum += sums[k];
    sq += sq_sums[k];
    n += counts[k];
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sq - static_cast<double>(n) * mean * mean) /
                        (static_cast<double>(n) - 1.0));
  return MonteCarloEstimate{mean, std::sqrt(var / static_cast<double>(n)), n};
}

// H(mu) for a pure state at a sampled point, by in-place contraction of
// one site at a time into `scratch` (size >= dim/2).
inline double husimi_at_point(const PureState& state,
                              std::span<const SpinNode> point,
                              std::vector<Complex>& scratch) {
  std::size_t m = state.dim();
  if (m == 1) return std::norm(state[0]);
  std::size_t half = m / 2;
  const Complex* src = state.amplitudes().data();
  for (int s = 0; s < state.n_spins(); ++s) {
    const Complex c1c = std::conj(point[s].c1);
    const double c0 = point[s].c0;
    for (std::size_t i = 0; i < half; ++i)
      scratch[i] = c0 * src[i] + c1c * src[i + half];
    src = scratch.data();
    half /= 2;
  }
  return std::norm(scratch[0]);
}

inline double husimi_at_point(const DensityOperator& rho,
                              std::span<const SpinNode> point,
                              std::vector<Complex>& mu) {
  // Build |mu> then take the quadratic form.
  mu[0] = Complex{1.0, 0.0};
  std::size_t m = 1;
  for (int s = rho.n_spins() - 1; s >= 0; --s) {
    // Prepend site s: it owns the most significant bit of the index.
    for (std::size_t i = 0; i < m; ++i) mu[m + i] = point[s].c1 * mu[i];
    for (std::size_t i = 0; i < m; ++i) mu[i] *= point[s].c0;
    m *= 2;
  }
  Eigen::Map<const Eigen::VectorXcd> v(mu.data(), static_cast<Eigen::Index>(m));
  const Complex h = v.dot(rho.matrix() * v);
  return h.real();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Projector route

inline SecondMomentReport second_moment_projector(const PureState& state) {
  const double p = symmetric_projection_norm_sq(DoubledState::from_pure(state));
  return {p, SecondMomentMethod::Projector, std::nullopt,
          std::uint64_t{1} << (2 * state.n_spins())};
}

inline SecondMomentReport second_moment_projector(const DensityOperator& rho) {
  const std::vector<PairProjector> pattern(rho.n_spins(),
                                           PairProjector::Symmetric);
  const double p = pattern_trace(rho, pattern);
  return {p, SecondMomentMethod::Projector, std::nullopt,
          std::uint64_t{1} << (2 * rho.n_spins())};
}

// ---------------------------------------------------------------------------
// Purity / multipartite-concurrence route (pure states)

inline SecondMomentReport second_moment_purity(const PureState& state) {
  const int n = state.n_spins();
  // A single spin in a pure state is itself a coherent state.
  if (n == 1) return {1.0, SecondMomentMethod::Purity, std::nullopt, 0};
  const double c = multipartite_concurrence(state);
  return {1.0 - 0.25 * c * c, SecondMomentMethod::Purity, std::nullopt,
          (std::uint64_t{1} << (n - 1)) - 1};
}

// ---------------------------------------------------------------------------
// Quadrature route

inline SecondMomentReport second_moment_quadrature(const PureState& state,
                                                   const QuadratureSpec& spec = {}) {
  detail::check_quadrature_spec(state.n_spins(), spec);
  const double scale = std::pow(3.0, state.n_spins());
  const double p = scale * detail::verified_grid_sum(state, spec, 2);
  return {p, SecondMomentMethod::Quadrature, std::nullopt,
          detail::grid_node_count(state.n_spins(), spec)};
}

inline SecondMomentReport second_moment_quadrature(const DensityOperator& rho,
                                                   const QuadratureSpec& spec = {}) {
  detail::check_quadrature_spec(rho.n_spins(), spec);
  const double scale = std::pow(3.0, rho.n_spins());
  const double p = scale * detail::verified_grid_sum(rho, spec, 2);
  return {p, SecondMomentMethod::Quadrature, std::nullopt,
          detail::grid_node_count(rho.n_spins(), spec)};
}

// ---------------------------------------------------------------------------
// Monte Carlo route

namespace detail {

// Workers get one scratch buffer per thread; the thread_local lives inside
// the lambda body so each worker grabs its own instance.
inline auto pure_husimi_eval(const PureState& state) {
  return [&state](std::span<const SpinNode> point) {
    thread_local std::vector<Complex> scratch;
    const std::size_t need = state.dim() / 2 + 1;
    if (scratch.size() < need) scratch.resize(need);
    return husimi_at_point(state, point, scratch);
  };
}

inline auto mixed_husimi_eval(const DensityOperator& rho) {
  return [&rho](std::span<const SpinNode> point) {
    thread_local std::vector<Complex> mu;
    const auto need = static_cast<std::size_t>(rho.matrix().rows());
    if (mu.size() < need) mu.resize(need);
    return husimi_at_point(rho, point, mu);
  };
}

}  // namespace detail

inline SecondMomentReport second_moment_monte_carlo(const PureState& state,
                                                    const MonteCarloSpec& spec) {
  const int n = state.n_spins();
  const double scale = std::pow(3.0, n);
  const auto est = detail::mc_mean(n, spec, detail::pure_husimi_eval(state), 2);
  return {scale * est.value, SecondMomentMethod::MonteCarlo,
          scale * est.std_error, est.samples};
}

inline SecondMomentReport second_moment_monte_carlo(const DensityOperator& rho,
                                                    const MonteCarloSpec& spec) {
  const int n = rho.n_spins();
  const double scale = std::pow(3.0, n);
  const auto est = detail::mc_mean(n, spec, detail::mixed_husimi_eval(rho), 2);
  return {scale * est.value, SecondMomentMethod::MonteCarlo,
          scale * est.std_error, est.samples};
}

// ---------------------------------------------------------------------------
// Normalization diagnostic: integral of H over phase space, which must be
// 2^{-N} for any trace-one input.

inline double husimi_mean(const PureState& state, const QuadratureSpec& spec = {}) {
  detail::check_quadrature_spec(state.n_spins(), spec);
  return detail::verified_grid_sum(state, spec, 1);
}

inline double husimi_mean(const DensityOperator& rho, const QuadratureSpec& spec = {}) {
  detail::check_quadrature_spec(rho.n_spins(), spec);
  return detail::verified_grid_sum(rho, spec, 1);
}

inline MonteCarloEstimate husimi_mean(const PureState& state,
                                      const MonteCarloSpec& spec) {
  return detail::mc_mean(state.n_spins(), spec, detail::pure_husimi_eval(state), 1);
}

inline MonteCarloEstimate husimi_mean(const DensityOperator& rho,
                                      const MonteCarloSpec& spec) {
  return detail::mc_mean(rho.n_spins(), spec, detail::mixed_husimi_eval(rho), 1);
}

}  // namespace spinphase
