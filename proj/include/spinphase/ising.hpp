#pragma once

// Ferromagnetic spin-1/2 Ising chain in a tilted magnetic field,
//   H = -J sum_i [ sigma^z_i sigma^z_{i+1}
//                  + g (sigma^z_i cos(Theta) + sigma^x_i sin(Theta)) ],
// with the bond sum wrapping around for periodic boundaries (at N = 2 the
// periodic sum counts the single physical bond twice, as written).  All
// terms are real in the computational basis, so H is real symmetric.
// Ground states come from dense diagonalization, and a (Theta, g) sweep
// records the phase-space second moment and multipartite concurrence of
// the ground state at every grid point.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "spinphase/concurrence.hpp"
#include "spinphase/second_moment.hpp"
#include "spinphase/state.hpp"

namespace spinphase {

enum class Boundary { Periodic, Open };

struct IsingParams {
  int n_spins = 8;
  double j = 1.0;
  double g = 0.0;
  double theta = 0.0;  // radians, [0, pi/2]
  Boundary boundary = Boundary::Periodic;
};

inline constexpr int kMaxIsingSpins = 12;
inline constexpr double kDegeneracyRelTolerance = 1e-10;
inline constexpr double kEigenResidualRelTolerance = 1e-9;

inline Eigen::MatrixXd build_hamiltonian(const IsingParams& params) {
  const int n = params.n_spins;
  if (n < 2) throw std::invalid_argument("build_hamiltonian: need at least two spins");
  if (n > kMaxIsingSpins)
    throw std::length_error("build_hamiltonian: dense storage capped at 12 spins");
  if (params.g < 0.0) throw std::domain_error("build_hamiltonian: g must be >= 0");
  if (!(params.theta >= 0.0 && params.theta <= 0.5 * std::numbers::pi + 1e-12))
    throw std::domain_error("build_hamiltonian: theta outside [0, pi/2]");

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double cos_t = std::cos(params.theta);
  const double sin_t = std::sin(params.theta);
  const int bonds = (params.boundary == Boundary::Periodic) ? n : n - 1;

  for (Eigen::Index b = 0; b < dim; ++b) {
    // sigma_z eigenvalue of site s in basis state b.
    auto z = [&](int s) {
      return (b >> site_bit(n, s)) & 1 ? -1.0 : 1.0;
    };
    double diag = 0.0;
    for (int s = 0; s < bonds; ++s) diag += z(s) * z((s + 1) % n);
    double field_z = 0.0;
    for (int s = 0; s < n; ++s) field_z += z(s);
    h(b, b) = -params.j * (diag + params.g * cos_t * field_z);
    // sigma_x flips one site.
    for (int s = 0; s < n; ++s) {
      const Eigen::Index flipped = b ^ (Eigen::Index{1} << site_bit(n, s));
      h(flipped, b) += -params.j * params.g * sin_t;
    }
  }
  return h;
}

struct GroundStateResult {
  double energy = 0.0;
  PureState state;
  double gap = 0.0;
  bool degenerate = false;
};

// Lowest eigenpair of a real symmetric Hamiltonian on a spin register.
//
// Within a numerically degenerate lowest level the returned column is the
// one whose largest-magnitude amplitude sits at the smallest basis index;
// every returned state is phase-fixed so that amplitude is real positive.
// This keeps repeated sweeps byte-for-byte reproducible.
inline GroundStateResult ground_state(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() < 2)
    throw std::invalid_argument("ground_state: square matrix required");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * h.cwiseAbs().maxCoeff())
    throw std::invalid_argument("ground_state: matrix is not symmetric");
  int n = 0;
  while ((Eigen::Index{1} << n) < h.rows()) ++n;
  if ((Eigen::Index{1} << n) != h.rows())
    throw std::invalid_argument("ground_state: dimension is not a power of two");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("ground_state: eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double norm_h = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const double threshold = kDegeneracyRelTolerance * std::max(norm_h, 1.0);

  // Deterministic representative among near-degenerate lowest columns.
  int pick = 0;
  Eigen::Index pick_peak = h.rows();
  for (int c = 0; c < ev.size() && ev(c) - ev(0) <= threshold; ++c) {
    Eigen::Index peak = 0;
    es.eigenvectors().col(c).cwiseAbs().maxCoeff(&peak);
    if (peak < pick_peak) {
      pick = c;
      pick_peak = peak;
    }
  }
  Eigen::VectorXd v = es.eigenvectors().col(pick);
  if (v(pick_peak) < 0.0) v = -v;

  const double residual = (h * v - ev(pick) * v).norm();
  if (residual > kEigenResidualRelTolerance * std::max(norm_h, 1.0))
    throw std::runtime_error("ground_state: eigenpair residual too large");

  std::vector<Complex> amps(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[i] = Complex{v(i), 0.0};
  const double gap = ev.size() > 1 ? ev(1) - ev(0) : 0.0;
  return GroundStateResult{ev(pick), PureState(n, std::move(amps)), gap,
                           gap <= threshold};
}

struct SweepConfig {
  int n_spins = 8;
  double j = 1.0;
  Boundary boundary = Boundary::Periodic;
  std::vector<double> theta_list;  // radians
  std::vector<double> g_grid;      // strictly increasing
  int spot_check_every = 10;       // 0 disables the projector cross-check
  int threads = 0;                 // 0 = default_thread_count()
};

struct SweepRecord {
  double theta = 0.0;
  double g = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double p = 0.0;
  double c_n = 0.0;
  bool degenerate = false;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // theta outer, g inner
  double spot_check_max_dev = 0.0;
  int spot_checked = 0;
};

// The field angles used for the reference transverse-field scan, as
// multiples of pi.
inline std::vector<double> default_theta_over_pi_list() {
  return {0.0, 0.42, 0.46, 0.48, 0.49, 0.495, 0.4975, 0.4995, 0.5};
}

inline std::vector<double> default_g_grid() {
  std::vector<double> g(60);
  for (int i = 0; i < 60; ++i) g[i] = 0.05 * (i + 1);
  return g;
}

inline SweepResult sweep(const SweepConfig& config) {
  if (config.theta_list.empty() || config.g_grid.empty())
    throw std::invalid_argument("sweep: empty grid");
  for (std::size_t i = 1; i < config.g_grid.size(); ++i)
    if (config.g_grid[i] <= config.g_grid[i - 1])
      throw std::invalid_argument("sweep: g grid must be strictly increasing");

  const std::size_t n_jobs = config.theta_list.size() * config.g_grid.size();
  SweepResult result;
  result.records.resize(n_jobs);
  std::atomic<std::size_t> next{0};
  std::mutex check_mutex;
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto run_job = [&](std::size_t idx) {
    const std::size_t t = idx / config.g_grid.size();
    const std::size_t k = idx % config.g_grid.size();
    IsingParams params{config.n_spins, config.j, config.g_grid[k],
                       config.theta_list[t], config.boundary};
    const GroundStateResult gs = ground_state(build_hamiltonian(params));
    SweepRecord rec;
    rec.theta = params.theta;
    rec.g = params.g;
    rec.energy = gs.energy;
    rec.gap = gs.gap;
    rec.degenerate = gs.degenerate;
    rec.p = second_moment_purity(gs.state).value;
    rec.c_n = multipartite_concurrence(gs.state);
    if (config.spot_check_every > 0 &&
        idx % static_cast<std::size_t>(config.spot_check_every) == 0) {
      const double p_proj = second_moment_projector(gs.state).value;
      const double dev = std::abs(p_proj - rec.p);
      std::lock_guard<std::mutex> lock(check_mutex);
      result.spot_check_max_dev = std::max(result.spot_check_max_dev, dev);
      ++result.spot_checked;
      if (dev > 1e-10)
        throw std::runtime_error("sweep: purity and projector routes disagree");
    }
    result.records[idx] = rec;
  };

  const int threads = config.threads > 0 ? config.threads : default_thread_count();
  const int workers = static_cast<int>(
      std::min<std::size_t>(n_jobs, static_cast<std::size_t>(threads)));
  auto worker = [&] {
    for (std::size_t idx = next.fetch_add(1); idx < n_jobs;
         idx = next.fetch_add(1)) {
      try {
        run_job(idx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace spinphase
