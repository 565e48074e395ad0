#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "spinphase/ising.hpp"
#include "spinphase/second_moment.hpp"
#include "spinphase/states.hpp"

using namespace spinphase;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("two-spin hamiltonian diagonals by hand", "[ising]") {
  const Eigen::MatrixXd h0 = build_hamiltonian({2, 1.0, 0.0, 0.0, Boundary::Periodic});
  CHECK_THAT(h0(0, 0), WithinAbs(-2.0, 1e-14));
  CHECK_THAT(h0(1, 1), WithinAbs(2.0, 1e-14));
  CHECK_THAT(h0(2, 2), WithinAbs(2.0, 1e-14));
  CHECK_THAT(h0(3, 3), WithinAbs(-2.0, 1e-14));
  CHECK_THAT(h0.cwiseAbs().sum(), WithinAbs(8.0, 1e-14));  // diagonal only

  const Eigen::MatrixXd h1 = build_hamiltonian({2, 1.0, 1.0, 0.0, Boundary::Periodic});
  CHECK_THAT(h1(0, 0), WithinAbs(-4.0, 1e-14));
  CHECK_THAT(h1(1, 1), WithinAbs(2.0, 1e-14));
  CHECK_THAT(h1(2, 2), WithinAbs(2.0, 1e-14));
  CHECK_THAT(h1(3, 3), WithinAbs(0.0, 1e-14));
}

TEST_CASE("transverse field leaves no diagonal field term", "[ising]") {
  const Eigen::MatrixXd bonds_only =
      build_hamiltonian({3, 1.0, 0.0, 0.0, Boundary::Periodic});
  const Eigen::MatrixXd transverse =
      build_hamiltonian({3, 1.0, 0.7, 0.5 * kPi, Boundary::Periodic});
  CHECK_THAT((transverse.diagonal() - bonds_only.diagonal()).cwiseAbs().maxCoeff(),
             WithinAbs(0.0, 1e-13));
  CHECK_THAT((transverse - transverse.transpose()).cwiseAbs().maxCoeff(),
             WithinAbs(0.0, 1e-14));
}

TEST_CASE("open chains have one bond fewer", "[ising]") {
  const Eigen::MatrixXd open = build_hamiltonian({3, 1.0, 0.0, 0.0, Boundary::Open});
  // |000>: two bonds, each -1 * 1 * 1.
  CHECK_THAT(open(0, 0), WithinAbs(-2.0, 1e-14));
  const Eigen::MatrixXd periodic =
      build_hamiltonian({3, 1.0, 0.0, 0.0, Boundary::Periodic});
  CHECK_THAT(periodic(0, 0), WithinAbs(-3.0, 1e-14));
}

TEST_CASE("hamiltonian construction validates parameters", "[ising]") {
  CHECK_THROWS_AS(build_hamiltonian({1, 1.0, 0.0, 0.0, Boundary::Periodic}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_hamiltonian({13, 1.0, 0.0, 0.0, Boundary::Periodic}),
                  std::length_error);
  CHECK_THROWS_AS(build_hamiltonian({4, 1.0, 0.5, -0.1, Boundary::Periodic}),
                  std::domain_error);
  CHECK_THROWS_AS(build_hamiltonian({4, 1.0, 0.5, 2.0, Boundary::Periodic}),
                  std::domain_error);
}

TEST_CASE("longitudinal field pins the fully polarized ground state", "[ising]") {
  const auto gs = ground_state(build_hamiltonian({8, 1.0, 0.5, 0.0, Boundary::Periodic}));
  CHECK_FALSE(gs.degenerate);
  CHECK_THAT(std::abs(gs.state[0]), WithinAbs(1.0, 1e-12));
  CHECK_THAT(second_moment_purity(gs.state).value, WithinAbs(1.0, 1e-12));
  CHECK_THAT(gs.energy, WithinAbs(-12.0, 1e-10));  // -J(N + gN)
}

TEST_CASE("zero field leaves the two polarized states degenerate", "[ising]") {
  const auto gs = ground_state(build_hamiltonian({2, 1.0, 0.0, 0.0, Boundary::Periodic}));
  CHECK(gs.degenerate);
  CHECK_THAT(gs.gap, WithinAbs(0.0, 1e-12));
  CHECK_THAT(gs.energy, WithinAbs(-2.0, 1e-12));
}

TEST_CASE("strong transverse field polarizes along x", "[ising]") {
  const auto gs = ground_state(build_hamiltonian({8, 1.0, 10.0, 0.5 * kPi, Boundary::Periodic}));
  CHECK(second_moment_purity(gs.state).value >= 0.99);
}

TEST_CASE("ground states satisfy the eigenpair residual bound", "[ising]") {
  const Eigen::MatrixXd h = build_hamiltonian({6, 1.0, 0.8, 0.3 * kPi, Boundary::Periodic});
  const auto gs = ground_state(h);
  Eigen::VectorXd v(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    v(i) = gs.state[static_cast<std::size_t>(i)].real();
  const double norm_h = h.cwiseAbs().rowwise().sum().maxCoeff();
  CHECK((h * v - gs.energy * v).norm() <= 1e-9 * norm_h);
  CHECK(gs.gap >= 0.0);
}

TEST_CASE("phase convention keeps the dominant amplitude real positive", "[ising]") {
  const auto gs = ground_state(build_hamiltonian({4, 1.0, 1.3, 0.45 * kPi, Boundary::Periodic}));
  double biggest = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < gs.state.dim(); ++i)
    if (std::abs(gs.state[i]) > biggest) {
      biggest = std::abs(gs.state[i]);
      arg = i;
    }
  CHECK(gs.state[arg].real() > 0.0);
  CHECK_THAT(gs.state[arg].imag(), WithinAbs(0.0, 1e-14));
}

TEST_CASE("transverse ground states have definite spin-flip parity", "[ising]") {
  for (const double g : {0.6, 1.4}) {
    const auto gs = ground_state(build_hamiltonian({6, 1.0, g, 0.5 * kPi, Boundary::Periodic}));
    if (gs.degenerate) continue;
    // <state| X^{(x)N} |state>: flipping all spins maps index b to ~b.
    Complex parity{0.0, 0.0};
    const std::size_t all = gs.state.dim() - 1;
    for (std::size_t b = 0; b < gs.state.dim(); ++b)
      parity += std::conj(gs.state[b ^ all]) * gs.state[b];
    CHECK_THAT(std::abs(std::abs(parity) - 1.0), WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("ground-state second moment is translation invariant", "[ising]") {
  const auto gs = ground_state(build_hamiltonian({6, 1.0, 0.7, 0.4 * kPi, Boundary::Periodic}));
  const double p = second_moment_purity(gs.state).value;
  std::vector<int> shift(6);
  for (int s = 0; s < 6; ++s) shift[s] = (s + 1) % 6;
  const PureState rotated = permute_spins(gs.state, shift);
  CHECK_THAT(second_moment_purity(rotated).value - p, WithinAbs(0.0, 1e-10));
}

TEST_CASE("sweep produces records in grid order with sane values", "[ising]") {
  SweepConfig config;
  config.n_spins = 4;
  config.theta_list = {0.0, 0.5 * kPi};
  config.g_grid = {0.5, 1.0, 2.0};
  config.spot_check_every = 1;
  const SweepResult result = sweep(config);
  REQUIRE(result.records.size() == 6);
  CHECK(result.spot_checked == 6);
  CHECK(result.spot_check_max_dev <= 1e-10);

  for (int k = 0; k < 3; ++k) {
    CHECK_THAT(result.records[k].theta, WithinAbs(0.0, 1e-15));
    CHECK_THAT(result.records[k].g, WithinAbs(config.g_grid[k], 1e-15));
    CHECK_THAT(result.records[k].p, WithinAbs(1.0, 1e-10));
  }
  for (int k = 3; k < 6; ++k) {
    CHECK(result.records[k].p < 1.0);
    CHECK(result.records[k].c_n >= 0.0);
    CHECK(result.records[k].gap >= 0.0);
  }
}

TEST_CASE("sweep validates its configuration", "[ising]") {
  SweepConfig config;
  config.theta_list = {};
  config.g_grid = {0.5};
  CHECK_THROWS_AS(sweep(config), std::invalid_argument);
  config.theta_list = {0.0};
  config.g_grid = {0.5, 0.5};
  CHECK_THROWS_AS(sweep(config), std::invalid_argument);
}

TEST_CASE("default grids match the documented sweep", "[ising]") {
  const auto thetas = default_theta_over_pi_list();
  REQUIRE(thetas.size() == 9);
  CHECK_THAT(thetas.front(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(thetas.back(), WithinAbs(0.5, 1e-15));
  const auto g = default_g_grid();
  REQUIRE(g.size() == 60);
  CHECK_THAT(g.front(), WithinAbs(0.05, 1e-15));
  CHECK_THAT(g.back(), WithinAbs(3.0, 1e-12));
}
