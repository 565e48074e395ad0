#pragma once

// Cross-method identity suite on random states.  Each check compares two
// independently computed quantities that must agree exactly up to rounding;
// the suite reports the worst deviation seen per identity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "spinphase/concurrence.hpp"
#include "spinphase/density.hpp"
#include "spinphase/doubled.hpp"
#include "spinphase/rng.hpp"
#include "spinphase/second_moment.hpp"
#include "spinphase/states.hpp"

namespace spinphase {

struct IdentityCheck {
  std::string name;
  std::uint64_t trials = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

inline std::vector<IdentityCheck> run_identity_suite(int n_max, int trials,
                                                     std::uint64_t seed) {
  if (n_max < 2 || n_max > 10)
    throw std::invalid_argument("identity suite: n_max must be in [2, 10]");
  if (trials < 1) throw std::invalid_argument("identity suite: trials must be >= 1");

  Xoshiro256pp rng(seed);
  std::vector<IdentityCheck> checks;

  auto record = [&](std::string name, double tol, auto&& body) {
    IdentityCheck c;
    c.name = std::move(name);
    c.tolerance = tol;
    body(c);
    c.pass = c.max_deviation <= c.tolerance;
    checks.push_back(std::move(c));
  };

  auto dev = [](IdentityCheck& c, double a, double b) {
    c.max_deviation = std::max(c.max_deviation, std::abs(a - b));
    ++c.trials;
  };

  // P = 1 - C^2/4 for two spins.
  record("two_spin_concurrence_relation", 1e-10, [&](IdentityCheck& c) {
    for (int t = 0; t < trials; ++t) {
      const PureState psi = random_pure_state(2, rng);
      const double p = second_moment_projector(psi).value;
      const double conc = concurrence_two_spin(psi);
      dev(c, p, 1.0 - 0.25 * conc * conc);
    }
  });

  // Three spins: pairwise concurrences plus the 3-tangle reproduce P.
  record("three_spin_pairwise_tangle_relation", 1e-9, [&](IdentityCheck& c) {
    for (int t = 0; t < trials; ++t) {
      const PureState psi = random_pure_state(3, rng);
      const double p = second_moment_projector(psi).value;
      double pair_sq = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const double cij = concurrence_two_spin_pair(psi, i, j);
          pair_sq += cij * cij;
        }
      dev(c, p, 1.0 - 0.25 * pair_sq - 0.375 * three_tangle(psi));
    }
  });

  // Three spins: one-vs-rest concurrences reproduce P.
  record("three_spin_one_vs_rest_relation", 1e-9, [&](IdentityCheck& c) {
    for (int t = 0; t < trials; ++t) {
      const PureState psi = random_pure_state(3, rng);
      const double p = second_moment_projector(psi).value;
      double sum = 0.0;
      for (int s = 0; s < 3; ++s) sum += one_vs_rest_concurrence_sq(psi, s);
      dev(c, p, 1.0 - 0.125 * sum);
    }
  });

  // Tr((rho x rho) (P_s - P_a)^{xN}) equals Tr(rho^2), random mixed states.
  record("swap_projector_purity_trace", 1e-10, [&](IdentityCheck& c) {
    for (int n = 1; n <= std::min(n_max, 4); ++n) {
      for (int t = 0; t < trials; ++t) {
        const int rank = 1 + static_cast<int>(rng.below(std::uint64_t{1} << n));
        const DensityOperator rho = random_density_operator(n, rank, rng);
        dev(c, trace_ps_minus_pa(rho), purity(rho));
      }
    }
  });

  // P = 1 - c_N^2/4 against the projector route.
  record("multipartite_concurrence_relation", 1e-10, [&](IdentityCheck& c) {
    for (int n = 2; n <= n_max; ++n)
      for (int t = 0; t < trials; ++t) {
        const PureState psi = random_pure_state(n, rng);
        dev(c, second_moment_projector(psi).value,
            second_moment_purity(psi).value);
      }
  });

  // c_N^2 = 2^{2-N} * (squared concurrence-vector length).
  record("concurrence_length_scaling", 1e-10, [&](IdentityCheck& c) {
    for (int n = 2; n <= n_max; ++n)
      for (int t = 0; t < trials; ++t) {
        const PureState psi = random_pure_state(n, rng);
        const double cn = multipartite_concurrence(psi);
        dev(c, cn * cn,
            std::exp2(2.0 - n) * concurrence_vector_length_sq(psi));
      }
  });

  // P = 1 - (squared concurrence-vector length) / 2^N.
  record("projector_vs_concurrence_length", 1e-10, [&](IdentityCheck& c) {
    for (int n = 2; n <= n_max; ++n)
      for (int t = 0; t < trials; ++t) {
        const PureState psi = random_pure_state(n, rng);
        dev(c, second_moment_projector(psi).value,
            1.0 - concurrence_vector_length_sq(psi) / std::exp2(n));
      }
  });

  return checks;
}

}  // namespace spinphase
