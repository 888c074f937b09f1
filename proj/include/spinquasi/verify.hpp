#pragma once

// Self-check suites behind `spinquasi verify`. Each helper returns the worst
// residual it saw so the numbers can be reported as well as thresholded.

#include <cstdint>
#include <ostream>
#include <random>

#include "spinquasi/distribution.hpp"

namespace spinquasi {

/// max |Tr(tau^k_q tau^{k'}_{q'}^dagger) - (2j+1) delta delta| over the full basis.
double orthogonality_residual(Spin spin);

/// max entry of |tau_weyl - tau_cg| over k, q.
double weyl_cg_residual(Spin spin);

/// max entry of |Sigma_i Sigma_j - delta_ij J_z^2 - i eps_ijk Sigma_k|.
double sigma_algebra_residual();

struct MomentRank {
  int rank = 0;          // singular values above ratio_threshold * sigma_1
  double ratio_8 = 0.0;  // sigma_8 / sigma_1
  double ratio_9 = 0.0;  // sigma_9 / sigma_1
};

/// Rank of the column-centered moment matrix (states x 27) of random spin-1 states.
MomentRank moment_rank(Rule rule, int states, std::mt19937_64& rng,
                       double ratio_threshold = 1e-8);

/// max |mu_in - mu_reconstructed| over the table, and |sum P - 1|.
struct RoundTrip {
  double moment_residual = 0.0;
  double normalization_residual = 0.0;
};
RoundTrip round_trip(const DensityMatrix& rho, Rule rule);

/// max |P_ww(m_i) - P_mh(m_i)| over the three univariate marginals.
double marginal_disagreement(const DensityMatrix& rho);

/// Runs every suite, writes one PASS/FAIL line per check plus the closed-form
/// deviation tables, and returns the number of hard failures.
int run_verification(std::uint64_t seed, std::ostream& out);

}  // namespace spinquasi
