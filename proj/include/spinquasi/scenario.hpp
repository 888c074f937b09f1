#pragma once

// Nucleus with an electric quadrupole moment in its principal-axes frame, plus
// a magnetic field along the PAF z axis (hbar = 1):
//
//   H = -omega_L J_z + (omega_Q / 6) (3 J_z^2 - j(j+1) + eta (J_x^2 - J_y^2))
//
// States are Gibbs states exp(-beta H)/Z, or the ground state on request.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinquasi/squeezing.hpp"

namespace spinquasi {

struct FieldParams {
  double omega_l = 0.0;
  double omega_q = 0.0;
  double eta = 0.0;
  double beta = 1.0;

  /// Throws InvalidArguments unless beta > 0 and 0 <= eta <= 1.
  void validate() const;
};

enum class StateFamily { thermal, ground };

CMatrix hamiltonian(Spin spin, const FieldParams& fp);

/// exp(-beta H) / Tr exp(-beta H).
DensityMatrix thermal_state(const CMatrix& h, Spin spin, double beta);

/// Projector on the lowest eigenvector of H.
DensityMatrix ground_state(const CMatrix& h, Spin spin);

DensityMatrix scenario_state(Spin spin, const FieldParams& fp,
                             StateFamily family = StateFamily::thermal);

/// Inclusive linear range; steps == 0 is empty, steps == 1 is {start}.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

struct ScanGrid {
  Spin spin{2};
  Range omega_l, omega_q, eta, beta;
  StateFamily family = StateFamily::thermal;

  /// Cartesian product, omega_l slowest and beta fastest.
  std::vector<FieldParams> points() const;
};

struct ScanPoint {
  std::size_t index = 0;
  FieldParams params;
  std::optional<SqueezeReport> report;  // empty when skipped
  std::string skipped_reason;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::vector<std::size_t> squeezed;    // indices whose squeezing was re-verified
  std::vector<std::size_t> unverified;  // flagged by the report but not by the recheck
  std::size_t skipped = 0;
};

/// Squeezing report per point. Per-point failures are recorded, never thrown.
ScanResult scan(Spin spin, std::span<const FieldParams> points,
                StateFamily family = StateFamily::thermal);
ScanResult scan(const ScanGrid& grid);

}  // namespace spinquasi
