#pragma once

// Spin squeezing in the canonical frame: z along the mean spin direction and
// the x-y covariance rotated away, which removes the frame ambiguity of the
// variance criterion (Delta J_x)^2 < |<J_z>|/2.

#include <Eigen/Dense>

#include <vector>

#include "spinquasi/states.hpp"

namespace spinquasi {

struct FrameRotation {
  Eigen::Vector3d axis;  // unit
  double angle;          // radians, active rotation
};

struct CanonicalFrame {
  DensityMatrix rotated_state;
  std::vector<FrameRotation> rotations;  // applied in order; empty when already canonical
  CMatrix unitary;                       // rotated_state = unitary rho unitary^dagger
};

/// Step 1 aligns the mean spin with +z; step 2 rotates about z so that
/// Cov(J_x, J_y) = 0 with (Delta J_x)^2 <= (Delta J_y)^2.
/// Throws UndefinedMeanSpinDirection when |P| < 1e-8.
CanonicalFrame canonical_frame(const DensityMatrix& rho);

struct SqueezeReport {
  double var_x = 0.0;
  double var_y = 0.0;
  double covariance_residual = 0.0;  // Cov(J_x, J_y) left in the canonical frame
  double mean_z = 0.0;
  double bound = 0.0;                // |<J_z>| / 2
  bool squeezed_x = false;
  bool squeezed_y = false;
  // Tensor-parameter form of the criterion: squeezed when lhs < rhs.
  double tensor_lhs = 0.0;
  double tensor_rhs = 0.0;
  bool tensor_squeezed = false;
  // Uncertainty relations checked in the canonical frame.
  bool schrodinger_ok = false;
  bool robertson_ok = false;

  bool squeezed() const noexcept { return squeezed_x || squeezed_y; }
};

SqueezeReport squeezing_report(const DensityMatrix& rho);

/// Same, given an already computed frame.
SqueezeReport squeezing_report(const CanonicalFrame& frame);

/// min over unit n of ||[rho, n.J]||_F. Zero exactly when some rotation of the
/// J_z basis diagonalises rho.
double orientation_residual(const DensityMatrix& rho);

/// orientation_residual(rho) <= tolerance.
bool is_oriented(const DensityMatrix& rho, double tolerance = 1e-9);

}  // namespace spinquasi
