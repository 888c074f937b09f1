#include "spinquasi/squeezing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace spinquasi {

namespace {

constexpr double kParallel = 1e-12;
constexpr double kFrameTolerance = 1e-10;
constexpr double kUncertaintySlack = 1e-9;
constexpr double kTensorVarianceAgreement = 1e-8;

// Variance of J_x after the state is rotated by phi about z.
double rotated_var_x(const Eigen::Matrix3d& cov, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return c * c * cov(0, 0) - 2.0 * c * s * cov(0, 1) + s * s * cov(1, 1);
}

}  // namespace

CanonicalFrame canonical_frame(const DensityMatrix& rho) {
  const Spin spin = rho.spin();
  const Eigen::Vector3d p = polarization(rho);
  const double norm = p.norm();
  if (norm < tol::mean_spin)
  {
    std::ostringstream msg;
    msg << "|P| = " << norm << " is below " << tol::mean_spin;
    throw Error(ErrorKind::UndefinedMeanSpinDirection, msg.str());
  }

  std::vector<FrameRotation> rotations;
  const int n = spin.dim();
  CMatrix unitary = CMatrix::Identity(n, n);

  // Step 1: mean spin onto +z.
  const Eigen::Vector3d cross = p.cross(Eigen::Vector3d::UnitZ());
  if (cross.norm() <= kParallel * norm) {
    if (p.z() < 0.0) rotations.push_back({Eigen::Vector3d::UnitX(), std::numbers::pi});
  } else {
    const double angle = std::acos(std::clamp(p.z() / norm, -1.0, 1.0));
    rotations.push_back({cross.normalized(), angle});
  }
  DensityMatrix current = rho;
  for (const auto& r : rotations) {
    const CMatrix u = rotation_operator(spin, r.axis, r.angle);
    current = conjugate(current, u);
    unitary = u * unitary;
  }

  // Step 2: rotate about z to zero Cov(J_x, J_y); of the two solutions pick
  // the one with the smaller J_x variance.
  const CartesianStats stats = cartesian_stats(current);
  const Eigen::Matrix3d& cov = stats.covariance;
  const double base = -0.5 * std::atan2(2.0 * cov(0, 1), cov(0, 0) - cov(1, 1));
  double phi = base;
  const double alt = base + 0.5 * std::numbers::pi;
  if (rotated_var_x(cov, alt) < rotated_var_x(cov, base)) phi = alt;
  phi = std::fmod(phi, std::numbers::pi);
  if (phi < 0.0) phi += std::numbers::pi;
  if (std::abs(phi) > 1e-15 && std::abs(phi - std::numbers::pi) > 1e-15) {
    const CMatrix u = rotation_operator(spin, Eigen::Vector3d::UnitZ(), phi);
    current = conjugate(current, u);
    unitary = u * unitary;
    rotations.push_back({Eigen::Vector3d::UnitZ(), phi});
  }

  const CartesianStats after = cartesian_stats(current);
  if (std::abs(after.means.x()) > kFrameTolerance || std::abs(after.means.y()) > kFrameTolerance ||
      after.means.z() < 0.0 || std::abs(after.covariance(0, 1)) > kFrameTolerance)
    throw Error(ErrorKind::InternalInvariant, "canonical frame conditions not met");

  return CanonicalFrame{std::move(current), std::move(rotations), std::move(unitary)};
}

SqueezeReport squeezing_report(const CanonicalFrame& frame) {
  const DensityMatrix& rho = frame.rotated_state;
  const Spin spin = rho.spin();
  const double j = spin.j();
  const CartesianStats s = cartesian_stats(rho);

  SqueezeReport r;
  r.var_x = s.covariance(0, 0);
  r.var_y = s.covariance(1, 1);
  r.covariance_residual = s.covariance(0, 1);
  r.mean_z = s.means.z();
  r.bound = std::abs(r.mean_z) / 2.0;
  r.squeezed_x = r.var_x < r.bound - tol::squeeze_margin;
  r.squeezed_y = r.var_y < r.bound - tol::squeeze_margin;

  const TensorParams tp = tensor_params(rho);
  const double t10 = tp(1, 0).real();
  // Spin 1/2 has no rank-2 parameters; their prefactor (2j - 1) vanishes anyway.
  const bool rank2 = spin.two_j() >= 2;
  const double t20 = rank2 ? tp(2, 0).real() : 0.0;
  const double t22 = rank2 ? tp(2, 2).real() : 0.0;
  r.tensor_lhs = 1.0 + std::sqrt(3.0 * (2 * j + 3) * (2 * j - 1) / (40.0 * j * (j + 1))) *
                           (2.0 * t22 - std::sqrt(2.0 / 3.0) * t20);
  r.tensor_rhs = 0.5 * std::sqrt(3.0 / (j * (j + 1))) * std::abs(t10);
  r.tensor_squeezed = r.tensor_lhs < r.tensor_rhs;

  const SpinOps ops = spin_operators(spin);
  const CMatrix commutator = ops.jx * ops.jy - ops.jy * ops.jx;
  const double rhs = std::norm(rho.expectation(commutator)) / 4.0;
  r.schrodinger_ok = r.var_x * r.var_y - r.covariance_residual * r.covariance_residual >=
                     rhs - kUncertaintySlack;
  r.robertson_ok = r.var_x * r.var_y >= r.bound * r.bound - kUncertaintySlack;

  if (spin.two_j() == 2) {
    const double scaled = 3.0 / (j * (j + 1)) * r.var_x;
    if (std::abs(r.tensor_lhs - scaled) > kTensorVarianceAgreement)
      throw Error(ErrorKind::InternalInvariant, "tensor criterion disagrees with variance for j=1");
  }
  return r;
}

SqueezeReport squeezing_report(const DensityMatrix& rho) {
  return squeezing_report(canonical_frame(rho));
}

double orientation_residual(const DensityMatrix& rho) {
  const SpinOps ops = spin_operators(rho.spin());
  const CMatrix& m = rho.matrix();
  std::array<CMatrix, 3> k;
  for (int i = 0; i < 3; ++i) k[i] = m * ops[i] - ops[i] * m;
  CMatrix gram(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) gram(a, b) = (k[a].adjoint() * k[b]).trace().real();
  gram = (gram + gram.adjoint()).eval() / 2.0;
  // The eigenvalue itself carries rounding of order eps ||gram||; re-evaluate
  // the commutator along its eigenvector instead of taking a square root.
  const auto es = hermitian_eigensystem(gram);
  Eigen::Vector3cd v = es.vectors.col(0);
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::conj(v(big)) / std::abs(v(big));
  const Eigen::Vector3d n = v.real().normalized();
  const CMatrix along = n.x() * k[0] + n.y() * k[1] + n.z() * k[2];
  return along.norm();
}

bool is_oriented(const DensityMatrix& rho, double tolerance) {
  return orientation_residual(rho) <= tolerance;
}

}  // namespace spinquasi
