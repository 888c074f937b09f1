#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "spinquasi/angmom.hpp"
#include "spinquasi/kernel.hpp"

namespace spinquasi {

/// Strict rejects any eigenvalue below -1e-10. Permissive accepts eigenvalues
/// down to -1e-6 and raises positivity_warning() instead.
enum class Positivity { strict, permissive };

/// Hermitian, unit-trace, positive semidefinite (2j+1)x(2j+1) matrix.
class DensityMatrix {
 public:
  DensityMatrix(Spin spin, CMatrix rho, Positivity mode = Positivity::strict);

  Spin spin() const noexcept { return spin_; }
  const CMatrix& matrix() const noexcept { return rho_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  bool positivity_warning() const noexcept { return positivity_warning_; }

  /// Tr(rho op)
  Complex expectation(const CMatrix& op) const { return trace_product(rho_, op); }

 private:
  Spin spin_;
  CMatrix rho_;
  double min_eigenvalue_ = 0.0;
  bool positivity_warning_ = false;
};

DensityMatrix density_from_matrix(const CMatrix& raw, Spin spin,
                                  Positivity mode = Positivity::strict);

/// U rho U^dagger, revalidated.
DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& unitary,
                        Positivity mode = Positivity::permissive);

/// Spherical tensor parameters t^k_q for k = 0..2j, |q| <= k, with t^0_0 = 1.
class TensorParams {
 public:
  explicit TensorParams(Spin spin);

  Spin spin() const noexcept { return spin_; }
  Complex operator()(int k, int q) const;

  /// Sets one component. t^0_0 may only be set to 1.
  void set(int k, int q, Complex value);
  /// Sets t^k_q and its partner t^k_{-q} = (-1)^q conj(value).
  void set_with_partner(int k, int q, Complex value);

  /// max |conj(t^k_q) - (-1)^q t^k_{-q}|
  double hermiticity_residual() const;

  /// Real degrees of freedom left after the conjugation constraint: n^2 - 1.
  int independent_real_parameters() const;

  const std::vector<Complex>& values() const noexcept { return values_; }

 private:
  void check_rank(int k, int q) const;

  Spin spin_;
  std::vector<Complex> values_;
};

/// t^k_q = Tr(rho tau^k_q)
TensorParams tensor_params(const DensityMatrix& rho);

/// rho = 1/(2j+1) sum_kq t^k_q tau^k_q^dagger
DensityMatrix density_from_tensor_params(const TensorParams& tp,
                                         Positivity mode = Positivity::strict);

/// Mean spin vector Tr(rho J) / Tr(rho).
Eigen::Vector3d polarization(const DensityMatrix& rho);

struct CartesianStats {
  Eigen::Vector3d means;
  Eigen::Matrix3d second_moments;  // (1/2) <J_i J_k + J_k J_i>
  Eigen::Matrix3d covariance;
};

CartesianStats cartesian_stats(const DensityMatrix& rho);

/// Ginibre sample A A^dagger / Tr(A A^dagger) with A complex Gaussian.
DensityMatrix random_density(Spin spin, std::mt19937_64& rng);

/// Uniformly random axis and angle in [0, pi].
CMatrix random_rotation(Spin spin, std::mt19937_64& rng);

/// Random populations on the J_z basis, then a random rotation.
DensityMatrix random_oriented_density(Spin spin, std::mt19937_64& rng);

}  // namespace spinquasi
