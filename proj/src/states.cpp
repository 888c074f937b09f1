#include "spinquasi/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace spinquasi {

DensityMatrix::DensityMatrix(Spin spin, CMatrix rho, Positivity mode)
    : spin_(spin), rho_(std::move(rho)) {
  require_valid_matrix(rho_);
  if (rho_.rows() != spin.dim())
    throw Error(ErrorKind::InvalidArguments,
                "matrix dimension " + std::to_string(rho_.rows()) + " != 2j+1 = " +
                    std::to_string(spin.dim()));
  require_hermitian(rho_);
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > tol::trace)
    throw Error(ErrorKind::TraceNotOne, "trace = " + std::to_string(tr.real()));

  min_eigenvalue_ = hermitian_eigensystem(rho_).values(0);
  if (min_eigenvalue_ < -tol::positivity) {
    if (mode == Positivity::permissive && min_eigenvalue_ >= -tol::positivity_permissive)
      positivity_warning_ = true;
    else
      throw Error(ErrorKind::NotPositive,
                  "minimum eigenvalue " + std::to_string(min_eigenvalue_));
  }
}

DensityMatrix density_from_matrix(const CMatrix& raw, Spin spin, Positivity mode) {
  return DensityMatrix(spin, raw, mode);
}

DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& unitary, Positivity mode) {
  CMatrix out = unitary * rho.matrix() * unitary.adjoint();
  // Restore exact Hermiticity lost to rounding.
  out = (out + out.adjoint()).eval() / 2.0;
  return DensityMatrix(rho.spin(), std::move(out), mode);
}

// --- tensor parameters ------------------------------------------------------

TensorParams::TensorParams(Spin spin)
    : spin_(spin), values_(static_cast<std::size_t>(spin.dim() * spin.dim()), Complex(0.0)) {
  values_[0] = 1.0;
}

void TensorParams::check_rank(int k, int q) const {
  if (k < 0 || k > spin_.two_j() || std::abs(q) > k)
    throw Error(ErrorKind::OutOfRange,
                "tensor parameter (" + std::to_string(k) + "," + std::to_string(q) + ")");
}

Complex TensorParams::operator()(int k, int q) const {
  check_rank(k, q);
  return values_[static_cast<std::size_t>(tensor_index(k, q))];
}

void TensorParams::set(int k, int q, Complex value) {
  check_rank(k, q);
  if (k == 0 && std::abs(value - 1.0) > tol::trace)
    throw Error(ErrorKind::InvalidArguments, "t^0_0 is fixed to 1");
  values_[static_cast<std::size_t>(tensor_index(k, q))] = (k == 0) ? Complex(1.0) : value;
}

void TensorParams::set_with_partner(int k, int q, Complex value) {
  set(k, q, value);
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  set(k, -q, sign * std::conj(value));
}

double TensorParams::hermiticity_residual() const {
  double worst = 0.0;
  for (int k = 0; k <= spin_.two_j(); ++k)
    for (int q = -k; q <= k; ++q) {
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(std::conj((*this)(k, q)) - sign * (*this)(k, -q)));
    }
  return worst;
}

int TensorParams::independent_real_parameters() const {
  // q = 0 components are real (1 dof); each q > 0 fixes its -q partner (2 dof).
  int count = 0;
  for (int k = 1; k <= spin_.two_j(); ++k) count += 1 + 2 * k;
  return count;
}

TensorParams tensor_params(const DensityMatrix& rho) {
  const Spin spin = rho.spin();
  const TensorBasis& basis = tensor_basis(spin);
  TensorParams tp(spin);
  for (int k = 1; k <= spin.two_j(); ++k)
    for (int q = -k; q <= k; ++q) tp.set(k, q, rho.expectation(basis(k, q)));
  return tp;
}

DensityMatrix density_from_tensor_params(const TensorParams& tp, Positivity mode) {
  const Spin spin = tp.spin();
  const TensorBasis& basis = tensor_basis(spin);
  const int n = spin.dim();
  CMatrix rho = CMatrix::Zero(n, n);
  for (int k = 0; k <= spin.two_j(); ++k)
    for (int q = -k; q <= k; ++q) {
      const Complex t = tp(k, q);
      if (t != Complex(0.0)) rho += t * basis(k, q).adjoint();
    }
  rho /= double(n);
  return DensityMatrix(spin, std::move(rho), mode);
}

// --- Cartesian statistics ---------------------------------------------------

Eigen::Vector3d polarization(const DensityMatrix& rho) {
  const SpinOps j = spin_operators(rho.spin());
  const double tr = rho.matrix().trace().real();
  return Eigen::Vector3d(rho.expectation(j.jx).real(), rho.expectation(j.jy).real(),
                         rho.expectation(j.jz).real()) /
         tr;
}

CartesianStats cartesian_stats(const DensityMatrix& rho) {
  const SpinOps j = spin_operators(rho.spin());
  CartesianStats s;
  for (int i = 0; i < 3; ++i) s.means(i) = rho.expectation(j[i]).real();
  for (int i = 0; i < 3; ++i)
    for (int k = i; k < 3; ++k) {
      const CMatrix anti = j[i] * j[k] + j[k] * j[i];
      const double v = 0.5 * rho.expectation(anti).real();
      s.second_moments(i, k) = s.second_moments(k, i) = v;
    }
  s.covariance = s.second_moments - s.means * s.means.transpose();
  return s;
}

// --- random states ----------------------------------------------------------

DensityMatrix random_density(Spin spin, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = spin.dim();
  CMatrix a(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(r, c) = Complex(re, im);
    }
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix(spin, std::move(rho));
}

CMatrix random_rotation(Spin spin, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::Vector3d axis;
  do {
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    axis = Eigen::Vector3d(x, y, z);
  } while (axis.norm() < 1e-6);
  const double angle = std::numbers::pi * uniform(rng);
  return rotation_operator(spin, axis, angle);
}

DensityMatrix random_oriented_density(Spin spin, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int n = spin.dim();
  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p(i) = uniform(rng);
  p /= p.sum();
  CMatrix diag = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) diag(i, i) = p(i);
  const DensityMatrix base(spin, std::move(diag));
  return conjugate(base, random_rotation(spin, rng), Positivity::strict);
}

}  // namespace spinquasi
