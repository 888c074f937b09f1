#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <functional>

#include "spinquasi/states.hpp"
#include "support.hpp"

using namespace spinquasi;
using namespace testsupport;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InternalInvariant;
}

CMatrix diag3(double a, double b, double c) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("validation") {
  const Spin one(2);
  CHECK_NOTHROW((void)density_from_matrix(CMatrix::Identity(3, 3) / 3.0, one));
  CHECK_NOTHROW((void)density_from_matrix(diag3(1, 0, 0), one));
  CHECK(kind_of([&] { (void)density_from_matrix(diag3(2, -1, 0), one); }) == ErrorKind::NotPositive);
  CHECK(kind_of([&] { (void)density_from_matrix(diag3(1, 1, 0), one); }) == ErrorKind::TraceNotOne);
  CMatrix skew = diag3(1, 0, 0);
  skew(0, 1) = 0.1;
  CHECK(kind_of([&] { (void)density_from_matrix(skew, one); }) == ErrorKind::NotHermitian);
  CHECK(kind_of([&] { (void)density_from_matrix(CMatrix::Identity(2, 2) / 2.0, one); }) ==
        ErrorKind::InvalidArguments);
}

TEST_CASE("permissive positivity") {
  const Spin one(2);
  const CMatrix near = diag3(0.5 + 1e-8, 0.5, -1e-8);
  CHECK_THROWS_AS((void)density_from_matrix(near, one), Error);
  const DensityMatrix rho = density_from_matrix(near, one, Positivity::permissive);
  CHECK(rho.positivity_warning());
  CHECK(rho.min_eigenvalue() == doctest::Approx(-1e-8));
  CHECK_THROWS_AS((void)density_from_matrix(diag3(0.5 + 1e-3, 0.5, -1e-3), one, Positivity::permissive),
                  Error);
  CHECK_FALSE(mixed(one).positivity_warning());
}

TEST_CASE("tensor parameters of simple states") {
  const Spin one(2);
  const TensorParams mix = tensor_params(mixed(one));
  CHECK(mix(0, 0).real() == doctest::Approx(1.0));
  for (int k = 1; k <= 2; ++k)
    for (int q = -k; q <= k; ++q) CHECK(std::abs(mix(k, q)) < 1e-14);

  const TensorParams up = tensor_params(basis_state(one, 0));
  CHECK(up(1, 0).real() == doctest::Approx(std::sqrt(1.5)));
  CHECK(up(2, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("reference row 1 state") {
  const DensityMatrix rho = reference_state(kReferenceRows[0]);
  const CMatrix& m = rho.matrix();
  CHECK(std::abs(m(0, 0).real() - 0.1436) <= 5e-4);
  CHECK(std::abs(m(1, 1).real() - 0.1000) <= 5e-4);
  CHECK(std::abs(m(2, 2).real() - 0.7564) <= 5e-4);
  CHECK(std::abs(m(0, 2).real() - (-0.2571)) <= 5e-4);
  const auto es = hermitian_eigensystem(m);
  CHECK(std::abs(es.values(0) - 0.05) <= 5e-4);
  CHECK(std::abs(es.values(1) - 0.10) <= 5e-4);
  CHECK(std::abs(es.values(2) - 0.85) <= 5e-4);

  const TensorParams tp = tensor_params(rho);
  CHECK(std::abs(tp(1, 0) - Complex(-0.7506)) < 1e-12);
  CHECK(std::abs(tp(2, 0) - Complex(0.495)) < 1e-12);
  CHECK(std::abs(tp(2, 2) - Complex(-0.4453)) < 1e-12);
  CHECK(std::abs(tp(2, -2) - Complex(-0.4453)) < 1e-12);

  const Eigen::Vector3d p = polarization(rho);
  CHECK(std::abs(p.x()) < 1e-12);
  CHECK(std::abs(p.y()) < 1e-12);
  CHECK(std::abs(p.z() - (-0.6129)) <= 5e-4);

  const CartesianStats s = cartesian_stats(rho);
  CHECK(std::abs(s.covariance(0, 0) - 0.2929) <= 5e-4);
  CHECK(std::abs(s.second_moments(2, 2) - 0.9) <= 5e-4);
  // Cross-check through the Sigma_1 expectation.
  const double sigma1 = -0.4453 * 2.0 / std::sqrt(3.0);
  CHECK(s.second_moments(0, 0) == doctest::Approx((2.0 - s.second_moments(2, 2)) / 2.0 + sigma1 / 2.0));
}

TEST_CASE("density from tensor parameters") {
  const Spin one(2);
  const DensityMatrix rho = density_from_tensor_params(TensorParams(one));
  CHECK(max_abs(rho.matrix() - CMatrix::Identity(3, 3) / 3.0) < 1e-14);

  TensorParams too_big(one);
  too_big.set(1, 0, 2.0);
  try {
    (void)density_from_tensor_params(too_big);
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
  }

  TensorParams tp(one);
  CHECK_THROWS_AS(tp.set(0, 0, 0.5), Error);
  CHECK_THROWS_AS(tp.set(3, 0, 0.1), Error);
  tp.set_with_partner(2, 1, Complex(0.1, 0.2));
  CHECK(std::abs(tp(2, -1) - Complex(-0.1, 0.2)) < 1e-15);
  CHECK(tp.hermiticity_residual() < 1e-15);
  tp.set(2, 2, Complex(0.0, 0.3));
  CHECK(tp.hermiticity_residual() > 0.1);
}

TEST_CASE("parameter count is n^2 - 1") {
  for (int two_j = 1; two_j <= 8; ++two_j) {
    const Spin spin(two_j);
    const TensorParams tp(spin);
    // Independent reals: q = 0 components are real, each q > 0 pair is one complex number.
    int count = 0;
    for (int k = 1; k <= two_j; ++k) count += 1 + 2 * k;
    CHECK(tp.independent_real_parameters() == count);
    CHECK(count == spin.dim() * spin.dim() - 1);
  }
}

TEST_CASE("round trip through tensor parameters") {
  auto g = rng();
  for (int two_j = 1; two_j <= 6; ++two_j)
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_density(Spin(two_j), g);
      const TensorParams tp = tensor_params(rho);
      CHECK(tp.hermiticity_residual() <= 1e-12);
      const DensityMatrix back = density_from_tensor_params(tp);
      CHECK(max_abs(back.matrix() - rho.matrix()) <= 1e-10);
      const TensorParams again = tensor_params(back);
      for (std::size_t i = 0; i < tp.values().size(); ++i)
        CHECK(std::abs(again.values()[i] - tp.values()[i]) <= 1e-10);
    }
}

TEST_CASE("polarization and rank-1 parameters") {
  auto g = rng(1);
  for (int two_j = 1; two_j <= 6; ++two_j) {
    const Spin spin(two_j);
    const DensityMatrix rho = random_density(spin, g);
    const double j = spin.j();
    CHECK(std::abs(polarization(rho).z() - std::sqrt(j * (j + 1) / 3.0) * tensor_params(rho)(1, 0).real()) <=
          1e-10);
  }
  CHECK(polarization(mixed(Spin(2))).norm() < 1e-15);
  const Eigen::Vector3d up = polarization(basis_state(Spin(2), 0));
  CHECK((up - Eigen::Vector3d::UnitZ()).norm() < 1e-14);
}

TEST_CASE("Cartesian statistics") {
  const CartesianStats mix = cartesian_stats(mixed(Spin(2)));
  CHECK(mix.means.norm() < 1e-15);
  CHECK((mix.second_moments - Eigen::Matrix3d::Identity() * (2.0 / 3.0)).cwiseAbs().maxCoeff() < 1e-14);

  const CartesianStats zero = cartesian_stats(basis_state(Spin(2), 1));
  CHECK(zero.covariance(0, 0) == doctest::Approx(1.0));
  CHECK(zero.covariance(1, 1) == doctest::Approx(1.0));
  CHECK(std::abs(zero.covariance(2, 2)) < 1e-14);

  auto g = rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const CartesianStats s = cartesian_stats(random_density(Spin(3), g));
    CHECK((s.covariance - s.covariance.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s.covariance);
    CHECK(es.eigenvalues()(0) >= -1e-10);
  }
}

TEST_CASE("random states are valid and reproducible") {
  auto a = rng(3), b = rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix x = random_density(Spin(4), a);
    const DensityMatrix y = random_density(Spin(4), b);
    CHECK(max_abs(x.matrix() - y.matrix()) == 0.0);
    CHECK(x.min_eigenvalue() >= -1e-10);
  }
  const DensityMatrix o = random_oriented_density(Spin(2), a);
  CHECK(o.min_eigenvalue() >= -1e-10);
}

TEST_CASE("conjugation by a rotation keeps the spectrum") {
  auto g = rng(4);
  const DensityMatrix rho = random_density(Spin(3), g);
  const CMatrix u = random_rotation(Spin(3), g);
  const DensityMatrix r = conjugate(rho, u);
  const auto e1 = hermitian_eigensystem(rho.matrix());
  const auto e2 = hermitian_eigensystem(r.matrix());
  CHECK((e1.values - e2.values).cwiseAbs().maxCoeff() < 1e-12);
}
