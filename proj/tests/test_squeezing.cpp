#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "spinquasi/squeezing.hpp"
#include "support.hpp"

using namespace spinquasi;
using namespace testsupport;

namespace {

// Reference row 1 with the mean spin flipped to +z.
DensityMatrix mirrored_row1() {
  TensorParams tp(Spin(2));
  tp.set(1, 0, 0.7506);
  tp.set(2, 0, 0.495);
  tp.set_with_partner(2, 2, -0.4453);
  return density_from_tensor_params(tp);
}

void check_frame(const CanonicalFrame& f) {
  const CartesianStats s = cartesian_stats(f.rotated_state);
  CHECK(std::abs(s.means.x()) <= 1e-10);
  CHECK(std::abs(s.means.y()) <= 1e-10);
  CHECK(s.means.z() >= 0.0);
  CHECK(std::abs(s.covariance(0, 1)) <= 1e-10);
  CHECK(s.covariance(0, 0) <= s.covariance(1, 1) + 1e-12);
}

}  // namespace

TEST_CASE("reference squeezed states are squeezed") {
  for (const ReferenceRow& row : kReferenceRows) {
    const SqueezeReport r = squeezing_report(reference_state(row));
    CHECK(std::abs(r.var_x - row.var_x) <= 5e-4);
    CHECK(std::abs(r.bound - row.bound) <= 5e-4);
    CHECK(r.squeezed_x);
    CHECK(r.tensor_squeezed);
    CHECK(r.schrodinger_ok);
    CHECK(r.robertson_ok);
  }
  const SqueezeReport r1 = squeezing_report(reference_state(kReferenceRows[0]));
  CHECK(std::abs(r1.tensor_lhs - 0.4394) <= 5e-4);
  CHECK(std::abs(r1.tensor_rhs - 0.4596) <= 5e-4);
  // Frozen full-precision values.
  CHECK(r1.var_x == doctest::Approx(0.29290).epsilon(1e-4));
  CHECK(r1.bound == doctest::Approx(0.30643).epsilon(1e-4));
}

TEST_CASE("frame of a state already in canonical position") {
  const DensityMatrix rho = mirrored_row1();
  const CanonicalFrame f = canonical_frame(rho);
  CHECK(f.rotations.empty());
  CHECK(max_abs(f.rotated_state.matrix() - rho.matrix()) <= 1e-10);
}

TEST_CASE("reference squeezed states are turned over onto +z") {
  const DensityMatrix rho = reference_state(kReferenceRows[0]);
  const CanonicalFrame f = canonical_frame(rho);
  REQUIRE(f.rotations.size() == 1);
  CHECK((f.rotations[0].axis - Eigen::Vector3d::UnitX()).norm() < 1e-14);
  CHECK(f.rotations[0].angle == doctest::Approx(std::numbers::pi));
  const TensorParams tp = tensor_params(f.rotated_state);
  CHECK(tp(1, 0).real() == doctest::Approx(0.7506));
  CHECK(tp(2, 2).real() == doctest::Approx(-0.4453));
}

TEST_CASE("m = -1 is rotated by pi about x") {
  const CanonicalFrame f = canonical_frame(basis_state(Spin(2), 2));
  REQUIRE(!f.rotations.empty());
  CHECK((f.rotations[0].axis - Eigen::Vector3d::UnitX()).norm() < 1e-14);
  CHECK(polarization(f.rotated_state).z() == doctest::Approx(1.0));
}

TEST_CASE("zero polarization has no frame") {
  try {
    (void)canonical_frame(mixed(Spin(2)));
    FAIL("expected UndefinedMeanSpinDirection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedMeanSpinDirection);
  }
}

TEST_CASE("coherent spin-1 state sits on the bound") {
  const SqueezeReport r = squeezing_report(basis_state(Spin(2), 0));
  CHECK(r.var_x == doctest::Approx(0.5));
  CHECK(r.var_y == doctest::Approx(0.5));
  CHECK(r.bound == doctest::Approx(0.5));
  CHECK_FALSE(r.squeezed_x);
  CHECK_FALSE(r.squeezed_y);
}

TEST_CASE("canonical frame conditions on random states") {
  auto g = rng();
  for (int two_j = 1; two_j <= 6; ++two_j)
    for (int trial = 0; trial < 20; ++trial) check_frame(canonical_frame(random_density(Spin(two_j), g)));
}

TEST_CASE("frame invariance") {
  auto g = rng(1);
  for (int two_j : {2, 3, 4})
    for (int trial = 0; trial < 20; ++trial) {
      const Spin spin(two_j);
      const DensityMatrix rho = random_density(spin, g);
      const DensityMatrix turned = conjugate(rho, random_rotation(spin, g));
      const SqueezeReport a = squeezing_report(rho);
      const SqueezeReport b = squeezing_report(turned);
      CHECK(std::abs(a.var_x - b.var_x) <= 1e-10);
      CHECK(std::abs(a.var_y - b.var_y) <= 1e-10);
      CHECK(std::abs(a.bound - b.bound) <= 1e-10);
      CHECK(a.squeezed_x == b.squeezed_x);
      CHECK(a.squeezed_y == b.squeezed_y);
    }
}

TEST_CASE("oriented states are never squeezed") {
  auto g = rng(2);
  int checked = 0;
  for (int two_j : {1, 2, 3, 4, 6})
    for (int trial = 0; trial < 200; ++trial) {
      const DensityMatrix rho = random_oriented_density(Spin(two_j), g);
      CHECK(is_oriented(rho));
      if (polarization(rho).norm() < 1e-6) continue;
      const SqueezeReport r = squeezing_report(rho);
      CHECK_FALSE(r.squeezed_x);
      CHECK_FALSE(r.squeezed_y);
      ++checked;
    }
  CHECK(checked > 900);
}

TEST_CASE("spin 1/2 is never strictly squeezed") {
  auto g = rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const SqueezeReport r = squeezing_report(random_density(Spin(1), g));
    CHECK(r.var_x >= r.bound - 1e-12);
  }
}

TEST_CASE("uncertainty relations and the spin-1 tensor criterion") {
  auto g = rng(4);
  int squeezed = 0;
  for (int two_j : {1, 2, 3, 4})
    for (int trial = 0; trial < 250; ++trial) {
      const DensityMatrix rho = random_density(Spin(two_j), g);
      if (polarization(rho).norm() < 1e-6) continue;
      const SqueezeReport r = squeezing_report(rho);
      CHECK(r.schrodinger_ok);
      CHECK(r.robertson_ok);
      CHECK(r.var_x * r.var_y - r.covariance_residual * r.covariance_residual >= r.bound * r.bound - 1e-9);
      CHECK(r.squeezed_x == (r.var_x < r.bound - 1e-12));
      if (two_j == 2) {
        CHECK(r.tensor_squeezed == r.squeezed_x);
        CHECK(std::abs(r.tensor_lhs - 1.5 * r.var_x) <= 1e-8);
        CHECK(std::abs(r.tensor_rhs - 1.5 * r.bound) <= 1e-8);
        squeezed += r.squeezed_x;
      }
    }
  MESSAGE("squeezed random spin-1 states: " << squeezed);
}

TEST_CASE("orientation test") {
  CHECK(is_oriented(mixed(Spin(3))));
  CHECK(is_oriented(basis_state(Spin(2), 1)));
  auto g = rng(5);
  const DensityMatrix diag = basis_state(Spin(4), 1);
  CHECK(is_oriented(conjugate(diag, random_rotation(Spin(4), g))));
  CHECK_FALSE(is_oriented(reference_state(kReferenceRows[0])));
  CHECK_FALSE(is_oriented(random_density(Spin(2), g)));
}
