#pragma once

// Angular-momentum operator factory: spin matrices in the |j m> basis ordered
// m = j, j-1, ..., -j, Clebsch-Gordan coefficients, and the orthonormal
// spherical tensor operators tau^k_q built two independent ways.

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <complex>
#include <vector>

#include "spinquasi/kernel.hpp"

namespace spinquasi {

/// Spin quantum number stored as 2j so half-integers are exact.
class Spin {
 public:
  explicit Spin(int two_j);

  /// Parses a decimal j (1, 0.5, 1.5, ...). Throws InvalidArguments if 2j is
  /// not a positive integer.
  static Spin from_j(double j);

  int two_j() const noexcept { return two_j_; }
  double j() const noexcept { return 0.5 * two_j_; }
  int dim() const noexcept { return two_j_ + 1; }
  /// Projection value of basis index i (0 -> j, dim-1 -> -j).
  double m(int index) const noexcept { return j() - index; }

  auto operator<=>(const Spin&) const = default;

 private:
  int two_j_;
};

enum class Axis : int { x = 0, y = 1, z = 2 };

struct SpinOps {
  Spin spin;
  CMatrix jx, jy, jz;

  const CMatrix& operator[](Axis a) const {
    switch (a) {
      case Axis::x: return jx;
      case Axis::y: return jy;
      case Axis::z: break;
    }
    return jz;
  }
  const CMatrix& operator[](int a) const { return (*this)[static_cast<Axis>(a)]; }
};

SpinOps spin_operators(Spin spin);

/// Raising operator J_+ with <m+1|J_+|m> = sqrt(j(j+1) - m(m+1)).
CMatrix raising_operator(Spin spin);

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> from the
/// Racah closed-form sum. Arguments are the doubled quantum numbers.
double clebsch_gordan_twice(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// Same, for decimal (integer or half-integer) arguments.
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

struct TensorOp {
  Spin spin;
  int k;
  int q;
  CMatrix matrix;
};

/// Homogeneous polynomial in (x, y, z) with complex coefficients, indexed by
/// the exponents (a, b) of x and y; the z exponent is degree - a - b.
class HomogeneousPolynomial {
 public:
  explicit HomogeneousPolynomial(int degree);

  int degree() const noexcept { return degree_; }
  Complex coefficient(int a, int b, int c) const;
  void add(int a, int b, int c, Complex value);

  /// this * (cx x + cy y + cz z)
  HomogeneousPolynomial times_linear(Complex cx, Complex cy, Complex cz) const;
  HomogeneousPolynomial& operator*=(Complex s);
  HomogeneousPolynomial& operator+=(const HomogeneousPolynomial& other);

  /// Value at a point.
  Complex operator()(double x, double y, double z) const;

 private:
  std::size_t index(int a, int b) const;

  int degree_;
  std::vector<Complex> coeffs_;
};

/// Regular solid harmonic r^k Y^k_q(theta, phi) as a polynomial in x, y, z.
HomogeneousPolynomial solid_harmonic(int k, int q);

/// Weyl normalization N^{-1}_{kj} = 2^k/k! sqrt(4 pi (2j-k)! (2j+1) / (2j+k+1)!).
double weyl_normalization(Spin spin, int k);

/// (J . grad)^a+b+c applied to the monomial x^a y^b z^c, for every a+b+c <= max_degree.
class WeylDerivativeTable {
 public:
  WeylDerivativeTable(const SpinOps& ops, int max_degree);

  int max_degree() const noexcept { return max_degree_; }
  const CMatrix& operator()(int a, int b, int c) const;

  /// (J . grad)^deg p for a homogeneous polynomial p.
  CMatrix apply(const HomogeneousPolynomial& p) const;

 private:
  std::size_t index(int a, int b, int c) const;

  int max_degree_;
  std::vector<CMatrix> table_;
};

/// tau^k_q = N^{-1}_{kj} (J . grad)^k r^k Y^k_q.
TensorOp tensor_operator_weyl(Spin spin, int k, int q);

/// (tau^k_q)_{m' m} = sqrt(2k+1) <j m; k q | j m'>.
TensorOp tensor_operator_cg(Spin spin, int k, int q);

/// Flat index of (k, q) in a full basis: k^2 + k + q.
constexpr int tensor_index(int k, int q) noexcept { return k * k + k + q; }

/// All tau^k_q for k = 0..2j from the Weyl construction. Memoised per spin;
/// the returned reference stays valid for the process lifetime.
struct TensorBasis {
  Spin spin;
  std::vector<CMatrix> ops;

  const CMatrix& operator()(int k, int q) const {
    return ops[static_cast<std::size_t>(tensor_index(k, q))];
  }
};
const TensorBasis& tensor_basis(Spin spin);

struct SigmaOps {
  CMatrix s1;  // J_x^2 - J_y^2
  CMatrix s2;  // J_x J_y + J_y J_x
  CMatrix s3;  // J_z
};

/// Spin-1 triple obeying Sigma_i Sigma_j = delta_ij J_z^2 + i eps_ijk Sigma_k.
SigmaOps sigma_operators();

/// exp(-i angle n.J): active rotation of the state by `angle` about the unit axis n.
CMatrix rotation_operator(Spin spin, const Eigen::Vector3d& axis, double angle);

}  // namespace spinquasi
