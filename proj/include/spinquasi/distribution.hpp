#pragma once

// Discrete quasi-probability mass functions on the grid of spin projections
// m = j, j-1, ..., -j per variate, recovered from rule-ordered moments by
// successive one-axis Vandermonde inversions.

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

#include "spinquasi/correspondence.hpp"

namespace spinquasi {

/// Quasi-probabilities over the kept variates (1, 2 or 3 of x, y, z, always in
/// x, y, z order). Storage is row-major with the first variate slowest; node
/// index i stands for m = j - i. Entries may be negative.
class Pmf {
 public:
  Pmf(Spin spin, Rule rule, std::vector<Axis> axes, std::vector<double> p);

  Spin spin() const noexcept { return spin_; }
  Rule rule() const noexcept { return rule_; }
  const std::vector<Axis>& axes() const noexcept { return axes_; }
  int variates() const noexcept { return static_cast<int>(axes_.size()); }
  int side() const noexcept { return spin_.dim(); }
  const std::vector<double>& values() const noexcept { return p_; }

  /// Entry by node indices, one per kept variate.
  double at(std::span<const int> nodes) const;
  /// Trivariate shorthand.
  double operator()(int ix, int iy, int iz) const;
  /// Entry by projection values (m_x, m_y, m_z) of a trivariate PMF.
  double at_m(double mx, double my, double mz) const;

  double total() const;

 private:
  Spin spin_;
  Rule rule_;
  std::vector<Axis> axes_;
  std::vector<double> p_;
};

/// L(i, alpha): coefficients of the Lagrange basis polynomial for node m_i,
/// i.e. the inverse of the Vandermonde matrix V(alpha, i) = m_i^alpha.
/// Throws IllConditioned if |L V - I| exceeds 1e-8.
Eigen::MatrixXd lagrange_inverse(Spin spin);

/// Trivariate PMF from a complete moment table (x, then y, then z inversion).
Pmf pmf_from_moments(const MomentTable& mt);

/// Inverts only the moments with zero exponent on the dropped variates.
Pmf marginal_from_moments(const MomentTable& mt, std::vector<Axis> keep);

/// Sum over all variates not in `keep`.
Pmf marginal(const Pmf& pmf, std::vector<Axis> keep);

/// sum m_x^alpha m_y^beta m_z^gamma P. Exponents of variates absent from a
/// marginal PMF must be zero.
double reconstruct_moment(const Pmf& pmf, int alpha, int beta, int gamma);

struct NegativityReport {
  double min_value = 0.0;
  double negative_mass = 0.0;  // sum of negative entries
  int num_negative = 0;
};

NegativityReport negativity(const Pmf& pmf);

/// Spin-1 reference closed forms for the 27 grid points, in terms of <J_i>,
/// <J_i^2> and <J_i J_k + J_k J_i>. Transcribed as published; the result is
/// not renormalised. Throws WrongSpin unless j = 1.
Pmf pmf_closed_form_spin1(const DensityMatrix& rho, Rule rule);

/// Grid points by number of nonzero projections: 3 corner, 2 edge, 1 face, 0 center.
enum class PointClass { corner, edge, face, center };
const char* to_string(PointClass cls);
PointClass point_class(double mx, double my, double mz);

struct ClassDeviation {
  PointClass cls;
  int points = 0;          // grid points in the class
  double max_abs = 0.0;    // max |closed form - inversion| over points and samples
};

/// Per-class deviation of the closed forms from the inversion pipeline.
/// Empty input gives an empty table.
std::vector<ClassDeviation> compare_closed_form(std::span<const DensityMatrix> samples, Rule rule);

}  // namespace spinquasi
