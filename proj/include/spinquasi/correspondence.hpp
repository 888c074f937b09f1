#pragma once

// Operator-ordering rules that turn a classical monomial X^a Y^b Z^c (or the
// exponential e^{i I.X}) into an operator built from J_x, J_y, J_z.
//
//   Wigner-Weyl:    average over every distinct interleaving of a J_x's,
//                   b J_y's and c J_z's.
//   Margenau-Hill:  average over the 6 orderings of the blocks J_x^a, J_y^b, J_z^c.
//
// Moments are always mu^{abc} = Tr(rho S) with S the averaged product, so the
// combinatorial prefactors live inside the operator.

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

#include "spinquasi/angmom.hpp"
#include "spinquasi/states.hpp"

namespace spinquasi {

enum class Rule { ww, mh };

const char* to_string(Rule rule);
/// "ww" / "mh" (case-insensitive). Throws MalformedInput otherwise.
Rule parse_rule(std::string_view text);

std::int64_t multinomial(int a, int b, int c);

/// Sum over all distinct interleavings, together with the number of terms.
struct InterleavingSum {
  CMatrix sum;
  std::int64_t terms = 0;
};

/// Every word with a x's, b y's and c z's, built by recursion on the first
/// letter with shared suffixes. Throws InternalInvariant if the term count
/// differs from the multinomial coefficient.
InterleavingSum interleaving_sum(const SpinOps& ops, int a, int b, int c);

/// The averaged, rule-ordered product whose trace against rho is mu^{abc}.
CMatrix symmetrized_product(Rule rule, int a, int b, int c, Spin spin);

/// All symmetrized products with 0 <= a, b, c <= 2j for one rule and spin.
/// Memoised; the reference stays valid for the process lifetime.
struct SymmetrizerSet {
  Spin spin;
  Rule rule;
  std::vector<CMatrix> ops;

  const CMatrix& operator()(int a, int b, int c) const {
    const int s = spin.dim();
    return ops[static_cast<std::size_t>((a * s + b) * s + c)];
  }
};
const SymmetrizerSet& symmetrizers(Rule rule, Spin spin);

/// Tr(rho S_rule(J_x^a J_y^b J_z^c)). Throws NonRealMoment if the imaginary
/// residual exceeds 1e-10.
double mixed_moment(const DensityMatrix& rho, Rule rule, int a, int b, int c);

/// mu^{abc} for a, b, c = 0..2j.
class MomentTable {
 public:
  MomentTable(Spin spin, Rule rule);
  MomentTable(Spin spin, Rule rule, std::vector<double> mu);

  Spin spin() const noexcept { return spin_; }
  Rule rule() const noexcept { return rule_; }
  int side() const noexcept { return spin_.dim(); }

  double operator()(int a, int b, int c) const { return mu_[index(a, b, c)]; }
  double& operator()(int a, int b, int c) { return mu_[index(a, b, c)]; }

  const std::vector<double>& values() const noexcept { return mu_; }

 private:
  std::size_t index(int a, int b, int c) const;

  Spin spin_;
  Rule rule_;
  std::vector<double> mu_;
};

MomentTable moment_table(const DensityMatrix& rho, Rule rule);

/// WW: Tr(rho e^{i I.J}).
/// MH: 1/6 sum over the orderings of e^{i I_x J_x}, e^{i I_y J_y}, e^{i I_z J_z}.
Complex characteristic_function(const DensityMatrix& rho, Rule rule, const Eigen::Vector3d& arg);

}  // namespace spinquasi
