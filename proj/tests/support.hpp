#pragma once

// Shared fixtures and independent oracles for the unit tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spinquasi/distribution.hpp"
#include "spinquasi/io.hpp"
#include "spinquasi/scenario.hpp"
#include "spinquasi/squeezing.hpp"

namespace testsupport {

using namespace spinquasi;

constexpr std::uint64_t kSeed = 20240611;

inline std::mt19937_64 rng(std::uint64_t offset = 0) { return std::mt19937_64(kSeed + offset); }

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline DensityMatrix mixed(Spin spin) {
  const int n = spin.dim();
  return DensityMatrix(spin, CMatrix::Identity(n, n) / static_cast<double>(n));
}

/// |m> <m| for basis index i (m = j - i).
inline DensityMatrix basis_state(Spin spin, int index) {
  CMatrix rho = CMatrix::Zero(spin.dim(), spin.dim());
  rho(index, index) = 1.0;
  return DensityMatrix(spin, rho);
}

inline CMatrix random_hermitian(int n, std::mt19937_64& g) {
  std::normal_distribution<double> d;
  CMatrix a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = Complex(d(g), d(g));
  return (a + a.adjoint()) / 2.0;
}

struct ReferenceRow {
  double t10, t20, t22, var_x, bound;
};

// Published spin-1 squeezed states and their variance columns.
inline const ReferenceRow kReferenceRows[3] = {
    {-0.7506, 0.495, -0.4453, 0.2929, 0.3064},
    {-0.6298, 0.4737, -0.5307, 0.2486, 0.2571},
    {-0.7506, 0.4526, -0.4453, 0.3028, 0.3064},
};

inline DensityMatrix reference_state(const ReferenceRow& row) {
  TensorParams tp(Spin(2));
  tp.set(1, 0, row.t10);
  tp.set(2, 0, row.t20);
  tp.set_with_partner(2, 2, row.t22);
  return density_from_tensor_params(tp);
}

/// Sum of every distinct word in {x^a, y^b, z^c}, enumerated with
/// std::next_permutation, divided by the number of words.
inline CMatrix brute_force_ww(const SpinOps& ops, int a, int b, int c) {
  std::string word = std::string(static_cast<std::size_t>(a), 'x') +
                     std::string(static_cast<std::size_t>(b), 'y') +
                     std::string(static_cast<std::size_t>(c), 'z');
  std::sort(word.begin(), word.end());
  const int n = ops.spin.dim();
  CMatrix sum = CMatrix::Zero(n, n);
  long count = 0;
  do {
    CMatrix prod = CMatrix::Identity(n, n);
    for (char ch : word) prod = prod * ops[ch - 'x'];
    sum += prod;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return sum / static_cast<double>(count);
}

/// Samples behind the committed closed-form verdict: I/3 plus 99 random states.
inline std::vector<DensityMatrix> verdict_samples() {
  std::mt19937_64 g(7);
  std::vector<DensityMatrix> out;
  out.push_back(mixed(Spin(2)));
  for (int s = 0; s < 99; ++s) out.push_back(random_density(Spin(2), g));
  return out;
}

inline std::string verdict_csv() {
  const auto samples = verdict_samples();
  std::string out = "rule,class,points,max_abs_deviation\n";
  for (Rule rule : {Rule::ww, Rule::mh}) out += io::closed_form_csv(compare_closed_form(samples, rule), rule);
  return out;
}

inline std::string verdict_path() { return std::string(SPINQUASI_TEST_DATA) + "/closed_form_verdict.csv"; }

/// Row-by-row comparison of two verdict tables: labels equal, values within tol.
inline bool same_verdict(const std::string& x, const std::string& y, double tol) {
  std::istringstream a(x), b(y);
  std::string la, lb;
  int rows = 0;
  while (std::getline(a, la)) {
    if (!std::getline(b, lb)) return false;
    const auto ca = la.rfind(','), cb = lb.rfind(',');
    if (la.substr(0, ca) != lb.substr(0, cb)) return false;
    if (rows > 0 && std::abs(std::stod(la.substr(ca + 1)) - std::stod(lb.substr(cb + 1))) > tol)
      return false;
    ++rows;
  }
  return !std::getline(b, lb) && rows == 9;
}

}  // namespace testsupport
