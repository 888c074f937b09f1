#pragma once

// Small dense complex matrices and a cyclic Jacobi eigensolver for the
// Hermitian case. Dimensions here never exceed ~13, so everything is dense
// and allocation-light.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "spinquasi/error.hpp"
#include "spinquasi/tolerances.hpp"

namespace spinquasi {

template <typename Scalar>
using CMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = CMatrixT<double>;
using RVector = RVectorT<double>;
using Complex = std::complex<double>;

template <typename Scalar>
struct HermitianEigensystem {
  RVectorT<Scalar> values;    // ascending
  CMatrixT<Scalar> vectors;   // columns are eigenvectors
};

/// Largest entrywise |M - M^dagger|.
template <typename Derived>
typename Derived::RealScalar hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const auto& v = m(r, c);
      if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v))) return false;
    }
  return true;
}

/// Checks the CMatrix invariants: square, non-empty, finite.
template <typename Scalar>
void require_valid_matrix(const CMatrixT<Scalar>& m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw Error(ErrorKind::InvalidArguments, "matrix must be square with dim >= 1");
  if (!all_finite(m)) throw Error(ErrorKind::InvalidArguments, "matrix has non-finite entries");
}

template <typename Scalar>
void require_hermitian(const CMatrixT<Scalar>& m, double tolerance = tol::hermiticity) {
  require_valid_matrix(m);
  const auto res = hermiticity_residual(m);
  if (static_cast<double>(res) > tolerance)
    throw Error(ErrorKind::NotHermitian,
                "max |M - M^dagger| = " + std::to_string(static_cast<double>(res)));
}

/// Eigen-decomposition M V = V diag(values) by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot M(p,q), then applies the
/// textbook real Jacobi rotation in the (p,q) plane. Sweeps stop once the
/// off-diagonal Frobenius norm falls below machine epsilon relative to ||M||.
template <typename Scalar>
HermitianEigensystem<Scalar> hermitian_eigensystem(const CMatrixT<Scalar>& m) {
  using C = std::complex<Scalar>;
  require_hermitian(m);
  const Eigen::Index n = m.rows();
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  CMatrixT<Scalar> a = (m + m.adjoint()) / Scalar(2);
  CMatrixT<Scalar> v = CMatrixT<Scalar>::Identity(n, n);
  const Scalar scale = a.norm();

  auto off_norm = [&] {
    Scalar s = 0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += std::norm(a(p, q));
    return std::sqrt(Scalar(2) * s);
  };

  bool converged = false;
  for (int sweep = 0; sweep <= tol::jacobi_max_sweeps; ++sweep) {
    if (scale == Scalar(0) || off_norm() <= eps * scale) {
      converged = true;
      break;
    }
    if (sweep == tol::jacobi_max_sweeps) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const C b = a(p, q);
        const Scalar ab = std::abs(b);
        if (ab == Scalar(0)) continue;
        if (ab < eps * eps * scale) {
          a(p, q) = a(q, p) = C(0);
          continue;
        }
        const C phase = b / ab;
        const Scalar theta = (std::real(a(q, q)) - std::real(a(p, p))) / (Scalar(2) * ab);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        const C ph_conj = std::conj(phase);

        // A <- A G, V <- V G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        for (Eigen::Index r = 0; r < n; ++r) {
          const C ap = a(r, p), aq = a(r, q);
          a(r, p) = c * ap - s * ph_conj * aq;
          a(r, q) = s * ap + c * ph_conj * aq;
          const C vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - s * ph_conj * vq;
          v(r, q) = s * vp + c * ph_conj * vq;
        }
        // A <- G^dagger A
        for (Eigen::Index r = 0; r < n; ++r) {
          const C ap = a(p, r), aq = a(q, r);
          a(p, r) = c * ap - s * phase * aq;
          a(q, r) = s * ap + c * phase * aq;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(std::real(a(p, p)));
        a(q, q) = C(std::real(a(q, q)));
      }
    }
  }
  if (!converged)
    throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index k) {
    return std::real(a(i, i)) < std::real(a(k, k));
  });

  HermitianEigensystem<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = std::real(a(order[i], order[i]));
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

/// V f(diag) V^dagger for a Hermitian H and a scalar function f of the eigenvalue.
template <typename Scalar, typename F>
CMatrixT<Scalar> spectral_map(const CMatrixT<Scalar>& h, F&& f) {
  const auto es = hermitian_eigensystem(h);
  const Eigen::Index n = h.rows();
  CMatrixT<Scalar> scaled = es.vectors;
  for (Eigen::Index i = 0; i < n; ++i) scaled.col(i) *= std::complex<Scalar>(f(es.values(i)));
  return scaled * es.vectors.adjoint();
}

/// e^{i s H}.
template <typename Scalar>
CMatrixT<Scalar> unitary_from_hermitian_generator(const CMatrixT<Scalar>& h, Scalar s) {
  return spectral_map(h, [s](Scalar lambda) {
    return std::polar(Scalar(1), s * lambda);
  });
}

/// Tr(A B) without forming the product.
template <typename DA, typename DB>
auto trace_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

}  // namespace spinquasi
