#include "spinquasi/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace spinquasi {

void FieldParams::validate() const {
  if (!std::isfinite(omega_l) || !std::isfinite(omega_q))
    throw Error(ErrorKind::InvalidArguments, "field strengths must be finite");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorKind::InvalidArguments, "beta must be positive");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw Error(ErrorKind::InvalidArguments, "eta must lie in [0, 1]");
}

CMatrix hamiltonian(Spin spin, const FieldParams& fp) {
  fp.validate();
  const SpinOps j = spin_operators(spin);
  const int n = spin.dim();
  const double jj = spin.j() * (spin.j() + 1.0);
  const CMatrix quad = 3.0 * j.jz * j.jz - jj * CMatrix::Identity(n, n) +
                       fp.eta * (j.jx * j.jx - j.jy * j.jy);
  CMatrix h = -fp.omega_l * j.jz + (fp.omega_q / 6.0) * quad;
  return (h + h.adjoint()).eval() / 2.0;
}

DensityMatrix thermal_state(const CMatrix& h, Spin spin, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArguments, "beta must be positive");
  const auto es = hermitian_eigensystem(h);
  const double shift = es.values(0);
  CMatrix weighted = es.vectors;
  double z = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double w = std::exp(-beta * (es.values(i) - shift));
    weighted.col(i) *= w;
    z += w;
  }
  CMatrix rho = weighted * es.vectors.adjoint() / z;
  rho = (rho + rho.adjoint()).eval() / 2.0;
  return DensityMatrix(spin, std::move(rho));
}

DensityMatrix ground_state(const CMatrix& h, Spin spin) {
  const auto es = hermitian_eigensystem(h);
  const auto v = es.vectors.col(0);
  CMatrix rho = v * v.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(spin, std::move(rho));
}

DensityMatrix scenario_state(Spin spin, const FieldParams& fp, StateFamily family) {
  const CMatrix h = hamiltonian(spin, fp);
  return family == StateFamily::thermal ? thermal_state(h, spin, fp.beta) : ground_state(h, spin);
}

std::vector<double> Range::values() const {
  if (steps < 0) throw Error(ErrorKind::InvalidArguments, "negative step count");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    out.push_back(steps == 1 ? start : start + (stop - start) * i / (steps - 1));
  return out;
}

std::vector<FieldParams> ScanGrid::points() const {
  std::vector<FieldParams> out;
  for (double wl : omega_l.values())
    for (double wq : omega_q.values())
      for (double e : eta.values())
        for (double b : beta.values()) out.push_back(FieldParams{wl, wq, e, b});
  return out;
}

ScanResult scan(Spin spin, std::span<const FieldParams> points, StateFamily family) {
  ScanResult result;
  result.points.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    ScanPoint pt;
    pt.index = i;
    pt.params = points[i];
    try {
      const DensityMatrix rho = scenario_state(spin, points[i], family);
      pt.report = squeezing_report(rho);
    } catch (const Error& e) {
      pt.skipped_reason = e.what();
      ++result.skipped;
    }
    if (pt.report && pt.report->squeezed()) {
      // Recheck from scratch: rebuild, rotate, and take the variances directly.
      const DensityMatrix rho = scenario_state(spin, points[i], family);
      const CartesianStats s = cartesian_stats(canonical_frame(rho).rotated_state);
      const double bound = std::abs(s.means.z()) / 2.0;
      const bool confirmed =
          std::min(s.covariance(0, 0), s.covariance(1, 1)) < bound - tol::squeeze_margin &&
          std::abs(s.covariance(0, 0) - pt.report->var_x) <= tol::residual;
      (confirmed ? result.squeezed : result.unverified).push_back(i);
    }
    result.points.push_back(std::move(pt));
  }
  return result;
}

ScanResult scan(const ScanGrid& grid) {
  const std::vector<FieldParams> pts = grid.points();
  return scan(grid.spin, pts, grid.family);
}

}  // namespace spinquasi
