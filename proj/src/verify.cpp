#include "spinquasi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spinquasi/io.hpp"

namespace spinquasi {

double orthogonality_residual(Spin spin) {
  const TensorBasis& basis = tensor_basis(spin);
  const double n = spin.dim();
  const auto count = basis.ops.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      const Complex g = (basis.ops[a] * basis.ops[b].adjoint()).trace();
      worst = std::max(worst, std::abs(g - (a == b ? n : 0.0)));
    }
  return worst;
}

double weyl_cg_residual(Spin spin) {
  const TensorBasis& basis = tensor_basis(spin);
  double worst = 0.0;
  for (int k = 0; k <= spin.two_j(); ++k)
    for (int q = -k; q <= k; ++q)
      worst = std::max(worst,
                       (basis(k, q) - tensor_operator_cg(spin, k, q).matrix).cwiseAbs().maxCoeff());
  return worst;
}

double sigma_algebra_residual() {
  const SigmaOps s = sigma_operators();
  const CMatrix jz2 = spin_operators(Spin(2)).jz * spin_operators(Spin(2)).jz;
  const CMatrix* sig[3] = {&s.s1, &s.s2, &s.s3};
  const Complex i(0.0, 1.0);
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CMatrix expect = (a == b) ? jz2 : CMatrix::Zero(3, 3);
      for (int c = 0; c < 3; ++c) {
        const int eps = (a - b) * (b - c) * (c - a) / 2;
        if (eps != 0) expect += i * static_cast<double>(eps) * *sig[c];
      }
      worst = std::max(worst, ((*sig[a]) * (*sig[b]) - expect).cwiseAbs().maxCoeff());
    }
  return worst;
}

MomentRank moment_rank(Rule rule, int states, std::mt19937_64& rng, double ratio_threshold) {
  const Spin spin(2);
  Eigen::MatrixXd data(states, 27);
  for (int r = 0; r < states; ++r) {
    const MomentTable mt = moment_table(random_density(spin, rng), rule);
    for (int c = 0; c < 27; ++c) data(r, c) = mt.values()[static_cast<std::size_t>(c)];
  }
  data.rowwise() -= data.colwise().mean();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(data);
  const Eigen::VectorXd& sv = svd.singularValues();
  MomentRank out;
  if (sv.size() == 0 || sv(0) == 0.0) return out;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > ratio_threshold * sv(0)) ++out.rank;
  if (sv.size() > 7) out.ratio_8 = sv(7) / sv(0);
  if (sv.size() > 8) out.ratio_9 = sv(8) / sv(0);
  return out;
}

RoundTrip round_trip(const DensityMatrix& rho, Rule rule) {
  const MomentTable mt = moment_table(rho, rule);
  const Pmf pmf = pmf_from_moments(mt);
  RoundTrip out;
  const int s = mt.side();
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c)
        out.moment_residual =
            std::max(out.moment_residual, std::abs(reconstruct_moment(pmf, a, b, c) - mt(a, b, c)));
  out.normalization_residual = std::abs(pmf.total() - 1.0);
  return out;
}

double marginal_disagreement(const DensityMatrix& rho) {
  const Pmf ww = pmf_from_moments(moment_table(rho, Rule::ww));
  const Pmf mh = pmf_from_moments(moment_table(rho, Rule::mh));
  double worst = 0.0;
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const std::vector<double> pw = marginal(ww, {a}).values();
    const std::vector<double> pm = marginal(mh, {a}).values();
    for (std::size_t i = 0; i < pw.size(); ++i) worst = std::max(worst, std::abs(pw[i] - pm[i]));
  }
  return worst;
}

namespace {

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, double value, double limit) {
    const bool ok = value <= limit;
    if (!ok) ++failures;
    out << (ok ? "PASS " : "FAIL ") << name << ": " << io::format_number(value)
        << " (limit " << io::format_number(limit) << ")\n";
  }
};

}  // namespace

int run_verification(std::uint64_t seed, std::ostream& out) {
  Reporter rep{out};
  std::mt19937_64 rng(seed);
  out << "seed " << seed << '\n';

  double ortho = 0.0;
  for (int two_j = 1; two_j <= 12; ++two_j) ortho = std::max(ortho, orthogonality_residual(Spin(two_j)));
  rep.check("tensor orthogonality, j <= 6", ortho, 1e-10);

  double weyl = 0.0;
  for (int two_j = 1; two_j <= 8; ++two_j) weyl = std::max(weyl, weyl_cg_residual(Spin(two_j)));
  rep.check("Weyl construction matches Clebsch-Gordan, j <= 4", weyl, 1e-10);

  rep.check("Sigma algebra", sigma_algebra_residual(), 1e-12);

  for (Rule rule : {Rule::ww, Rule::mh}) {
    const MomentRank r = moment_rank(rule, 40, rng);
    rep.check(std::string("moment rank (") + to_string(rule) + ") is 8",
              std::abs(r.rank - 8.0), 0.0);
  }

  for (int two_j : {1, 2, 3}) {
    RoundTrip worst;
    for (int s = 0; s < 100; ++s) {
      const DensityMatrix rho = random_density(Spin(two_j), rng);
      for (Rule rule : {Rule::ww, Rule::mh}) {
        const RoundTrip rt = round_trip(rho, rule);
        worst.moment_residual = std::max(worst.moment_residual, rt.moment_residual);
        worst.normalization_residual =
            std::max(worst.normalization_residual, rt.normalization_residual);
      }
    }
    const std::string tag = "j = " + io::format_number(0.5 * two_j);
    rep.check("moment round trip, " + tag, worst.moment_residual, 1e-10);
    rep.check("normalization, " + tag, worst.normalization_residual, 1e-10);
  }

  double marg = 0.0;
  for (int s = 0; s < 100; ++s) marg = std::max(marg, marginal_disagreement(random_density(Spin(2), rng)));
  rep.check("WW and MH univariate marginals agree", marg, 1e-10);

  std::vector<DensityMatrix> samples;
  for (int s = 0; s < 100; ++s) samples.push_back(random_density(Spin(2), rng));
  for (Rule rule : {Rule::ww, Rule::mh}) {
    const auto table = compare_closed_form(samples, rule);
    out << "closed-form deviation (" << to_string(rule) << ")\n";
    for (const auto& row : table)
      out << "  " << to_string(row.cls) << " points=" << row.points
          << " max_abs=" << io::format_number(row.max_abs) << '\n';
    if (rule == Rule::mh)
      for (const auto& row : table)
        if (row.cls == PointClass::center) rep.check("MH closed-form center", row.max_abs, 1e-10);
  }

  out << (rep.failures == 0 ? "all checks passed" : std::to_string(rep.failures) + " check(s) failed")
      << '\n';
  return rep.failures;
}

}  // namespace spinquasi
