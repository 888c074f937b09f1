#include "spinquasi/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinquasi {

namespace {

std::size_t ipow(int base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void require_axes(const std::vector<Axis>& axes) {
  if (axes.empty() || axes.size() > 3)
    throw Error(ErrorKind::InvalidArguments, "need 1 to 3 variates");
  for (std::size_t i = 1; i < axes.size(); ++i)
    if (static_cast<int>(axes[i]) <= static_cast<int>(axes[i - 1]))
      throw Error(ErrorKind::InvalidArguments, "variates must be distinct and in x, y, z order");
}

std::vector<Axis> normalized_axes(std::vector<Axis> axes) {
  std::sort(axes.begin(), axes.end());
  axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
  return axes;
}

// data has `dims` axes of length n, row-major. Replaces axis `axis` by L along it.
void apply_along_axis(std::vector<double>& data, int dims, int n, int axis,
                      const Eigen::MatrixXd& l) {
  const std::size_t inner = ipow(n, dims - 1 - axis);
  const std::size_t outer = ipow(n, axis);
  std::vector<double> out(data.size(), 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in)
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int alpha = 0; alpha < n; ++alpha)
          s += l(i, alpha) * data[(o * n + alpha) * inner + in];
        out[(o * n + i) * inner + in] = s;
      }
  data = std::move(out);
}

}  // namespace

// --- Pmf --------------------------------------------------------------------

Pmf::Pmf(Spin spin, Rule rule, std::vector<Axis> axes, std::vector<double> p)
    : spin_(spin), rule_(rule), axes_(std::move(axes)), p_(std::move(p)) {
  require_axes(axes_);
  if (p_.size() != ipow(spin.dim(), variates()))
    throw Error(ErrorKind::InvalidArguments, "PMF size does not match (2j+1)^variates");
}

double Pmf::at(std::span<const int> nodes) const {
  if (static_cast<int>(nodes.size()) != variates())
    throw Error(ErrorKind::InvalidArguments, "wrong number of node indices");
  std::size_t idx = 0;
  for (int v : nodes) {
    if (v < 0 || v >= side()) throw Error(ErrorKind::OutOfRange, "node index");
    idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(v);
  }
  return p_[idx];
}

double Pmf::operator()(int ix, int iy, int iz) const {
  const std::array<int, 3> nodes{ix, iy, iz};
  return at(nodes);
}

double Pmf::at_m(double mx, double my, double mz) const {
  auto node = [&](double m) {
    const double i = spin_.j() - m;
    const double r = std::round(i);
    if (std::abs(i - r) > 1e-9 || r < 0 || r >= side())
      throw Error(ErrorKind::OutOfRange, "projection is not a grid node");
    return static_cast<int>(r);
  };
  return (*this)(node(mx), node(my), node(mz));
}

double Pmf::total() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

// --- inversion --------------------------------------------------------------

Eigen::MatrixXd lagrange_inverse(Spin spin) {
  const int n = spin.dim();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    // Expand prod_{k != i} (x - m_k) / (m_i - m_k), lowest power first.
    std::vector<double> poly{1.0};
    const double mi = spin.m(i);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const double mk = spin.m(k);
      const double scale = 1.0 / (mi - mk);
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t p = 0; p < poly.size(); ++p) {
        next[p + 1] += poly[p] * scale;
        next[p] -= poly[p] * mk * scale;
      }
      poly = std::move(next);
    }
    for (int alpha = 0; alpha < n; ++alpha) l(i, alpha) = poly[static_cast<std::size_t>(alpha)];
  }

  Eigen::MatrixXd v(n, n);
  for (int alpha = 0; alpha < n; ++alpha)
    for (int i = 0; i < n; ++i) v(alpha, i) = std::pow(spin.m(i), alpha);
  const double residual = (l * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > tol::inversion_residual)
    throw Error(ErrorKind::IllConditioned,
                "Lagrange inverse residual " + std::to_string(residual));
  return l;
}

Pmf marginal_from_moments(const MomentTable& mt, std::vector<Axis> keep) {
  keep = normalized_axes(std::move(keep));
  require_axes(keep);
  if (std::abs(mt(0, 0, 0) - 1.0) > tol::trace)
    throw Error(ErrorKind::InvalidArguments, "mu^{000} must be 1");

  const Spin spin = mt.spin();
  const int n = spin.dim();
  const int d = static_cast<int>(keep.size());

  // Gather the sub-table mu with zero exponent on dropped variates.
  std::vector<double> data(ipow(n, d), 0.0);
  std::array<int, 3> exps{0, 0, 0};
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rest = flat;
    for (int v = d - 1; v >= 0; --v) {
      exps[static_cast<std::size_t>(keep[static_cast<std::size_t>(v)])] =
          static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    data[flat] = mt(exps[0], exps[1], exps[2]);
  }

  const Eigen::MatrixXd l = lagrange_inverse(spin);
  for (int axis = 0; axis < d; ++axis) apply_along_axis(data, d, n, axis, l);
  return Pmf(spin, mt.rule(), std::move(keep), std::move(data));
}

Pmf pmf_from_moments(const MomentTable& mt) {
  Pmf p = marginal_from_moments(mt, {Axis::x, Axis::y, Axis::z});
  if (std::abs(p.total() - 1.0) > tol::normalization)
    throw Error(ErrorKind::InternalInvariant, "inverted PMF does not sum to 1");
  return p;
}

Pmf marginal(const Pmf& pmf, std::vector<Axis> keep) {
  keep = normalized_axes(std::move(keep));
  require_axes(keep);
  const auto& have = pmf.axes();
  std::vector<int> positions;  // position of each kept axis within pmf
  for (Axis a : keep) {
    const auto it = std::find(have.begin(), have.end(), a);
    if (it == have.end())
      throw Error(ErrorKind::InvalidArguments, "marginal keeps a variate the PMF lacks");
    positions.push_back(static_cast<int>(it - have.begin()));
  }
  if (keep.size() == have.size())
    throw Error(ErrorKind::InvalidArguments, "marginal needs a proper subset of the variates");

  const int n = pmf.side();
  const int d = pmf.variates();
  const int dk = static_cast<int>(keep.size());
  std::vector<double> out(ipow(n, dk), 0.0);
  std::vector<int> digits(static_cast<std::size_t>(d));
  const auto& values = pmf.values();
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    std::size_t rest = flat;
    for (int v = d - 1; v >= 0; --v) {
      digits[static_cast<std::size_t>(v)] = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
    }
    std::size_t target = 0;
    for (int pos : positions)
      target = target * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(digits[static_cast<std::size_t>(pos)]);
    out[target] += values[flat];
  }
  return Pmf(pmf.spin(), pmf.rule(), std::move(keep), std::move(out));
}

double reconstruct_moment(const Pmf& pmf, int alpha, int beta, int gamma) {
  const std::array<int, 3> exps{alpha, beta, gamma};
  for (int e : exps)
    if (e < 0) throw Error(ErrorKind::InvalidArguments, "negative exponent");
  const auto& axes = pmf.axes();
  for (int a = 0; a < 3; ++a)
    if (exps[static_cast<std::size_t>(a)] != 0 &&
        std::find(axes.begin(), axes.end(), static_cast<Axis>(a)) == axes.end())
      throw Error(ErrorKind::InvalidArguments, "nonzero exponent on a summed-out variate");

  const int n = pmf.side();
  const int d = pmf.variates();
  const Spin spin = pmf.spin();
  const auto& values = pmf.values();
  double sum = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    std::size_t rest = flat;
    double weight = 1.0;
    for (int v = d - 1; v >= 0; --v) {
      const int node = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      const int e = exps[static_cast<std::size_t>(axes[static_cast<std::size_t>(v)])];
      weight *= std::pow(spin.m(node), e);
    }
    sum += weight * values[flat];
  }
  return sum;
}

NegativityReport negativity(const Pmf& pmf) {
  NegativityReport r;
  const auto& v = pmf.values();
  r.min_value = *std::min_element(v.begin(), v.end());
  for (double p : v)
    if (p < 0.0) {
      r.negative_mass += p;
      ++r.num_negative;
    }
  return r;
}

// --- spin-1 closed forms ----------------------------------------------------

const char* to_string(PointClass cls) {
  switch (cls) {
    case PointClass::corner: return "corner";
    case PointClass::edge: return "edge";
    case PointClass::face: return "face";
    case PointClass::center: return "center";
  }
  return "unknown";
}

PointClass point_class(double mx, double my, double mz) {
  const int nonzero = (mx != 0.0) + (my != 0.0) + (mz != 0.0);
  switch (nonzero) {
    case 3: return PointClass::corner;
    case 2: return PointClass::edge;
    case 1: return PointClass::face;
    default: return PointClass::center;
  }
}

Pmf pmf_closed_form_spin1(const DensityMatrix& rho, Rule rule) {
  if (rho.spin().two_j() != 2)
    throw Error(ErrorKind::WrongSpin, "closed forms exist for j = 1 only");
  const CartesianStats s = cartesian_stats(rho);
  const Spin spin = rho.spin();

  std::vector<double> p(27, 0.0);
  for (int ix = 0; ix < 3; ++ix)
    for (int iy = 0; iy < 3; ++iy)
      for (int iz = 0; iz < 3; ++iz) {
        const std::array<double, 3> m{spin.m(ix), spin.m(iy), spin.m(iz)};
        double linear = 0.0;  // sum_i m_i <J_i>
        double square = 0.0;  // sum_i m_i^2 <J_i^2>
        double cross = 0.0;   // sum_{i != k} m_i m_k <J_i J_k + J_k J_i>, ordered pairs
        for (int i = 0; i < 3; ++i) {
          linear += m[i] * s.means(i);
          square += m[i] * m[i] * s.second_moments(i, i);
          for (int k = 0; k < 3; ++k)
            if (k != i) cross += m[i] * m[k] * 2.0 * s.second_moments(i, k);
        }
        double v = 0.0;
        const PointClass cls = point_class(m[0], m[1], m[2]);
        if (rule == Rule::mh) {
          switch (cls) {
            case PointClass::corner: v = linear / 48.0 + cross / 48.0; break;
            case PointClass::edge:
              v = linear / 12.0 + (square - 1.0) / 4.0 + cross / 48.0;
              break;
            case PointClass::face: v = linear / 12.0; break;
            case PointClass::center: v = 0.0; break;
          }
        } else {
          switch (cls) {
            case PointClass::corner: v = linear / 120.0 + cross / 96.0; break;
            case PointClass::edge: v = linear / 15.0 + cross / 12.0; break;
            case PointClass::face: v = linear / 5.0 + 5.0 / 12.0 * square - 1.0 / 6.0; break;
            case PointClass::center: v = -1.0 / 3.0; break;
          }
        }
        p[static_cast<std::size_t>((ix * 3 + iy) * 3 + iz)] = v;
      }
  return Pmf(spin, rule, {Axis::x, Axis::y, Axis::z}, std::move(p));
}

std::vector<ClassDeviation> compare_closed_form(std::span<const DensityMatrix> samples, Rule rule) {
  if (samples.empty()) return {};
  std::vector<ClassDeviation> table{{PointClass::corner, 8, 0.0},
                                    {PointClass::edge, 12, 0.0},
                                    {PointClass::face, 6, 0.0},
                                    {PointClass::center, 1, 0.0}};
  for (const DensityMatrix& rho : samples) {
    const Pmf closed = pmf_closed_form_spin1(rho, rule);
    const Pmf inverted = pmf_from_moments(moment_table(rho, rule));
    const Spin spin = rho.spin();
    for (int ix = 0; ix < 3; ++ix)
      for (int iy = 0; iy < 3; ++iy)
        for (int iz = 0; iz < 3; ++iz) {
          const auto cls = point_class(spin.m(ix), spin.m(iy), spin.m(iz));
          auto& row = table[static_cast<std::size_t>(cls)];
          row.max_abs = std::max(row.max_abs, std::abs(closed(ix, iy, iz) - inverted(ix, iy, iz)));
        }
  }
  return table;
}

}  // namespace spinquasi
