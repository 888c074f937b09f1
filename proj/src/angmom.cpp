#include "spinquasi/angmom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinquasi/detail/memo.hpp"

namespace spinquasi {

namespace {

constexpr int kMaxFactorial = 30;

const std::array<double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

double factorial(int n) {
  if (n < 0 || n > kMaxFactorial)
    throw Error(ErrorKind::OutOfRange, "factorial argument " + std::to_string(n));
  return factorial_table()[static_cast<std::size_t>(n)];
}

int twice(double v, const char* name) {
  const double t = 2.0 * v;
  const double r = std::round(t);
  if (!std::isfinite(t) || std::abs(t - r) > 1e-9)
    throw Error(ErrorKind::InvalidArguments, std::string(name) + " is not a multiple of 1/2");
  return static_cast<int>(r);
}

void require_tensor_rank(Spin spin, int k, int q) {
  if (k < 0 || k > spin.two_j() || std::abs(q) > k)
    throw Error(ErrorKind::OutOfRange,
                "tensor rank k=" + std::to_string(k) + ", q=" + std::to_string(q) +
                    " outside 0 <= k <= 2j, |q| <= k");
}

}  // namespace

Spin::Spin(int two_j) : two_j_(two_j) {
  if (two_j < 1) throw Error(ErrorKind::InvalidArguments, "2j must be >= 1");
}

Spin Spin::from_j(double j) { return Spin(twice(j, "j")); }

CMatrix raising_operator(Spin spin) {
  const int n = spin.dim();
  const double j = spin.j();
  CMatrix jp = CMatrix::Zero(n, n);
  // column i holds |m>, row i-1 holds |m+1>
  for (int i = 1; i < n; ++i) {
    const double m = spin.m(i);
    jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  return jp;
}

SpinOps spin_operators(Spin spin) {
  const int n = spin.dim();
  const CMatrix jp = raising_operator(spin);
  const CMatrix jm = jp.adjoint();
  CMatrix jz = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) jz(i, i) = spin.m(i);
  const Complex two_i(0.0, 2.0);
  return SpinOps{spin, (jp + jm) / 2.0, (jp - jm) / two_i, jz};
}

double clebsch_gordan_twice(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  auto check = [](int tj, int tm) {
    if (tj < 0 || std::abs(tm) > tj || (tj + tm) % 2 != 0)
      throw Error(ErrorKind::InvalidArguments, "j, m mismatch in CG arguments");
  };
  check(tj1, tm1);
  check(tj2, tm2);
  check(tJ, tM);

  if (tM != tm1 + tm2) return 0.0;
  if (tJ > tj1 + tj2 || tJ < std::abs(tj1 - tj2) || (tj1 + tj2 + tJ) % 2 != 0) return 0.0;

  // All arguments below are integers after halving.
  const int a = (tJ + tj1 - tj2) / 2;
  const int b = (tJ - tj1 + tj2) / 2;
  const int c = (tj1 + tj2 - tJ) / 2;
  const int d = (tj1 + tj2 + tJ) / 2 + 1;

  const double pref =
      std::sqrt((tJ + 1) * factorial(a) * factorial(b) * factorial(c) / factorial(d)) *
      std::sqrt(factorial((tJ + tM) / 2) * factorial((tJ - tM) / 2) * factorial((tj1 - tm1) / 2) *
                factorial((tj1 + tm1) / 2) * factorial((tj2 - tm2) / 2) *
                factorial((tj2 + tm2) / 2));

  const int e1 = c;                     // j1 + j2 - J - k
  const int e2 = (tj1 - tm1) / 2;       // j1 - m1 - k
  const int e3 = (tj2 + tm2) / 2;       // j2 + m2 - k
  const int e4 = (tJ - tj2 + tm1) / 2;  // J - j2 + m1 + k
  const int e5 = (tJ - tj1 - tm2) / 2;  // J - j1 - m2 + k

  double sum = 0.0;
  const int kmin = std::max({0, -e4, -e5});
  const int kmax = std::min({e1, e2, e3});
  for (int k = kmin; k <= kmax; ++k) {
    const double denom = factorial(k) * factorial(e1 - k) * factorial(e2 - k) *
                         factorial(e3 - k) * factorial(e4 + k) * factorial(e5 + k);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) / denom;
  }
  return pref * sum;
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
  return clebsch_gordan_twice(twice(j1, "j1"), twice(m1, "m1"), twice(j2, "j2"), twice(m2, "m2"),
                              twice(J, "J"), twice(M, "M"));
}

// --- polynomials -----------------------------------------------------------

HomogeneousPolynomial::HomogeneousPolynomial(int degree)
    : degree_(degree),
      coeffs_(static_cast<std::size_t>((degree + 1) * (degree + 1)), Complex(0.0)) {
  if (degree < 0) throw Error(ErrorKind::InvalidArguments, "negative polynomial degree");
}

std::size_t HomogeneousPolynomial::index(int a, int b) const {
  return static_cast<std::size_t>(a * (degree_ + 1) + b);
}

Complex HomogeneousPolynomial::coefficient(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) return 0.0;
  return coeffs_[index(a, b)];
}

void HomogeneousPolynomial::add(int a, int b, int c, Complex value) {
  if (a < 0 || b < 0 || c < 0 || a + b + c != degree_)
    throw Error(ErrorKind::InvalidArguments, "monomial degree mismatch");
  coeffs_[index(a, b)] += value;
}

HomogeneousPolynomial HomogeneousPolynomial::times_linear(Complex cx, Complex cy,
                                                          Complex cz) const {
  HomogeneousPolynomial out(degree_ + 1);
  for (int a = 0; a <= degree_; ++a)
    for (int b = 0; a + b <= degree_; ++b) {
      const int c = degree_ - a - b;
      const Complex v = coeffs_[index(a, b)];
      if (v == Complex(0.0)) continue;
      out.add(a + 1, b, c, v * cx);
      out.add(a, b + 1, c, v * cy);
      out.add(a, b, c + 1, v * cz);
    }
  return out;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator+=(const HomogeneousPolynomial& other) {
  if (other.degree_ != degree_)
    throw Error(ErrorKind::InvalidArguments, "adding polynomials of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Complex HomogeneousPolynomial::operator()(double x, double y, double z) const {
  Complex sum = 0.0;
  for (int a = 0; a <= degree_; ++a)
    for (int b = 0; a + b <= degree_; ++b)
      sum += coeffs_[index(a, b)] * std::pow(x, a) * std::pow(y, b) *
             std::pow(z, degree_ - a - b);
  return sum;
}

HomogeneousPolynomial solid_harmonic(int k, int q) {
  if (k < 0 || std::abs(q) > k)
    throw Error(ErrorKind::OutOfRange, "solid harmonic needs |q| <= k");
  // r^k Y^k_q = sqrt((2k+1)/4pi (k+q)!(k-q)!) *
  //   sum_{p-s=q, p+s+t=k} (-(x+iy)/2)^p ((x-iy)/2)^s z^t / (p! s! t!)
  const Complex i(0.0, 1.0);
  HomogeneousPolynomial total(k);
  for (int p = std::max(0, q); p <= k; ++p) {
    const int s = p - q;
    const int t = k - p - s;
    if (s < 0 || t < 0) continue;
    HomogeneousPolynomial term(0);
    term.add(0, 0, 0, 1.0);
    for (int n = 0; n < p; ++n) term = term.times_linear(-0.5, -0.5 * i, 0.0);
    for (int n = 0; n < s; ++n) term = term.times_linear(0.5, -0.5 * i, 0.0);
    for (int n = 0; n < t; ++n) term = term.times_linear(0.0, 0.0, 1.0);
    term *= 1.0 / (factorial(p) * factorial(s) * factorial(t));
    total += term;
  }
  total *= std::sqrt((2 * k + 1) / (4.0 * std::numbers::pi) * factorial(k + q) *
                     factorial(k - q));
  return total;
}

double weyl_normalization(Spin spin, int k) {
  const int tj = spin.two_j();
  if (k < 0 || k > tj) throw Error(ErrorKind::OutOfRange, "k outside 0..2j");
  return std::pow(2.0, k) / factorial(k) *
         std::sqrt(4.0 * std::numbers::pi * factorial(tj - k) * (tj + 1) / factorial(tj + k + 1));
}

// --- Weyl construction ------------------------------------------------------

WeylDerivativeTable::WeylDerivativeTable(const SpinOps& ops, int max_degree)
    : max_degree_(max_degree) {
  const int side = max_degree + 1;
  table_.resize(static_cast<std::size_t>(side * side * side));
  const int n = ops.spin.dim();
  // (J.grad)^d x^a y^b z^c: peel one factor of (J.grad); the derivative
  // brings down the exponent and the operator multiplies on the right.
  for (int d = 0; d <= max_degree; ++d)
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        const int c = d - a - b;
        CMatrix& m = table_[index(a, b, c)];
        if (d == 0) {
          m = CMatrix::Identity(n, n);
          continue;
        }
        m = CMatrix::Zero(n, n);
        if (a > 0) m.noalias() += double(a) * table_[index(a - 1, b, c)] * ops.jx;
        if (b > 0) m.noalias() += double(b) * table_[index(a, b - 1, c)] * ops.jy;
        if (c > 0) m.noalias() += double(c) * table_[index(a, b, c - 1)] * ops.jz;
      }
}

std::size_t WeylDerivativeTable::index(int a, int b, int c) const {
  const int side = max_degree_ + 1;
  return static_cast<std::size_t>((a * side + b) * side + c);
}

const CMatrix& WeylDerivativeTable::operator()(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0 || a + b + c > max_degree_)
    throw Error(ErrorKind::OutOfRange, "monomial degree beyond derivative table");
  return table_[index(a, b, c)];
}

CMatrix WeylDerivativeTable::apply(const HomogeneousPolynomial& p) const {
  const int d = p.degree();
  const CMatrix& unit = (*this)(0, 0, 0);
  CMatrix out = CMatrix::Zero(unit.rows(), unit.cols());
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) {
      const Complex coeff = p.coefficient(a, b, d - a - b);
      if (coeff != Complex(0.0)) out += coeff * (*this)(a, b, d - a - b);
    }
  return out;
}

namespace {

const WeylDerivativeTable& derivative_table(Spin spin) {
  static detail::Memo<int, WeylDerivativeTable> memo;
  return memo.get(spin.two_j(), [&] {
    return WeylDerivativeTable(spin_operators(spin), spin.two_j());
  });
}

}  // namespace

TensorOp tensor_operator_weyl(Spin spin, int k, int q) {
  require_tensor_rank(spin, k, q);
  CMatrix m = weyl_normalization(spin, k) * derivative_table(spin).apply(solid_harmonic(k, q));
  return TensorOp{spin, k, q, std::move(m)};
}

TensorOp tensor_operator_cg(Spin spin, int k, int q) {
  require_tensor_rank(spin, k, q);
  const int n = spin.dim();
  const int tj = spin.two_j();
  CMatrix m = CMatrix::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    const int tm = tj - 2 * col;
    const int tmp = tm + 2 * q;
    if (std::abs(tmp) > tj) continue;
    const int row = (tj - tmp) / 2;
    m(row, col) = std::sqrt(2.0 * k + 1.0) * clebsch_gordan_twice(tj, tm, 2 * k, 2 * q, tj, tmp);
  }
  return TensorOp{spin, k, q, std::move(m)};
}

const TensorBasis& tensor_basis(Spin spin) {
  static detail::Memo<int, TensorBasis> memo;
  return memo.get(spin.two_j(), [&] {
    TensorBasis basis{spin, {}};
    const int tj = spin.two_j();
    basis.ops.resize(static_cast<std::size_t>((tj + 1) * (tj + 1)));
    for (int k = 0; k <= tj; ++k)
      for (int q = -k; q <= k; ++q)
        basis.ops[static_cast<std::size_t>(tensor_index(k, q))] =
            tensor_operator_weyl(spin, k, q).matrix;
    return basis;
  });
}

SigmaOps sigma_operators() {
  const SpinOps j = spin_operators(Spin(2));
  return SigmaOps{j.jx * j.jx - j.jy * j.jy, j.jx * j.jy + j.jy * j.jx, j.jz};
}

CMatrix rotation_operator(Spin spin, const Eigen::Vector3d& axis, double angle) {
  const double norm = axis.norm();
  if (!(norm > 0.0) || !std::isfinite(angle))
    throw Error(ErrorKind::InvalidArguments, "rotation axis must be nonzero and angle finite");
  const Eigen::Vector3d n = axis / norm;
  const SpinOps j = spin_operators(spin);
  const CMatrix generator = n.x() * j.jx + n.y() * j.jy + n.z() * j.jz;
  return unitary_from_hermitian_generator(generator, -angle);
}

}  // namespace spinquasi
