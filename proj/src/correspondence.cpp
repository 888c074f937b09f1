#include "spinquasi/correspondence.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <numeric>
#include <utility>
#include <vector>

#include "spinquasi/detail/memo.hpp"

namespace spinquasi {

const char* to_string(Rule rule) { return rule == Rule::ww ? "ww" : "mh"; }

Rule parse_rule(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "ww") return Rule::ww;
  if (lower == "mh") return Rule::mh;
  throw Error(ErrorKind::MalformedInput, "unknown rule '" + std::string(text) + "'");
}

std::int64_t multinomial(int a, int b, int c) {
  // (a+b+c)! / (a! b! c!) as a product of binomials.
  auto binom = [](int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  return binom(a + b, b) * binom(a + b + c, c);
}

namespace {

// sum[a][b][c] over a box; S(a,b,c) = Jx S(a-1,b,c) + Jy S(a,b-1,c) + Jz S(a,b,c-1).
struct InterleavingTable {
  int na, nb, nc;
  std::vector<CMatrix> sums;
  std::vector<std::int64_t> counts;

  InterleavingTable(const SpinOps& ops, int max_a, int max_b, int max_c)
      : na(max_a + 1), nb(max_b + 1), nc(max_c + 1) {
    const int n = ops.spin.dim();
    sums.resize(static_cast<std::size_t>(na * nb * nc));
    counts.assign(sums.size(), 0);
    for (int d = 0; d <= max_a + max_b + max_c; ++d)
      for (int a = 0; a <= std::min(d, max_a); ++a)
        for (int b = 0; b <= std::min(d - a, max_b); ++b) {
          const int c = d - a - b;
          if (c > max_c) continue;
          const auto i = idx(a, b, c);
          if (d == 0) {
            sums[i] = CMatrix::Identity(n, n);
            counts[i] = 1;
            continue;
          }
          sums[i] = CMatrix::Zero(n, n);
          if (a > 0) {
            sums[i].noalias() += ops.jx * sums[idx(a - 1, b, c)];
            counts[i] += counts[idx(a - 1, b, c)];
          }
          if (b > 0) {
            sums[i].noalias() += ops.jy * sums[idx(a, b - 1, c)];
            counts[i] += counts[idx(a, b - 1, c)];
          }
          if (c > 0) {
            sums[i].noalias() += ops.jz * sums[idx(a, b, c - 1)];
            counts[i] += counts[idx(a, b, c - 1)];
          }
        }
  }

  std::size_t idx(int a, int b, int c) const {
    return static_cast<std::size_t>((a * nb + b) * nc + c);
  }
};

void require_degrees(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0)
    throw Error(ErrorKind::InvalidArguments, "negative moment degree");
}

CMatrix power(const CMatrix& m, int e) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < e; ++i) out = out * m;
  return out;
}

// Orderings that only move identity blocks coincide, so averaging over the
// distinct orderings of the nontrivial blocks gives the same operator. It also
// makes single-axis powers bit-identical to the WW ones.
CMatrix margenau_hill(const SpinOps& ops, int a, int b, int c) {
  std::vector<CMatrix> blocks;
  const int exps[3] = {a, b, c};
  for (int axis = 0; axis < 3; ++axis)
    if (exps[axis] > 0) blocks.push_back(power(ops[axis], exps[axis]));
  const int n = ops.spin.dim();
  if (blocks.empty()) return CMatrix::Identity(n, n);
  if (blocks.size() == 1) return blocks.front();
  std::vector<int> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  CMatrix sum = CMatrix::Zero(n, n);
  int terms = 0;
  do {
    CMatrix prod = blocks[order[0]];
    for (std::size_t i = 1; i < order.size(); ++i) prod = prod * blocks[order[i]];
    sum += prod;
    ++terms;
  } while (std::next_permutation(order.begin(), order.end()));
  return sum / static_cast<double>(terms);
}

// A single nonzero exponent has exactly one ordering under either rule.
bool single_axis(int a, int b, int c) { return (a > 0) + (b > 0) + (c > 0) <= 1; }

CMatrix single_axis_power(const SpinOps& ops, int a, int b, int c) {
  if (a > 0) return power(ops.jx, a);
  if (b > 0) return power(ops.jy, b);
  if (c > 0) return power(ops.jz, c);
  return CMatrix::Identity(ops.spin.dim(), ops.spin.dim());
}

CMatrix averaged_interleavings(const InterleavingTable& t, int a, int b, int c) {
  const auto i = t.idx(a, b, c);
  if (t.counts[i] != multinomial(a, b, c))
    throw Error(ErrorKind::InternalInvariant, "interleaving count != multinomial coefficient");
  return t.sums[i] / static_cast<double>(t.counts[i]);
}

}  // namespace

InterleavingSum interleaving_sum(const SpinOps& ops, int a, int b, int c) {
  require_degrees(a, b, c);
  const InterleavingTable t(ops, a, b, c);
  const auto i = t.idx(a, b, c);
  if (t.counts[i] != multinomial(a, b, c))
    throw Error(ErrorKind::InternalInvariant, "interleaving count != multinomial coefficient");
  return InterleavingSum{t.sums[i], t.counts[i]};
}

CMatrix symmetrized_product(Rule rule, int a, int b, int c, Spin spin) {
  require_degrees(a, b, c);
  const SpinOps ops = spin_operators(spin);
  if (rule == Rule::mh) return margenau_hill(ops, a, b, c);
  if (single_axis(a, b, c)) return single_axis_power(ops, a, b, c);
  const InterleavingSum s = interleaving_sum(ops, a, b, c);
  return s.sum / static_cast<double>(s.terms);
}

const SymmetrizerSet& symmetrizers(Rule rule, Spin spin) {
  static detail::Memo<std::pair<int, int>, SymmetrizerSet> memo;
  return memo.get({static_cast<int>(rule), spin.two_j()}, [&] {
    const SpinOps ops = spin_operators(spin);
    const int s = spin.dim();
    const int top = spin.two_j();
    SymmetrizerSet set{spin, rule, {}};
    set.ops.resize(static_cast<std::size_t>(s * s * s));
    if (rule == Rule::ww) {
      const InterleavingTable t(ops, top, top, top);
      for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= top; ++b)
          for (int c = 0; c <= top; ++c)
            set.ops[static_cast<std::size_t>((a * s + b) * s + c)] =
                single_axis(a, b, c) ? single_axis_power(ops, a, b, c)
                                     : averaged_interleavings(t, a, b, c);
    } else {
      for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= top; ++b)
          for (int c = 0; c <= top; ++c)
            set.ops[static_cast<std::size_t>((a * s + b) * s + c)] = margenau_hill(ops, a, b, c);
    }
    return set;
  });
}

namespace {

double real_moment(Complex value) {
  if (std::abs(value.imag()) > tol::imaginary_moment)
    throw Error(ErrorKind::NonRealMoment,
                "imaginary residual " + std::to_string(value.imag()));
  return value.real();
}

}  // namespace

double mixed_moment(const DensityMatrix& rho, Rule rule, int a, int b, int c) {
  require_degrees(a, b, c);
  const int top = rho.spin().two_j();
  if (a <= top && b <= top && c <= top)
    return real_moment(rho.expectation(symmetrizers(rule, rho.spin())(a, b, c)));
  return real_moment(rho.expectation(symmetrized_product(rule, a, b, c, rho.spin())));
}

MomentTable::MomentTable(Spin spin, Rule rule)
    : spin_(spin), rule_(rule),
      mu_(static_cast<std::size_t>(spin.dim() * spin.dim() * spin.dim()), 0.0) {}

MomentTable::MomentTable(Spin spin, Rule rule, std::vector<double> mu)
    : spin_(spin), rule_(rule), mu_(std::move(mu)) {
  const auto expected = static_cast<std::size_t>(spin.dim() * spin.dim() * spin.dim());
  if (mu_.size() != expected)
    throw Error(ErrorKind::InvalidArguments,
                "moment table needs " + std::to_string(expected) + " entries");
}

std::size_t MomentTable::index(int a, int b, int c) const {
  const int s = side();
  if (a < 0 || b < 0 || c < 0 || a >= s || b >= s || c >= s)
    throw Error(ErrorKind::OutOfRange, "moment index beyond 2j");
  return static_cast<std::size_t>((a * s + b) * s + c);
}

MomentTable moment_table(const DensityMatrix& rho, Rule rule) {
  const SymmetrizerSet& set = symmetrizers(rule, rho.spin());
  MomentTable table(rho.spin(), rule);
  const int s = table.side();
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c) table(a, b, c) = real_moment(rho.expectation(set(a, b, c)));
  return table;
}

Complex characteristic_function(const DensityMatrix& rho, Rule rule, const Eigen::Vector3d& arg) {
  if (!arg.allFinite())
    throw Error(ErrorKind::InvalidArguments, "characteristic function argument not finite");
  const SpinOps ops = spin_operators(rho.spin());
  if (rule == Rule::ww) {
    const CMatrix gen = arg.x() * ops.jx + arg.y() * ops.jy + arg.z() * ops.jz;
    return rho.expectation(unitary_from_hermitian_generator(gen, 1.0));
  }
  const std::array<CMatrix, 3> factors{unitary_from_hermitian_generator(ops.jx, arg.x()),
                                       unitary_from_hermitian_generator(ops.jy, arg.y()),
                                       unitary_from_hermitian_generator(ops.jz, arg.z())};
  std::array<int, 3> order{0, 1, 2};
  Complex sum = 0.0;
  do {
    sum += rho.expectation(factors[order[0]] * factors[order[1]] * factors[order[2]]);
  } while (std::next_permutation(order.begin(), order.end()));
  return sum / 6.0;
}

}  // namespace spinquasi
