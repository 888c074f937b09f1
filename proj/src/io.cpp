#include "spinquasi/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace spinquasi::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedInput, what);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) malformed(std::string(what) + " must be a number");
  return v.get<double>();
}

int integer(const json& v, const char* what) {
  if (!v.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return v.get<int>();
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "m_x";
    case Axis::y: return "m_y";
    case Axis::z: break;
  }
  return "m_z";
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

json spin_json(Spin spin) {
  if (spin.two_j() % 2 == 0) return spin.two_j() / 2;
  return spin.j();
}

Spin spin_from_json(const json& value) {
  const double j = number(value, "j");
  try {
    return Spin::from_j(j);
  } catch (const Error& e) {
    malformed(e.what());
  }
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& value) {
  if (!value.is_array() || value.empty()) malformed("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(value.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = value[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      malformed("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(number(e[0], "matrix entry"), number(e[1], "matrix entry"));
      } else {
        malformed("matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

DensityMatrix state_from_json(const json& doc, Positivity mode) {
  if (!doc.is_object() || !doc.contains("j")) malformed("state needs a \"j\" field");
  const Spin spin = spin_from_json(doc.at("j"));
  const bool has_matrix = doc.contains("matrix");
  const bool has_params = doc.contains("tensor_params");
  if (has_matrix == has_params)
    malformed("state needs exactly one of \"matrix\" or \"tensor_params\"");

  if (has_matrix) {
    const CMatrix m = matrix_from_json(doc.at("matrix"));
    if (m.rows() != spin.dim()) malformed("matrix dimension does not match 2j+1");
    return density_from_matrix(m, spin, mode);
  }

  const json& list = doc.at("tensor_params");
  if (!list.is_array()) malformed("tensor_params must be an array");
  TensorParams tp(spin);
  for (const json& item : list) {
    if (!item.is_object() || !item.contains("k") || !item.contains("q"))
      malformed("tensor parameter entries need k and q");
    const int k = integer(item.at("k"), "k");
    const int q = integer(item.at("q"), "q");
    const double re = item.contains("re") ? number(item.at("re"), "re") : 0.0;
    const double im = item.contains("im") ? number(item.at("im"), "im") : 0.0;
    try {
      tp.set(k, q, Complex(re, im));
    } catch (const Error& e) {
      malformed(e.what());
    }
  }
  return density_from_tensor_params(tp, mode);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    malformed(path + ": " + e.what());
  }
}

DensityMatrix read_state_file(const std::string& path, Positivity mode) {
  return state_from_json(read_json_file(path), mode);
}

json to_json(const DensityMatrix& rho) {
  return json{{"j", spin_json(rho.spin())}, {"matrix", matrix_json(rho.matrix())}};
}

json to_json(const TensorParams& tp) {
  json list = json::array();
  for (int k = 0; k <= tp.spin().two_j(); ++k)
    for (int q = -k; q <= k; ++q) {
      const Complex t = tp(k, q);
      list.push_back({{"k", k}, {"q", q}, {"re", t.real()}, {"im", t.imag()}});
    }
  return list;
}

json to_json(const CartesianStats& s) {
  auto mat = [](const Eigen::Matrix3d& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
    return rows;
  };
  return json{{"means", {s.means.x(), s.means.y(), s.means.z()}},
              {"second_moments", mat(s.second_moments)},
              {"covariance", mat(s.covariance)}};
}

json to_json(const MomentTable& mt) {
  json mu = json::array();
  const int s = mt.side();
  for (int a = 0; a < s; ++a) {
    json plane = json::array();
    for (int b = 0; b < s; ++b) {
      json row = json::array();
      for (int c = 0; c < s; ++c) row.push_back(mt(a, b, c));
      plane.push_back(std::move(row));
    }
    mu.push_back(std::move(plane));
  }
  return json{{"rule", to_string(mt.rule())}, {"j", spin_json(mt.spin())}, {"mu", std::move(mu)}};
}

MomentTable moment_table_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rule") || !doc.contains("j") || !doc.contains("mu"))
    malformed("moment table needs rule, j and mu");
  const Rule rule = parse_rule(doc.at("rule").get<std::string>());
  const Spin spin = spin_from_json(doc.at("j"));
  MomentTable mt(spin, rule);
  const json& mu = doc.at("mu");
  const int s = spin.dim();
  auto sized = [s](const json& v) { return v.is_array() && static_cast<int>(v.size()) == s; };
  if (!sized(mu)) malformed("mu has the wrong shape");
  for (int a = 0; a < s; ++a) {
    if (!sized(mu[a])) malformed("mu has the wrong shape");
    for (int b = 0; b < s; ++b) {
      if (!sized(mu[a][b])) malformed("mu has the wrong shape");
      for (int c = 0; c < s; ++c) mt(a, b, c) = number(mu[a][b][c], "mu entry");
    }
  }
  return mt;
}

namespace {

// Visits every entry with its projection values, in storage (descending) order.
template <typename F>
void for_each_entry(const Pmf& pmf, F&& f) {
  const int n = pmf.side();
  const int d = pmf.variates();
  const auto& values = pmf.values();
  std::vector<double> m(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    std::size_t rest = flat;
    for (int v = d - 1; v >= 0; --v) {
      m[static_cast<std::size_t>(v)] =
          pmf.spin().m(static_cast<int>(rest % static_cast<std::size_t>(n)));
      rest /= static_cast<std::size_t>(n);
    }
    f(m, values[flat]);
  }
}

}  // namespace

json to_json(const Pmf& pmf) {
  json rows = json::array();
  for_each_entry(pmf, [&](const std::vector<double>& m, double p) {
    json row = json::object();
    for (std::size_t v = 0; v < m.size(); ++v) row[axis_name(pmf.axes()[v])] = m[v];
    row["p"] = p;
    rows.push_back(std::move(row));
  });
  std::string axes;
  for (Axis a : pmf.axes()) axes += "xyz"[static_cast<int>(a)];
  return json{{"rule", to_string(pmf.rule())},
              {"j", spin_json(pmf.spin())},
              {"variates", axes},
              {"pmf", std::move(rows)}};
}

json to_json(const NegativityReport& r) {
  return json{{"min_value", r.min_value},
              {"negative_mass", r.negative_mass},
              {"num_negative", r.num_negative}};
}

json to_json(const SqueezeReport& r) {
  return json{{"var_x", r.var_x},
              {"var_y", r.var_y},
              {"bound", r.bound},
              {"squeezed_x", r.squeezed_x},
              {"squeezed_y", r.squeezed_y},
              {"tensor_lhs", r.tensor_lhs},
              {"tensor_rhs", r.tensor_rhs},
              {"covariance_residual", r.covariance_residual},
              {"mean_z", r.mean_z},
              {"tensor_squeezed", r.tensor_squeezed},
              {"schrodinger_ok", r.schrodinger_ok},
              {"robertson_ok", r.robertson_ok},
              {"squeezed", r.squeezed()}};
}

json to_json(const std::vector<ClassDeviation>& table, Rule rule) {
  json rows = json::array();
  for (const auto& row : table)
    rows.push_back(
        {{"class", to_string(row.cls)}, {"points", row.points}, {"max_abs_deviation", row.max_abs}});
  return json{{"rule", to_string(rule)}, {"classes", std::move(rows)}};
}

json to_json(const ScanResult& result) {
  json points = json::array();
  for (const auto& pt : result.points) {
    json p{{"index", pt.index},
           {"omega_l", pt.params.omega_l},
           {"omega_q", pt.params.omega_q},
           {"eta", pt.params.eta},
           {"beta", pt.params.beta}};
    if (pt.report)
      p["report"] = to_json(*pt.report);
    else
      p["skipped"] = pt.skipped_reason;
    points.push_back(std::move(p));
  }
  return json{{"points", std::move(points)},
              {"squeezed", result.squeezed},
              {"unverified", result.unverified},
              {"skipped", result.skipped}};
}

std::string pmf_csv(const Pmf& pmf) {
  std::ostringstream out;
  for (Axis a : pmf.axes()) out << axis_name(a) << ',';
  out << "p\n";
  for_each_entry(pmf, [&](const std::vector<double>& m, double p) {
    for (double v : m) out << format_number(v) << ',';
    out << format_number(p) << '\n';
  });
  return out.str();
}

ScanGrid scan_grid_from_json(const json& doc) {
  if (!doc.is_object()) malformed("scan config must be an object");
  ScanGrid grid;
  if (!doc.contains("j")) malformed("scan config needs j");
  grid.spin = spin_from_json(doc.at("j"));
  auto range = [&](const char* key) {
    if (!doc.contains(key)) malformed(std::string("scan config needs ") + key);
    const json& v = doc.at(key);
    if (!v.is_array() || v.size() != 3) malformed(std::string(key) + " must be [start, stop, steps]");
    const int steps = integer(v[2], "steps");
    if (steps < 0) malformed("steps must be >= 0");
    return Range{number(v[0], key), number(v[1], key), steps};
  };
  grid.omega_l = range("omega_l");
  grid.omega_q = range("omega_q");
  grid.eta = range("eta");
  grid.beta = range("beta");
  if (doc.contains("family")) {
    const std::string f = doc.at("family").get<std::string>();
    if (f == "thermal")
      grid.family = StateFamily::thermal;
    else if (f == "ground")
      grid.family = StateFamily::ground;
    else
      malformed("family must be thermal or ground");
  }
  return grid;
}

std::string scan_csv(const ScanResult& result) {
  std::ostringstream out;
  out << "index,omega_l,omega_q,eta,beta,var_x,var_y,bound,squeezed_x,squeezed_y\n";
  for (const auto& pt : result.points) {
    out << pt.index << ',' << format_number(pt.params.omega_l) << ','
        << format_number(pt.params.omega_q) << ',' << format_number(pt.params.eta) << ','
        << format_number(pt.params.beta) << ',';
    if (pt.report) {
      const auto& r = *pt.report;
      out << format_number(r.var_x) << ',' << format_number(r.var_y) << ','
          << format_number(r.bound) << ',' << (r.squeezed_x ? "true" : "false") << ','
          << (r.squeezed_y ? "true" : "false") << '\n';
    } else {
      out << ",,,skipped,skipped\n";
    }
  }
  return out.str();
}

std::string closed_form_csv(const std::vector<ClassDeviation>& table, Rule rule) {
  std::ostringstream out;
  for (const auto& row : table)
    out << to_string(rule) << ',' << to_string(row.cls) << ',' << row.points << ','
        << format_number(row.max_abs) << '\n';
  return out.str();
}

}  // namespace spinquasi::io
