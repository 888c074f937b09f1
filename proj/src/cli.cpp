#include "spinquasi/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <string>

#include "spinquasi/io.hpp"
#include "spinquasi/verify.hpp"

namespace spinquasi::cli {

namespace {

using io::json;

constexpr std::uint64_t kDefaultSeed = 12345;

struct ReferenceRow {
  double t10, t20, t22;
  double var_x, bound;  // published
};

constexpr std::array<ReferenceRow, 3> kReferenceRows{{
    {-0.7506, 0.495, -0.4453, 0.2929, 0.3064},
    {-0.6298, 0.4737, -0.5307, 0.2486, 0.2571},
    {-0.7506, 0.4526, -0.4453, 0.3028, 0.3064},
}};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPINQUASI_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedInput, "SPINQUASI_SEED is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

std::vector<Axis> parse_axes(const std::string& text) {
  std::array<bool, 3> seen{};
  for (char c : text) {
    if (c < 'x' || c > 'z') throw Error(ErrorKind::MalformedInput, "--marginal takes letters from xyz");
    if (seen[c - 'x']) throw Error(ErrorKind::MalformedInput, "--marginal repeats an axis");
    seen[c - 'x'] = true;
  }
  std::vector<Axis> axes;
  for (int a = 0; a < 3; ++a)
    if (seen[a]) axes.push_back(static_cast<Axis>(a));
  if (axes.empty()) throw Error(ErrorKind::MalformedInput, "--marginal needs at least one axis");
  return axes;
}

void print(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::MalformedInput, "cannot write " + path);
  f << text;
}

json ops_json(Spin spin) {
  const SpinOps j = spin_operators(spin);
  json tensors = json::array();
  const TensorBasis& basis = tensor_basis(spin);
  for (int k = 0; k <= spin.two_j(); ++k)
    for (int q = -k; q <= k; ++q)
      tensors.push_back({{"k", k}, {"q", q}, {"matrix", io::matrix_json(basis(k, q))}});
  return json{{"j", io::spin_json(spin)},
              {"jx", io::matrix_json(j.jx)},
              {"jy", io::matrix_json(j.jy)},
              {"jz", io::matrix_json(j.jz)},
              {"tensors", std::move(tensors)}};
}

json analyze_json(const DensityMatrix& rho) {
  const Eigen::Vector3d p = polarization(rho);
  return json{{"j", io::spin_json(rho.spin())},
              {"tensor_params", io::to_json(tensor_params(rho))},
              {"polarization", {p.x(), p.y(), p.z()}},
              {"stats", io::to_json(cartesian_stats(rho))},
              {"min_eigenvalue", rho.min_eigenvalue()},
              {"positivity_warning", rho.positivity_warning()},
              {"oriented", is_oriented(rho)}};
}

void table1(std::ostream& out) {
  const Spin spin(2);
  out << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < kReferenceRows.size(); ++i) {
    const ReferenceRow& row = kReferenceRows[i];
    TensorParams tp(spin);
    tp.set(1, 0, row.t10);
    tp.set(2, 0, row.t20);
    tp.set_with_partner(2, 2, row.t22);
    const SqueezeReport r = squeezing_report(density_from_tensor_params(tp));
    out << "row " << i + 1 << ": var_x computed " << r.var_x << " vs reference " << row.var_x
        << "; bound " << r.bound << " vs " << row.bound << "; squeezed_x "
        << (r.squeezed_x ? "true" : "false") << '\n';
  }
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::InvalidArguments:
    case ErrorKind::OutOfRange:
    case ErrorKind::WrongSpin:
      return 1;
    case ErrorKind::NotHermitian:
    case ErrorKind::TraceNotOne:
    case ErrorKind::NotPositive:
      return 2;
    case ErrorKind::UndefinedMeanSpinDirection:
      return 3;
    case ErrorKind::NoConvergence:
    case ErrorKind::NonRealMoment:
    case ErrorKind::IllConditioned:
    case ErrorKind::InternalInvariant:
      return 4;
  }
  return 4;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete quasi-probability distributions and squeezing for spin-j states",
               "spinquasi"};
  app.require_subcommand(1, 1);

  double j_value = 1.0;
  std::string state_path, config_path, out_path, json_path, rule_text = "ww", format = "csv",
                                                            keep;
  bool permissive = false, closed_form = false;
  std::uint64_t seed = 0;

  auto* ops = app.add_subcommand("ops", "Print J and tensor operator matrices as JSON");
  ops->add_option("--j", j_value, "Spin quantum number (1, 0.5, 1.5, ...)")->required();

  auto* analyze = app.add_subcommand("analyze", "Tensor parameters, polarization and moments");
  analyze->add_option("state", state_path, "State JSON file")->required();
  analyze->add_flag("--permissive", permissive, "Accept eigenvalues down to -1e-6");

  auto* moments = app.add_subcommand("moments", "Full mixed-moment table as JSON");
  moments->add_option("state", state_path, "State JSON file")->required();
  moments->add_option("--rule", rule_text, "ww or mh")->required();

  auto* pmf = app.add_subcommand("pmf", "Quasi-probability mass function");
  pmf->add_option("state", state_path, "State JSON file")->required();
  pmf->add_option("--rule", rule_text, "ww or mh")->required();
  pmf->add_flag("--closed-form", closed_form, "Use the spin-1 closed forms");
  pmf->add_option("--marginal", keep, "Variates to keep, e.g. z or xy");
  pmf->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* squeeze = app.add_subcommand("squeeze", "Squeezing report in the canonical frame");
  squeeze->add_option("state", state_path, "State JSON file")->required();

  auto* scan_cmd = app.add_subcommand("scan", "Squeezing scan over a field-parameter grid");
  scan_cmd->add_option("config", config_path, "Scan config JSON file")->required();
  scan_cmd->add_option("--out", out_path, "CSV output path")->required();
  scan_cmd->add_option("--json", json_path, "Optional JSON output path");

  auto* verify = app.add_subcommand("verify", "Run the identity suites");
  auto* seed_opt = verify->add_option("--seed", seed, "RNG seed (default: SPINQUASI_SEED)");

  auto* t1 = app.add_subcommand("table1", "Reference squeezed spin-1 states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const Positivity mode = permissive ? Positivity::permissive : Positivity::strict;
  try {
    if (ops->parsed()) {
      Spin spin(1);
      try {
        spin = Spin::from_j(j_value);
      } catch (const Error& e) {
        throw Error(ErrorKind::MalformedInput, e.what());
      }
      print(out, ops_json(spin));
    } else if (analyze->parsed()) {
      print(out, analyze_json(io::read_state_file(state_path, mode)));
    } else if (moments->parsed()) {
      const Rule rule = parse_rule(rule_text);
      print(out, io::to_json(moment_table(io::read_state_file(state_path), rule)));
    } else if (pmf->parsed()) {
      const Rule rule = parse_rule(rule_text);
      const DensityMatrix rho = io::read_state_file(state_path);
      const std::vector<Axis> axes = keep.empty() ? std::vector<Axis>{} : parse_axes(keep);
      const bool reduce = !axes.empty() && axes.size() < 3;
      Pmf result = [&] {
        if (closed_form) {
          Pmf full = pmf_closed_form_spin1(rho, rule);
          return reduce ? marginal(full, axes) : full;
        }
        const MomentTable mt = moment_table(rho, rule);
        return reduce ? marginal_from_moments(mt, axes) : pmf_from_moments(mt);
      }();
      const NegativityReport neg = negativity(result);
      if (format == "json") {
        json doc = io::to_json(result);
        doc["closed_form"] = closed_form;
        doc["negativity"] = io::to_json(neg);
        print(out, doc);
      } else {
        out << io::pmf_csv(result) << "# negativity min_value=" << io::format_number(neg.min_value)
            << " negative_mass=" << io::format_number(neg.negative_mass)
            << " num_negative=" << neg.num_negative << '\n';
      }
    } else if (squeeze->parsed()) {
      print(out, io::to_json(squeezing_report(io::read_state_file(state_path))));
    } else if (scan_cmd->parsed()) {
      const ScanResult result = scan(io::scan_grid_from_json(io::read_json_file(config_path)));
      write_file(out_path, io::scan_csv(result));
      if (!json_path.empty()) write_file(json_path, io::to_json(result).dump(2) + "\n");
      out << "points " << result.points.size() << ", squeezed " << result.squeezed.size()
          << ", unverified " << result.unverified.size() << ", skipped " << result.skipped << '\n';
      if (!result.unverified.empty()) return 4;
    } else if (verify->parsed()) {
      const std::uint64_t s = seed_opt->count() > 0 ? seed : default_seed();
      return run_verification(s, out) == 0 ? 0 : 4;
    } else if (t1->parsed()) {
      table1(out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const io::json::exception& e) {
    err << "error: MalformedInput: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace spinquasi::cli
