#pragma once

// JSON / CSV boundary. Numbers are written as the shortest decimal that
// round-trips to the same double.
//
// State file:  {"j": 1, "matrix": [[[re, im], ...], ...]}
//          or  {"j": 1, "tensor_params": [{"k": 1, "q": 0, "re": ..., "im": ...}, ...]}

#include <string>

#include "json.hpp"
#include "spinquasi/distribution.hpp"
#include "spinquasi/scenario.hpp"
#include "spinquasi/squeezing.hpp"

namespace spinquasi::io {

using nlohmann::json;

std::string format_number(double value);

/// j as a JSON number: 1, 0.5, 1.5, ...
json spin_json(Spin spin);
Spin spin_from_json(const json& value);

json matrix_json(const CMatrix& m);
CMatrix matrix_from_json(const json& value);

DensityMatrix state_from_json(const json& doc, Positivity mode = Positivity::strict);
DensityMatrix read_state_file(const std::string& path, Positivity mode = Positivity::strict);
json read_json_file(const std::string& path);

json to_json(const DensityMatrix& rho);
json to_json(const TensorParams& tp);
json to_json(const CartesianStats& stats);
json to_json(const MomentTable& mt);
json to_json(const Pmf& pmf);
json to_json(const NegativityReport& report);
json to_json(const SqueezeReport& report);
json to_json(const std::vector<ClassDeviation>& table, Rule rule);
json to_json(const ScanResult& result);

MomentTable moment_table_from_json(const json& doc);

/// Header names the kept variates ("m_x,m_y,m_z,p"); rows in descending node order.
std::string pmf_csv(const Pmf& pmf);

/// {"j": .., "omega_l": [start, stop, steps], "omega_q": [...], "eta": [...],
///  "beta": [...], "family": "thermal"|"ground" (optional)}
ScanGrid scan_grid_from_json(const json& doc);

/// One row per grid point: params, var_x, var_y, bound, squeezed_x, squeezed_y.
std::string scan_csv(const ScanResult& result);

/// Rule, class, points, max_abs_deviation.
std::string closed_form_csv(const std::vector<ClassDeviation>& table, Rule rule);

}  // namespace spinquasi::io
