#include "pwlhc/serialize.hpp"

#include <cstdio>
#include <fstream>

#include "pwlhc/errors.hpp"
#include "pwlhc/word.hpp"

namespace pwlhc {

namespace {

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("missing or non-numeric field \"") + key +
                      "\"");
  return j[key].get<double>();
}

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* key) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ConfigError(std::string("field \"") + key +
                      "\" must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() ||
        static_cast<Eigen::Index>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw ConfigError(std::string("ragged rows in \"") + key + "\"");
    for (Eigen::Index k = 0; k < cols; ++k)
      M(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                    .get<double>();
  }
  return M;
}

Vector vector_from_json(const json& j, const char* key) {
  if (!j.is_array())
    throw ConfigError(std::string("field \"") + key + "\" must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json check_to_json(const HypothesisCheck& h) {
  return json{{"name", h.name},
              {"pass", h.pass},
              {"margin", h.margin},
              {"detail", h.detail}};
}

json sweep_row_to_json(const SweepRow& r) {
  return json{{"k", r.k},
              {"word", r.word},
              {"admissibility", to_string(r.admissibility)},
              {"failing_index", r.failing_index},
              {"stability", to_string(r.stability)},
              {"max_multiplier_modulus", r.max_multiplier_modulus},
              {"pass", r.pass}};
}

json asymptotics_to_json(const AsymptoticReport& a) {
  json rows = json::array();
  for (const auto& r : a.rows)
    rows.push_back(json{{"k", r.k},
                        {"proj_error", r.proj_error},
                        {"dist_to_y0", r.dist_to_y0},
                        {"valid", r.valid}});
  return json{{"rows", std::move(rows)},
              {"fitted_ratio_proj", a.fitted_ratio_proj},
              {"fitted_ratio_dist", a.fitted_ratio_dist},
              {"theory_ratio", a.theory_ratio},
              {"proj_decays", a.proj_decays},
              {"dist_decays", a.dist_decays},
              {"band_value", a.band_value},
              {"band_ok", a.band_ok}};
}

}  // namespace

MapConfig map_config_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("map config requires a string field \"kind\"");
  MapConfig m;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "bcnf3") {
    m.kind = MapConfig::Kind::Bcnf3;
    m.bcnf.tau_L = require_number(j, "tauL");
    m.bcnf.sigma_L = require_number(j, "sigmaL");
    m.bcnf.delta_L = require_number(j, "deltaL");
    m.bcnf.tau_R = require_number(j, "tauR");
    m.bcnf.sigma_R = require_number(j, "sigmaR");
    m.bcnf.delta_R = require_number(j, "deltaR");
    m.bcnf.mu = j.contains("mu") ? require_number(j, "mu") : 1.0;
  } else if (kind == "explicit") {
    m.kind = MapConfig::Kind::Explicit;
    if (!j.contains("AL") || !j.contains("AR") || !j.contains("b"))
      throw ConfigError("explicit map config requires \"AL\", \"AR\", \"b\"");
    m.AL = matrix_from_json(j["AL"], "AL");
    m.AR = matrix_from_json(j["AR"], "AR");
    m.b = vector_from_json(j["b"], "b");
  } else {
    throw ConfigError("unknown map kind \"" + kind +
                      "\" (expected \"bcnf3\" or \"explicit\")");
  }
  return m;
}

json map_config_to_json(const MapConfig& m) {
  if (m.kind == MapConfig::Kind::Bcnf3)
    return json{{"kind", "bcnf3"},
                {"tauL", m.bcnf.tau_L},
                {"sigmaL", m.bcnf.sigma_L},
                {"deltaL", m.bcnf.delta_L},
                {"tauR", m.bcnf.tau_R},
                {"sigmaR", m.bcnf.sigma_R},
                {"deltaR", m.bcnf.delta_R},
                {"mu", m.bcnf.mu}};
  return json{{"kind", "explicit"},
              {"AL", matrix_to_json(m.AL)},
              {"AR", matrix_to_json(m.AR)},
              {"b", vector_to_json(m.b)}};
}

PwlMap make_map_from_config(const MapConfig& m) {
  if (m.kind == MapConfig::Kind::Bcnf3) return bcnf3(m.bcnf);
  return make_map(m.AL, m.AR, m.b);
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig c;
  // A bare map config (top-level "kind") is accepted for convenience.
  c.map = map_config_from_json(j.contains("map") ? j["map"] : j);
  if (!j.contains("X") || !j.contains("Y") || !j["X"].is_string() ||
      !j["Y"].is_string())
    throw ConfigError("run config requires string fields \"X\" and \"Y\"");
  c.X = j["X"].get<std::string>();
  c.Y = j["Y"].get<std::string>();
  if (j.contains("k_max")) c.k_max = j["k_max"].get<int>();
  if (j.contains("tol_sigma")) c.tol_sigma = require_number(j, "tol_sigma");
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("solve")) {
    const json& s = j["solve"];
    if (s.contains("tol")) c.solve_tol = require_number(s, "tol");
    if (s.contains("max_iterations"))
      c.max_iterations = s["max_iterations"].get<int>();
  }
  if (j.contains("orbit")) {
    const json& o = j["orbit"];
    if (o.contains("steps_fwd")) c.steps_fwd = o["steps_fwd"].get<int>();
    if (o.contains("subsumed_returns"))
      c.subsumed_returns = o["subsumed_returns"].get<int>();
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " +
                      e.what());
  }
  return run_config_from_json(j);
}

json run_config_to_json(const RunConfig& c) {
  json j{{"map", map_config_to_json(c.map)},
         {"X", c.X},
         {"Y", c.Y},
         {"k_max", c.k_max},
         {"tol_sigma", c.tol_sigma},
         {"out_dir", c.out_dir}};
  if (c.solve_tol || c.max_iterations) {
    json s = json::object();
    if (c.solve_tol) s["tol"] = *c.solve_tol;
    if (c.max_iterations) s["max_iterations"] = *c.max_iterations;
    j["solve"] = std::move(s);
  }
  if (c.steps_fwd || c.subsumed_returns) {
    json o = json::object();
    if (c.steps_fwd) o["steps_fwd"] = *c.steps_fwd;
    if (c.subsumed_returns) o["subsumed_returns"] = *c.subsumed_returns;
    j["orbit"] = std::move(o);
  }
  return j;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const BcnfParams& p) {
  return json{{"tauL", p.tau_L},   {"sigmaL", p.sigma_L},
              {"deltaL", p.delta_L}, {"tauR", p.tau_R},
              {"sigmaR", p.sigma_R}, {"deltaR", p.delta_R},
              {"mu", p.mu}};
}

json to_json(const Residual3& r) {
  return json{{"gamma11", r.r1},
              {"psi1", r.r2},
              {"multiplier_product_minus_1", r.r3},
              {"norm_inf", r.norm_inf()}};
}

json to_json(const SpectralFrame& f) {
  return json{{"lambda1", f.lambda1},
              {"lambda2", f.lambda2},
              {"beta", f.beta},
              {"zeta1", vector_to_json(f.zeta1)},
              {"zeta2", vector_to_json(f.zeta2)},
              {"omega1", vector_to_json(f.omega1)},
              {"omega2", vector_to_json(f.omega2)},
              {"e1_zeta1", f.e1_zeta1}};
}

json to_json(const ProjectedQuantities& q) {
  return json{{"c", q.c},           {"gamma11", q.gamma11},
              {"gamma12", q.gamma12}, {"gamma21", q.gamma21},
              {"gamma22", q.gamma22}, {"psi1", q.psi1},
              {"psi2", q.psi2}};
}

json to_json(const Cycle& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back(vector_to_json(p));
  json mults = json::array();
  for (const auto& m : c.multipliers)
    mults.push_back(json::array({m.real(), m.imag()}));
  return json{{"word", c.word.str()},
              {"points", std::move(pts)},
              {"admissibility", to_string(c.admissibility)},
              {"boundary_indices", c.boundary_indices},
              {"first_failing_index", c.first_failing_index},
              {"multipliers", std::move(mults)},
              {"stability", to_string(c.stability)},
              {"max_multiplier_modulus", c.max_multiplier_modulus()},
              {"tol_sigma", c.tol_sigma}};
}

json to_json(const SolveResult& r, const RunConfig& cfg) {
  // Shaped so the output is itself a loadable run config at the solved
  // parameters (verify can consume it directly).
  RunConfig out = cfg;
  out.map.kind = MapConfig::Kind::Bcnf3;
  out.map.bcnf = r.params;
  json j = run_config_to_json(out);
  j["solve_result"] = json{{"status", to_string(r.status)},
                           {"converged", r.converged()},
                           {"iterations", r.iterations},
                           {"residual", to_json(r.residual)},
                           {"message", r.message}};
  return j;
}

json to_json(const SubsumedReport& r) {
  return json{{"y0_residual", r.y0_residual},
              {"y_alpha_residual", r.y_alpha_residual},
              {"y0_on_sigma", r.y0_on_sigma},
              {"y_alpha_on_sigma", r.y_alpha_on_sigma},
              {"s_orbit_admissible", r.s_orbit_admissible},
              {"admissibility_checked_through", r.admissibility_checked_through},
              {"no_double_boundary_hits", r.no_double_boundary_hits},
              {"first_double_hit", r.first_double_hit},
              {"horizon_checked", r.horizon_checked},
              {"boundary_hits", r.boundary_hits},
              {"hits_match_expected", r.hits_match_expected},
              {"containment_profile", r.containment_profile},
              {"containment_max", r.containment_max},
              {"containment_returns", r.containment_returns},
              {"contained", r.contained},
              {"pass", r.pass}};
}

json to_json(const VerificationReport& r) {
  json sufficient = json::array();
  for (const auto& h : r.sufficient) sufficient.push_back(check_to_json(h));
  json necessary = json::array();
  for (const auto& h : r.necessary) necessary.push_back(check_to_json(h));
  json sweep = json::array();
  for (const auto& row : r.sweep) sweep.push_back(sweep_row_to_json(row));
  json j{{"params", to_json(r.params)},
         {"X", r.X},
         {"Y", r.Y},
         {"alpha", r.alpha},
         {"d", r.d},
         {"i_hat", r.i_hat},
         {"frame_valid", r.frame_valid}};
  if (!r.frame_valid) j["frame_error"] = r.frame_error;
  j["frame"] = to_json(r.frame);
  j["quantities"] = to_json(r.quantities);
  j["a0"] = r.a0;
  j["psi2_residual"] = r.psi2_residual;
  j["sufficient"] = std::move(sufficient);
  j["necessary"] = std::move(necessary);
  j["subsumed"] = to_json(r.subsumed);
  j["sweep"] = std::move(sweep);
  j["asymptotics"] = asymptotics_to_json(r.asymptotics);
  j["hypotheses_pass"] = r.hypotheses_pass;
  j["sweep_pass"] = r.sweep_pass;
  j["overall_pass"] = r.overall_pass;
  return j;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out.flush()) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_cycles_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<int, Cycle>>& cycles) {
  std::string text;
  Eigen::Index dim = 0;
  if (!cycles.empty() && !cycles.front().second.points.empty())
    dim = cycles.front().second.points.front().size();
  text += "k,word,point_index,side,stability";
  for (Eigen::Index c = 0; c < dim; ++c)
    text += ",x" + std::to_string(c + 1);
  text += "\n";
  for (const auto& [k, cyc] : cycles) {
    for (std::size_t i = 0; i < cyc.points.size(); ++i) {
      const Vector& p = cyc.points[i];
      text += std::to_string(k) + "," + cyc.word.str() + "," +
              std::to_string(i) + "," +
              to_string(classify_side(p, cyc.tol_sigma)) + "," +
              to_string(cyc.stability);
      for (Eigen::Index c = 0; c < p.size(); ++c) text += "," + fmt17(p(c));
      text += "\n";
    }
  }
  write_text_atomic(path, text);
}

void write_orbit_csv(const std::filesystem::path& path,
                     const HomoclinicOrbit& orbit) {
  const SymbolWindow win =
      homoclinic_window(orbit.X, orbit.Y, orbit.i_lo, orbit.i_hi);
  std::string text = "index,symbol,side";
  const Eigen::Index dim = orbit.points.empty() ? 0 : orbit.points[0].size();
  for (Eigen::Index c = 0; c < dim; ++c)
    text += ",x" + std::to_string(c + 1);
  text += "\n";
  for (int i = orbit.i_lo; i <= orbit.i_hi; ++i) {
    text += std::to_string(i) + "," + std::string(1, win.at(i)) + "," +
            to_string(orbit.side_at(i));
    const Vector& p = orbit.at(i);
    for (Eigen::Index c = 0; c < p.size(); ++c) text += "," + fmt17(p(c));
    text += "\n";
  }
  write_text_atomic(path, text);
}

void write_segments_csv(const std::filesystem::path& path,
                        const ManifoldBranch& branch) {
  std::string text = "i";
  const Eigen::Index dim =
      branch.segments.empty() ? 0 : branch.segments[0].start.size();
  for (Eigen::Index c = 0; c < dim; ++c)
    text += ",start_x" + std::to_string(c + 1);
  for (Eigen::Index c = 0; c < dim; ++c)
    text += ",end_x" + std::to_string(c + 1);
  text += "\n";
  for (const auto& s : branch.segments) {
    text += std::to_string(s.i);
    for (Eigen::Index c = 0; c < s.start.size(); ++c)
      text += "," + fmt17(s.start(c));
    for (Eigen::Index c = 0; c < s.end.size(); ++c)
      text += "," + fmt17(s.end(c));
    text += "\n";
  }
  write_text_atomic(path, text);
}

}  // namespace pwlhc
