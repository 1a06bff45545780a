#pragma once

// JSON configuration loading and JSON/CSV report emission.  All files are
// written atomically (temp file + rename); CSV floats use %.17g so re-parsing
// reproduces every double bit-exactly.

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "pwlhc/cycle.hpp"
#include "pwlhc/homoclinic.hpp"
#include "pwlhc/map.hpp"
#include "pwlhc/solver.hpp"
#include "pwlhc/spectral.hpp"

namespace pwlhc {

using json = nlohmann::ordered_json;

struct MapConfig {
  enum class Kind { Bcnf3, Explicit };
  Kind kind = Kind::Bcnf3;
  BcnfParams bcnf;         // Kind::Bcnf3
  Matrix AL, AR;           // Kind::Explicit
  Vector b;
};

MapConfig map_config_from_json(const json& j);
json map_config_to_json(const MapConfig& m);
PwlMap make_map_from_config(const MapConfig& m);

struct RunConfig {
  MapConfig map;
  std::string X, Y;
  int k_max = 7;
  double tol_sigma = kTolSigmaDefault;
  std::string out_dir = ".";
  // Optional solver/orbit overrides.
  std::optional<double> solve_tol;
  std::optional<int> max_iterations;
  std::optional<int> steps_fwd;
  std::optional<int> subsumed_returns;
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(const json& j);
json run_config_to_json(const RunConfig& c);

std::string fmt17(double v);

json to_json(const BcnfParams& p);
json to_json(const Residual3& r);
json to_json(const SpectralFrame& f);
json to_json(const ProjectedQuantities& q);
json to_json(const Cycle& c);
json to_json(const SolveResult& r, const RunConfig& cfg);
json to_json(const SubsumedReport& r);
json to_json(const VerificationReport& r);

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);
void write_json_atomic(const std::filesystem::path& path, const json& j);

// cycles.csv: k, word, point_index, side, stability, x1..xN (one row per
// cycle point; both the X^k Y and flipped X^k Ybar families).
void write_cycles_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<int, Cycle>>& cycles);

// orbit.csv: index, symbol, side, x1..xN.
void write_orbit_csv(const std::filesystem::path& path,
                     const HomoclinicOrbit& orbit);

// segments.csv: i, start_x1..start_xN, end_x1..end_xN.
void write_segments_csv(const std::filesystem::path& path,
                        const ManifoldBranch& branch);

}  // namespace pwlhc
