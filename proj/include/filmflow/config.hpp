#ifndef FILMFLOW_CONFIG_HPP_
#define FILMFLOW_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "filmflow/closures.hpp"
#include "filmflow/params.hpp"
#include "filmflow/spectral.hpp"
#include "filmflow/surface.hpp"

namespace filmflow {

enum class Experiment { Simulate, Reconstruct, ResidualStudy, Convergence, Compare, Decay };

std::string_view to_string(Experiment experiment);
Experiment parse_experiment(std::string_view text);

/// Initial profile: cos:A[:n], sin:A[:n], noise:A[:n0] or modes:n:re:im;...
struct InitSpec {
  std::string kind = "cos";
  double amplitude = 0.1;
  int mode = 1;
  double width = 4.0;
  std::vector<ModeCoefficient> modes;
};

InitSpec parse_init(const std::string& text);
SurfaceState make_initial_state(const InitSpec& init, int n, std::uint64_t seed);

struct RunConfig {
  Experiment experiment = Experiment::Simulate;
  RawParams params;
  int N = 128;
  int M = 32;
  double dt = 1e-4;
  double T = 1.0;
  int stride = 100;
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  InitSpec init;
  std::uint64_t seed = 1;
  int threads = 1;
  std::filesystem::path out = "run";
  DealiasRule dealias = DealiasRule::TwoThirds;
  ClosureVariant variant = ClosureVariant::Rederived;
  double sobolev_s = 1.0;
  Regime regime_b = Regime::III;
  int nfd = 0;          // 0: 16 N
  double fd_dt = 0.0;   // 0: estimated from the stability limit
  double tolerance = 1e-3;
  int weight_m = 2;
  double window = 0.5;
  bool spectra = false;
  bool binary = false;
};

/// Entries of a flat "key = value" file; '#' starts a comment.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

ConfigEntries parse_config_text(const std::string& text);
ConfigEntries read_config_file(const std::filesystem::path& path);

/// Built-in defaults, then file entries, then command-line entries; later
/// layers win. Unknown keys and malformed values throw ParameterError.
RunConfig resolve_config(Experiment experiment, const ConfigEntries& file,
                         const ConfigEntries& cli);

/// Apply one setting. Throws ParameterError naming the key.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Every key accepted by apply_setting.
const std::vector<std::string>& config_keys();

/// Resolved configuration as ordered key/value text pairs.
std::map<std::string, std::string> describe_config(const RunConfig& config);

}  // namespace filmflow

#endif  // FILMFLOW_CONFIG_HPP_
