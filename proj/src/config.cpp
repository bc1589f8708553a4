#include "filmflow/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "filmflow/output.hpp"

namespace filmflow {

std::string_view to_string(Experiment experiment) {
  switch (experiment) {
    case Experiment::Simulate: return "simulate";
    case Experiment::Reconstruct: return "reconstruct";
    case Experiment::ResidualStudy: return "residual-study";
    case Experiment::Convergence: return "convergence";
    case Experiment::Compare: return "compare";
    case Experiment::Decay: return "decay";
  }
  return "?";
}

Experiment parse_experiment(std::string_view text) {
  for (auto e : {Experiment::Simulate, Experiment::Reconstruct, Experiment::ResidualStudy,
                 Experiment::Convergence, Experiment::Compare, Experiment::Decay}) {
    if (text == to_string(e)) return e;
  }
  throw ParameterError("experiment", "unknown experiment '" + std::string(text) + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
    throw ParameterError(key, key + ": expected a number, got '" + value + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
    throw ParameterError(key, key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  const long long v = to_integer(key, value);
  if (v < -2147483647LL || v > 2147483647LL) throw ParameterError(key, key + ": out of range");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ParameterError(key, key + ": expected true/false, got '" + value + "'");
}

double to_radians(const std::string& value) {
  const std::string v = trim(value);
  for (const char* unit : {"deg", "°", "degrees"}) {
    if (v.find(unit) != std::string::npos) {
      throw ParameterError("alpha in radians",
                           "alpha: angles are accepted in radians only, got '" + value + "'");
    }
  }
  return to_double("alpha", v);
}

}  // namespace

InitSpec parse_init(const std::string& text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("init", "init: expected kind:..., got '" + text + "'");
  }
  InitSpec spec;
  spec.kind = t.substr(0, colon);
  const std::string rest = t.substr(colon + 1);
  if (spec.kind == "cos" || spec.kind == "sin" || spec.kind == "noise") {
    const auto parts = split(rest, ':');
    if (parts.empty() || parts.size() > 2) {
      throw ParameterError("init", "init: expected " + spec.kind + ":A[:n], got '" + text + "'");
    }
    spec.amplitude = to_double("init", parts[0]);
    if (spec.kind == "noise") {
      if (parts.size() == 2) spec.width = to_double("init", parts[1]);
      if (!(spec.width > 0.0)) throw ParameterError("init", "init: noise width must be > 0");
    } else if (parts.size() == 2) {
      spec.mode = to_int("init", parts[1]);
      if (spec.mode < 1) throw ParameterError("init", "init: mode must be >= 1");
    }
    return spec;
  }
  if (spec.kind == "modes") {
    for (const auto& entry : split(rest, ';')) {
      if (entry.empty()) continue;
      const auto f = split(entry, ':');
      if (f.size() != 3) {
        throw ParameterError("init", "init: mode entries are n:re:im, got '" + entry + "'");
      }
      spec.modes.push_back({to_int("init", f[0]),
                            Complex(to_double("init", f[1]), to_double("init", f[2]))});
    }
    if (spec.modes.empty()) throw ParameterError("init", "init: empty mode list");
    return spec;
  }
  throw ParameterError("init", "init: unknown kind '" + spec.kind + "'");
}

SurfaceState make_initial_state(const InitSpec& init, int n, std::uint64_t seed) {
  if (init.kind == "cos" || init.kind == "sin") {
    if (init.mode >= n / 2) throw ParameterError("init", "init: mode beyond the resolution");
    return init.kind == "cos" ? cosine_profile(n, init.amplitude, init.mode)
                              : sine_profile(n, init.amplitude, init.mode);
  }
  if (init.kind == "noise") return noise_profile(n, init.amplitude, init.width, seed);
  if (init.kind == "modes") {
    for (const auto& m : init.modes) {
      if (m.n == 0 || std::abs(m.n) >= n / 2) {
        throw ParameterError("init", "init: mode " + std::to_string(m.n) +
                                         " must satisfy 0 < |n| < N/2");
      }
    }
    return from_modes(n, init.modes);
  }
  throw ParameterError("init", "init: unknown kind '" + init.kind + "'");
}

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config syntax", "config line " + std::to_string(lineno) +
                                                ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigEntries read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config", "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "regime", "R",      "alpha",   "delta",  "epsilon", "W",       "W2",      "Rtilde",
      "N",      "M",      "dt",      "T",      "stride",  "deltas",  "init",    "seed",
      "threads", "out",   "dealias", "variant", "s",      "regime_b", "nfd",    "fd_dt",
      "tolerance", "m",   "window",  "spectra", "binary"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "regime") {
    c.params.regime = parse_regime(trim(value));
  } else if (key == "R") {
    c.params.R = to_double(key, value);
  } else if (key == "alpha") {
    c.params.alpha = to_radians(value);
  } else if (key == "delta") {
    c.params.delta = to_double(key, value);
  } else if (key == "epsilon") {
    c.params.epsilon = to_double(key, value);
  } else if (key == "W") {
    c.params.W = to_double(key, value);
  } else if (key == "W2") {
    c.params.W2 = to_double(key, value);
  } else if (key == "Rtilde") {
    c.params.Rtilde = to_double(key, value);
  } else if (key == "N") {
    c.N = to_int(key, value);
    if (c.N < 8 || c.N % 2 != 0) throw ParameterError("N", "N must be even and >= 8");
  } else if (key == "M") {
    c.M = to_int(key, value);
    if (c.M < 1) throw ParameterError("M", "M must be >= 1");
  } else if (key == "dt") {
    c.dt = to_double(key, value);
    if (!(c.dt > 0.0)) throw ParameterError("dt > 0", "dt must be positive");
  } else if (key == "T") {
    c.T = to_double(key, value);
    if (!(c.T >= 0.0)) throw ParameterError("T >= 0", "T must be non-negative");
  } else if (key == "stride") {
    c.stride = to_int(key, value);
    if (c.stride < 1) throw ParameterError("stride", "stride must be >= 1");
  } else if (key == "deltas") {
    c.deltas.clear();
    for (const auto& d : split(value, ',')) c.deltas.push_back(to_double(key, d));
  } else if (key == "init") {
    c.init = parse_init(value);
  } else if (key == "seed") {
    const std::string v = trim(value);
    std::uint64_t s = 0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
    if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
      throw ParameterError("seed", "seed: expected an unsigned 64-bit integer");
    }
    c.seed = s;
  } else if (key == "threads") {
    c.threads = to_int(key, value);
    if (c.threads < 1) throw ParameterError("threads", "threads must be >= 1");
  } else if (key == "out") {
    c.out = trim(value);
  } else if (key == "dealias") {
    const std::string v = trim(value);
    if (v == "two-thirds" || v == "2/3") {
      c.dealias = DealiasRule::TwoThirds;
    } else if (v == "half" || v == "1/2") {
      c.dealias = DealiasRule::Half;
    } else if (v == "none") {
      c.dealias = DealiasRule::None;
    } else {
      throw ParameterError("dealias", "dealias: expected two-thirds, half or none");
    }
  } else if (key == "variant") {
    const std::string v = trim(value);
    if (v == "rederived") {
      c.variant = ClosureVariant::Rederived;
    } else if (v == "literature") {
      c.variant = ClosureVariant::Literature;
    } else {
      throw ParameterError("variant", "variant: expected rederived or literature");
    }
  } else if (key == "s") {
    c.sobolev_s = to_double(key, value);
    if (!(c.sobolev_s >= 0.0)) throw ParameterError("s >= 0", "s must be non-negative");
  } else if (key == "regime_b") {
    c.regime_b = parse_regime(trim(value));
  } else if (key == "nfd") {
    c.nfd = to_int(key, value);
  } else if (key == "fd_dt") {
    c.fd_dt = to_double(key, value);
  } else if (key == "tolerance") {
    c.tolerance = to_double(key, value);
  } else if (key == "m") {
    c.weight_m = to_int(key, value);
    if (c.weight_m < 1) throw ParameterError("m", "m must be >= 1");
  } else if (key == "window") {
    c.window = to_double(key, value);
  } else if (key == "spectra") {
    c.spectra = to_bool(key, value);
  } else if (key == "binary") {
    c.binary = to_bool(key, value);
  } else {
    throw ParameterError("config key", "unknown configuration key '" + key + "'");
  }
}

RunConfig resolve_config(Experiment experiment, const ConfigEntries& file,
                         const ConfigEntries& cli) {
  RunConfig c;
  c.experiment = experiment;
  for (const auto& [k, v] : file) apply_setting(c, k, v);
  for (const auto& [k, v] : cli) apply_setting(c, k, v);
  return c;
}

std::map<std::string, std::string> describe_config(const RunConfig& c) {
  std::map<std::string, std::string> d;
  d["experiment"] = std::string(to_string(c.experiment));
  d["regime"] = std::string(to_string(c.params.regime));
  d["R"] = format_double(c.params.R);
  d["alpha"] = format_double(c.params.alpha);
  d["delta"] = format_double(c.params.delta);
  if (c.params.epsilon) d["epsilon"] = format_double(*c.params.epsilon);
  if (c.params.W) d["W"] = format_double(*c.params.W);
  d["W2"] = format_double(c.params.W2);
  d["Rtilde"] = format_double(c.params.Rtilde);
  d["N"] = std::to_string(c.N);
  d["M"] = std::to_string(c.M);
  d["dt"] = format_double(c.dt);
  d["T"] = format_double(c.T);
  d["stride"] = std::to_string(c.stride);
  std::string ds;
  for (std::size_t i = 0; i < c.deltas.size(); ++i) ds += (i ? "," : "") + format_double(c.deltas[i]);
  d["deltas"] = ds;
  std::string init = c.init.kind + ":" + format_double(c.init.amplitude);
  if (c.init.kind == "cos" || c.init.kind == "sin") init += ":" + std::to_string(c.init.mode);
  if (c.init.kind == "noise") init += ":" + format_double(c.init.width);
  if (c.init.kind == "modes") {
    init = "modes:";
    for (std::size_t i = 0; i < c.init.modes.size(); ++i) {
      const auto& m = c.init.modes[i];
      init += (i ? ";" : "") + std::to_string(m.n) + ":" + format_double(m.value.real()) + ":" +
              format_double(m.value.imag());
    }
  }
  d["init"] = init;
  d["seed"] = std::to_string(c.seed);
  d["threads"] = std::to_string(c.threads);
  d["out"] = c.out.string();
  d["dealias"] = c.dealias == DealiasRule::TwoThirds ? "two-thirds"
                 : c.dealias == DealiasRule::Half    ? "half"
                                                     : "none";
  d["variant"] = std::string(to_string(c.variant));
  d["s"] = format_double(c.sobolev_s);
  d["regime_b"] = std::string(to_string(c.regime_b));
  d["nfd"] = std::to_string(c.nfd);
  d["fd_dt"] = format_double(c.fd_dt);
  d["tolerance"] = format_double(c.tolerance);
  d["m"] = std::to_string(c.weight_m);
  d["window"] = format_double(c.window);
  d["spectra"] = c.spectra ? "true" : "false";
  d["binary"] = c.binary ? "true" : "false";
  return d;
}

}  // namespace filmflow
