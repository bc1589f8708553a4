#include "filmflow/output.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"

namespace filmflow {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj, double s) {
  std::string out = "tau,norm_l2,norm_hs,mean,min,max\n";
  for (const auto& snap : traj.snapshots) {
    const auto x = snap.samples();
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    out += format_double(snap.tau()) + ',' + format_double(sobolev_norm(snap, 0.0)) + ',' +
           format_double(sobolev_norm(snap, s)) + ',' + format_double(snap.mean()) + ',' +
           format_double(*lo) + ',' + format_double(*hi) + '\n';
  }
  return out;
}

std::string spectrum_csv(const SurfaceState& state) {
  std::string out = "n,re,im\n";
  const int half = state.resolution() / 2;
  for (int n = -half + 1; n <= half; ++n) {
    const Complex c = state.coeff(n);
    out += std::to_string(n) + ',' + format_double(c.real()) + ',' + format_double(c.imag()) +
           '\n';
  }
  return out;
}

std::string field_csv(const FieldGrid& f) {
  std::string out = "x,y,u,v,p\n";
  out.reserve(out.size() + f.u.size() * 100);
  for (int j = 0; j <= f.m; ++j) {
    for (int i = 0; i < f.n; ++i) {
      const std::size_t k = f.index(i, j);
      out += format_double(static_cast<double>(i) / f.n) + ',' +
             format_double(f.y[static_cast<std::size_t>(j)]) + ',' + format_double(f.u[k]) +
             ',' + format_double(f.v[k]) + ',' + format_double(f.p[k]) + '\n';
    }
  }
  return out;
}

namespace {

constexpr std::size_t kHeaderBytes = 32;

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
  return v;
}

}  // namespace

std::string field_binary(const FieldGrid& f, FieldComponent component) {
  std::string header = "FILMFLOW-FIELD v1 N=" + std::to_string(f.n) + " M=" + std::to_string(f.m);
  if (header.size() >= kHeaderBytes) throw std::runtime_error("field header too long");
  header.resize(kHeaderBytes - 1, ' ');
  header += '\n';
  const std::vector<double>& values = component == FieldComponent::U   ? f.u
                                      : component == FieldComponent::V ? f.v
                                                                       : f.p;
  std::string out = header;
  out.resize(kHeaderBytes + 8 * values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(values[k]));
    std::memcpy(out.data() + kHeaderBytes + 8 * k, &bits, 8);
  }
  return out;
}

BinaryField parse_field_binary(const std::string& bytes) {
  if (bytes.size() < kHeaderBytes || bytes.compare(0, 18, "FILMFLOW-FIELD v1 ") != 0) {
    throw std::invalid_argument("not a FILMFLOW-FIELD v1 file");
  }
  BinaryField f;
  std::istringstream header(bytes.substr(18, kHeaderBytes - 18));
  std::string tn, tm;
  header >> tn >> tm;
  if (tn.rfind("N=", 0) != 0 || tm.rfind("M=", 0) != 0) {
    throw std::invalid_argument("malformed field header");
  }
  f.n = std::stoi(tn.substr(2));
  f.m = std::stoi(tm.substr(2));
  const std::size_t count = static_cast<std::size_t>(f.n) * static_cast<std::size_t>(f.m + 1);
  if (bytes.size() != kHeaderBytes + 8 * count) {
    throw std::invalid_argument("field payload size does not match header");
  }
  f.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t bits;
    std::memcpy(&bits, bytes.data() + kHeaderBytes + 8 * k, 8);
    f.values[k] = std::bit_cast<double>(to_little_endian(bits));
  }
  return f;
}

std::string order_csv(const OrderReport& report) {
  std::string out = "delta,psi1,psi2,phi1,phi2,phi3\n";
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    out += format_double(report.deltas[i]);
    for (double v : report.raw[i].as_array()) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string order_summary_json(const OrderReport& report) {
  nlohmann::ordered_json j;
  j["regime"] = std::string(to_string(report.regime));
  j["variant"] = std::string(to_string(report.variant));
  const char* names[] = {"psi1", "psi2", "phi1", "phi2", "phi3"};
  const auto s = report.slopes.as_array();
  for (std::size_t k = 0; k < 5; ++k) {
    j["slopes"][names[k]] = s[k];
    j["targets"][names[k]] = report.target;
    j["thresholds"][names[k]] = report.threshold;
  }
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

std::string difference_csv(const std::vector<DifferenceReport>& reports) {
  std::string out = "tau,h_l2,u_w,v_w,p_w,d_value\n";
  for (const auto& r : reports) {
    out += format_double(r.tau) + ',' + format_double(r.h_l2) + ',' + format_double(r.u_w) +
           ',' + format_double(r.v_w) + ',' + format_double(r.p_w) + ',' +
           format_double(r.d_value) + '\n';
  }
  return out;
}

}  // namespace filmflow
