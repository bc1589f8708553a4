#include <gtest/gtest.h>

#include <clocale>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "filmflow/config.hpp"
#include "filmflow/output.hpp"
#include "support/generators.hpp"

namespace filmflow {
namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("filmflow_output_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(FormatDouble, RoundTripsWithSeventeenDigits) {
  testing::Gen gen(97);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-30, 30));
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(FormatDouble, IgnoresLocale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    EXPECT_EQ(format_double(0.5), "0.5");
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST(WriteAtomic, CreatesParentsAndLeavesNoTemporaries) {
  const auto dir = scratch_dir("atomic");
  write_atomic(dir / "a" / "b.txt", "hello\n");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "hello\n");
  write_atomic(dir / "a" / "b.txt", "again\n");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "again\n");
  int count = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir / "a")) ++count;
  EXPECT_EQ(count, 1);
  std::filesystem::remove_all(dir);
}

FieldGrid small_field() {
  PhysicalParams p;
  const JetRequirement req = closure_jet_requirement(Regime::III);
  const SurfaceJet jet = eta_jet(sine_profile(8, 0.1), p, Regime::III, req.max_x, req.max_t);
  return reconstruct(jet, p, Regime::III, 2);
}

TEST(FieldBinary, HeaderAndRoundTrip) {
  const FieldGrid g = small_field();
  const std::string bytes = field_binary(g, FieldComponent::V);
  ASSERT_EQ(bytes.size(), 32u + 8u * 3u * 8u);
  EXPECT_EQ(bytes.substr(0, 27), "FILMFLOW-FIELD v1 N=8 M=2  ");
  EXPECT_EQ(bytes[31], '\n');
  const BinaryField back = parse_field_binary(bytes);
  EXPECT_EQ(back.n, 8);
  EXPECT_EQ(back.m, 2);
  EXPECT_EQ(back.values, g.v);
  EXPECT_THROW(parse_field_binary(bytes.substr(0, 40)), std::invalid_argument);
  EXPECT_THROW(parse_field_binary("garbage"), std::invalid_argument);
}

TEST(FieldCsv, RowMajorYOuter) {
  const FieldGrid g = small_field();
  std::istringstream in(field_csv(g));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,u,v,p");
  int rows = 0;
  std::string second;
  while (std::getline(in, line)) {
    if (rows == 1) second = line;
    ++rows;
  }
  EXPECT_EQ(rows, 8 * 3);
  EXPECT_EQ(second.substr(0, second.find(',', second.find(',') + 1)), "0.125,0");
}

TEST(SpectrumCsv, FullIndexRange) {
  const std::string text = spectrum_csv(cosine_profile(8, 1.0, 1));
  EXPECT_EQ(text.substr(0, text.find('\n')), "n,re,im");
  EXPECT_NE(text.find("\n-3,"), std::string::npos);
  EXPECT_NE(text.find("\n4,"), std::string::npos);
  EXPECT_NE(text.find("\n-1,0.5,-0\n"), std::string::npos);
}

TEST(TrajectoryCsv, HeaderAndRows) {
  PhysicalParams p;
  const Trajectory t = simulate(sine_profile(16, 0.1), p, Regime::I, 0.01, 1e-3, 5);
  std::istringstream in(trajectory_csv(t));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "tau,norm_l2,norm_hs,mean,min,max");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(t.snapshots.size()));
}

TEST(InitSpec, Parsing) {
  EXPECT_EQ(parse_init("cos:0.2").amplitude, 0.2);
  EXPECT_EQ(parse_init("sin:0.1:3").mode, 3);
  EXPECT_EQ(parse_init("noise:0.1:2.5").width, 2.5);
  const InitSpec m = parse_init("modes:1:0.1:0;2:0:-0.05");
  ASSERT_EQ(m.modes.size(), 2u);
  EXPECT_EQ(m.modes[1].value, Complex(0.0, -0.05));
  EXPECT_THROW(parse_init("gauss:1"), ParameterError);
  EXPECT_THROW(parse_init("cos"), ParameterError);
  EXPECT_THROW(parse_init("sin:0.1:0"), ParameterError);
  EXPECT_THROW(parse_init("modes:1:2"), ParameterError);
}

TEST(InitSpec, MakeStateChecksModes) {
  EXPECT_THROW(make_initial_state(parse_init("cos:0.1:16"), 32, 1), ParameterError);
  EXPECT_THROW(make_initial_state(parse_init("modes:0:1:0"), 32, 1), ParameterError);
  const SurfaceState s = make_initial_state(parse_init("modes:2:0.1:0.2"), 32, 1);
  EXPECT_EQ(s.coeff(2), Complex(0.1, 0.2));
  EXPECT_EQ(make_initial_state(parse_init("noise:0.1"), 32, 7),
            make_initial_state(parse_init("noise:0.1"), 32, 7));
}

TEST(Config, TextParsing) {
  const ConfigEntries e = parse_config_text("# comment\nR = 0.5  # trailing\n\n  N=64\n");
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0], (std::pair<std::string, std::string>{"R", "0.5"}));
  EXPECT_EQ(e[1], (std::pair<std::string, std::string>{"N", "64"}));
  EXPECT_THROW(parse_config_text("R 0.5\n"), ParameterError);
}

TEST(Config, ThreeLayerPrecedence) {
  const RunConfig defaults = resolve_config(Experiment::Simulate, {}, {});
  EXPECT_EQ(defaults.N, 128);
  EXPECT_EQ(defaults.params.R, 0.25);
  const RunConfig from_file = resolve_config(Experiment::Simulate, {{"N", "64"}, {"R", "0.5"}}, {});
  EXPECT_EQ(from_file.N, 64);
  EXPECT_EQ(from_file.params.R, 0.5);
  const RunConfig cli_wins =
      resolve_config(Experiment::Simulate, {{"N", "64"}, {"R", "0.5"}}, {{"N", "32"}});
  EXPECT_EQ(cli_wins.N, 32);
  EXPECT_EQ(cli_wins.params.R, 0.5);
}

TEST(Config, RejectsBadValues) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "bogus", "1"), ParameterError);
  EXPECT_THROW(apply_setting(c, "N", "12.5"), ParameterError);
  EXPECT_THROW(apply_setting(c, "alpha", "45deg"), ParameterError);
  EXPECT_THROW(apply_setting(c, "alpha", "45°"), ParameterError);
  EXPECT_THROW(apply_setting(c, "regime", "V"), ParameterError);
  EXPECT_THROW(apply_setting(c, "spectra", "maybe"), ParameterError);
  try {
    apply_setting(c, "dt", "abc");
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.constraint(), "dt");
  }
}

TEST(Config, DescribeCoversEveryKey) {
  const auto d = describe_config(RunConfig{});
  for (const auto& key : config_keys()) {
    if (key == "epsilon" || key == "W") continue;  // optional until given
    EXPECT_TRUE(d.count(key)) << key;
  }
  RunConfig c;
  apply_setting(c, "deltas", "0.4,0.2,0.1");
  EXPECT_EQ(c.deltas, (std::vector<double>{0.4, 0.2, 0.1}));
  EXPECT_EQ(describe_config(c).at("deltas"), "0.40000000000000002,0.20000000000000001,0.10000000000000001");
}

}  // namespace
}  // namespace filmflow
