// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stit/cli.hpp"
#include "stit/errors.hpp"
#include "stit/serialize.hpp"

using namespace stit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("stit_unit_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::vector<std::string>& args, std::string* out = nullptr,
        std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

const char* kSimConfig =
    R"({"process":"stit","measure":{"g":[1,1]},)"
    R"("window":{"kind":"box","lo":[-1,-1],"hi":[1,1]},"t":2.0,"method":"rejection"})";

}  // namespace

TEST(Serialize, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::nan("")), "null");
}

TEST(Serialize, CanonicalDumpSortsKeys) {
  const Json a = Json::parse(R"({"b":1,"a":[0.5,{"d":2,"c":3}]})");
  EXPECT_EQ(canonical_dump(a), R"({"a":[0.5,{"c":3,"d":2}],"b":1})");
  const Json b = Json::parse(R"({"a":[0.5,{"c":3,"d":2}],"b":1})");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Serialize, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Serialize, PolytopeRoundTrip) {
  const Polytope b = Box({-1, 0}, {2, 3});
  EXPECT_TRUE(approx_equal(polytope_from_json(to_json(b)), b));
  const Polytope p = Polygon::regular(5, 1.5, 0.2, 0.1);
  EXPECT_TRUE(approx_equal(polytope_from_json(to_json(p)), p));
}

TEST(Serialize, MeasureRoundTrip) {
  const auto m = DrivingMeasure::axis_orthogonal({3, 1});
  const auto r = measure_from_json(to_json(m));
  EXPECT_DOUBLE_EQ(r.gamma(), 4.0);
  EXPECT_DOUBLE_EQ(r.axes()[0].w, 0.75);
  const auto iso = measure_from_json(to_json(DrivingMeasure::isotropic2d(2.0)));
  EXPECT_TRUE(iso.is_isotropic());
  EXPECT_DOUBLE_EQ(iso.gamma(), 2.0);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"gamma":1,"directional":{"kind":"bogus"}})")),
               ConfigError);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"g":[1,1],"x":1})")), ConfigError);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"g":[1,-1]})")), ConfigError);
}

TEST(Serialize, Svg) {
  const Tessellation t{Box::cube(2, 1.0), {Box({-1, -1}, {0, 1}), Box({0, -1}, {1, 1})}};
  const auto svg = to_svg(t);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<rect"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t polys = 0;
  for (auto pos = svg.find("<polygon"); pos != std::string::npos; pos = svg.find("<polygon", pos + 1))
    ++polys;
  EXPECT_EQ(polys, 2u);
}

TEST(Cli, SimulateIsDeterministic) {
  TempDir d;
  const auto cfg = d.file("c.json", kSimConfig);
  const auto a = d.file("a.json");
  const auto b = d.file("b.json");
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "7", "--out", a}), 0);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "7", "--out", b, "--threads", "4"}), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto j = Json::parse(slurp(a));
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_TRUE(j.contains("tree"));
  EXPECT_TRUE(j.contains("config_hash"));
}

TEST(Cli, SimulateSvg) {
  TempDir d;
  const auto cfg = d.file("c.json", kSimConfig);
  const auto svg = d.file("t.svg");
  std::string out;
  ASSERT_EQ(run({"simulate", "--config", cfg, "--svg", svg}, &out), 0);
  const auto s = slurp(svg);
  EXPECT_NE(s.find("<rect"), std::string::npos);
  EXPECT_NE(s.find("<polygon"), std::string::npos);
}

TEST(Cli, RegimeMismatchExitsTwo) {
  TempDir d;
  const auto cfg = d.file(
      "c.json",
      R"({"measure":{"gamma":1,"directional":{"kind":"isotropic2d"}},)"
      R"("window":{"kind":"box","lo":[-1,-1,-1],"hi":[1,1,1]},"t":1})");
  std::string err;
  EXPECT_EQ(run({"simulate", "--config", cfg}, nullptr, &err), 2);
  EXPECT_NE(err.find("error"), std::string::npos);
}

TEST(Cli, ConfigErrors) {
  TempDir d;
  EXPECT_EQ(run({"simulate", "--config", d.file("missing.json")}), 2);
  EXPECT_EQ(run({"simulate", "--config", d.file("bad.json", "{not json")}), 2);
  EXPECT_EQ(run({"simulate", "--config", d.file("u.json", R"({"frobnicate":1})")}), 2);
  EXPECT_EQ(run({"verify", "no_such_experiment"}), 2);
  EXPECT_EQ(run({"bogus"}), 2);
}

TEST(Cli, Bound) {
  std::string out;
  ASSERT_EQ(run({"bound", "--lambda", "4", "--masses", "1,1,1,1", "--t-grid", "0,1000000"}, &out),
            0);
  std::istringstream in(out);
  std::string header, l0, l1;
  std::getline(in, header);
  std::getline(in, l0);
  std::getline(in, l1);
  EXPECT_EQ(header, "t,lower_bound");
  EXPECT_EQ(l0, "0,0");
  const double v = std::stod(l1.substr(l1.find(',') + 1));
  EXPECT_NEAR(v, 1.0 / 70.0, 1e-9);
  EXPECT_EQ(run({"bound", "--lambda", "4", "--t-grid", "1"}), 2);
}

TEST(Cli, VerifyWritesReports) {
  TempDir d;
  std::string out;
  const auto dir = (d.path / "rep").string();
  ASSERT_EQ(run({"verify", "capacity", "--out", dir, "--n-scale", "0.1"}, &out), 0);
  EXPECT_NE(out.find("capacity PASS"), std::string::npos);
  EXPECT_NE(out.find("reduced"), std::string::npos);
  const auto summary = Json::parse(slurp(dir + "/capacity.json"));
  EXPECT_EQ(summary.at("experiment"), "capacity");
  EXPECT_TRUE(summary.at("pass").get<bool>());
  const auto csv = slurp(dir + "/capacity.csv");
  EXPECT_EQ(csv.rfind("label,x,n,estimate,ci_lo,ci_hi,target,sigma,p_value,verdict", 0), 0u);
}

TEST(Cli, VerifyRejectsUnknownOverride) {
  TempDir d;
  const auto cfg = d.file("o.json", R"({"no_such_key":1})");
  EXPECT_EQ(run({"verify", "capacity", "--config", cfg, "--out", (d.path / "r").string()}), 2);
}
